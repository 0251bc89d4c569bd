import logging
from unittest.mock import MagicMock, patch

import fakeredis
import pytest
from redis import Redis

from z4group import reproduce
from z4group.backends import CheckRecordQueryBuilder
from z4group.backends.redis import RedisBackend
from z4group.exactalg import Cyc8
from z4group.reproduce import CHECKS, Check, render, run_checks, select_checks


def _boom():
    raise RuntimeError("boom")


@pytest.fixture
def failing_checks(monkeypatch):
    checks = [
        Check("x", "group", "raises", _boom),
        Check("y", "group", "disagrees", lambda: (1, 2)),
        Check("z", "reptheory", "agrees", lambda: ((1, 2), (1, 2))),
    ]
    monkeypatch.setattr(reproduce, "CHECKS", checks)
    return checks


class TestRegistry:
    def test_ids_are_unique(self):
        ids = [c.check_id for c in CHECKS]
        assert len(ids) == len(set(ids))

    def test_every_published_item_has_a_check(self):
        heads = {c.check_id.split(".")[0] for c in CHECKS}
        assert heads == {str(n) for n in range(1, 11)}

    def test_select_by_prefix(self):
        ids = [c.check_id for c in select_checks(["7"])]
        assert ids == ["7", "7.closed-form", "7.degrees"]

    def test_select_exact(self):
        assert [c.check_id for c in select_checks(["3.automaton"])] == ["3.automaton"]

    def test_select_all(self):
        assert select_checks(None) == CHECKS
        assert select_checks([]) == CHECKS


class TestRender:
    @pytest.mark.parametrize(
        ("value", "expected"),
        [
            (True, "yes"),
            (False, "no"),
            (384, "384"),
            ((1, 2, 3), "1,2,3"),
            (((1, 2), (3,)), "(1,2,3)"),
            ({"a": 1, "b": (2, 3)}, "a: 1; b: 2,3"),
            (Cyc8(-1, 0, -2, 0), "-1-2i"),
        ],
    )
    def test_render(self, value, expected):
        assert render(value) == expected


class TestRunChecks:
    def test_records_for_selected_checks(self):
        records = run_checks(run_id="run-a", only=["1"])

        assert [r.check_id for r in records] == ["1", "1.exponent"]
        assert all(r.run_id == "run-a" for r in records)
        assert all(r.passed for r in records)
        assert records[0].computed == records[0].expected == "384,4,96"
        assert records[1].computed == "24"
        assert all(r.duration >= 0 for r in records)

    def test_generated_run_id(self):
        first = run_checks(only=["1.exponent"])
        second = run_checks(only=["1.exponent"])
        assert first[0].run_id != second[0].run_id

    def test_failures_are_recorded_not_raised(self, failing_checks, caplog):
        with caplog.at_level(logging.WARNING, logger="z4group.reproduce"):
            records = run_checks(run_id="r")

        by_id = {r.check_id: r for r in records}
        assert by_id["x"].passed is False
        assert by_id["x"].computed == "error: boom"
        assert by_id["x"].expected == "-"
        assert by_id["y"].passed is False
        assert (by_id["y"].computed, by_id["y"].expected) == ("1", "2")
        assert by_id["z"].passed is True
        assert "check x failed to run" in caplog.text
        assert "check y: computed value differs" in caplog.text

    def test_backend_save_failure_is_logged(self, failing_checks, caplog):
        backend = MagicMock()
        backend.save.side_effect = ConnectionError("store is down")

        with caplog.at_level(logging.ERROR, logger="z4group.reproduce"):
            records = run_checks(backend=backend, run_id="r")

        assert len(records) == 3
        assert backend.save.call_count == 3
        assert "failed to save check z" in caplog.text

    def test_records_reach_the_redis_store(self, failing_checks):
        fake = fakeredis.FakeStrictRedis(
            server=fakeredis.FakeServer(), decode_responses=True
        )
        with patch.object(Redis, "from_url", return_value=fake):
            backend = RedisBackend(redis_url="redis://localhost:6379/0")

        run_checks(backend=backend, run_id="stored")

        stored = backend.fetch(CheckRecordQueryBuilder.for_run("stored"))
        assert {r.check_id for r in stored} == {"x", "y", "z"}
        failures = backend.fetch(CheckRecordQueryBuilder.all().only_failures())
        assert {r.check_id for r in failures} == {"x", "y"}


@pytest.mark.slow
class TestFullSuite:
    def test_every_published_value_is_reproduced(self):
        records = run_checks(run_id="full")
        mismatches = [
            (r.check_id, r.computed, r.expected) for r in records if not r.passed
        ]
        assert mismatches == []
        assert len(records) == len(CHECKS)
