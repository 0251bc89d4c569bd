from datetime import datetime, timedelta, timezone
from unittest.mock import patch

import fakeredis
import pytest
from redis import Redis

from z4group.backends import CheckRecordQueryBuilder
from z4group.backends.redis import (
    MAIN_STREAM,
    MODULE_INDEX_KEY,
    RECORDING_ENABLED_KEY,
    RUN_INDEX_KEY,
    STATS_MODULE_PREFIX,
    RedisBackend,
    _parse_stream_entries,
)
from z4group.models import CheckRecord


@pytest.fixture
def fake_redis():
    """Create a fake Redis instance for testing."""
    server = fakeredis.FakeServer()
    return fakeredis.FakeStrictRedis(server=server, decode_responses=True)


@pytest.fixture
def redis_backend(fake_redis):
    """Create a RedisBackend instance with fake Redis."""
    with patch.object(Redis, "from_url", return_value=fake_redis):
        backend = RedisBackend(
            redis_url="redis://localhost:6379/0",
            max_stream_length=1000,
        )
        return backend


def make_record(**overrides) -> CheckRecord:
    fields = {
        "run_id": "run-1",
        "check_id": "1",
        "module": "group",
        "description": "orders of G, its center Z and PG = G/Z",
        "computed": "384,4,96",
        "expected": "384,4,96",
        "passed": True,
        "duration": 0.5,
        "timestamp": datetime(2024, 1, 15, 10, 30, 0, tzinfo=timezone.utc),
    }
    fields.update(overrides)
    return CheckRecord(**fields)


@pytest.fixture
def sample_record():
    return make_record()


@pytest.fixture
def sample_records():
    """Two runs over three modules, one mismatch in the second run."""
    base_time = datetime(2024, 1, 15, 10, 0, 0, tzinfo=timezone.utc)
    return [
        make_record(run_id="run-1", check_id="1", duration=0.1, timestamp=base_time),
        make_record(
            run_id="run-1",
            check_id="5",
            module="reptheory",
            duration=2.0,
            timestamp=base_time + timedelta(seconds=1),
        ),
        make_record(
            run_id="run-2",
            check_id="1",
            duration=0.3,
            timestamp=base_time + timedelta(minutes=5),
        ),
        make_record(
            run_id="run-2",
            check_id="5",
            module="reptheory",
            passed=False,
            computed="error: boom",
            duration=1.0,
            timestamp=base_time + timedelta(minutes=5, seconds=1),
        ),
        make_record(
            run_id="run-2",
            check_id="10.molien",
            module="invariants",
            duration=4.0,
            timestamp=base_time + timedelta(minutes=5, seconds=2),
        ),
    ]


class TestRedisBackendInitialization:
    """Test backend initialization."""

    def test_initialization_with_defaults(self, redis_backend):
        assert redis_backend.max_stream_length == 1000
        assert redis_backend.redis is not None

    def test_initialization_with_custom_values(self, fake_redis):
        with patch.object(Redis, "from_url", return_value=fake_redis):
            backend = RedisBackend(
                redis_url="redis://localhost:6379/0",
                max_stream_length=500,
            )
            assert backend.max_stream_length == 500

    def test_lua_script_registration(self, redis_backend):
        assert redis_backend.update_max_script is not None


class TestSaveRecord:
    """Test saving check records."""

    def test_save_single_record(self, redis_backend, sample_record):
        """The stream, both indexes and the module hash are written."""
        redis_backend.save(sample_record)

        entries = redis_backend.redis.xrange(MAIN_STREAM)
        assert len(entries) == 1
        assert redis_backend.redis.smembers(RUN_INDEX_KEY) == {"run-1"}
        assert redis_backend.redis.smembers(MODULE_INDEX_KEY) == {"group"}

        stats_key = f"{STATS_MODULE_PREFIX}group"
        assert redis_backend.redis.hget(stats_key, "count") == "1"
        assert float(redis_backend.redis.hget(stats_key, "total_duration")) == 0.5
        assert redis_backend.redis.hget(stats_key, "failures") == "0"
        assert float(redis_backend.redis.hget(stats_key, "max_duration")) == 0.5

    def test_save_counts_failures(self, redis_backend):
        redis_backend.save(make_record(passed=False))
        redis_backend.save(make_record(passed=True))

        stats_key = f"{STATS_MODULE_PREFIX}group"
        assert redis_backend.redis.hget(stats_key, "count") == "2"
        assert redis_backend.redis.hget(stats_key, "failures") == "1"

    def test_save_updates_max_correctly(self, redis_backend):
        """Test that max duration only moves up."""
        for duration in (0.5, 2.5, 1.0):
            redis_backend.save(make_record(duration=duration))

        stats_key = f"{STATS_MODULE_PREFIX}group"
        assert float(redis_backend.redis.hget(stats_key, "max_duration")) == 2.5

    def test_save_multiple_records(self, redis_backend, sample_records):
        for record in sample_records:
            redis_backend.save(record)

        assert len(redis_backend.redis.xrange(MAIN_STREAM)) == 5
        assert redis_backend.redis.smembers(RUN_INDEX_KEY) == {"run-1", "run-2"}

    def test_save_when_recording_disabled(self, redis_backend, sample_record):
        redis_backend.disable_recording()
        redis_backend.save(sample_record)

        assert len(redis_backend.redis.xrange(MAIN_STREAM)) == 0


class TestRecordingControl:
    """Test enabling and disabling recording."""

    def test_recording_enabled_by_default(self, redis_backend):
        assert redis_backend.is_recording_enabled() is True

    def test_enable_and_disable_recording(self, redis_backend):
        redis_backend.disable_recording()
        assert redis_backend.redis.get(RECORDING_ENABLED_KEY) == "false"
        assert redis_backend.is_recording_enabled() is False

        redis_backend.enable_recording()
        assert redis_backend.is_recording_enabled() is True

    def test_recording_status_various_values(self, redis_backend):
        cases = (("1", True), ("yes", True), ("TRUE", True), ("0", False))
        for value, expected in cases:
            redis_backend.redis.set(RECORDING_ENABLED_KEY, value)
            assert redis_backend.is_recording_enabled() is expected


class TestFetch:
    """Test fetching records back from the stream."""

    def test_fetch_all_records_newest_first(self, redis_backend, sample_records):
        for record in sample_records:
            redis_backend.save(record)

        records = redis_backend.fetch(CheckRecordQueryBuilder.all())

        assert len(records) == 5
        assert records[0].check_id == "10.molien"
        assert records[-1].run_id == "run-1"

    def test_fetch_round_trips_fields(self, redis_backend, sample_record):
        redis_backend.save(sample_record)

        (record,) = redis_backend.fetch(CheckRecordQueryBuilder.all())

        assert record == sample_record

    def test_fetch_for_run(self, redis_backend, sample_records):
        for record in sample_records:
            redis_backend.save(record)

        records = redis_backend.fetch(CheckRecordQueryBuilder.for_run("run-1"))

        assert {r.check_id for r in records} == {"1", "5"}

    def test_fetch_for_module(self, redis_backend, sample_records):
        for record in sample_records:
            redis_backend.save(record)

        records = redis_backend.fetch(CheckRecordQueryBuilder.for_module("reptheory"))

        assert len(records) == 2
        assert all(r.module == "reptheory" for r in records)

    def test_fetch_only_failures(self, redis_backend, sample_records):
        for record in sample_records:
            redis_backend.save(record)

        records = redis_backend.fetch(CheckRecordQueryBuilder.all().only_failures())

        assert [(r.run_id, r.check_id) for r in records] == [("run-2", "5")]
        assert records[0].computed == "error: boom"

    def test_fetch_with_limit(self, redis_backend, sample_records):
        for record in sample_records:
            redis_backend.save(record)

        records = redis_backend.fetch(CheckRecordQueryBuilder.all().limit(2))

        assert len(records) == 2

    def test_unfiltered_limit_is_pushed_to_the_stream_read(
        self, redis_backend, sample_records
    ):
        for record in sample_records:
            redis_backend.save(record)

        with patch.object(
            redis_backend.redis, "xrevrange", wraps=redis_backend.redis.xrevrange
        ) as xrevrange:
            records = redis_backend.fetch(CheckRecordQueryBuilder.all().limit(2))

        xrevrange.assert_called_once_with(MAIN_STREAM, "+", "-", count=2)
        assert [r.check_id for r in records] == ["10.molien", "5"]

    def test_filtered_limit_reads_the_whole_stream(self, redis_backend, sample_records):
        for record in sample_records:
            redis_backend.save(record)

        with patch.object(
            redis_backend.redis, "xrevrange", wraps=redis_backend.redis.xrevrange
        ) as xrevrange:
            query = CheckRecordQueryBuilder.for_module("reptheory").limit(1)
            records = redis_backend.fetch(query)

        xrevrange.assert_called_once_with(MAIN_STREAM, "+", "-", count=None)
        assert len(records) == 1
        assert records[0].module == "reptheory"

    def test_fetch_empty_result(self, redis_backend):
        assert redis_backend.fetch(CheckRecordQueryBuilder.all()) == []


class TestIndexes:
    def test_get_all_runs_and_modules_empty(self, redis_backend):
        assert redis_backend.get_all_runs() == []
        assert redis_backend.get_all_modules() == []

    def test_get_all_runs_and_modules(self, redis_backend, sample_records):
        for record in sample_records:
            redis_backend.save(record)

        assert redis_backend.get_all_runs() == ["run-1", "run-2"]
        assert redis_backend.get_all_modules() == ["group", "invariants", "reptheory"]


class TestModuleStats:
    """Test pre-aggregated and record-based module statistics."""

    def test_module_stats_aggregated(self, redis_backend, sample_records):
        for record in sample_records:
            redis_backend.save(record)

        stats = redis_backend.module_stats(CheckRecordQueryBuilder.all())
        stats = {s.module: s for s in stats}

        assert set(stats) == {"group", "invariants", "reptheory"}
        reptheory = stats["reptheory"]
        assert reptheory.count == 2
        assert reptheory.failures == 1
        assert reptheory.failure_rate == 50.0
        assert reptheory.avg_duration == pytest.approx(1.5)
        assert reptheory.max_duration == pytest.approx(2.0)

    def test_module_stats_for_single_module(self, redis_backend, sample_records):
        for record in sample_records:
            redis_backend.save(record)

        stats = redis_backend.module_stats(CheckRecordQueryBuilder.for_module("group"))

        assert [s.module for s in stats] == ["group"]
        assert stats[0].count == 2
        assert stats[0].avg_duration == pytest.approx(0.2)

    def test_module_stats_for_run_uses_records(self, redis_backend, sample_records):
        for record in sample_records:
            redis_backend.save(record)

        stats = redis_backend.module_stats(CheckRecordQueryBuilder.for_run("run-1"))

        assert [(s.module, s.count, s.failures) for s in stats] == [
            ("group", 1, 0),
            ("reptheory", 1, 0),
        ]

    def test_module_stats_empty(self, redis_backend):
        assert redis_backend.module_stats(CheckRecordQueryBuilder.all()) == []


class TestClearData:
    def test_clear_data(self, redis_backend, sample_records):
        for record in sample_records:
            redis_backend.save(record)
        redis_backend.redis.set("unrelated", "kept")

        redis_backend.clear_data()

        assert redis_backend.redis.keys("z4g:*") == []
        assert redis_backend.redis.get("unrelated") == "kept"

    def test_clear_data_empty(self, redis_backend):
        redis_backend.clear_data()
        assert redis_backend.redis.keys("z4g:*") == []


class TestParseStreamEntries:
    def test_skips_malformed_entries(self):
        entries = [
            ("1-0", {"run_id": "r"}),
            ("2-0", make_record().model_dump() | {"passed": "1", "duration": "0.5"}),
            ("3-0", make_record().model_dump() | {"passed": "1", "duration": "slow"}),
        ]

        records = _parse_stream_entries(entries)

        assert len(records) == 1
        assert records[0].passed is True
