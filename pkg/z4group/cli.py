"""
Command-line entry point: ``z4group <subcommand> [options]``.

Exit codes: 0 success, 1 usage error, 2 a computed value differs from the
published one embedded in ``goldens``.
"""

import argparse
import csv
import io
import json
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass, field
from pathlib import Path

from z4group import goldens
from z4group.backends import CheckRecordQueryBuilder, ReportBackend
from z4group.backends.factory import get_report_backend, redis_backend_config
from z4group.exceptions import MalformedWordError, UnsupportedInputError, UsageError
from z4group.group import (
    center,
    check_automaton,
    enumerate_normal_words,
    group_exponent,
    standard_group,
    verify_relations,
    word_to_matrix,
)
from z4group.invariants import (
    TYPE_II_MAX_LENGTH,
    Z4Code,
    check_invariance,
    invariant_dimension,
    is_type_II,
    molien_coeffs,
    swe,
)
from z4group.projective import (
    conjugacy_classes,
    standard_projective_group,
    verify_projective_relations,
)
from z4group.reproduce import render, run_checks
from z4group.reptheory import (
    NATURAL_INDEX,
    bratteli_diagram,
    centralizer_dim,
    centralizer_dim_closed_form,
    character_product,
    decompose_character,
    multiplicity_sequence,
    standard_character_table,
    verify_character_table,
)
from z4group.stats import run_summary, weighted_avg

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MAX_KMAX = 64
FORMATS = ("table", "json", "csv", "dot")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2

DEFAULT_KMAX = {"bratteli": 5, "dims": 9}
DEFAULT_DMAX = 8


@dataclass
class RunConfig:
    subcommand: str
    kmax: int = 9
    dmax: int = DEFAULT_DMAX
    output_format: str = "table"
    out: Path | None = None
    generators: list[tuple[int, ...]] = field(default_factory=list)
    parallel: bool = False
    check_invariance: bool = False
    store_url: str | None = None
    checks: list[str] = field(default_factory=list)
    verbose: bool = False

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        kmax = ns.kmax if ns.kmax is not None else DEFAULT_KMAX.get(ns.subcommand, 9)
        if not 0 <= kmax <= MAX_KMAX:
            raise UsageError(f"--kmax must be between 0 and {MAX_KMAX}, got {kmax}")
        dmax = ns.dmax if ns.dmax is not None else DEFAULT_DMAX
        if dmax < 0:
            raise UsageError(f"--dmax must be nonnegative, got {dmax}")
        if ns.format == "dot" and ns.subcommand != "bratteli":
            raise UsageError("--format dot is only available for bratteli")
        return cls(
            subcommand=ns.subcommand,
            kmax=kmax,
            dmax=dmax,
            output_format=ns.format,
            out=Path(ns.out) if ns.out else None,
            generators=[parse_generator(g) for g in ns.gen or []],
            parallel=ns.parallel,
            check_invariance=ns.check_invariance,
            store_url=ns.store_url,
            checks=list(ns.check or []),
            verbose=ns.verbose,
        )

    def backend(self) -> ReportBackend:
        if self.store_url:
            return get_report_backend(redis_backend_config(self.store_url))
        return get_report_backend()


def parse_generator(text: str) -> tuple[int, ...]:
    """``"1,1,0,2"`` → (1, 1, 0, 2); every entry must be a ℤ₄ digit."""
    try:
        digits = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--gen expects comma-separated digits: {text!r}") from None
    if any(d not in range(4) for d in digits):
        raise UsageError(f"--gen entries must be 0, 1, 2 or 3, got {text!r}")
    return digits


@dataclass
class Output:
    """A command's result in every shape it can be printed in."""

    headers: list[str]
    rows: list[list[object]]
    data: dict
    summary: str | None = None
    dot: str | None = None
    status: int = EXIT_OK


def _status(ok: bool) -> int:
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_enumerate(config: RunConfig) -> Output:
    g = standard_group()
    pg = standard_projective_group()
    orders = {"G": len(g), "Z": len(center(g)), "PG": len(pg)}
    exponent = group_exponent(g)
    expected = {
        "G": goldens.GROUP_ORDER,
        "Z": goldens.CENTER_ORDER,
        "PG": goldens.PROJECTIVE_ORDER,
    }
    return Output(
        headers=["group", "order"],
        rows=[[name, value] for name, value in orders.items()],
        data={"orders": orders, "exponent": exponent},
        summary=" ".join(f"order({name})={value}" for name, value in orders.items()),
        status=_status(orders == expected),
    )


def cmd_verify_relations(config: RunConfig) -> Output:
    reports = [
        verify_relations(standard_group()),
        verify_projective_relations(standard_projective_group()),
    ]
    rows = [
        [report.title, name, ok]
        for report in reports
        for name, ok in report.results.items()
    ]
    return Output(
        headers=["presentation", "relation", "holds"],
        rows=rows,
        data={"reports": [r.model_dump() for r in reports]},
        status=_status(all(r.all_passed for r in reports)),
    )


def cmd_normal_forms(config: RunConfig) -> Output:
    words = enumerate_normal_words()
    checked, mismatches = check_automaton(words)
    rows = [[i, w.serialize(), str(w)] for i, w in enumerate(words, start=1)]
    return Output(
        headers=["index", "normal form", "word"],
        rows=rows,
        data={
            "words": [
                {
                    "normal_form": w.serialize(),
                    "word": str(w),
                    "matrix": word_to_matrix(w).serialize(),
                }
                for w in words
            ],
            "automaton": {
                "checked": checked,
                "mismatches": [
                    {"word": w.serialize(), "letter": letter.value, "side": side.value}
                    for w, letter, side in mismatches
                ],
            },
        },
        summary=f"{len(words)} normal words; automaton {checked - len(mismatches)}"
        f"/{checked} products agree",
        status=_status(len(words) == goldens.GROUP_ORDER and not mismatches),
    )


def cmd_classes(config: RunConfig) -> Output:
    classes = conjugacy_classes(standard_projective_group())
    sizes = tuple(info.size for info in classes)
    orders = tuple(info.element_order for info in classes)
    return Output(
        headers=["class", "representative", "size", "order"],
        rows=[
            [info.index, info.representative_word, info.size, info.element_order]
            for info in classes
        ],
        data={"classes": [info.model_dump() for info in classes]},
        status=_status(
            sizes == goldens.CLASS_SIZES and orders == goldens.CLASS_ORDERS
        ),
    )


def cmd_chartable(config: RunConfig) -> Output:
    table = standard_character_table()
    report = verify_character_table(table)
    n = table.matrix.rows
    return Output(
        headers=["", *(f"C{j}" for j in range(1, n + 1))],
        rows=[[f"χ{i}", *table.chi(i)] for i in range(1, n + 1)],
        data={"table": table.model_dump(), "checks": report.model_dump()},
        status=_status(report.all_passed),
    )


def cmd_fuse(config: RunConfig) -> Output:
    table = standard_character_table()
    chi7 = table.chi(NATURAL_INDEX)
    products = {}
    rows = []
    for i in range(1, table.matrix.rows + 1):
        m = decompose_character(character_product(chi7, table.chi(i)), table)
        products[i] = tuple(j for j, mult in enumerate(m, start=1) for _ in range(mult))
        rhs = " + ".join(f"χ{j}" for j in products[i])
        rows.append([f"χ{NATURAL_INDEX}·χ{i}", rhs])
    return Output(
        headers=["product", "decomposition"],
        rows=rows,
        data={"products": {str(i): list(v) for i, v in products.items()}},
        status=_status(products == goldens.FUSION_PRODUCTS),
    )


def cmd_bratteli(config: RunConfig) -> Output:
    state = bratteli_diagram(config.kmax)
    rows = [
        [
            k,
            " ".join(f"ρ{ell}:{m}" for ell, m in state.level(k).items()),
            state.square_sum(k),
        ]
        for k in range(config.kmax + 1)
    ]
    ok = state.multiplicity_free and all(
        state.d_vectors[k] == row
        for k, row in goldens.BRATTELI_ROWS.items()
        if k <= config.kmax
    )
    return Output(
        headers=["k", "nodes", "dim"],
        rows=rows,
        data={"bratteli": state.to_json_dict()},
        dot=state.to_dot(),
        status=_status(ok),
    )


def cmd_dims(config: RunConfig) -> Output:
    sequence = multiplicity_sequence(config.kmax)
    rows = []
    ok = True
    for k, d in enumerate(sequence):
        dim = centralizer_dim(k)
        ok &= dim == centralizer_dim_closed_form(k)
        if k < len(goldens.CENTRALIZER_DIMS):
            ok &= dim == goldens.CENTRALIZER_DIMS[k]
        rows.append([k, *d, dim])
    return Output(
        headers=["k", *(f"d{ell}" for ell in range(1, len(sequence[0]) + 1)), "dim"],
        rows=rows,
        data={
            "dims": [
                {"k": row[0], "d": list(row[1:-1]), "dim": row[-1]} for row in rows
            ]
        },
        status=_status(ok),
    )


def cmd_molien(config: RunConfig) -> Output:
    g = standard_group()
    coefficients = molien_coeffs(g, config.dmax)
    if not config.check_invariance:
        return Output(
            headers=["degree", "invariants"],
            rows=[[d, c] for d, c in enumerate(coefficients)],
            data={"molien": coefficients},
        )
    # Reynolds ranks as an independent count of the invariants.
    ranks = [
        invariant_dimension(g, d, parallel=config.parallel)
        for d in range(config.dmax + 1)
    ]
    return Output(
        headers=["degree", "invariants", "reynolds rank"],
        rows=[[d, c, r] for d, (c, r) in enumerate(zip(coefficients, ranks))],
        data={"molien": coefficients, "reynolds_ranks": ranks},
        status=_status(coefficients == ranks),
    )


def cmd_swe(config: RunConfig) -> Output:
    if not config.generators:
        raise UsageError("swe needs at least one --gen row")
    code = Z4Code.from_generators(config.generators)
    poly = swe(code)
    if code.length <= TYPE_II_MAX_LENGTH:
        type_ii = is_type_II(code)
        passed, reason = type_ii.passed, type_ii.reason
        verdict = f"{render(passed)} ({reason})"
    else:
        passed = None
        reason = f"skipped: length {code.length} exceeds {TYPE_II_MAX_LENGTH}"
        verdict = reason
    data = {
        "length": code.length,
        "size": len(code),
        "swe": poly.serialize(),
        "type_ii": passed,
        "reason": reason,
    }
    rows = [
        ["length", code.length],
        ["size", len(code)],
        ["swe", poly.serialize()],
        ["type II", verdict],
    ]
    status = EXIT_OK
    if config.check_invariance:
        invariant = check_invariance(poly, standard_group())
        data["invariant"] = invariant
        rows.append(["G-invariant", invariant])
        if passed and not invariant:
            status = EXIT_MISMATCH
    return Output(headers=["field", "value"], rows=rows, data=data, status=status)


def cmd_reproduce(config: RunConfig) -> Output:
    records = run_checks(backend=config.backend(), only=config.checks)
    rows = [
        [
            r.check_id,
            r.module,
            r.description,
            r.computed,
            r.expected,
            "ok" if r.passed else "MISMATCH",
        ]
        for r in records
    ]
    failures = [r.check_id for r in records if not r.passed]
    return Output(
        headers=["check", "module", "description", "computed", "expected", "status"],
        rows=rows,
        data={
            "checks": [
                {
                    "check_id": r.check_id,
                    "module": r.module,
                    "description": r.description,
                    "computed": r.computed,
                    "expected": r.expected,
                    "passed": r.passed,
                }
                for r in records
            ],
            "failures": failures,
        },
        summary=f"{len(records) - len(failures)}/{len(records)} checks match",
        status=_status(not failures),
    )


def cmd_history(config: RunConfig) -> Output:
    backend = config.backend()
    stats = backend.module_stats(CheckRecordQueryBuilder.all())
    runs = run_summary(backend.fetch(CheckRecordQueryBuilder.all()))
    total, avg = weighted_avg(stats)
    return Output(
        headers=["module", "checks", "failures", "failure %", "avg s", "max s"],
        rows=[
            [
                s.module,
                s.count,
                s.failures,
                s.failure_rate,
                f"{s.avg_duration:.3f}",
                f"{s.max_duration:.3f}",
            ]
            for s in stats
        ],
        data={
            "modules": [asdict(s) for s in stats],
            "runs": runs,
        },
        summary=f"{len(runs)} stored runs; {total} checks, avg {avg:.3f} s",
    )


COMMANDS: dict[str, tuple[Callable[[RunConfig], Output], str]] = {
    "enumerate": (cmd_enumerate, "orders of G, its center and PG"),
    "verify-relations": (cmd_verify_relations, "check the defining relations"),
    "normal-forms": (cmd_normal_forms, "the 384 normal words and automaton check"),
    "classes": (cmd_classes, "conjugacy classes of PG"),
    "chartable": (cmd_chartable, "character table of PG"),
    "fuse": (cmd_fuse, "decompose χ7·χi for every irreducible"),
    "bratteli": (cmd_bratteli, "Bratteli diagram of the tensor powers of ρ7"),
    "dims": (cmd_dims, "multiplicities and centralizer dimensions"),
    "molien": (cmd_molien, "Molien series coefficients of G"),
    "swe": (cmd_swe, "symmetrized weight enumerator of a ℤ₄-code"),
    "reproduce-paper": (cmd_reproduce, "recompute every published value"),
    "history": (cmd_history, "statistics of stored reproduce runs"),
}


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors raise instead of exiting with argparse's status 2."""

    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--kmax", type=int, default=None)
    common.add_argument("--dmax", type=int, default=None)
    common.add_argument("--format", choices=FORMATS, default="table")
    common.add_argument("--out", default=None, help="write to a file, not stdout")
    common.add_argument(
        "--gen", action="append", help="code generator row, e.g. 1,1,0,2 (repeatable)"
    )
    common.add_argument("--parallel", action="store_true")
    common.add_argument("--check-invariance", action="store_true")
    common.add_argument("--check", action="append", help="reproduce only this check")
    common.add_argument("--store-url", default=None, help="redis:// report store")
    common.add_argument("--verbose", "-v", action="store_true")

    parser = ArgumentParser(prog="z4group", description=__doc__.strip().splitlines()[0])
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for name, (_, help_text) in COMMANDS.items():
        subparsers.add_parser(name, parents=[common], help=help_text)
    return parser


def format_output(output: Output, config: RunConfig) -> str:
    match config.output_format:
        case "json":
            payload = {
                "schema": SCHEMA_VERSION,
                "command": config.subcommand,
                "status": output.status,
                **output.data,
            }
            return json.dumps(payload, indent=2, ensure_ascii=False, default=str) + "\n"
        case "csv":
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(output.headers)
            writer.writerows([[render(v) for v in row] for row in output.rows])
            return buffer.getvalue()
        case "dot":
            return output.dot or ""
        case _:
            text = format_table(output.headers, output.rows)
            if output.summary:
                text = f"{output.summary}\n\n{text}"
            return text


def format_table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [list(headers), *([render(v) for v in row] for row in rows)]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in cells
    ]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines) + "\n"


def run(config: RunConfig) -> int:
    handler, _ = COMMANDS[config.subcommand]
    output = handler(config)
    text = format_output(output, config)
    if config.out:
        config.out.write_text(text, encoding="utf-8")
        logger.info("Wrote %s output to %s", config.subcommand, config.out)
    else:
        sys.stdout.write(text)
    if output.status == EXIT_MISMATCH:
        logger.warning("%s: computed values differ", config.subcommand)
    return output.status


def main(argv: Sequence[str] | None = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.DEBUG if ns.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
        )
        return run(RunConfig.from_namespace(ns))
    except (UsageError, UnsupportedInputError, MalformedWordError) as exc:
        print(f"z4group: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
