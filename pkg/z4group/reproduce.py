"""
The ``reproduce-paper`` suite: every published value recomputed from scratch
and compared against ``goldens``.

Each check returns a (computed, expected) pair; a check passes when the two are
equal. Checks never raise out of ``run_checks``: a failing computation is
logged and recorded as a mismatch, the same way a failing backend save is.
"""

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from datetime import datetime, timezone
from time import perf_counter
from uuid import uuid4

from z4group import goldens
from z4group.backends import ReportBackend
from z4group.exactalg import as_cyc8
from z4group.group import (
    D_MATRIX,
    T_MATRIX,
    center,
    check_automaton,
    check_relations,
    enumerate_normal_words,
    flip_entry_sign,
    group_exponent,
    standard_group,
    verify_relations,
    word_to_matrix,
)
from z4group.invariants import (
    Poly3,
    Z4Code,
    check_invariance,
    invariant_dimension,
    is_type_II,
    molien_coeffs,
    swe,
)
from z4group.models import CheckRecord
from z4group.projective import (
    centralizer_size,
    conjugacy_classes,
    standard_projective_group,
)
from z4group.reptheory import (
    CLOSED_FORM_COEFFICIENTS,
    NATURAL_INDEX,
    centralizer_dim,
    centralizer_dim_closed_form,
    character_product,
    closed_form_d,
    decompose_character,
    standard_character_table,
    standard_fusion_matrix,
    tensor_multiplicities,
    tensor_power_character,
    verify_character_table,
)

logger = logging.getLogger(__name__)

CLOSED_FORM_KMAX = 20
KRONECKER_KMAX = 4
MOLIEN_DMAX = 8


@dataclass(frozen=True)
class Check:
    check_id: str
    module: str
    description: str
    run: Callable[[], tuple[object, object]]


CHECKS: list[Check] = []


def check(check_id: str, module: str, description: str):
    def register(fn: Callable[[], tuple[object, object]]):
        CHECKS.append(Check(check_id, module, description, fn))
        return fn

    return register


def render(value: object) -> str:
    """Deterministic text form used for the computed/expected columns."""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, dict):
        return "; ".join(f"{k}: {render(v)}" for k, v in value.items())
    if isinstance(value, (list, tuple)):
        inner = ",".join(render(v) for v in value)
        nested = any(isinstance(v, (list, tuple)) for v in value)
        return f"({inner})" if nested else inner
    return str(value)


@check("1", "group", "orders of G, its center Z and PG = G/Z")
def _orders():
    g = standard_group()
    computed = (len(g), len(center(g)), len(standard_projective_group()))
    expected = (goldens.GROUP_ORDER, goldens.CENTER_ORDER, goldens.PROJECTIVE_ORDER)
    return computed, expected


@check("1.exponent", "group", "lcm of element orders in G")
def _exponent():
    return group_exponent(standard_group()), goldens.GROUP_EXPONENT


@check("2", "group", "relations R1-R8 hold; flipping the sign of T[0,0] breaks R4")
def _relations():
    report = verify_relations(standard_group())
    perturbed = check_relations(D_MATRIX, flip_entry_sign(T_MATRIX, 0, 0))
    computed = {
        "failing": report.failures() or "none",
        "perturbed R4": perturbed.results["R4"],
    }
    return computed, {"failing": "none", "perturbed R4": False}


@check("3", "group", "normal words: count, distinct matrices, shape counts")
def _normal_words():
    words = enumerate_normal_words()
    matrices = {word_to_matrix(w).serialize() for w in words}
    shapes: dict[str, int] = {}
    for w in words:
        shapes[w.shape.value] = shapes.get(w.shape.value, 0) + 1
    computed = (len(words), len(matrices), tuple(shapes.items()))
    expected = (
        goldens.GROUP_ORDER,
        goldens.GROUP_ORDER,
        tuple(goldens.SHAPE_COUNTS.items()),
    )
    return computed, expected


@check("3.automaton", "group", "automaton agrees with matrices on 384 x 4 steps")
def _automaton():
    checked, mismatches = check_automaton()
    return (checked, len(mismatches)), (4 * goldens.GROUP_ORDER, 0)


@check("4", "projective", "conjugacy class sizes and element orders")
def _classes():
    classes = conjugacy_classes(standard_projective_group())
    computed = (
        tuple(info.size for info in classes),
        tuple(info.element_order for info in classes),
    )
    return computed, (goldens.CLASS_SIZES, goldens.CLASS_ORDERS)


@check("4.class-equation", "projective", "class sizes from centralizers")
def _class_equation():
    pg = standard_projective_group()
    sizes = tuple(
        len(pg) // centralizer_size(pg, info.representative)
        for info in conjugacy_classes(pg)
    )
    return (sizes, sum(sizes)), (goldens.CLASS_SIZES, goldens.PROJECTIVE_ORDER)


@check("5", "reptheory", "character table entries and orthogonality")
def _character_table():
    table = standard_character_table()
    report = verify_character_table(table)
    computed = (
        tuple(tuple(table.chi(i)) for i in range(1, 11)),
        report.failures() or "none",
    )
    expected = (
        tuple(tuple(as_cyc8(v) for v in row) for row in goldens.CHARACTER_TABLE),
        "none",
    )
    return computed, expected


@check("6", "reptheory", "fusion matrix A for tensoring with χ7")
def _fusion():
    return standard_fusion_matrix(), goldens.FUSION_MATRIX


@check("6.products", "reptheory", "decompositions of the ten products χ7·χi")
def _fusion_products():
    table = standard_character_table()
    chi7 = table.chi(NATURAL_INDEX)
    computed = {}
    for i in range(1, 11):
        m = decompose_character(character_product(chi7, table.chi(i)), table)
        computed[i] = tuple(j for j, mult in enumerate(m, start=1) for _ in range(mult))
    return computed, goldens.FUSION_PRODUCTS


@check("6.chi7-chi10", "reptheory", "values and decomposition of χ7·χ10")
def _chi7_chi10():
    table = standard_character_table()
    values = character_product(table.chi(NATURAL_INDEX), table.chi(10))
    computed = (values, decompose_character(values, table))
    expected = (
        tuple(as_cyc8(v) for v in goldens.CHI7_CHI10_VALUES),
        goldens.CHI7_CHI10_DECOMPOSITION,
    )
    return computed, expected


@check("7", "reptheory", "multiplicity rows d(k) for k <= 5")
def _bratteli_rows():
    computed = {k: tensor_multiplicities(k) for k in goldens.BRATTELI_ROWS}
    return computed, dict(goldens.BRATTELI_ROWS)


@check("7.closed-form", "reptheory", "closed form for d(k) equals A^k, k <= 20")
def _closed_form():
    agree = sum(
        closed_form_d(ell, k) == tensor_multiplicities(k)[ell - 1]
        for ell in CLOSED_FORM_COEFFICIENTS
        for k in range(1, CLOSED_FORM_KMAX + 1)
    )
    return agree, len(CLOSED_FORM_COEFFICIENTS) * CLOSED_FORM_KMAX


@check("7.degrees", "reptheory", "Σ d_ℓ(k)·deg ρℓ = 3^k for k <= 20")
def _degree_sums():
    degrees = goldens.IRREP_DEGREES
    computed = tuple(
        sum(d * deg for d, deg in zip(tensor_multiplicities(k), degrees))
        for k in range(CLOSED_FORM_KMAX + 1)
    )
    return computed, tuple(3**k for k in range(CLOSED_FORM_KMAX + 1))


@check("8", "reptheory", "centralizer algebra dimensions for k = 0..9")
def _dimensions():
    k_values = range(len(goldens.CENTRALIZER_DIMS))
    computed = (
        tuple(centralizer_dim(k) for k in k_values),
        tuple(centralizer_dim_closed_form(k) for k in k_values),
    )
    return computed, (goldens.CENTRALIZER_DIMS, goldens.CENTRALIZER_DIMS)


@check("8.closed-form", "reptheory", "Σ d² equals (57+6·5^k+9^k)/96 for k <= 20")
def _dimension_formula():
    k_values = range(CLOSED_FORM_KMAX + 1)
    computed = tuple(centralizer_dim(k) for k in k_values)
    return computed, tuple(centralizer_dim_closed_form(k) for k in k_values)


@check("9", "reptheory", "Kronecker powers of ρ7 decompose as d(k), k <= 4")
def _kronecker_powers():
    table = standard_character_table()
    computed = {
        k: decompose_character(tensor_power_character(k, table.classes), table)
        for k in range(KRONECKER_KMAX + 1)
    }
    return computed, {k: goldens.BRATTELI_ROWS[k] for k in range(KRONECKER_KMAX + 1)}


@check("10.molien", "invariants", "Molien coefficients equal Reynolds ranks, d <= 8")
def _molien():
    g = standard_group()
    computed = tuple(molien_coeffs(g, MOLIEN_DMAX))
    return computed, tuple(invariant_dimension(g, d) for d in range(MOLIEN_DMAX + 1))


@check("10.type-ii", "invariants", "Type II code and its swe; negative controls fail")
def _type_ii():
    g = standard_group()
    code = Z4Code.all_ones_even(8)
    computed = {
        "code Type II": is_type_II(code).passed,
        "swe invariant": check_invariance(swe(code), g),
        "{0,2} Type II": is_type_II(Z4Code.from_generators([(2,)])).passed,
        "x invariant": check_invariance(Poly3.variable("x"), g),
    }
    expected = {
        "code Type II": True,
        "swe invariant": True,
        "{0,2} Type II": False,
        "x invariant": False,
    }
    return computed, expected


def select_checks(only: Iterable[str] | None = None) -> list[Check]:
    if not only:
        return list(CHECKS)
    wanted = set(only)
    return [
        c
        for c in CHECKS
        if c.check_id in wanted or c.check_id.split(".")[0] in wanted
    ]


def run_checks(
    backend: ReportBackend | None = None,
    run_id: str | None = None,
    only: Iterable[str] | None = None,
) -> list[CheckRecord]:
    run_id = run_id or uuid4().hex
    records = []
    for item in select_checks(only):
        timestamp = datetime.now(tz=timezone.utc)
        start = perf_counter()
        try:
            computed, expected = item.run()
            passed = computed == expected
            computed_text, expected_text = render(computed), render(expected)
        except Exception as exc:
            logger.exception("check %s failed to run", item.check_id)
            passed = False
            computed_text, expected_text = f"error: {exc}", "-"
        duration = perf_counter() - start

        if not passed:
            logger.warning("check %s: computed value differs", item.check_id)
        record = CheckRecord(
            run_id=run_id,
            check_id=item.check_id,
            module=item.module,
            description=item.description,
            computed=computed_text,
            expected=expected_text,
            passed=passed,
            duration=duration,
            timestamp=timestamp,
        )
        records.append(record)

        if backend is None:
            continue
        try:
            backend.save(record)
        except Exception:
            logger.exception("failed to save check %s", item.check_id)

    return records
