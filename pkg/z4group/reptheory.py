"""
Irreducible representations of PG, its character table, and the tensor powers
of the natural three-dimensional representation ρ7.

Irreps are written down constructively: ρ7 from the generator matrices, its
conjugate and sign twists, and ρ3, ρ4, ρ10 as invariant subspaces of ρ7⊗ρ7 and
ρ7⊗ρ6 in explicit bases. Everything downstream (characters, fusion matrix,
multiplicities) is derived from those matrices in exact arithmetic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, cached_property
from typing import TYPE_CHECKING

import networkx as nx

from z4group import goldens
from z4group.exactalg import ETA, I, ONE, ZERO, Cyc8, CycMatrix, as_cyc8
from z4group.exceptions import (
    DimensionMismatchError,
    NotACharacterError,
    SingularMatrixError,
    TranscriptionError,
)
from z4group.group import evaluate_word
from z4group.models import VerificationReport
from z4group.projective import (
    check_projective_relations,
    conjugacy_classes,
    standard_projective_group,
)

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from z4group.projective import ConjClassInfo

logger = logging.getLogger(__name__)

NATURAL_INDEX = 7

_M = ((1, 2, 1), (1, 0, -1), (1, -2, 1))


@dataclass(frozen=True)
class Representation:
    """A representation of PG given by the images of D̄ and T̄.

    Matrices act on column vectors: column j of an image is the image of basis
    vector j. ``basis`` holds, for restricted representations, the columns of
    the ambient vectors spanning the invariant subspace.
    """

    index: int
    image_d: CycMatrix
    image_t: CycMatrix
    basis: CycMatrix | None = field(default=None, compare=False, repr=False)

    @property
    def degree(self) -> int:
        return self.image_d.rows

    @property
    def images(self) -> dict[str, CycMatrix]:
        return {"D": self.image_d, "T": self.image_t}

    def evaluate(self, word: str) -> CycMatrix:
        return evaluate_word(word, self.images)

    def check_relations(self) -> VerificationReport:
        return check_projective_relations(self.image_d, self.image_t, projective=False)

    def tensor(self, other: Representation, index: int = 0) -> Representation:
        return Representation(
            index=index,
            image_d=self.image_d.kron(other.image_d),
            image_t=self.image_t.kron(other.image_t),
        )


def _tensor_basis(vectors: Sequence[Mapping[tuple[int, int], int]]) -> CycMatrix:
    """Columns e_i⊗e'_j (1-based i, j) at row 3(i-1)+(j-1)."""
    columns = []
    for vector in vectors:
        column = [0] * 9
        for (i, j), coeff in vector.items():
            column[3 * (i - 1) + (j - 1)] = coeff
        columns.append(column)
    return CycMatrix.from_rows(columns).transpose()


V4_BASIS = _tensor_basis(
    [
        {(1, 1): 1, (3, 3): 1},
        {(1, 3): 1, (3, 1): 1},
        {(2, 2): 1},
    ]
)
V3_BASIS = _tensor_basis(
    [
        {(1, 3): 2, (3, 1): 2},
        {(1, 1): 1, (3, 3): 1, (1, 3): -1, (3, 1): -1, (2, 2): -1},
    ]
)
V10_BASIS = _tensor_basis(
    [
        {(1, 1): 1, (3, 3): -1},
        {(1, 3): 1, (3, 1): -1},
        {(1, 2): 1},
        {(2, 1): 1},
        {(2, 3): 1},
        {(3, 2): 1},
    ]
)


def restrict(rep: Representation, basis: CycMatrix, index: int) -> Representation:
    """Restriction of ``rep`` to the invariant subspace spanned by ``basis``."""
    bt = basis.transpose()
    try:
        left_inverse = (bt @ basis).inverse() @ bt
    except SingularMatrixError as exc:
        raise TranscriptionError(f"basis for ρ{index} is not independent") from exc
    images = []
    for image in (rep.image_d, rep.image_t):
        restricted = left_inverse @ image @ basis
        if image @ basis != basis @ restricted:
            raise TranscriptionError(f"subspace for ρ{index} is not invariant")
        images.append(restricted)
    return Representation(
        index=index, image_d=images[0], image_t=images[1], basis=basis
    )


def natural_representation() -> Representation:
    """ρ7(D̄) = η𝒟 = diag(η, i, -η) and ρ7(T̄) = η³𝒯 = -M/2."""
    return Representation(
        index=7,
        image_d=CycMatrix.diag(ETA, I, -ETA),
        image_t=CycMatrix.from_rows(_M).scale(Fraction(-1, 2)),
    )


def build_irreps() -> list[Representation]:
    """ρ1..ρ10, each checked against the presentation of PG."""
    rho1 = Representation(1, CycMatrix.diag(1), CycMatrix.diag(1))
    rho2 = Representation(2, CycMatrix.diag(-1), CycMatrix.diag(-1))
    rho7 = natural_representation()
    rho6 = Representation(6, rho7.image_d.conj(), rho7.image_t.conj())
    rho8 = rho2.tensor(rho7, index=8)
    rho9 = rho2.tensor(rho6, index=9)
    rho4 = restrict(rho7.tensor(rho7), V4_BASIS, index=4)
    rho5 = rho4.tensor(rho2, index=5)
    rho76 = rho7.tensor(rho6)
    rho3 = restrict(rho76, V3_BASIS, index=3)
    rho10 = restrict(rho76, V10_BASIS, index=10)

    irreps = [rho1, rho2, rho3, rho4, rho5, rho6, rho7, rho8, rho9, rho10]
    for rep in irreps:
        report = rep.check_relations()
        if not report.all_passed:
            raise TranscriptionError(
                f"ρ{rep.index} violates {', '.join(report.failures())}"
            )
    logger.debug("Built %d irreducible representations", len(irreps))
    return irreps


def character(
    rep: Representation, classes: Sequence[ConjClassInfo]
) -> tuple[Cyc8, ...]:
    return tuple(rep.evaluate(info.representative_word).trace() for info in classes)


def character_product(a: Sequence[Cyc8], b: Sequence[Cyc8]) -> tuple[Cyc8, ...]:
    return tuple(as_cyc8(x) * as_cyc8(y) for x, y in zip(a, b))


@dataclass(frozen=True)
class CharacterTable:
    """Rows are irreducible characters, columns are classes in table order."""

    matrix: CycMatrix
    classes: tuple[ConjClassInfo, ...]

    @property
    def group_order(self) -> int:
        return sum(info.size for info in self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(info.size for info in self.classes)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(v.as_int() for v in self.matrix.column(0))

    def chi(self, i: int) -> tuple[Cyc8, ...]:
        """Values of χ_i (1-based)."""
        return self.matrix.row(i - 1)

    @cached_property
    def inverse(self) -> CycMatrix:
        return self.matrix.inverse()

    def inner_product(self, a: Sequence[Cyc8], b: Sequence[Cyc8]) -> Cyc8:
        """(1/|PG|)·Σ size·a·conj(b)."""
        total = ZERO
        for size, x, y in zip(self.sizes, a, b):
            total = total + as_cyc8(x) * as_cyc8(y).conj() * size
        return total * Fraction(1, self.group_order)

    def model_dump(self) -> dict:
        return {
            "classes": [info.model_dump() for info in self.classes],
            "rows": [
                [v.serialize() for v in self.chi(i)]
                for i in range(1, self.matrix.rows + 1)
            ],
        }


def build_character_table(
    irreps: Sequence[Representation] | None = None,
    classes: Sequence[ConjClassInfo] | None = None,
) -> CharacterTable:
    irreps = build_irreps() if irreps is None else irreps
    if classes is None:
        classes = conjugacy_classes(standard_projective_group())
    rows = [character(rep, classes) for rep in irreps]
    return CharacterTable(matrix=CycMatrix.from_rows(rows), classes=tuple(classes))


def verify_character_table(table: CharacterTable) -> VerificationReport:
    n = table.matrix.rows
    order = table.group_order
    results: dict[str, bool] = {}
    results["first row trivial"] = all(v == 1 for v in table.chi(1))
    results["first column is degrees"] = table.degrees == goldens.IRREP_DEGREES[:n]
    results["row orthogonality"] = all(
        sum(
            (
                table.chi(r)[j] * table.chi(s)[j].conj() * table.sizes[j]
                for j in range(n)
            ),
            ZERO,
        )
        == (order if r == s else 0)
        for r in range(1, n + 1)
        for s in range(1, n + 1)
    )
    columns = [table.matrix.column(j) for j in range(n)]
    results["column orthogonality"] = all(
        sum((x * y.conj() for x, y in zip(columns[j], columns[k])), ZERO)
        == (Fraction(order, table.sizes[j]) if j == k else 0)
        for j in range(n)
        for k in range(n)
    )
    printed = CycMatrix.from_rows(goldens.CHARACTER_TABLE)
    results["matches printed table"] = table.matrix == printed
    return VerificationReport(title="character table", results=results)


def _as_multiplicity(value: Cyc8, what: str) -> int:
    if not value.is_integer() or value.as_int() < 0:
        raise NotACharacterError(f"{what} is {value}, not a nonnegative integer")
    return value.as_int()


def decompose_character(
    values: Sequence[Cyc8 | int], table: CharacterTable | None = None
) -> tuple[int, ...]:
    """Multiplicities m with values = Σ m_i χ_i, i.e. m = values·X⁻¹."""
    table = standard_character_table() if table is None else table
    n = table.matrix.rows
    if len(values) != n:
        raise DimensionMismatchError(
            f"expected {n} character values, got {len(values)}"
        )
    row = CycMatrix(1, n, values)
    m = row @ table.inverse
    return tuple(
        _as_multiplicity(m[0, j], f"multiplicity of χ{j + 1}") for j in range(n)
    )


def fusion_matrix(table: CharacterTable) -> tuple[tuple[int, ...], ...]:
    """A = X·diag(χ7)·X⁻¹; row i gives the decomposition of χ7·χi."""
    chi7 = table.chi(NATURAL_INDEX)
    product = table.matrix @ CycMatrix.diag(*chi7) @ table.inverse
    n = product.rows
    return tuple(
        tuple(_as_multiplicity(product[i, j], f"A[{i + 1}][{j + 1}]") for j in range(n))
        for i in range(n)
    )


def tensor_multiplicities(
    k: int, fusion: Sequence[Sequence[int]] | None = None
) -> tuple[int, ...]:
    """d(k) = e1·A^k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return multiplicity_sequence(k, fusion)[k]


def multiplicity_sequence(
    kmax: int, fusion: Sequence[Sequence[int]] | None = None
) -> list[tuple[int, ...]]:
    fusion = standard_fusion_matrix() if fusion is None else fusion
    n = len(fusion)
    d = tuple(1 if i == 0 else 0 for i in range(n))
    sequence = [d]
    for _ in range(kmax):
        d = tuple(sum(d[i] * fusion[i][j] for i in range(n)) for j in range(n))
        sequence.append(d)
    return sequence


# d_ℓ(k) = Σ coefficient·base^k over the bases 3, a, b, -1, 1, i, -i.
_A = Cyc8(-1, 0, -2, 0)
_B = Cyc8(-1, 0, 2, 0)
_BASES = (Cyc8(3), _A, _B, Cyc8(-1), ONE, I, -I)


def _row(*values: Cyc8 | Fraction | int) -> tuple[Cyc8, ...]:
    return tuple(as_cyc8(v) for v in values)


_F = Fraction

CLOSED_FORM_COEFFICIENTS: dict[int, tuple[Cyc8, ...]] = {
    1: _row(_F(1, 96), _F(1, 32), _F(1, 32), _F(5, 32), _F(3, 16), _F(1, 8), _F(1, 8)),
    2: _row(
        _F(1, 96), _F(1, 32), _F(1, 32), _F(-3, 32), _F(-1, 16), _F(-1, 8), _F(-1, 8)
    ),
    3: _row(_F(1, 48), _F(1, 16), _F(1, 16), _F(1, 16), _F(1, 8), 0, 0),
    4: _row(
        _F(1, 32), _F(-1, 32), _F(-1, 32), _F(7, 32), _F(1, 16), _F(-1, 8), _F(-1, 8)
    ),
    5: _row(
        _F(1, 32), _F(-1, 32), _F(-1, 32), _F(-1, 32), _F(-3, 16), _F(1, 8), _F(1, 8)
    ),
    6: _row(_F(1, 32), _A / 32, _B / 32, _F(-5, 32), _F(3, 16), I / 8, -I / 8),
    7: _row(_F(1, 32), _B / 32, _A / 32, _F(-5, 32), _F(3, 16), -I / 8, I / 8),
    8: _row(_F(1, 32), _B / 32, _A / 32, _F(3, 32), _F(-1, 16), I / 8, -I / 8),
    9: _row(_F(1, 32), _A / 32, _B / 32, _F(3, 32), _F(-1, 16), -I / 8, I / 8),
    10: _row(_F(1, 16), _F(1, 16), _F(1, 16), _F(-1, 16), _F(-1, 8), 0, 0),
}


def closed_form_d(index: int, k: int) -> int:
    """Evaluate the closed formula for d_index(k), k >= 1, exactly."""
    if k < 1:
        raise ValueError("the closed form holds for k >= 1")
    try:
        coefficients = CLOSED_FORM_COEFFICIENTS[index]
    except KeyError:
        raise ValueError(f"no irreducible ρ{index}") from None
    total = ZERO
    for coefficient, base in zip(coefficients, _BASES):
        if coefficient:
            total = total + coefficient * base**k
    if not total.is_integer() or total.as_int() < 0:
        raise TranscriptionError(f"closed form for d{index}({k}) gave {total}")
    return total.as_int()


def centralizer_dim(k: int, fusion: Sequence[Sequence[int]] | None = None) -> int:
    """dim End_PG(V7^⊗k) = Σ_ℓ d_ℓ(k)²."""
    return sum(d * d for d in tensor_multiplicities(k, fusion))


def centralizer_dim_closed_form(k: int) -> int:
    """(57 + 6·5^k + 9^k)/96 for k >= 1; 1 for k = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1
    numerator = 57 + 6 * 5**k + 9**k
    if numerator % 96:
        raise TranscriptionError(f"closed form for dim at k={k} is not integral")
    return numerator // 96


@dataclass(frozen=True, eq=False)
class FusionState:
    """Fusion matrix, multiplicity vectors and the Bratteli diagram up to kmax.

    Nodes of ``graph`` are (k, ℓ) with attribute ``multiplicity``; edges carry
    ``weight`` = A[ℓ][m].
    """

    fusion: tuple[tuple[int, ...], ...]
    d_vectors: dict[int, tuple[int, ...]]
    graph: nx.DiGraph

    @property
    def kmax(self) -> int:
        return max(self.d_vectors)

    @property
    def multiplicity_free(self) -> bool:
        return all(entry <= 1 for row in self.fusion for entry in row)

    def level(self, k: int) -> dict[int, int]:
        return {
            ell: self.graph.nodes[(k, ell)]["multiplicity"]
            for ell in range(1, len(self.fusion) + 1)
            if (k, ell) in self.graph
        }

    def square_sum(self, k: int) -> int:
        return sum(m * m for m in self.level(k).values())

    def path_counts(self) -> dict[tuple[int, int], int]:
        """Weighted number of paths from the root to every node."""
        counts: dict[tuple[int, int], int] = {}
        for node in nx.topological_sort(self.graph):
            preds = list(self.graph.predecessors(node))
            if not preds:
                counts[node] = 1
                continue
            counts[node] = sum(
                counts[p] * self.graph.edges[p, node]["weight"] for p in preds
            )
        return counts

    def to_json_dict(self) -> dict:
        return {
            "levels": [
                {
                    "k": k,
                    "nodes": [
                        {"irrep": ell, "multiplicity": m}
                        for ell, m in self.level(k).items()
                    ],
                    "square_sum": self.square_sum(k),
                }
                for k in range(self.kmax + 1)
            ],
            "edges": [
                {"source": list(u), "target": list(v), "weight": data["weight"]}
                for u, v, data in sorted(self.graph.edges(data=True))
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph bratteli {", "  rankdir=TB;"]
        for k in range(self.kmax + 1):
            names = []
            for ell, m in self.level(k).items():
                name = f"n{k}_{ell}"
                names.append(name)
                lines.append(f'  {name} [label="ρ{ell},{m}"];')
            lines.append("  { rank=same; " + " ".join(names) + " }")
        for (k0, a), (k1, b), data in sorted(self.graph.edges(data=True)):
            attrs = f' [label="{data["weight"]}"]' if data["weight"] > 1 else ""
            lines.append(f"  n{k0}_{a} -> n{k1}_{b}{attrs};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def bratteli_diagram(
    kmax: int, fusion: Sequence[Sequence[int]] | None = None
) -> FusionState:
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    fusion = standard_fusion_matrix() if fusion is None else fusion
    fusion = tuple(tuple(row) for row in fusion)
    sequence = multiplicity_sequence(kmax, fusion)
    graph = nx.DiGraph()
    for k, d in enumerate(sequence):
        for ell, m in enumerate(d, start=1):
            if m > 0:
                graph.add_node((k, ell), level=k, irrep=ell, multiplicity=m)
        if k == 0:
            continue
        for ell, prev in enumerate(sequence[k - 1], start=1):
            if prev == 0:
                continue
            for target, weight in enumerate(fusion[ell - 1], start=1):
                if weight > 0 and d[target - 1] > 0:
                    graph.add_edge((k - 1, ell), (k, target), weight=weight)
    logger.debug(
        "Bratteli diagram to level %d: %d nodes, %d edges",
        kmax,
        graph.number_of_nodes(),
        graph.number_of_edges(),
    )
    return FusionState(
        fusion=fusion, d_vectors=dict(enumerate(sequence)), graph=graph
    )


def tensor_power_character(
    k: int,
    classes: Sequence[ConjClassInfo] | None = None,
    rep: Representation | None = None,
) -> tuple[Cyc8, ...]:
    """Character of ρ^⊗k from traces of literal Kronecker powers."""
    rep = natural_representation() if rep is None else rep
    if classes is None:
        classes = conjugacy_classes(standard_projective_group())
    values = []
    for info in classes:
        g = rep.evaluate(info.representative_word)
        power = CycMatrix.identity(1)
        for _ in range(k):
            power = power.kron(g)
        values.append(power.trace())
    return tuple(values)


@cache
def standard_irreps() -> tuple[Representation, ...]:
    return tuple(build_irreps())


@cache
def standard_character_table() -> CharacterTable:
    return build_character_table(standard_irreps())


@cache
def standard_fusion_matrix() -> tuple[tuple[int, ...], ...]:
    return fusion_matrix(standard_character_table())
