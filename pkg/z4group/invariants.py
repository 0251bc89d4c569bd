"""
Polynomial invariants of 𝔊 in three variables and ℤ₄-code weight enumerators.

Polynomials are ``sympy.Poly`` objects in x, y, z over the number field
QQ<ζ8>; coefficients cross the boundary as :class:`Cyc8`.

Convention: a matrix g acts on f by substitution, (g·f)(v) = f(g·v) with
v = (x, y, z) a column vector. This is a right action,
act_poly(g·h, f) = act_poly(h, act_poly(g, f)); the invariant ring is the same
either way.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from typing import TYPE_CHECKING

import numpy as np
import sympy as sp
from sympy.polys.matrices import DomainMatrix

from z4group.exactalg import Cyc8, as_cyc8, rank
from z4group.exceptions import ArithmeticConsistencyError, UnsupportedInputError

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Mapping, Sequence

    from sympy.polys.polyclasses import ANP

    from z4group.exactalg import CycMatrix, ScalarLike
    from z4group.group import FiniteGroup

logger = logging.getLogger(__name__)

TYPE_II_MAX_LENGTH = 12
DUAL_CHUNK_DIGITS = 8

ZETA8 = sp.exp(sp.I * sp.pi / 4)
FIELD = sp.QQ.algebraic_field(ZETA8)
GENS = sp.symbols("x y z")
T = sp.Symbol("t")

Monomial = tuple[int, int, int]

_VARIABLES = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}
_UNITS: tuple[Monomial, ...] = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def to_field(value: ScalarLike) -> ANP:
    """Cyc8 → QQ<ζ8>; the field is generated by ζ8 = η, so the bases agree."""
    coeffs = as_cyc8(value).coefficients
    return FIELD([sp.QQ(c.numerator, c.denominator) for c in reversed(coeffs)])


def from_field(a: ANP) -> Cyc8:
    qq = FIELD.dom
    coeffs = [Fraction(int(qq.numer(c)), int(qq.denom(c))) for c in a.to_list()]
    return Cyc8(*reversed(coeffs))


def _poly(terms: Mapping[Monomial, ANP]) -> sp.Poly:
    return sp.Poly.from_dict({m: c for m, c in terms.items() if c}, *GENS, domain=FIELD)


class Poly3:
    """Polynomial in x, y, z over Q(ζ8)."""

    __slots__ = ("_poly",)

    def __init__(self, terms: Mapping[Monomial, ScalarLike] | None = None) -> None:
        rep = {tuple(m): to_field(c) for m, c in (terms or {}).items()}
        self._poly = _poly(rep)

    @classmethod
    def _wrap(cls, poly: sp.Poly) -> Poly3:
        obj = object.__new__(cls)
        obj._poly = poly
        return obj

    @classmethod
    def constant(cls, value: ScalarLike) -> Poly3:
        return cls({(0, 0, 0): value})

    @classmethod
    def variable(cls, name: str) -> Poly3:
        return cls({_VARIABLES[name]: 1})

    @classmethod
    def monomial(cls, a: int, b: int, c: int, coeff: ScalarLike = 1) -> Poly3:
        return cls({(a, b, c): coeff})

    @property
    def poly(self) -> sp.Poly:
        return self._poly

    def _native(self) -> dict[Monomial, ANP]:
        return self._poly.as_dict(native=True)

    @property
    def terms(self) -> dict[Monomial, Cyc8]:
        return {m: from_field(c) for m, c in self._native().items()}

    def coefficient(self, mono: Monomial) -> Cyc8:
        return from_field(self._native().get(tuple(mono), FIELD.zero))

    def degree(self) -> int:
        return max((sum(m) for m in self._native()), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._native()}) <= 1

    def __bool__(self) -> bool:
        return not self._poly.is_zero

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Cyc8)):
            other = Poly3.constant(other)
        if not isinstance(other, Poly3):
            return NotImplemented
        return self._poly.rep == other._poly.rep

    def __hash__(self) -> int:
        return hash(frozenset(self._native().items()))

    def __add__(self, other: Poly3 | ScalarLike) -> Poly3:
        return Poly3._wrap(self._poly.add(_as_poly(other)._poly))

    __radd__ = __add__

    def __neg__(self) -> Poly3:
        return Poly3._wrap(self._poly.neg())

    def __sub__(self, other: Poly3 | ScalarLike) -> Poly3:
        return Poly3._wrap(self._poly.sub(_as_poly(other)._poly))

    def __rsub__(self, other: ScalarLike) -> Poly3:
        return Poly3._wrap(_as_poly(other)._poly.sub(self._poly))

    def __mul__(self, other: Poly3 | ScalarLike) -> Poly3:
        if not isinstance(other, Poly3):
            return self.scale(other)
        return Poly3._wrap(self._poly.mul(other._poly))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Poly3:
        if exponent < 0:
            raise ValueError("negative powers of polynomials are not supported")
        return Poly3._wrap(self._poly.pow(exponent))

    def scale(self, value: ScalarLike) -> Poly3:
        return Poly3._wrap(self._poly.mul_ground(to_field(value)))

    def sorted_terms(self) -> list[tuple[Monomial, Cyc8]]:
        return sorted(self.terms.items(), key=lambda item: item[0], reverse=True)

    def serialize(self) -> str:
        """Canonical text: ``"c * x^a y^b z^c"`` terms joined by ``" + "``."""
        terms = self.sorted_terms()
        if not terms:
            return "0"
        return " + ".join(
            f"{coeff.serialize()} * {_monomial_text(mono)}" for mono, coeff in terms
        )

    def __str__(self) -> str:
        terms = self.sorted_terms()
        if not terms:
            return "0"
        parts = []
        for mono, coeff in terms:
            mono_text = _monomial_text(mono)
            if mono == (0, 0, 0):
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono_text)
            elif coeff == -1:
                parts.append(f"-{mono_text}")
            else:
                parts.append(f"({coeff})*{mono_text}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly3({self})"


def _as_poly(value: Poly3 | ScalarLike) -> Poly3:
    return value if isinstance(value, Poly3) else Poly3.constant(value)


def _monomial_text(mono: Monomial) -> str:
    parts = []
    for name, power in zip("xyz", mono):
        if power == 1:
            parts.append(name)
        elif power > 1:
            parts.append(f"{name}^{power}")
    return " ".join(parts) if parts else "1"


def monomials(degree: int) -> list[Monomial]:
    return [
        (a, b, degree - a - b)
        for a in range(degree, -1, -1)
        for b in range(degree - a, -1, -1)
    ]


def act_poly(g: CycMatrix, f: Poly3) -> Poly3:
    """f ↦ f(g·v), expanding each variable into its row of g."""
    if g.shape != (3, 3):
        raise UnsupportedInputError("act_poly needs a 3x3 matrix")
    forms = [_poly({_UNITS[j]: to_field(g[i, j]) for j in range(3)}) for i in range(3)]
    one = _poly({(0, 0, 0): FIELD.one})
    powers: list[list[sp.Poly]] = [[one] for _ in range(3)]

    def power(i: int, n: int) -> sp.Poly:
        cached = powers[i]
        while len(cached) <= n:
            cached.append(cached[-1].mul(forms[i]))
        return cached[n]

    result = _poly({})
    for (a, b, c), coeff in f.poly.as_dict(native=True).items():
        term = power(0, a).mul(power(1, b)).mul(power(2, c))
        result = result.add(term.mul_ground(coeff))
    return Poly3._wrap(result)


@dataclass(frozen=True)
class _DiagonalSplit:
    diagonal: tuple[CycMatrix, ...]
    transversal: tuple[CycMatrix, ...]


@cache
def _diagonal_split(group: FiniteGroup) -> _DiagonalSplit:
    """The diagonal subgroup K and a transversal {t} with G = ⋃ t·K."""
    diagonal = tuple(e.matrix for e in group.elements if e.matrix.is_diagonal())
    seen: set[str] = set()
    transversal = []
    for e in group.elements:
        if e.key in seen:
            continue
        transversal.append(e.matrix)
        seen.update((e.matrix @ h).serialize() for h in diagonal)
    logger.debug(
        "Diagonal subgroup of order %d, %d cosets", len(diagonal), len(transversal)
    )
    return _DiagonalSplit(diagonal=diagonal, transversal=tuple(transversal))


def _diagonal_sum(diagonal: Sequence[CycMatrix], f: Poly3) -> Poly3:
    """Σ_{h∈K} act_poly(h, f): each monomial is scaled by Σ_h h00^a h11^b h22^c."""
    terms = {}
    for (a, b, c), coeff in f.terms.items():
        weight = sum(
            (h[0, 0] ** a * h[1, 1] ** b * h[2, 2] ** c for h in diagonal), Cyc8()
        )
        if weight:
            terms[(a, b, c)] = coeff * weight
    return Poly3(terms)


def reynolds(
    group: FiniteGroup, f: Poly3, parallel: bool = False, workers: int | None = None
) -> Poly3:
    """(1/|G|)·Σ_g act_poly(g, f), summed over the cosets of the diagonal subgroup.

    With ``parallel`` the cosets are summed on a thread pool.
    """
    split = _diagonal_split(group)

    def coset_term(t: CycMatrix) -> Poly3:
        return _diagonal_sum(split.diagonal, act_poly(t, f))

    if parallel:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(coset_term, split.transversal))
    else:
        parts = [coset_term(t) for t in split.transversal]
    total = Poly3()
    for part in parts:
        total = total + part
    return total.scale(Fraction(1, len(group)))


def reynolds_naive(group: FiniteGroup, f: Poly3) -> Poly3:
    total = Poly3()
    for e in group.elements:
        total = total + act_poly(e.matrix, f)
    return total.scale(Fraction(1, len(group)))


def check_invariance(f: Poly3, group: FiniteGroup) -> bool:
    """True iff f is fixed by every generator, hence by the whole group."""
    return all(act_poly(gen, f) == f for gen in group.generators)


def _charpoly_coeffs(g: CycMatrix) -> tuple[ANP, ...]:
    rows = [[to_field(x) for x in g.row(i)] for i in range(g.rows)]
    return tuple(DomainMatrix(rows, g.shape, FIELD).charpoly())


def characteristic_polynomial(g: CycMatrix) -> sp.Poly:
    """det(t·I - g) as a polynomial in t over QQ<ζ8>."""
    return sp.Poly.from_list(list(_charpoly_coeffs(g)), T, domain=FIELD)


def reciprocal_series(char: sp.Poly, dmax: int) -> sp.Poly:
    """1/det(I - t·g) through t^dmax, from the characteristic polynomial of g.

    det(I - t·g) is the reversal of the monic charpoly p of degree n, so the
    quotient of t^(dmax+n) by p lists the series coefficients highest first.
    """
    if dmax < 0:
        raise ValueError("dmax must be nonnegative")
    numerator = sp.Poly.from_dict({(dmax + char.degree(),): FIELD.one}, T, domain=FIELD)
    quotient, _ = numerator.div(char)
    reversed_terms = {
        (dmax - k,): c for (k,), c in quotient.as_dict(native=True).items()
    }
    return sp.Poly.from_dict(reversed_terms, T, domain=FIELD)


def series_coefficients(series: sp.Poly, dmax: int) -> list[Cyc8]:
    native = series.as_dict(native=True)
    return [from_field(native.get((d,), FIELD.zero)) for d in range(dmax + 1)]


def molien_series(group: FiniteGroup, dmax: int) -> sp.Poly:
    """(1/|G|)·Σ_g 1/det(I - t·g), truncated at t^dmax.

    Elements sharing a characteristic polynomial share a term, so each distinct
    polynomial is expanded once.
    """
    if dmax < 0:
        raise ValueError("dmax must be nonnegative")
    counts: Counter[tuple[ANP, ...]] = Counter()
    for e in group.elements:
        counts[_charpoly_coeffs(e.matrix)] += 1
    logger.debug("Molien sum over %d characteristic polynomials", len(counts))
    total = sp.Poly.from_dict({}, T, domain=FIELD)
    for coeffs, count in counts.items():
        char = sp.Poly.from_list(list(coeffs), T, domain=FIELD)
        total = total.add(reciprocal_series(char, dmax).mul_ground(to_field(count)))
    return total.mul_ground(to_field(Fraction(1, len(group))))


def molien_coeffs(group: FiniteGroup, dmax: int) -> list[int]:
    series = molien_series(group, dmax)
    result = []
    for d, c in enumerate(series_coefficients(series, dmax)):
        if not c.is_integer() or c.as_int() < 0:
            raise ArithmeticConsistencyError(f"Molien coefficient c{d} = {c}")
        result.append(c.as_int())
    return result


def invariant_dimension(group: FiniteGroup, degree: int, parallel: bool = False) -> int:
    """Rank of the Reynolds images of all monomials of the given degree."""
    basis = monomials(degree)
    vectors = []
    for mono in basis:
        image = reynolds(group, Poly3.monomial(*mono), parallel=parallel)
        vectors.append([image.coefficient(m) for m in basis])
    return rank(vectors)


@dataclass(frozen=True)
class Z4Code:
    """An additive subgroup of ℤ₄ⁿ, stored with all of its codewords."""

    length: int
    generators: tuple[tuple[int, ...], ...]
    elements: frozenset[tuple[int, ...]] = field(repr=False)

    @classmethod
    def from_generators(
        cls, generators: Iterable[Sequence[int]], length: int | None = None
    ) -> Z4Code:
        gens = tuple(tuple(int(x) % 4 for x in g) for g in generators)
        if length is None:
            if not gens:
                raise UnsupportedInputError(
                    "length is required for a code with no generators"
                )
            length = len(gens[0])
        if length < 1:
            raise UnsupportedInputError("code length must be at least 1")
        if any(len(g) != length for g in gens):
            raise UnsupportedInputError(f"every generator must have length {length}")
        elements = frozenset(_span(gens, length))
        return cls(length=length, generators=gens, elements=elements)

    @classmethod
    def zero_code(cls, length: int) -> Z4Code:
        return cls.from_generators([], length=length)

    @classmethod
    def all_ones_even(cls, length: int = 8) -> Z4Code:
        """Span of 1ⁿ and every 2eᵢ+2eⱼ; Type II whenever 8 divides the length."""
        gens = [(1,) * length]
        for i, j in itertools.combinations(range(length), 2):
            gens.append(tuple(2 if k in (i, j) else 0 for k in range(length)))
        return cls.from_generators(gens, length=length)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(sorted(self.elements))

    def __contains__(self, v: object) -> bool:
        return v in self.elements

    def as_array(self) -> np.ndarray:
        return np.array(sorted(self.elements), dtype=np.int64).reshape(-1, self.length)


def _span(generators: Sequence[tuple[int, ...]], length: int) -> set[tuple[int, ...]]:
    zero = (0,) * length
    span = {zero}
    frontier = [zero]
    while frontier:
        v = frontier.pop()
        for g in generators:
            w = tuple((a + b) % 4 for a, b in zip(v, g))
            if w not in span:
                span.add(w)
                frontier.append(w)
    return span


def euclidean_norm(v: Sequence[int]) -> int:
    return sum(int(x) ** 2 for x in v)


def symmetrized_weights(v: Sequence[int]) -> Monomial:
    counts = Counter(int(x) % 4 for x in v)
    return counts[0], counts[1] + counts[3], counts[2]


def swe(code: Z4Code) -> Poly3:
    """Σ_{v∈C} x^{wt0(v)} y^{wt1(v)+wt3(v)} z^{wt2(v)}."""
    counts = Counter(symmetrized_weights(v) for v in code.elements)
    return Poly3(dict(counts))


def _all_vectors(length: int) -> np.ndarray:
    return np.array(
        list(itertools.product(range(4), repeat=length)), dtype=np.int64
    ).reshape(-1, length)


def _dual_chunks(code: Z4Code) -> Iterator[np.ndarray]:
    """Members of C⊥, enumerated over ℤ₄ⁿ in blocks of 4^8 vectors."""
    n = code.length
    if n > TYPE_II_MAX_LENGTH:
        raise UnsupportedInputError(
            f"dual enumeration is capped at length {TYPE_II_MAX_LENGTH}, got {n}"
        )
    gens = np.array(code.generators, dtype=np.int64).reshape(-1, n)
    low_digits = min(n, DUAL_CHUNK_DIGITS)
    low = _all_vectors(low_digits)
    for prefix in itertools.product(range(4), repeat=n - low_digits):
        head = np.tile(np.array(prefix, dtype=np.int64), (len(low), 1))
        chunk = np.hstack([head, low])
        if len(gens):
            chunk = chunk[np.all((chunk @ gens.T) % 4 == 0, axis=1)]
        yield chunk


def dual_code(code: Z4Code) -> Z4Code:
    """C⊥ = {u : (u, v) ≡ 0 mod 4 for all v ∈ C}."""
    members = frozenset(
        tuple(int(x) for x in row) for chunk in _dual_chunks(code) for row in chunk
    )
    return Z4Code(length=code.length, generators=(), elements=members)


def is_self_orthogonal(code: Z4Code) -> bool:
    gens = np.array(code.generators, dtype=np.int64).reshape(-1, code.length)
    return bool(np.all((gens @ gens.T) % 4 == 0))


def is_self_dual(code: Z4Code) -> bool:
    """C ⊆ C⊥ and |C⊥| = |C|; the dual is counted, not stored."""
    if not is_self_orthogonal(code):
        return False
    size = 0
    for chunk in _dual_chunks(code):
        size += len(chunk)
        if size > len(code):
            return False
    return size == len(code)


@dataclass(frozen=True)
class TypeIIResult:
    passed: bool
    reason: str

    def __bool__(self) -> bool:
        return self.passed


def is_type_II(code: Z4Code) -> TypeIIResult:  # noqa: N802
    """Self-dual with every Euclidean norm ≡ 0 mod 8."""
    if code.length > TYPE_II_MAX_LENGTH:
        raise UnsupportedInputError(
            f"Type II check is capped at length {TYPE_II_MAX_LENGTH}, got {code.length}"
        )
    if not is_self_dual(code):
        return TypeIIResult(False, "code is not self-dual")
    bad = next((v for v in sorted(code.elements) if euclidean_norm(v) % 8), None)
    if bad is not None:
        return TypeIIResult(
            False, f"codeword {bad} has norm {euclidean_norm(bad)} ≢ 0 mod 8"
        )
    return TypeIIResult(True, "self-dual and every norm ≡ 0 mod 8")
