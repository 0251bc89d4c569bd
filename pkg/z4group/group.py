"""
The order-384 matrix group generated by 𝒟 = diag(1, η, -1) and 𝒯.

Two independent descriptions live here: breadth-first closure of the generator
matrices (``generate_group``) and the symbolic normal-form automaton over the
eight word shapes W1-W8 (``nf_multiply``). Tests hold them against each other.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cache
from itertools import product
from typing import TYPE_CHECKING

from z4group.exactalg import ETA, CycMatrix, mat_det
from z4group.exceptions import (
    ElementNotFoundError,
    GroupTooLargeError,
    MalformedWordError,
    SingularMatrixError,
    UnsupportedInputError,
)
from z4group.models import VerificationReport

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Mapping, Sequence

logger = logging.getLogger(__name__)

DEFAULT_MAX_ELEMENTS = 10**6

D_MATRIX = CycMatrix.diag(1, ETA, -1)
T_MATRIX = CycMatrix.from_rows([[1, 2, 1], [1, 0, -1], [1, -2, 1]]).scale(ETA / 2)
GENERATOR_LABELS = ("D", "T")

# 𝒯 is not unitary for the standard inner product; 𝔊 preserves diag(1, 2, 1).
INVARIANT_FORM = CycMatrix.diag(1, 2, 1)
_INVARIANT_FORM_INV = CycMatrix.diag(1, Fraction(1, 2), 1)


class Letter(str, Enum):
    D = "D"
    T = "T"


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class Shape(str, Enum):
    W1 = "W1"
    W2 = "W2"
    W3 = "W3"
    W4 = "W4"
    W5 = "W5"
    W6 = "W6"
    W7 = "W7"
    W8 = "W8"


_ANY = tuple(range(1, 8))
_ODD = (1, 3, 5, 7)
_EVEN = (2, 4, 6)

# Allowed exponent values per shape, in word order.
SHAPE_RANGES: dict[Shape, tuple[tuple[int, ...], ...]] = {
    Shape.W1: (),
    Shape.W2: (_ANY,),
    Shape.W3: (_ANY,),
    Shape.W4: (_ANY, _ANY),
    Shape.W5: (_ODD, _ANY),
    Shape.W6: (_ANY, _ODD, _ANY),
    Shape.W7: (_EVEN, _ODD),
    Shape.W8: (_ANY, _EVEN, _ODD),
}

# Letter layout per shape; None marks a fixed exponent of 1.
_SHAPE_LETTERS: dict[Shape, tuple[tuple[str, int | None], ...]] = {
    Shape.W1: (),
    Shape.W2: (("D", 0),),
    Shape.W3: (("T", 0),),
    Shape.W4: (("D", 0), ("T", 1)),
    Shape.W5: (("T", 0), ("D", 1)),
    Shape.W6: (("D", 0), ("T", 1), ("D", 2)),
    Shape.W7: (("T", None), ("D", 0), ("T", 1)),
    Shape.W8: (("D", 0), ("T", None), ("D", 1), ("T", 2)),
}

# T·D^m·T = D^α·T^β·D^γ for odd m.
ODD_TDT: dict[int, tuple[int, int, int]] = {
    1: (7, 3, 7),
    3: (5, 5, 5),
    5: (3, 7, 3),
    7: (1, 1, 1),
}


@dataclass(frozen=True)
class NormalWord:
    shape: Shape
    exponents: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "shape", Shape(self.shape))
        object.__setattr__(self, "exponents", tuple(self.exponents))
        ranges = SHAPE_RANGES[self.shape]
        if len(self.exponents) != len(ranges):
            raise MalformedWordError(
                f"{self.shape.value} takes {len(ranges)} exponents, "
                f"got {len(self.exponents)}"
            )
        for value, allowed in zip(self.exponents, ranges):
            if value not in allowed:
                raise MalformedWordError(
                    f"exponent {value} out of range {allowed} for {self.shape.value}"
                )

    @classmethod
    def identity(cls) -> NormalWord:
        return cls(Shape.W1)

    @classmethod
    def parse(cls, text: str) -> NormalWord:
        """Inverse of :meth:`serialize`, e.g. ``"W6:7,3,7"``."""
        tag, _, rest = text.partition(":")
        try:
            shape = Shape(tag.strip())
            exponents = tuple(int(x) for x in rest.split(",") if x.strip())
        except ValueError as exc:
            raise MalformedWordError(f"cannot parse normal word {text!r}") from exc
        return cls(shape, exponents)

    def factors(self) -> tuple[tuple[str, int], ...]:
        return tuple(
            (letter, 1 if slot is None else self.exponents[slot])
            for letter, slot in _SHAPE_LETTERS[self.shape]
        )

    def serialize(self) -> str:
        return f"{self.shape.value}:" + ",".join(str(e) for e in self.exponents)

    def __str__(self) -> str:
        return format_word(self.factors())


def format_word(factors: Iterable[tuple[str, int]]) -> str:
    parts = [letter if exp == 1 else f"{letter}^{exp}" for letter, exp in factors]
    return " ".join(parts) if parts else "1"


_TOKEN = re.compile(r"\s*([DT])(?:\^(-?\d+))?\s*")


def parse_word(text: str) -> list[tuple[str, int]]:
    """Parse ``"D^3 T D^2 T^5"`` into ``[("D", 3), ("T", 1), ...]``."""
    stripped = text.strip()
    if stripped in ("", "1"):
        return []
    factors = []
    position = 0
    while position < len(stripped):
        match = _TOKEN.match(stripped, position)
        if match is None:
            raise MalformedWordError(f"cannot parse word {text!r} at offset {position}")
        factors.append((match.group(1), int(match.group(2) or 1)))
        position = match.end()
    return factors


# Shape reduction. All exponents are taken mod 8.


def _dtd(a: int, b: int, c: int) -> NormalWord:
    """Normal form of D^a T^b D^c."""
    a, b, c = a % 8, b % 8, c % 8
    if b % 2 == 0:
        # T^b is central for even b.
        d = (a + c) % 8
        if b == 0:
            return NormalWord(Shape.W2, (d,)) if d else NormalWord.identity()
        return NormalWord(Shape.W4, (d, b)) if d else NormalWord(Shape.W3, (b,))
    if a == 0 and c == 0:
        return NormalWord(Shape.W3, (b,))
    if a == 0:
        return NormalWord(Shape.W5, (b, c))
    if c == 0:
        return NormalWord(Shape.W4, (a, b))
    return NormalWord(Shape.W6, (a, b, c))


def _dtdt(a: int, e: int, p: int) -> NormalWord:
    """Normal form of D^a T D^e T^p."""
    a, e, p = a % 8, e % 8, p % 8
    if e == 0 or p % 2 == 0:
        return _dtd(a, p + 1, e)
    if e % 2 == 0:
        if a == 0:
            return NormalWord(Shape.W7, (e, p))
        return NormalWord(Shape.W8, (a, e, p))
    alpha, beta, gamma = ODD_TDT[e]
    return _dtd(a + alpha, beta + p - 1, gamma)


def _td_odd(c: int) -> tuple[int, int, int]:
    """(x, y, z) with T·D^c = D^x T D^y T^z for odd c."""
    alpha, beta, gamma = ODD_TDT[c % 8]
    return alpha, gamma, beta + 6


def _left_d(w: NormalWord) -> NormalWord:
    x = w.exponents
    match w.shape:
        case Shape.W1:
            return _dtd(1, 0, 0)
        case Shape.W2:
            return _dtd(x[0] + 1, 0, 0)
        case Shape.W3:
            return _dtd(1, x[0], 0)
        case Shape.W4:
            return _dtd(x[0] + 1, x[1], 0)
        case Shape.W5:
            return _dtd(1, x[0], x[1])
        case Shape.W6:
            return _dtd(x[0] + 1, x[1], x[2])
        case Shape.W7:
            return _dtdt(1, x[0], x[1])
        case Shape.W8:
            return _dtdt(x[0] + 1, x[1], x[2])


def _right_d(w: NormalWord) -> NormalWord:
    x = w.exponents
    match w.shape:
        case Shape.W1:
            return _dtd(1, 0, 0)
        case Shape.W2:
            return _dtd(x[0] + 1, 0, 0)
        case Shape.W3:
            return _dtd(0, x[0], 1)
        case Shape.W4:
            return _dtd(x[0], x[1], 1)
        case Shape.W5:
            return _dtd(0, x[0], x[1] + 1)
        case Shape.W6:
            return _dtd(x[0], x[1], x[2] + 1)
        case Shape.W7 | Shape.W8:
            a, e, p = (0, *x) if w.shape is Shape.W7 else x
            # D^a T D^e T^p D with p odd: move D left through T, then the
            # now odd middle block T D^(e+x) T goes through the table.
            tx, ty, tz = _td_odd(1)
            alpha, beta, gamma = ODD_TDT[(e + tx) % 8]
            return _dtdt(a + alpha, gamma + ty, tz + beta + p - 2)


def _right_t(w: NormalWord) -> NormalWord:
    x = w.exponents
    match w.shape:
        case Shape.W1:
            return _dtd(0, 1, 0)
        case Shape.W2:
            return _dtd(x[0], 1, 0)
        case Shape.W3:
            return _dtd(0, x[0] + 1, 0)
        case Shape.W4:
            return _dtd(x[0], x[1] + 1, 0)
        case Shape.W5:
            return _dtdt(0, x[1], x[0])
        case Shape.W6:
            return _dtdt(x[0], x[2], x[1])
        case Shape.W7:
            return _dtdt(0, x[0], x[1] + 1)
        case Shape.W8:
            return _dtdt(x[0], x[1], x[2] + 1)


def _left_t(w: NormalWord) -> NormalWord:
    x = w.exponents
    match w.shape:
        case Shape.W1:
            return _dtd(0, 1, 0)
        case Shape.W2:
            return _dtd(0, 1, x[0])
        case Shape.W3:
            return _dtd(0, x[0] + 1, 0)
        case Shape.W4:
            return _dtdt(0, x[0], x[1])
        case Shape.W5:
            return _dtd(0, x[0] + 1, x[1])
        case Shape.W6:
            a, p, c = x
            if a % 2:
                alpha, beta, gamma = ODD_TDT[a]
                return _dtd(alpha, beta + p - 1, gamma + c)
            if c % 2 == 0:
                # D^c T D^a T = T D^a T D^c for even a, c.
                return _dtdt(c, a, p)
            tx, ty, tz = _td_odd(c)
            alpha, beta, gamma = ODD_TDT[(a + tx) % 8]
            return _dtdt(alpha, gamma + ty, beta - 1 + tz + p - 1)
        case Shape.W7:
            return _dtd(x[0], x[1] + 2, 0)
        case Shape.W8:
            a, e, p = x
            if a % 2 == 0:
                return _dtdt(e, a, p + 1)
            alpha, beta, gamma = ODD_TDT[a]
            return _dtdt(alpha, gamma + e, beta + p - 1)


_AUTOMATON = {
    (Letter.D, Side.LEFT): _left_d,
    (Letter.D, Side.RIGHT): _right_d,
    (Letter.T, Side.LEFT): _left_t,
    (Letter.T, Side.RIGHT): _right_t,
}


def nf_multiply(w: NormalWord, letter: Letter | str, side: Side | str) -> NormalWord:
    """Normal form of ``letter·w`` (left) or ``w·letter`` (right)."""
    if not isinstance(w, NormalWord):
        raise MalformedWordError(f"expected a NormalWord, got {w!r}")
    try:
        step = _AUTOMATON[(Letter(letter), Side(side))]
    except ValueError as exc:
        raise MalformedWordError(f"unknown letter/side {letter!r}/{side!r}") from exc
    return step(w)


def normal_form(word: str | Sequence[tuple[str, int]]) -> NormalWord:
    """Fold an arbitrary word into its normal form, letter by letter."""
    factors = parse_word(word) if isinstance(word, str) else word
    result = NormalWord.identity()
    for letter, exponent in factors:
        for _ in range(exponent % 8):
            result = nf_multiply(result, letter, Side.RIGHT)
    return result


@cache
def generator_power(letter: str, exponent: int) -> CycMatrix:
    base = D_MATRIX if Letter(letter) is Letter.D else T_MATRIX
    return base.power(exponent % 8)


def evaluate_word(
    word: str | Iterable[tuple[str, int]], images: Mapping[str, CycMatrix]
) -> CycMatrix:
    """Multiply out a word with the letters replaced by ``images``."""
    factors = parse_word(word) if isinstance(word, str) else list(word)
    size = next(iter(images.values())).rows
    result = CycMatrix.identity(size)
    for letter, exponent in factors:
        result = result @ images[letter].power(exponent)
    return result


def word_to_matrix(w: NormalWord) -> CycMatrix:
    result = CycMatrix.identity(3)
    for letter, exponent in w.factors():
        result = result @ generator_power(letter, exponent)
    return result


def enumerate_normal_words() -> list[NormalWord]:
    return [
        NormalWord(shape, exponents)
        for shape in Shape
        for exponents in product(*SHAPE_RANGES[shape])
    ]


@dataclass(frozen=True)
class GroupElement:
    matrix: CycMatrix
    canonical_word: NormalWord | None = None

    @property
    def key(self) -> str:
        return self.matrix.serialize()

    def __str__(self) -> str:
        return str(self.canonical_word) if self.canonical_word else self.key


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A closed finite matrix group with Cayley tables for its generators.

    ``right_table[label][i]`` is the index of ``elements[i]·gen`` and
    ``left_table[label][i]`` the index of ``gen·elements[i]``.
    """

    generators: tuple[CycMatrix, ...]
    labels: tuple[str, ...]
    elements: tuple[GroupElement, ...]
    right_table: Mapping[str, tuple[int, ...]]
    left_table: Mapping[str, tuple[int, ...]]
    _index: Mapping[str, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __contains__(self, matrix: object) -> bool:
        return isinstance(matrix, CycMatrix) and matrix.serialize() in self._index

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    def generator(self, label: str) -> CycMatrix:
        try:
            return self.generators[self.labels.index(label)]
        except ValueError:
            raise ElementNotFoundError(f"no generator labelled {label!r}") from None

    def index_of(self, matrix: CycMatrix) -> int:
        try:
            return self._index[matrix.serialize()]
        except KeyError:
            raise ElementNotFoundError(
                "matrix is not an element of the group"
            ) from None


def generate_group(
    generators: Sequence[CycMatrix],
    labels: Sequence[str] | None = None,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> FiniteGroup:
    """Breadth-first closure of ``generators`` under right multiplication."""
    if not generators:
        raise UnsupportedInputError("at least one generator is required")
    labels = tuple(labels) if labels is not None else tuple(
        f"g{i}" for i in range(len(generators))
    )
    if len(labels) != len(generators):
        raise UnsupportedInputError("one label per generator is required")
    size = generators[0].rows
    for gen in generators:
        if gen.shape != (size, size):
            raise UnsupportedInputError("generators must be square of one dimension")
        if not mat_det(gen):
            raise SingularMatrixError("generators must be invertible")

    identity = CycMatrix.identity(size)
    matrices = [identity]
    index = {identity.serialize(): 0}
    right: dict[str, list[int]] = {label: [] for label in labels}
    head = 0
    while head < len(matrices):
        current = matrices[head]
        for label, gen in zip(labels, generators):
            nxt = current @ gen
            key = nxt.serialize()
            target = index.get(key)
            if target is None:
                if len(matrices) >= max_elements:
                    raise GroupTooLargeError(
                        f"closure exceeded {max_elements} elements: "
                        "group too large or infinite"
                    )
                target = index[key] = len(matrices)
                matrices.append(nxt)
            right[label].append(target)
        head += 1

    left = {
        label: tuple(index[(gen @ m).serialize()] for m in matrices)
        for label, gen in zip(labels, generators)
    }
    logger.debug(
        "Generated group of order %d from %d generators", len(matrices), len(labels)
    )
    return FiniteGroup(
        generators=tuple(generators),
        labels=labels,
        elements=tuple(GroupElement(m) for m in matrices),
        right_table={label: tuple(v) for label, v in right.items()},
        left_table=left,
        _index=index,
    )


def center(g: FiniteGroup) -> list[GroupElement]:
    """Elements commuting with every generator, sorted by serialization."""
    members = [
        e
        for e in g.elements
        if all(e.matrix @ gen == gen @ e.matrix for gen in g.generators)
    ]
    return sorted(members, key=lambda e: e.key)


_R8_EXPONENTS = (2, 4, 6)

GROUP_RELATIONS: tuple[tuple[str, str, str], ...] = (
    ("R1", "D^8", "1"),
    ("R2", "T^8", "1"),
    ("R3", "T^2 D", "D T^2"),
    ("R4", "T D T", "D^7 T^3 D^7"),
    ("R5", "T D^5 T", "D^3 T^7 D^3"),
    ("R6", "T D^3 T", "D^5 T^5 D^5"),
    ("R7", "T D^7 T", "D T D"),
) + tuple(
    ("R8", f"D^{i} T D^{j} T", f"T D^{j} T D^{i}")
    for i in _R8_EXPONENTS
    for j in _R8_EXPONENTS
)


def flip_entry_sign(matrix: CycMatrix, i: int, j: int) -> CycMatrix:
    rows = matrix.to_rows()
    rows[i][j] = -rows[i][j]
    return CycMatrix.from_rows(rows)


def check_relations(d: CycMatrix, t: CycMatrix) -> VerificationReport:
    """Check R1-R8 for an arbitrary pair of candidate generator matrices."""
    images = {"D": d, "T": t}
    results: dict[str, bool] = {}
    for name, lhs, rhs in GROUP_RELATIONS:
        holds = evaluate_word(lhs, images) == evaluate_word(rhs, images)
        results[name] = results.get(name, True) and holds
    return VerificationReport(title="relations", results=results)


def verify_relations(g: FiniteGroup) -> VerificationReport:
    return check_relations(g.generator("D"), g.generator("T"))


def element_order(matrix: CycMatrix, limit: int = 10_000) -> int:
    """Order of a matrix of finite order: powers until scalar, then the scalar's."""
    power = matrix
    steps = 1
    while not power.is_scalar():
        power = power @ matrix
        steps += 1
        if steps > limit:
            raise UnsupportedInputError("matrix does not have finite order")
    scalar = power[0, 0]
    value = scalar
    scalar_order = 1
    while value != 1:
        value = value * scalar
        scalar_order += 1
        if scalar_order > limit:
            raise UnsupportedInputError("scalar is not a root of unity")
    return steps * scalar_order


def group_exponent(g: FiniteGroup) -> int:
    return math.lcm(*(element_order(e.matrix) for e in g.elements))


def is_unitary(matrix: CycMatrix, form: CycMatrix | None = None) -> bool:
    """gᴴ·H·g = H for the Hermitian form H (default ``INVARIANT_FORM``)."""
    form = INVARIANT_FORM if form is None else form
    return matrix.conj_transpose() @ form @ matrix == form


def form_inverse(matrix: CycMatrix) -> CycMatrix:
    """g⁻¹ = H⁻¹·gᴴ·H for g preserving ``INVARIANT_FORM``."""
    return _INVARIANT_FORM_INV @ matrix.conj_transpose() @ INVARIANT_FORM


@cache
def standard_group() -> FiniteGroup:
    """𝔊 with every element tagged by its normal word."""
    group = generate_group([D_MATRIX, T_MATRIX], GENERATOR_LABELS)
    words = {word_to_matrix(w).serialize(): w for w in enumerate_normal_words()}
    elements = tuple(
        dataclasses.replace(e, canonical_word=words.get(e.key)) for e in group.elements
    )
    return dataclasses.replace(group, elements=elements)


def check_automaton(
    words: Sequence[NormalWord] | None = None,
) -> tuple[int, list[tuple[NormalWord, Letter, Side]]]:
    """Hold nf_multiply against matrix products for every (word, letter, side).

    Returns the number of products checked and the disagreeing triples.
    """
    words = enumerate_normal_words() if words is None else words
    checked = 0
    mismatches = []
    for w in words:
        m = word_to_matrix(w)
        for letter in Letter:
            gen = generator_power(letter.value, 1)
            for side, expected in ((Side.RIGHT, m @ gen), (Side.LEFT, gen @ m)):
                checked += 1
                if word_to_matrix(nf_multiply(w, letter, side)) != expected:
                    mismatches.append((w, letter, side))
    if mismatches:
        logger.warning(
            "Normal-form automaton disagrees on %d products", len(mismatches)
        )
    return checked, mismatches
