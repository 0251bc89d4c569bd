"""
The projective group PG = 𝔊/Z as a group of canonical coset representatives.

Each coset {M, iM, -M, -iM} is stored by the member with the smallest
canonical serialization, so the quotient multiplication is plain matrix
multiplication followed by ``canonicalize``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cache
from typing import TYPE_CHECKING

from z4group.exactalg import I, CycMatrix
from z4group.exceptions import (
    ClassOrderingError,
    ElementNotFoundError,
    UnsupportedInputError,
)
from z4group.group import (
    center,
    evaluate_word,
    format_word,
    parse_word,
    standard_group,
)
from z4group.models import VerificationReport

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping

    from z4group.group import FiniteGroup

logger = logging.getLogger(__name__)

_SCALARS = (1, I, -1, -I)

# One named representative per class, in table order.
CLASS_REPRESENTATIVE_WORDS = (
    "1",
    "D",
    "D^2",
    "D^3",
    "D^4",
    "D^6",
    "T",
    "D T",
    "D^4 T",
    "D^2 T D^4 T",
)

PROJECTIVE_RELATIONS: tuple[tuple[str, str, str], ...] = (
    ("D^8 = 1", "D^8", "1"),
    ("T^2 = 1", "T^2", "1"),
    ("T D T = D^7 T D^7", "T D T", "D^7 T D^7"),
    ("T D^5 T = D^3 T D^3", "T D^5 T", "D^3 T D^3"),
)


def canonicalize(matrix: CycMatrix) -> CycMatrix:
    return min((matrix.scale(s) for s in _SCALARS), key=CycMatrix.serialize)


@dataclass(frozen=True)
class ProjElement:
    rep: CycMatrix

    @classmethod
    def of(cls, matrix: CycMatrix) -> ProjElement:
        return cls(canonicalize(matrix))

    @property
    def key(self) -> str:
        return self.rep.serialize()


@dataclass(frozen=True)
class ConjClassInfo:
    index: int
    representative: ProjElement
    representative_word: str
    size: int
    element_order: int
    members: frozenset[str] = field(repr=False, compare=False, default=frozenset())

    def model_dump(self) -> dict:
        return {
            "index": self.index,
            "representative_word": self.representative_word,
            "size": self.size,
            "element_order": self.element_order,
        }


@dataclass(frozen=True, eq=False)
class ProjGroup:
    elements: tuple[ProjElement, ...]
    generators: Mapping[str, ProjElement]
    _index: Mapping[str, int] = field(repr=False)
    _inverses: dict[str, ProjElement] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[ProjElement]:
        return iter(self.elements)

    def __contains__(self, e: object) -> bool:
        return isinstance(e, ProjElement) and e.key in self._index

    @property
    def identity(self) -> ProjElement:
        return ProjElement.of(CycMatrix.identity(self.elements[0].rep.rows))

    def index_of(self, e: ProjElement) -> int:
        try:
            return self._index[e.key]
        except KeyError:
            raise ElementNotFoundError(
                "element is not in the projective group"
            ) from None

    def mul(self, a: ProjElement, b: ProjElement) -> ProjElement:
        return ProjElement.of(a.rep @ b.rep)

    def inverse(self, a: ProjElement) -> ProjElement:
        inv = self._inverses.get(a.key)
        if inv is None:
            inv = self._inverses[a.key] = ProjElement.of(a.rep.inverse())
        return inv

    def power(self, a: ProjElement, n: int) -> ProjElement:
        if n < 0:
            return self.power(self.inverse(a), -n)
        return ProjElement.of(a.rep.power(n))

    def order(self, a: ProjElement) -> int:
        identity = self.identity
        current = a
        n = 1
        while current != identity:
            current = self.mul(current, a)
            n += 1
        return n

    def conjugate(self, x: ProjElement, g: ProjElement) -> ProjElement:
        """g·x·g⁻¹."""
        return ProjElement.of(g.rep @ x.rep @ self.inverse(g).rep)

    def evaluate_word(self, word: str) -> ProjElement:
        result = self.identity.rep
        for letter, exponent in parse_word(word):
            result = result @ self.generators[letter].rep.power(exponent % 8)
        return ProjElement.of(result)


def project(g: FiniteGroup) -> ProjGroup:
    """Quotient of ``g`` by its center, which must be {I, iI, -I, -iI}."""
    z = center(g)
    scalar_keys = {
        CycMatrix.identity(g.generators[0].rows).scale(s).serialize() for s in _SCALARS
    }
    if {e.key for e in z} != scalar_keys:
        raise UnsupportedInputError(
            "projection needs the center to be the four scalar matrices {1, i, -1, -i}"
        )
    elements: list[ProjElement] = []
    index: dict[str, int] = {}
    for element in g.elements:
        e = ProjElement.of(element.matrix)
        if e.key not in index:
            index[e.key] = len(elements)
            elements.append(e)
    logger.debug("Projected group of order %d onto %d cosets", len(g), len(elements))
    generators = {label: ProjElement.of(g.generator(label)) for label in g.labels}
    return ProjGroup(elements=tuple(elements), generators=generators, _index=index)


def _orbits(pg: ProjGroup) -> list[frozenset[str]]:
    """Conjugation orbits, closed under conjugation by the generators only."""
    seen: set[str] = set()
    orbits = []
    gens = list(pg.generators.values())
    by_key = {e.key: e for e in pg.elements}
    for e in pg.elements:
        if e.key in seen:
            continue
        orbit = {e.key}
        frontier = [e]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = pg.conjugate(x, g)
                if y.key not in orbit:
                    orbit.add(y.key)
                    frontier.append(by_key[y.key])
        seen |= orbit
        orbits.append(frozenset(orbit))
    return orbits


@cache
def conjugacy_classes(pg: ProjGroup) -> tuple[ConjClassInfo, ...]:
    """The conjugacy classes, ordered by ``CLASS_REPRESENTATIVE_WORDS``."""
    orbits = _orbits(pg)
    if len(orbits) != len(CLASS_REPRESENTATIVE_WORDS):
        raise ClassOrderingError(
            f"found {len(orbits)} classes, expected {len(CLASS_REPRESENTATIVE_WORDS)}"
        )
    classes = []
    used: set[int] = set()
    for position, word in enumerate(CLASS_REPRESENTATIVE_WORDS, start=1):
        rep = pg.evaluate_word(word)
        match = next((i for i, orbit in enumerate(orbits) if rep.key in orbit), None)
        if match is None or match in used:
            raise ClassOrderingError(
                f"representative {word!r} does not anchor a new class"
            )
        used.add(match)
        classes.append(
            ConjClassInfo(
                index=position,
                representative=rep,
                representative_word=word,
                size=len(orbits[match]),
                element_order=pg.order(rep),
                members=orbits[match],
            )
        )
    logger.debug("Computed %d conjugacy classes", len(classes))
    return tuple(classes)


def class_of(pg: ProjGroup, e: ProjElement) -> int:
    if e not in pg:
        raise ElementNotFoundError("element is not in the projective group")
    for info in conjugacy_classes(pg):
        if e.key in info.members:
            return info.index
    raise ClassOrderingError("element belongs to no computed class")


def centralizer_size(pg: ProjGroup, x: ProjElement) -> int:
    return sum(1 for y in pg.elements if pg.mul(x, y) == pg.mul(y, x))


def conjugacy_orbit(pg: ProjGroup, x: ProjElement) -> frozenset[str]:
    """Orbit of ``x`` under conjugation by every element of ``pg``."""
    return frozenset(pg.conjugate(x, g).key for g in pg.elements)


def check_projective_relations(
    d: CycMatrix, t: CycMatrix, projective: bool = True
) -> VerificationReport:
    """Check the PG presentation for a pair of images.

    With ``projective`` the comparison is up to the scalars {1, i, -1, -i};
    otherwise it is exact, which is what a representation of PG must satisfy.
    """
    images = {"D": d, "T": t}
    normalize = canonicalize if projective else (lambda m: m)
    results = {}
    for name, lhs, rhs in PROJECTIVE_RELATIONS:
        left = evaluate_word(lhs, images)
        right = evaluate_word(rhs, images)
        results[name] = normalize(left) == normalize(right)
    return VerificationReport(title="projective relations", results=results)


def verify_projective_relations(pg: ProjGroup) -> VerificationReport:
    return check_projective_relations(pg.generators["D"].rep, pg.generators["T"].rep)


def projective_normal_words() -> list[str]:
    """The 96 words that name each coset of PG exactly once."""
    words: list[list[tuple[str, int]]] = [[]]
    words += [[("D", n)] for n in range(1, 8)]
    words.append([("T", 1)])
    words += [[("D", n), ("T", 1)] for n in range(1, 8)]
    words += [[("T", 1), ("D", n)] for n in range(1, 8)]
    words += [[("D", a), ("T", 1), ("D", c)] for a in range(1, 8) for c in range(1, 8)]
    words += [[("T", 1), ("D", e), ("T", 1)] for e in (2, 4, 6)]
    words += [
        [("D", n), ("T", 1), ("D", e), ("T", 1)] for n in range(1, 8) for e in (2, 4, 6)
    ]
    return [format_word(w) for w in words]


@cache
def standard_projective_group() -> ProjGroup:
    return project(standard_group())
