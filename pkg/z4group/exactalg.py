"""
Exact arithmetic in the cyclotomic field Q(ζ8) and dense matrices over it.

Scalars live in the basis {1, η, η², η³} with η = (1+i)/√2 and η⁴ = -1, so
every value has exactly one representation and equality is structural.
Nothing on this path touches floating point; ``to_complex`` exists for test
oracles only.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd
from typing import TYPE_CHECKING

from z4group.exceptions import (
    ArithmeticConsistencyError,
    DimensionMismatchError,
    SingularMatrixError,
)

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

RationalLike = int | Fraction

_BASIS_LABELS = ("", "η", "i", "η³")
_SQRT2_HALF = math.sqrt(2) / 2


class Cyc8:
    """Element c0 + c1·η + c2·η² + c3·η³ of Q(ζ8).

    Stored as four integer numerators over one positive common denominator,
    reduced so that gcd(numerators, denominator) = 1.
    """

    __slots__ = ("_den", "_nums")

    def __init__(
        self,
        c0: RationalLike = 0,
        c1: RationalLike = 0,
        c2: RationalLike = 0,
        c3: RationalLike = 0,
    ) -> None:
        coeffs = [Fraction(c) for c in (c0, c1, c2, c3)]
        den = math.lcm(*(c.denominator for c in coeffs))
        nums = tuple(c.numerator * (den // c.denominator) for c in coeffs)
        g = gcd(*nums, den)
        self._nums: tuple[int, int, int, int] = tuple(n // g for n in nums)
        self._den: int = den // g

    @classmethod
    def _from_parts(cls, nums: tuple[int, ...], den: int) -> Cyc8:
        g = gcd(*nums, den)
        obj = object.__new__(cls)
        if g != 1:
            nums = tuple(n // g for n in nums)
            den //= g
        obj._nums = nums
        obj._den = den
        return obj

    @classmethod
    def root(cls, k: int) -> Cyc8:
        """η^k for any integer k."""
        k %= 8
        nums = [0, 0, 0, 0]
        nums[k % 4] = 1 if k < 4 else -1
        return cls._from_parts(tuple(nums), 1)

    @classmethod
    def parse(cls, text: str) -> Cyc8:
        """Inverse of :meth:`serialize`."""
        parts = text.strip().split(",")
        if len(parts) != 4:
            raise ValueError(f"expected four coefficients, got {text!r}")
        return cls(*(Fraction(p) for p in parts))

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(n, self._den) for n in self._nums)

    @property
    def c0(self) -> Fraction:
        return Fraction(self._nums[0], self._den)

    @property
    def c1(self) -> Fraction:
        return Fraction(self._nums[1], self._den)

    @property
    def c2(self) -> Fraction:
        return Fraction(self._nums[2], self._den)

    @property
    def c3(self) -> Fraction:
        return Fraction(self._nums[3], self._den)

    def serialize(self) -> str:
        return ",".join(f"{c.numerator}/{c.denominator}" for c in self.coefficients)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def is_integer(self) -> bool:
        return self.is_rational() and self._den == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c0

    def as_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self._nums[0]

    def galois(self, k: int) -> Cyc8:
        """Image under the automorphism η ↦ η^k (k odd)."""
        if k % 2 == 0:
            raise ValueError("Galois automorphisms of Q(ζ8) need an odd exponent")
        out = [0, 0, 0, 0]
        for j, c in enumerate(self._nums):
            m = (j * k) % 8
            if m < 4:
                out[m] += c
            else:
                out[m - 4] -= c
        return Cyc8._from_parts(tuple(out), self._den)

    def conj(self) -> Cyc8:
        a, b, c, d = self._nums
        return Cyc8._from_parts((a, -d, -c, -b), self._den)

    def norm(self) -> Fraction:
        """Field norm: the product of the four Galois conjugates."""
        product = self * self.galois(3) * self.galois(5) * self.galois(7)
        if not product.is_rational():
            raise ArithmeticConsistencyError(f"norm of {self} is not rational")
        return product.c0

    def inv(self) -> Cyc8:
        if not any(self._nums):
            raise ZeroDivisionError("inverse of zero in Q(ζ8)")
        cofactor = self.galois(3) * self.galois(5) * self.galois(7)
        norm = self * cofactor
        if not norm.is_rational():
            raise ArithmeticConsistencyError(f"norm of {self} is not rational")
        return cofactor * Fraction(norm._den, norm._nums[0])

    def to_complex(self) -> complex:
        c0, c1, c2, c3 = (float(c) for c in self.coefficients)
        return complex(
            c0 + _SQRT2_HALF * (c1 - c3),
            c2 + _SQRT2_HALF * (c1 + c3),
        )

    def __add__(self, other: ScalarLike) -> Cyc8:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, da = self._nums, self._den
        b, db = other._nums, other._den
        if da == db:
            return Cyc8._from_parts(tuple(x + y for x, y in zip(a, b)), da)
        return Cyc8._from_parts(tuple(x * db + y * da for x, y in zip(a, b)), da * db)

    __radd__ = __add__

    def __neg__(self) -> Cyc8:
        obj = object.__new__(Cyc8)
        obj._nums = tuple(-n for n in self._nums)
        obj._den = self._den
        return obj

    def __sub__(self, other: ScalarLike) -> Cyc8:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> Cyc8:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: ScalarLike) -> Cyc8:
        if isinstance(other, int):
            return Cyc8._from_parts(tuple(n * other for n in self._nums), self._den)
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a0, a1, a2, a3 = self._nums
        b0, b1, b2, b3 = other._nums
        if not (a0 or a1 or a2 or a3) or not (b0 or b1 or b2 or b3):
            return ZERO
        nums = (
            a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
            a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        )
        return Cyc8._from_parts(nums, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> Cyc8:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other: ScalarLike) -> Cyc8:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, exponent: int) -> Cyc8:
        if exponent < 0:
            return self.inv() ** -exponent
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self) -> bool:
        return any(self._nums)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Cyc8):
            return self._nums == other._nums and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c0 == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.c0)
        return hash((self._nums, self._den))

    def __repr__(self) -> str:
        return "Cyc8({}, {}, {}, {})".format(*(str(c) for c in self.coefficients))

    def __str__(self) -> str:
        parts = []
        for coeff, label in zip(self.coefficients, _BASIS_LABELS):
            if coeff == 0:
                continue
            if not label:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(label)
            elif coeff == -1:
                parts.append(f"-{label}")
            elif coeff.denominator == 1:
                parts.append(f"{coeff}{label}")
            else:
                parts.append(f"({coeff}){label}")
        if not parts:
            return "0"
        text = parts[0]
        for part in parts[1:]:
            text += part if part.startswith("-") else f"+{part}"
        return text


ScalarLike = Cyc8 | int | Fraction


def _coerce(value: object) -> Cyc8 | None:
    if isinstance(value, Cyc8):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyc8(value)
    return None


def as_cyc8(value: ScalarLike) -> Cyc8:
    result = _coerce(value)
    if result is None:
        raise TypeError(f"cannot interpret {value!r} as an element of Q(ζ8)")
    return result


ZERO = Cyc8()
ONE = Cyc8(1)
ETA = Cyc8.root(1)
I = Cyc8.root(2)  # noqa: E741


def cyc_add(a: Cyc8, b: Cyc8) -> Cyc8:
    return a + b


def cyc_mul(a: Cyc8, b: Cyc8) -> Cyc8:
    return a * b


def cyc_conj(a: Cyc8) -> Cyc8:
    return a.conj()


def cyc_inv(a: Cyc8) -> Cyc8:
    return a.inv()


def to_complex(a: Cyc8) -> complex:
    return a.to_complex()


class CycMatrix:
    """Immutable dense matrix over Q(ζ8), entries stored row-major."""

    __slots__ = ("_entries", "_key", "cols", "rows")

    def __init__(self, rows: int, cols: int, entries: Iterable[ScalarLike]) -> None:
        values = tuple(as_cyc8(e) for e in entries)
        if rows < 0 or cols < 0 or len(values) != rows * cols:
            raise DimensionMismatchError(
                f"{len(values)} entries cannot fill a {rows}x{cols} matrix"
            )
        self.rows = rows
        self.cols = cols
        self._entries: tuple[Cyc8, ...] = values
        self._key: str | None = None

    @classmethod
    def _wrap(cls, rows: int, cols: int, entries: Sequence[Cyc8]) -> CycMatrix:
        obj = object.__new__(cls)
        obj.rows = rows
        obj.cols = cols
        obj._entries = tuple(entries)
        obj._key = None
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> CycMatrix:
        if not rows:
            return cls(0, 0, ())
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise DimensionMismatchError("ragged rows")
        return cls(len(rows), width, (e for row in rows for e in row))

    @classmethod
    def identity(cls, n: int) -> CycMatrix:
        entries = [ONE if i == j else ZERO for i in range(n) for j in range(n)]
        return cls._wrap(n, n, entries)

    @classmethod
    def diag(cls, *values: ScalarLike) -> CycMatrix:
        n = len(values)
        diagonal = [as_cyc8(v) for v in values]
        return cls._wrap(
            n, n, [diagonal[i] if i == j else ZERO for i in range(n) for j in range(n)]
        )

    @classmethod
    def parse(cls, text: str) -> CycMatrix:
        """Inverse of :meth:`serialize`."""
        rows = [
            [Cyc8.parse(cell) for cell in row.split("|")] for row in text.split(";")
        ]
        return cls.from_rows(rows)

    @property
    def entries(self) -> tuple[Cyc8, ...]:
        return self._entries

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> Cyc8:
        i, j = index
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Cyc8, ...]:
        return self._entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[Cyc8, ...]:
        return self._entries[j :: self.cols]

    def to_rows(self) -> list[list[Cyc8]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def serialize(self) -> str:
        if self._key is None:
            self._key = ";".join(
                "|".join(e.serialize() for e in self.row(i)) for i in range(self.rows)
            )
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self.serialize())

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(str(e) for e in self.row(i)) for i in range(self.rows)
        )
        return f"CycMatrix({self.rows}x{self.cols}: {body})"

    def __matmul__(self, other: CycMatrix) -> CycMatrix:
        return mat_mul(self, other)

    def __mul__(self, scalar: ScalarLike) -> CycMatrix:
        return self.scale(scalar)

    __rmul__ = __mul__

    def __add__(self, other: CycMatrix) -> CycMatrix:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape}")
        return CycMatrix._wrap(
            self.rows, self.cols, [a + b for a, b in zip(self._entries, other._entries)]
        )

    def __sub__(self, other: CycMatrix) -> CycMatrix:
        return self + (-other)

    def __neg__(self) -> CycMatrix:
        return CycMatrix._wrap(self.rows, self.cols, [-e for e in self._entries])

    def scale(self, scalar: ScalarLike) -> CycMatrix:
        s = as_cyc8(scalar)
        return CycMatrix._wrap(self.rows, self.cols, [s * e for e in self._entries])

    def transpose(self) -> CycMatrix:
        return CycMatrix._wrap(
            self.cols,
            self.rows,
            [
                self._entries[i * self.cols + j]
                for j in range(self.cols)
                for i in range(self.rows)
            ],
        )

    def conj(self) -> CycMatrix:
        return CycMatrix._wrap(self.rows, self.cols, [e.conj() for e in self._entries])

    def conj_transpose(self) -> CycMatrix:
        return self.conj().transpose()

    def trace(self) -> Cyc8:
        if not self.is_square():
            raise DimensionMismatchError("trace of a non-square matrix")
        total = ZERO
        for i in range(self.rows):
            total = total + self._entries[i * self.cols + i]
        return total

    def power(self, exponent: int) -> CycMatrix:
        if not self.is_square():
            raise DimensionMismatchError("power of a non-square matrix")
        if exponent < 0:
            return mat_inverse(self).power(-exponent)
        result = CycMatrix.identity(self.rows)
        base = self
        while exponent:
            if exponent & 1:
                result = mat_mul(result, base)
            exponent >>= 1
            if exponent:
                base = mat_mul(base, base)
        return result

    def kron(self, other: CycMatrix) -> CycMatrix:
        return mat_kron(self, other)

    def det(self) -> Cyc8:
        return mat_det(self)

    def inverse(self) -> CycMatrix:
        return mat_inverse(self)

    def is_diagonal(self) -> bool:
        return self.is_square() and all(
            not self._entries[i * self.cols + j]
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def is_scalar(self) -> bool:
        if not self.is_diagonal():
            return False
        first = self._entries[0] if self._entries else ONE
        return all(self._entries[i * self.cols + i] == first for i in range(self.rows))

    def is_identity(self) -> bool:
        return self.is_scalar() and (not self._entries or self._entries[0] == ONE)


def mat_mul(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    if a.cols != b.rows:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    n, m, p = a.rows, a.cols, b.cols
    ae, be = a.entries, b.entries
    out = []
    for i in range(n):
        row = ae[i * m : (i + 1) * m]
        for j in range(p):
            acc = ZERO
            for k, x in enumerate(row):
                if x:
                    y = be[k * p + j]
                    if y:
                        acc = acc + x * y
            out.append(acc)
    return CycMatrix._wrap(n, p, out)


def mat_kron(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    """Kronecker product; basis e_i ⊗ e'_j sits at index i·b.rows + j."""
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            for j in range(a.cols):
                x = a[i, j]
                for col in range(b.cols):
                    out.append(x * b[k, col] if x else ZERO)
    return CycMatrix._wrap(a.rows * b.rows, a.cols * b.cols, out)


def mat_inverse(a: CycMatrix) -> CycMatrix:
    """Exact inverse by Gauss-Jordan elimination over Q(ζ8)."""
    if not a.is_square():
        raise DimensionMismatchError(f"cannot invert a {a.rows}x{a.cols} matrix")
    n = a.rows
    work = [
        list(a.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
        scale = work[col][col].inv()
        work[col] = [e * scale for e in work[col]]
        for r in range(n):
            factor = work[r][col]
            if r == col or not factor:
                continue
            pivot_row = work[col]
            work[r] = [x - factor * y if y else x for x, y in zip(work[r], pivot_row)]
    return CycMatrix._wrap(n, n, [e for row in work for e in row[n:]])


def mat_det(a: CycMatrix) -> Cyc8:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not a.is_square():
        raise DimensionMismatchError(f"determinant of a {a.rows}x{a.cols} matrix")
    n = a.rows
    if n == 0:
        return ONE
    m = a.to_rows()
    negate = False
    previous = ONE
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return ZERO
            m[k], m[swap] = m[swap], m[k]
            negate = not negate
        previous_inv = previous.inv()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) * previous_inv
        previous = m[k][k]
    det = m[n - 1][n - 1]
    return -det if negate else det


def rank(vectors: Sequence[Sequence[Cyc8]]) -> int:
    """Rank of a list of equal-length vectors over Q(ζ8)."""
    rows = [[as_cyc8(e) for e in v] for v in vectors]
    rows = [row for row in rows if any(row)]
    if not rows:
        return 0
    width = len(rows[0])
    result = 0
    for col in range(width):
        pivot = next((r for r in range(result, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[result], rows[pivot] = rows[pivot], rows[result]
        inv = rows[result][col].inv()
        lead = [e * inv for e in rows[result]]
        rows[result] = lead
        for r in range(result + 1, len(rows)):
            factor = rows[r][col]
            if factor:
                rows[r] = [x - factor * y if y else x for x, y in zip(rows[r], lead)]
        result += 1
        if result == len(rows):
            break
    return result
