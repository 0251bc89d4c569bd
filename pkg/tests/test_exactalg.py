import cmath
import random
from fractions import Fraction

import pytest

from z4group.exactalg import (
    ETA,
    ONE,
    ZERO,
    Cyc8,
    CycMatrix,
    I,
    as_cyc8,
    cyc_add,
    cyc_conj,
    cyc_inv,
    cyc_mul,
    mat_det,
    mat_inverse,
    mat_kron,
    rank,
    to_complex,
)
from z4group.exceptions import DimensionMismatchError, SingularMatrixError

SAMPLES = [
    Cyc8(1, 2, 3, 4),
    Cyc8(Fraction(1, 2), 0, Fraction(-3, 4), 1),
    Cyc8(-1, 0, -2, 0),
    ETA,
    Cyc8(0, Fraction(5, 3), 0, -7),
]


class TestCyc8Arithmetic:
    """Field arithmetic in the basis 1, η, η², η³."""

    def test_eta_fourth_power_is_minus_one(self):
        assert ETA**4 == -1
        assert ETA**8 == 1

    def test_i_is_eta_squared(self):
        assert I == ETA**2
        assert I * I == -1

    def test_add_and_mul(self):
        assert cyc_add(Cyc8(1, 2), Cyc8(3, -2)) == 4
        assert cyc_mul(Cyc8(1, 1), Cyc8(1, -1)) == Cyc8(1, 0, -1)

    def test_mixed_with_int_and_fraction(self):
        x = Cyc8(1, 2, 3, 4)
        assert x + 1 == Cyc8(2, 2, 3, 4)
        assert 1 - x == Cyc8(0, -2, -3, -4)
        assert x * Fraction(1, 2) == Cyc8(Fraction(1, 2), 1, Fraction(3, 2), 2)
        assert x / 2 == x * Fraction(1, 2)

    @pytest.mark.parametrize("x", SAMPLES)
    def test_inverse(self, x):
        assert x * cyc_inv(x) == ONE
        assert x / x == 1

    def test_inverse_of_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            cyc_inv(ZERO)

    @pytest.mark.parametrize("x", SAMPLES)
    def test_conj_matches_complex_conjugate(self, x):
        assert cmath.isclose(to_complex(cyc_conj(x)), to_complex(x).conjugate())

    @pytest.mark.parametrize("x", SAMPLES)
    def test_product_matches_complex(self, x):
        y = Cyc8(2, -1, 0, Fraction(1, 3))
        assert cmath.isclose(to_complex(x * y), to_complex(x) * to_complex(y))

    def test_norm_of_a_is_twenty_five(self):
        # |a|² = 5 and the norm is the product over both conjugate pairs.
        assert Cyc8(-1, 0, -2, 0).norm() == 25

    def test_galois_requires_odd_exponent(self):
        with pytest.raises(ValueError):
            ETA.galois(2)
        assert ETA.galois(3) == ETA**3

    def test_negative_power(self):
        assert ETA**-1 == ETA**7



def _random_cyc8(rng: random.Random) -> Cyc8:
    return Cyc8(*(Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(4)))


class TestCyc8RingAxioms:
    @pytest.fixture
    def triples(self):
        rng = random.Random(8)
        return [tuple(_random_cyc8(rng) for _ in range(3)) for _ in range(50)]

    def test_associativity(self, triples):
        for a, b, c in triples:
            assert (a * b) * c == a * (b * c)
            assert (a + b) + c == a + (b + c)

    def test_commutativity(self, triples):
        for a, b, _ in triples:
            assert a * b == b * a
            assert a + b == b + a

    def test_distributivity(self, triples):
        for a, b, c in triples:
            assert a * (b + c) == a * b + a * c
            assert (a + b) * c == a * c + b * c

    def test_conj_is_an_involutive_ring_homomorphism(self, triples):
        for a, b, _ in triples:
            assert cyc_conj(cyc_conj(a)) == a
            assert cyc_conj(a + b) == cyc_conj(a) + cyc_conj(b)
            assert cyc_conj(a * b) == cyc_conj(a) * cyc_conj(b)
        assert cyc_conj(ETA) == ETA**7
        assert cyc_conj(ONE) == ONE

class TestCyc8Representation:
    def test_equality_is_structural(self):
        assert Cyc8(Fraction(2, 4), 0, 1, 0) == Cyc8(Fraction(1, 2), 0, 1, 0)
        assert Cyc8(3) == 3
        assert Cyc8(3, 1) != 3

    def test_hash_agrees_with_rationals(self):
        assert hash(Cyc8(Fraction(1, 2))) == hash(Fraction(1, 2))
        assert len({Cyc8(1), ONE, Cyc8(2, 0, 0, 0) / 2}) == 1

    def test_coefficients(self):
        x = Cyc8(Fraction(1, 2), Fraction(1, 3), 0, -1)
        assert (x.c0, x.c1, x.c2, x.c3) == (
            Fraction(1, 2),
            Fraction(1, 3),
            Fraction(0),
            Fraction(-1),
        )

    def test_serialize_and_parse(self):
        x = Cyc8(Fraction(1, 2), -3, 0, Fraction(2, 7))
        assert x.serialize() == "1/2,-3/1,0/1,2/7"
        assert Cyc8.parse(x.serialize()) == x

    def test_parse_rejects_wrong_arity(self):
        with pytest.raises(ValueError):
            Cyc8.parse("1,2,3")

    def test_pretty_string(self):
        assert str(Cyc8(-1, 0, -2, 0)) == "-1-2i"
        assert str(Cyc8(-1, 0, 2, 0)) == "-1+2i"
        assert str(ETA) == "η"
        assert str(-I) == "-i"
        assert str(ZERO) == "0"

    def test_integer_conversions(self):
        assert Cyc8(7).as_int() == 7
        assert Cyc8(Fraction(7, 2)).as_fraction() == Fraction(7, 2)
        with pytest.raises(ValueError):
            Cyc8(Fraction(7, 2)).as_int()
        with pytest.raises(ValueError):
            ETA.as_fraction()

    def test_as_cyc8_rejects_floats(self):
        with pytest.raises(TypeError):
            as_cyc8(0.5)


class TestCycMatrix:
    """Exact dense matrices."""

    def test_identity_and_multiplication(self):
        m = CycMatrix.from_rows([[1, ETA], [I, 2]])
        assert m @ CycMatrix.identity(2) == m
        assert CycMatrix.identity(2) @ m == m

    def test_inverse(self):
        m = CycMatrix.from_rows([[1, ETA, 0], [0, 2, I], [1, 0, 3]])
        assert (m @ mat_inverse(m)).is_identity()
        assert (mat_inverse(m) @ m).is_identity()

    def test_singular_inverse_raises(self):
        m = CycMatrix.from_rows([[1, 2], [2, 4]])
        with pytest.raises(SingularMatrixError):
            mat_inverse(m)
        with pytest.raises(ZeroDivisionError):
            m.inverse()

    def test_determinant(self):
        assert mat_det(CycMatrix.diag(1, ETA, -1)) == -ETA
        m = CycMatrix.from_rows([[0, 1, 2], [1, 0, 3], [4, -3, 8]])
        assert mat_det(m) == -2
        assert mat_det(CycMatrix.from_rows([[1, 2], [2, 4]])) == 0

    def test_determinant_is_multiplicative(self):
        a = CycMatrix.from_rows([[1, ETA], [I, 2]])
        b = CycMatrix.from_rows([[ETA, 0], [1, -I]])
        assert mat_det(a @ b) == mat_det(a) * mat_det(b)

    def test_kron_indexing(self):
        a = CycMatrix.from_rows([[1, 2], [3, 4]])
        b = CycMatrix.from_rows([[0, 1], [1, 0]])
        k = mat_kron(a, b)
        assert k.shape == (4, 4)
        # (e_i ⊗ e_k, e_j ⊗ e_l) sits at (i·2 + k, j·2 + l).
        assert k[0 * 2 + 1, 1 * 2 + 0] == a[0, 1] * b[1, 0]
        assert k[1 * 2 + 0, 0 * 2 + 1] == a[1, 0] * b[0, 1]
        assert k.trace() == a.trace() * b.trace()

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            CycMatrix.identity(2) @ CycMatrix.identity(3)
        with pytest.raises(DimensionMismatchError):
            CycMatrix(2, 2, [1, 2, 3])
        with pytest.raises(DimensionMismatchError):
            CycMatrix.from_rows([[1, 2], [3]])

    def test_power_and_negative_power(self):
        d = CycMatrix.diag(1, ETA, -1)
        assert d.power(8).is_identity()
        assert d.power(-1) @ d == CycMatrix.identity(3)

    def test_conj_transpose(self):
        m = CycMatrix.from_rows([[1, ETA], [I, 2]])
        assert m.conj_transpose() == CycMatrix.from_rows([[1, -I], [ETA**7, 2]])

    def test_serialize_round_trip(self):
        m = CycMatrix.from_rows([[Fraction(1, 2), ETA], [I, -3]])
        assert CycMatrix.parse(m.serialize()) == m
        assert hash(CycMatrix.parse(m.serialize())) == hash(m)

    def test_predicates(self):
        assert CycMatrix.diag(I, I).is_scalar()
        assert not CycMatrix.diag(I, 1).is_scalar()
        assert CycMatrix.diag(I, 1).is_diagonal()
        assert not CycMatrix.from_rows([[1, 1], [0, 1]]).is_diagonal()


class TestRank:
    def test_rank(self):
        assert rank([[1, 0, 0], [0, 1, 0], [1, 1, 0]]) == 2
        assert rank([[ETA, I], [I, ETA**3]]) == 1
        assert rank([[0, 0]]) == 0
        assert rank([]) == 0
