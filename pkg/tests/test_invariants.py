import pytest

from z4group.exactalg import ETA, I, CycMatrix
from z4group.exceptions import UnsupportedInputError
from z4group.group import D_MATRIX, T_MATRIX, generate_group, standard_group
from z4group.invariants import (
    Poly3,
    Z4Code,
    act_poly,
    characteristic_polynomial,
    check_invariance,
    dual_code,
    euclidean_norm,
    from_field,
    invariant_dimension,
    is_self_dual,
    is_type_II,
    molien_coeffs,
    molien_series,
    monomials,
    reciprocal_series,
    reynolds,
    reynolds_naive,
    series_coefficients,
    swe,
    symmetrized_weights,
    to_field,
)

x = Poly3.variable("x")
y = Poly3.variable("y")
z = Poly3.variable("z")


@pytest.fixture(scope="module")
def group():
    return standard_group()


@pytest.fixture(scope="module")
def type_ii_code():
    return Z4Code.all_ones_even(8)


@pytest.fixture(scope="module")
def scalar_group():
    return generate_group([CycMatrix.identity(3).scale(I)], labels=["iI"])


class TestPoly3:
    def test_arithmetic(self):
        assert (x + y) ** 2 == x**2 + 2 * x * y + y**2
        assert (x - x) == 0
        assert not Poly3()
        assert 3 - x == Poly3.constant(3) - x

    def test_degree_and_homogeneity(self):
        f = x**3 + y * z**2
        assert f.degree() == 3
        assert f.is_homogeneous()
        assert not (f + x).is_homogeneous()

    def test_coefficients(self):
        f = (x + ETA * y) ** 2
        assert f.coefficient((1, 1, 0)) == 2 * ETA
        assert f.coefficient((0, 2, 0)) == I
        assert f.coefficient((0, 0, 2)) == 0

    def test_serialize_is_canonical(self):
        assert (2 * x * y + x**2).serialize() == (
            "1/1,0/1,0/1,0/1 * x^2 + 2/1,0/1,0/1,0/1 * x y"
        )
        assert Poly3().serialize() == "0"

    def test_str(self):
        assert str(x - y) == "x - y"
        assert str(Poly3.constant(1)) == "1"

    def test_monomials(self):
        assert len(monomials(8)) == 45
        assert monomials(1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def test_negative_power(self):
        with pytest.raises(ValueError):
            x ** (-1)


class TestAction:
    def test_substitution(self):
        assert act_poly(D_MATRIX, y) == ETA * y
        assert act_poly(D_MATRIX, z) == -z
        assert act_poly(T_MATRIX, x) == (x + 2 * y + z).scale(ETA / 2)

    def test_right_action(self):
        f = x**2 * y + z**3
        g, h = D_MATRIX, T_MATRIX
        assert act_poly(g @ h, f) == act_poly(h, act_poly(g, f))

    def test_rejects_non_cubic_matrix(self):
        with pytest.raises(UnsupportedInputError):
            act_poly(CycMatrix.identity(2), x)

    def test_check_invariance(self, group):
        assert check_invariance(Poly3.constant(1), group)
        assert not check_invariance(x, group)


class TestReynolds:
    def test_matches_naive_sum(self, group):
        for f in (x**4, x**2 * y * z, y**4 + z**4):
            assert reynolds(group, f) == reynolds_naive(group, f)

    def test_parallel_matches_serial(self, group):
        f = x**4 * z**4
        assert reynolds(group, f, parallel=True, workers=4) == reynolds(group, f)

    def test_image_is_invariant_and_idempotent(self, group):
        image = reynolds(group, x**8)
        assert check_invariance(image, group)
        assert reynolds(group, image) == image

    def test_kills_degrees_prime_to_four(self, group):
        # iI lies in the group, so only degrees divisible by 4 survive.
        for f in (x, x * y, x**3 + y * z**2):
            assert reynolds(group, f) == 0


class TestMolien:
    def test_field_conversion_keeps_the_basis(self):
        assert from_field(to_field(ETA)) == ETA
        assert from_field(to_field(ETA) ** 4) == -1
        assert from_field(to_field(I) * to_field(ETA)) == ETA**3

    def test_characteristic_polynomial(self):
        # diag(1, η, -1) has charpoly (t - 1)(t - η)(t + 1) = t³ - ηt² - t + η.
        coeffs = characteristic_polynomial(D_MATRIX).rep.to_list()
        assert [from_field(c) for c in coeffs] == [1, -ETA, -1, ETA]

    def test_reciprocal_series(self):
        char = characteristic_polynomial(CycMatrix.identity(3))
        series = reciprocal_series(char, 4)
        assert series_coefficients(series, 4) == [1, 3, 6, 10, 15]

    def test_reciprocal_series_with_cyclotomic_roots(self):
        # 1/(1 - ηt) = Σ ηⁿtⁿ
        char = characteristic_polynomial(CycMatrix.from_rows([[ETA]]))
        assert series_coefficients(reciprocal_series(char, 8), 8) == [
            ETA**n for n in range(9)
        ]

    def test_molien_series_is_rational(self, scalar_group):
        coeffs = series_coefficients(molien_series(scalar_group, 8), 8)
        assert all(c.is_rational() for c in coeffs)
        assert [c.as_int() for c in coeffs] == [1, 0, 0, 0, 15, 0, 0, 0, 45]

    def test_trivial_group(self):
        trivial = generate_group([CycMatrix.identity(3)])
        assert molien_coeffs(trivial, 3) == [1, 3, 6, 10]
        assert invariant_dimension(trivial, 2) == 6

    def test_scalar_group(self, scalar_group):
        assert molien_coeffs(scalar_group, 4) == [1, 0, 0, 0, 15]
        assert invariant_dimension(scalar_group, 4) == 15

    def test_group_series_vanishes_off_multiples_of_four(self, group):
        coeffs = molien_coeffs(group, 8)
        assert coeffs[0] == 1
        assert all(c == 0 for d, c in enumerate(coeffs) if d % 4)
        assert coeffs[8] >= 1

    @pytest.mark.parametrize("degree", [0, 1, 2, 3, 4])
    def test_molien_counts_invariants(self, group, degree):
        expected = molien_coeffs(group, degree)[degree]
        assert invariant_dimension(group, degree) == expected

    @pytest.mark.slow
    @pytest.mark.parametrize("degree", [5, 6, 7, 8])
    def test_molien_counts_invariants_high_degree(self, group, degree):
        expected = molien_coeffs(group, degree)[degree]
        assert invariant_dimension(group, degree, parallel=True) == expected

    def test_negative_dmax(self, group):
        with pytest.raises(ValueError):
            molien_coeffs(group, -1)


class TestZ4Code:
    def test_span(self, type_ii_code):
        assert len(type_ii_code) == 256
        assert (1,) * 8 in type_ii_code
        assert (3,) * 8 in type_ii_code
        assert type_ii_code.as_array().shape == (256, 8)

    def test_generators_are_reduced_mod_four(self):
        code = Z4Code.from_generators([(5, 6)])
        assert code.generators == ((1, 2),)
        assert len(code) == 4

    def test_construction_errors(self):
        with pytest.raises(UnsupportedInputError):
            Z4Code.from_generators([])
        with pytest.raises(UnsupportedInputError):
            Z4Code.from_generators([(1, 2), (1,)])
        with pytest.raises(UnsupportedInputError):
            Z4Code.zero_code(0)

    def test_weights(self):
        assert symmetrized_weights((0, 1, 2, 3, 3)) == (1, 3, 1)
        assert euclidean_norm((1, 2, 3)) == 14

    def test_dual(self):
        assert dual_code(Z4Code.from_generators([(2,)])).elements == {(0,), (2,)}
        assert len(dual_code(Z4Code.from_generators([(1, 1)]))) == 4


class TestTypeII:
    def test_type_ii_code(self, type_ii_code):
        result = is_type_II(type_ii_code)
        assert result
        assert result.passed

    def test_self_dual_but_norm_four(self):
        code = Z4Code.from_generators([(2,)])
        assert is_self_dual(code)
        result = is_type_II(code)
        assert not result
        assert "norm 4" in result.reason

    def test_zero_code_is_not_self_dual(self):
        result = is_type_II(Z4Code.zero_code(2))
        assert not result.passed
        assert result.reason == "code is not self-dual"

    def test_length_cap(self):
        with pytest.raises(UnsupportedInputError):
            is_type_II(Z4Code.zero_code(13))
        with pytest.raises(UnsupportedInputError):
            dual_code(Z4Code.zero_code(13))


class TestSymmetrizedWeightEnumerator:
    def test_swe_shape(self, type_ii_code):
        w = swe(type_ii_code)
        assert w.is_homogeneous()
        assert w.degree() == 8
        assert sum(w.terms.values()) == 256
        assert w.coefficient((0, 8, 0)) == 128
        assert w.coefficient((8, 0, 0)) == 1

    def test_swe_of_type_ii_code_is_invariant(self, group, type_ii_code):
        assert check_invariance(swe(type_ii_code), group)

    def test_t_twists_short_self_dual_codes_by_eta(self):
        # A self-dual code of length n has T·swe = η^n·swe.
        w = swe(Z4Code.from_generators([(2,)]))
        assert w == x + z
        assert act_poly(T_MATRIX, w) == ETA * w
        assert act_poly(D_MATRIX, w) != w
