"""Polynomial kernel: parser, calculus, substitution, reducedness probe."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from polargrad.parser import ParseError, UnknownVariable, parse_poly
from polargrad.poly import (
    GF,
    NotHomogeneous,
    Poly,
    ProjectivePoint,
    Reducedness,
    SingularMatrix,
    ZeroPolynomial,
    dehomogenize,
    euler_check,
    gradient,
    homogeneous_degree,
    poly_text,
    squarefree_probe,
    substitute_linear,
    to_prime_field,
)
from polargrad.rng import SplitMix64

from helpers import homogeneous_polys, invert_fraction_matrix, poly_pairs, polys

V2 = ("x", "y")
V3 = ("x", "y", "z")


class TestParser:
    def test_fermat_cubic(self):
        f = parse_poly("x^3+y^3+z^3", V3)
        assert len(f.terms) == 3
        assert homogeneous_degree(f) == 3

    def test_cancellation_to_zero(self):
        f = parse_poly("x*y - x*y", V2)
        assert f.is_zero()
        assert f.terms == {}

    def test_binomial_expansion(self):
        f = parse_poly("x*(y+z)^2", V3)
        expected = parse_poly("x*y^2 + 2*x*y*z + x*z^2", V3)
        assert f == expected

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable):
            parse_poly("x + q", V2)

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            parse_poly("x + ", V2)
        assert err.value.position == 4

    def test_implicit_multiplication_rejected(self):
        with pytest.raises(ParseError):
            parse_poly("2 x", V2)
        with pytest.raises(ParseError):
            parse_poly("x y", V2)

    def test_signed_exponent_rejected(self):
        with pytest.raises(ParseError):
            parse_poly("x^-2", V2)

    def test_rational_coefficient(self):
        f = parse_poly("1/2*x + 3*y", V2)
        assert f.terms[(1, 0)] == Fraction(1, 2)

    @given(polys())
    def test_round_trip(self, p):
        assert parse_poly(poly_text(p), p.vars) == p


class TestCalculus:
    def test_partial_examples(self):
        xyz = parse_poly("x*y*z", V3)
        assert xyz.partial(0) == parse_poly("y*z", V3)
        fermat = parse_poly("x^3+y^3+z^3", V3)
        assert fermat.partial(1) == parse_poly("3*y^2", V3)
        const = parse_poly("7", V3)
        assert const.partial(0).is_zero()

    @given(polys(), polys())
    def test_partial_linearity_and_leibniz(self, p, q):
        assume(p.vars == q.vars)
        for i in range(len(p.vars)):
            assert (p + q).partial(i) == p.partial(i) + q.partial(i)
            assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)

    def test_gradient_examples(self):
        xyz = parse_poly("x*y*z", V3)
        assert gradient(xyz) == [
            parse_poly("y*z", V3),
            parse_poly("x*z", V3),
            parse_poly("x*y", V3),
        ]
        sq = parse_poly("x^2 + y^2", V2)
        assert gradient(sq) == [parse_poly("2*x", V2), parse_poly("2*y", V2)]
        pure = parse_poly("x^5", V3)
        grads = gradient(pure)
        assert grads[0] == parse_poly("5*x^4", V3)
        assert grads[1].is_zero() and grads[2].is_zero()

    def test_homogeneous_degree(self):
        assert homogeneous_degree(parse_poly("x*y*z", V3)) == 3
        assert homogeneous_degree(parse_poly("x^5", V3)) == 5
        with pytest.raises(NotHomogeneous) as err:
            homogeneous_degree(parse_poly("x^2 + y", V2))
        assert err.value.offending is not None
        with pytest.raises(ZeroPolynomial):
            homogeneous_degree(Poly.zero(V2))

    def test_euler_examples(self):
        assert euler_check(parse_poly("x^2*y", V2))
        assert euler_check(parse_poly("x^3+y^3+z^3", V3))

    @given(homogeneous_polys())
    @settings(max_examples=120)
    def test_euler_identity_holds_universally(self, f):
        assume(not f.is_zero())
        assert euler_check(f)

    @given(poly_pairs())
    def test_evaluation_is_ring_homomorphism(self, data):
        p, q, point = data
        assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
        assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)


class TestSubstitution:
    def test_identity(self):
        f = parse_poly("x^2*y - z^3", V3)
        ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert substitute_linear(f, ident) == f

    def test_swap(self):
        f = parse_poly("x", V2)
        swap = [[0, 1], [1, 0]]
        assert substitute_linear(f, swap) == parse_poly("y", V2)

    def test_singular_matrix_rejected(self):
        f = parse_poly("x + y", V2)
        with pytest.raises(SingularMatrix):
            substitute_linear(f, [[1, 1], [1, 1]])

    def test_degree_preserved_for_random_matrices(self):
        rng = SplitMix64(7)
        f = parse_poly("x^3 + x*y*z + z^3", V3)
        count = 0
        while count < 20:
            M = [list(rng.int_vector(3, -5, 5)) for _ in range(3)]
            try:
                g = substitute_linear(f, M)
            except SingularMatrix:
                continue
            count += 1
            assert g.degree() == f.degree()

    def test_inverse_composition_is_identity(self):
        rng = SplitMix64(11)
        f = parse_poly("x^2*y + 3*y^2*z - z^3", V3)
        count = 0
        while count < 5:
            M = [list(rng.int_vector(3, -4, 4)) for _ in range(3)]
            try:
                g = substitute_linear(f, M)
            except SingularMatrix:
                continue
            count += 1
            Minv = invert_fraction_matrix(M)
            assert substitute_linear(g, Minv) == f

    def test_composition_law(self):
        f = parse_poly("x^2 + y*z", V3)
        M = [[1, 2, 0], [0, 1, 0], [1, 0, 1]]
        N = [[1, 0, 1], [0, 1, 1], [0, 0, 1]]
        MN = [
            [sum(M[i][k] * N[k][j] for k in range(3)) for j in range(3)]
            for i in range(3)
        ]
        assert substitute_linear(f, MN) == substitute_linear(
            substitute_linear(f, M), N
        )


class TestDehomogenize:
    def test_examples(self):
        assert dehomogenize(parse_poly("x*y*z", V3), 0) == parse_poly("y*z", ("y", "z"))
        f = dehomogenize(parse_poly("x^3 + y^3 + z^3", V3), 0)
        assert f == parse_poly("1 + y^3 + z^3", ("y", "z"))

    def test_degree_drop_iff_divisible(self):
        f = parse_poly("x*y^2", V3)  # every term divisible by x
        assert dehomogenize(f, 0).degree() < f.degree()
        g = parse_poly("x*y^2 + z^3", V3)
        assert dehomogenize(g, 0).degree() == g.degree()


class TestPrimeField:
    def test_reduction_is_ring_homomorphism(self):
        p = 2147483629
        f = parse_poly("3*x^2 + 5*y - 7", V2)
        g = parse_poly("x*y - 2", V2)
        assert to_prime_field(f * g, p) == to_prime_field(f, p) * to_prime_field(g, p)
        assert to_prime_field(f + g, p) == to_prime_field(f, p) + to_prime_field(g, p)

    def test_canonical_representatives(self):
        p = 101
        f = to_prime_field(parse_poly("102*x - 1", V2), p)
        assert f.terms[(1, 0)] == 1
        assert f.terms[(0, 0)] == 100

    def test_bad_modulus_rejected(self):
        with pytest.raises(ValueError):
            GF(2)
        with pytest.raises(ValueError):
            GF(91)


class TestProjectivePoint:
    def test_normalization_idempotent(self):
        p = ProjectivePoint((Fraction(2), Fraction(4), Fraction(2)))
        assert p.coords == (1, 2, 1)
        assert ProjectivePoint(p.coords) == p

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            ProjectivePoint((0, 0, 0))

    def test_chart_and_affine_coords(self):
        p = ProjectivePoint((Fraction(3), Fraction(1), Fraction(0)))
        assert p.chart() == 1
        assert p.affine_coords() == (3, 0)


class TestSquarefreeProbe:
    def test_square_factor_always_detected(self):
        f = parse_poly("x^2*y", V3)
        for seed in range(5):
            assert squarefree_probe(f, seed=seed) is Reducedness.NOT_REDUCED

    def test_triangle_is_reduced(self):
        assert (
            squarefree_probe(parse_poly("x*y*z", V3)) is Reducedness.PROBABLY_REDUCED
        )

    def test_smooth_fermat_is_reduced(self):
        f = parse_poly("x^3+y^3+z^3", V3)
        assert squarefree_probe(f) is Reducedness.PROBABLY_REDUCED
