"""Groebner engine: division, Buchberger, elimination, saturation, staircase.

Cross-checks: quotient dimensions against a Macaulay-matrix rank oracle,
saturations against the extra-variable construction, and the Buchberger
criterion as a post-hoc test on computed bases.
"""

import pytest
from hypothesis import assume, given, settings

from polargrad.groebner import (
    GREVLEX,
    LEX,
    Caps,
    Ideal,
    NotZeroDimensional,
    ResourceLimit,
    buchberger,
    eliminate,
    hilbert_numerator,
    ideal_quotient,
    leading_monomial,
    normal_form,
    poly_divmod,
    projective_dim,
    quotient_vs_dim,
    s_polynomial,
    saturate,
    saturate_ideal,
    staircase,
    zero_dim_degree_projective,
)
from polargrad.parser import parse_poly
from polargrad.poly import to_prime_field

from helpers import (
    macaulay_quotient_dim,
    polys,
    rabinowitsch_saturate,
    random_zero_dim_ideal,
)

V2 = ("x", "y")
V3 = ("x", "y", "z")


def P(text, vars=V3):
    return parse_poly(text, vars)


class TestNormalForm:
    def test_examples(self):
        assert normal_form(P("x^2"), [P("x")], GREVLEX).is_zero()
        assert normal_form(P("x + y"), [P("x")], GREVLEX) == P("y")

    def test_membership_via_reduced_basis(self):
        gens = [P("x^2 - y*z"), P("x*y - z^2")]
        basis = Ideal(gens).basis
        for g in gens:
            assert normal_form(g, basis, GREVLEX).is_zero()

    def test_divmod_reconstructs(self):
        p = P("x^3*y + x*y^2 + y + 1")
        divisors = [P("x*y - 1"), P("y^2 - 1")]
        qs, r = poly_divmod(p, divisors, GREVLEX)
        acc = r
        for q, g in zip(qs, divisors):
            acc = acc + q * g
        assert acc == p
        lead = [leading_monomial(g, GREVLEX) for g in divisors]
        for m in r.terms:
            assert not any(all(a <= b for a, b in zip(lm, m)) for lm in lead)


class TestBuchberger:
    def test_already_a_basis(self):
        basis = buchberger([P("x", V2), P("y", V2)])
        assert {leading_monomial(g, GREVLEX) for g in basis} == {(1, 0), (0, 1)}

    def test_spoly_creates_y_cubed(self):
        basis = buchberger([P("x^2", V2), P("x*y + y^2", V2)])
        lts = {leading_monomial(g, GREVLEX) for g in basis}
        assert lts == {(2, 0), (1, 1), (0, 3)}

    def test_lex_elimination_univariate(self):
        basis = buchberger([P("x - y^2", V2), P("y - x^2", V2)], LEX)
        univariate = [g for g in basis if all(m[0] == 0 for m in g.terms)]
        assert len(univariate) == 1
        assert univariate[0] == P("y^4 - y", V2)

    def test_idempotent(self):
        gens = [P("x^2 - y*z"), P("x*y - z^2"), P("x*z - y^2")]
        basis = buchberger(gens)
        assert buchberger(basis) == basis

    def test_input_order_irrelevant(self):
        gens = [P("x^2 - y*z"), P("x*y - z^2"), P("x*z - y^2")]
        assert buchberger(gens) == buchberger(list(reversed(gens)))

    def test_all_spolys_reduce_to_zero(self):
        for gens in (
            [P("x^2", V2), P("x*y + y^2", V2)],
            [P("x^2 - y*z"), P("x*y - z^2")],
            [P("y*z"), P("x*z"), P("x*y")],
        ):
            basis = buchberger(gens)
            for i in range(len(basis)):
                for j in range(i + 1, len(basis)):
                    s = s_polynomial(basis[i], basis[j], GREVLEX)
                    assert normal_form(s, basis, GREVLEX).is_zero()

    def test_resource_caps_fail_loudly(self):
        gens = [P("x^5 - y*z^4"), P("x*y^4 - z^5"), P("x^4*z - y^5")]
        with pytest.raises(ResourceLimit):
            buchberger(gens, GREVLEX, Caps(max_basis=2, max_degree=120))

    @given(polys(max_vars=2, max_exp=3, max_terms=3))
    @settings(max_examples=30, deadline=None)
    def test_buchberger_criterion_on_random_pairs(self, p):
        assume(not p.is_zero())
        q = p.partial(0) + p.partial(1)
        gens = [g for g in (p, q) if not g.is_zero()]
        basis = buchberger(gens)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                s = s_polynomial(basis[i], basis[j], GREVLEX)
                assert normal_form(s, basis, GREVLEX).is_zero()
        for g in gens:
            assert normal_form(g, basis, GREVLEX).is_zero()

    def test_arbitrary_precision_coefficients(self):
        big = 10**40
        f = P(f"{big}*x + 1", V2)
        g = f * f * f
        assert g.terms[(3, 0)] == big**3  # no overflow, exact integers

    def test_prime_field_agrees_with_rationals(self):
        gens = [P("x^2 + y*z"), P("x*y - z^2")]
        basis_q = buchberger(gens)
        p = 2147483629
        basis_p = buchberger([to_prime_field(g, p) for g in gens])
        lts_q = {leading_monomial(g, GREVLEX) for g in basis_q}
        lts_p = {leading_monomial(g, GREVLEX) for g in basis_p}
        assert lts_q == lts_p


class TestEliminate:
    def test_parabola(self):
        t_x_y = ("t", "x", "y")
        I = Ideal([parse_poly("x - t", t_x_y), parse_poly("y - t^2", t_x_y)])
        E = eliminate(I, {1, 2})
        expected = parse_poly("y - x^2", t_x_y)
        assert E.contains(expected)
        assert all(all(m[0] == 0 for m in g.terms) for g in E.gens)
        assert Ideal([expected]).contains_ideal(E)

    def test_keep_everything(self):
        I = Ideal([P("x", V2)], vars=V2, domain=P("x", V2).domain)
        assert eliminate(I, {0, 1}).gens == I.gens

    def test_generator_already_in_kept_block(self):
        I = Ideal([P("x", V2)])
        assert eliminate(I, {0}) == Ideal([P("x", V2)])

    def test_nothing_purely_in_x(self):
        I = Ideal([P("x + y", V2)])
        E = eliminate(I, {0})
        assert E.is_zero_ideal()


class TestQuotientAndSaturation:
    def test_quotient_examples(self):
        assert ideal_quotient(Ideal([P("x^2")]), P("x")) == Ideal([P("x")])
        assert ideal_quotient(Ideal([P("x*y"), P("x*z")]), P("x")) == Ideal(
            [P("y"), P("z")]
        )
        assert ideal_quotient(Ideal([P("x")]), P("y")) == Ideal([P("x")])

    def test_saturate_examples_with_exponent(self):
        S, n = saturate(Ideal([P("x*y"), P("x*z")]), P("x"))
        assert S == Ideal([P("y"), P("z")]) and n == 1
        S, n = saturate(Ideal([P("x^2")]), P("x"))
        assert S.is_unit() and n == 2
        S, n = saturate(Ideal([P("y")]), P("x"))
        assert S == Ideal([P("y")]) and n == 0

    def test_saturation_certificate(self):
        I = Ideal([P("x^2*y"), P("x*z^2")])
        g = P("x")
        S, n = saturate(I, g)
        gn = g**n
        for h in S.gens:
            assert I.contains(gn * h)

    def test_saturate_ideal_examples(self):
        I = Ideal([P("x*y"), P("x*z")])
        assert saturate_ideal(I, Ideal([P("x")])) == Ideal([P("y"), P("z")])
        K = Ideal([P("x^2 - y*z")])
        assert saturate_ideal(K, Ideal([P("1")])) == K

    def test_saturate_ideal_removes_only_common_zeros(self):
        # no primary component of (x^2 y) is supported inside V(x, y), so the
        # saturation leaves the ideal unchanged; saturating by (x*y) instead
        # wipes both components
        J = Ideal([P("x^2*y")])
        assert saturate_ideal(J, Ideal([P("x"), P("y")])) == J
        assert saturate_ideal(Ideal([P("x^2*y^2")]), Ideal([P("x*y")])).is_unit()

    def test_saturate_ideal_is_stable(self):
        I = Ideal([P("x^2*y"), P("x*z^2"), P("y^2*z")])
        J = Ideal([P("x"), P("y")])
        S = saturate_ideal(I, J)
        assert saturate_ideal(S, J) == S

    def test_rabinowitsch_cross_check(self):
        cases = [
            (Ideal([P("x^2*y"), P("x*z^2")]), P("x")),
            (Ideal([P("x*y"), P("x*z")]), P("x")),
            (Ideal([P("x^2 - y*z"), P("x*y^2")]), P("y")),
            (Ideal([P("x^3")]), P("x")),
        ]
        for I, g in cases:
            assert saturate(I, g)[0] == rabinowitsch_saturate(I, g)


class TestStaircaseInvariants:
    def test_projective_dim_examples(self):
        fermat_jac = Ideal([P("3*x^2"), P("3*y^2"), P("3*z^2")])
        assert projective_dim(fermat_jac) == -1
        corner = Ideal([P("y*z"), P("x*z"), P("x*y")])
        assert projective_dim(corner) == 0
        line = Ideal([P("x")])
        assert projective_dim(line) == 1

    def test_quotient_vs_dim_examples(self):
        I = Ideal([parse_poly("x^2", V2), parse_poly("y^2", V2)])
        assert quotient_vs_dim(I) == 4
        report = staircase(I)
        assert set(report.standard_monomials) == {(0, 0), (1, 0), (0, 1), (1, 1)}
        assert quotient_vs_dim(Ideal([parse_poly("x^2", V2), parse_poly("y", V2)])) == 2
        assert quotient_vs_dim(Ideal([parse_poly("x", V2), parse_poly("y", V2)])) == 1

    def test_not_zero_dimensional(self):
        with pytest.raises(NotZeroDimensional):
            quotient_vs_dim(Ideal([parse_poly("x", V2)]))

    def test_projective_degree_examples(self):
        corner = Ideal([P("y*z"), P("x*z"), P("x*y")])
        assert zero_dim_degree_projective(corner) == 3
        double = Ideal([P("x^2"), P("y")])
        assert zero_dim_degree_projective(double) == 2
        point = Ideal([P("x"), P("y")])
        assert zero_dim_degree_projective(point) == 1

    def test_hilbert_numerator_corner_points(self):
        num = hilbert_numerator([(1, 1, 0), (1, 0, 1), (0, 1, 1)], 3)
        assert num == [1, 0, -3, 2]

    def test_macaulay_rank_oracle(self):
        checked = 0
        seed = 1000
        while checked < 10:
            seed += 1
            nv = 2 + (seed % 2)
            gens = random_zero_dim_ideal(seed, nv)
            I = Ideal(gens)
            dim = quotient_vs_dim(I)
            report = staircase(I)
            bound = max(
                (sum(m) for m in report.standard_monomials), default=0
            ) + max(g.degree() for g in gens) + 1
            assert macaulay_quotient_dim(list(gens), bound) == dim
            checked += 1


class TestPrimeFieldPipeline:
    def test_saturation_mod_p_matches(self):
        p = 2147483587
        I = Ideal([P("x*y"), P("x*z")])
        Ip = Ideal([to_prime_field(g, p) for g in I.gens])
        S = saturate_ideal(I, Ideal([P("x")]))
        Sp = saturate_ideal(Ip, Ideal([to_prime_field(P("x"), p)]))
        assert {leading_monomial(g, GREVLEX) for g in S.basis} == {
            leading_monomial(g, GREVLEX) for g in Sp.basis
        }
