"""Shared test utilities: independent oracles and data generators.

The oracles here deliberately avoid the code paths they check: quotient
dimensions are recomputed from a Macaulay matrix rank, saturations from the
extra-variable construction, eigenvalue multiplicities by enumerating
root-of-unity products.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

import hypothesis.strategies as st

from polargrad.groebner import Ideal, buchberger, elimination_order
from polargrad.poly import Poly, mono_mul
from polargrad.rng import SplitMix64

VAR_POOL = ("w", "x", "y", "z", "u", "v")


def var_names(nv: int) -> tuple[str, ...]:
    return VAR_POOL[:nv]


# ----------------------------------------------------------------- strategies


@st.composite
def polys(draw, min_vars=2, max_vars=3, max_exp=3, max_terms=5, allow_zero=True):
    nv = draw(st.integers(min_vars, max_vars))
    names = var_names(nv)
    nterms = draw(st.integers(0 if allow_zero else 1, max_terms))
    terms: dict = {}
    for _ in range(nterms):
        mono = tuple(draw(st.integers(0, max_exp)) for _ in range(nv))
        coeff = draw(
            st.fractions(min_value=-5, max_value=5, max_denominator=6)
        )
        terms[mono] = terms.get(mono, Fraction(0)) + coeff
    return Poly(names, terms)


@st.composite
def poly_pairs(draw, max_vars=3, max_exp=3):
    nv = draw(st.integers(2, max_vars))
    names = var_names(nv)

    def one():
        nterms = draw(st.integers(0, 4))
        terms: dict = {}
        for _ in range(nterms):
            mono = tuple(draw(st.integers(0, max_exp)) for _ in range(nv))
            coeff = draw(st.integers(-6, 6))
            terms[mono] = terms.get(mono, 0) + coeff
        return Poly(names, terms)

    point = tuple(
        draw(st.fractions(min_value=-3, max_value=3, max_denominator=4))
        for _ in range(nv)
    )
    return one(), one(), point


@st.composite
def homogeneous_polys(draw, max_vars=4, max_degree=6, max_terms=5):
    nv = draw(st.integers(2, max_vars))
    names = var_names(nv)
    d = draw(st.integers(1, max_degree))
    nterms = draw(st.integers(1, max_terms))
    terms: dict = {}
    for _ in range(nterms):
        balls = draw(st.lists(st.integers(0, nv - 1), min_size=d, max_size=d))
        mono = tuple(balls.count(i) for i in range(nv))
        coeff = draw(st.integers(-6, 6))
        terms[mono] = terms.get(mono, 0) + coeff
    return Poly(names, terms)


# ------------------------------------------------------------- linear algebra


def fraction_rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    pivot_row = 0
    for col in range(ncols):
        pivot = next(
            (r for r in range(pivot_row, len(rows)) if rows[r][col] != 0), None
        )
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        inv = 1 / rows[pivot_row][col]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] != 0:
                factor = rows[r][col] * inv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        rank += 1
        if pivot_row == len(rows):
            break
    return rank


def invert_fraction_matrix(M):
    n = len(M)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(M)
    ]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# ------------------------------------------------------------ Macaulay oracle


def monomials_up_to(nv: int, bound: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def walk(prefix, remaining, i):
        if i == nv:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            walk(prefix + [e], remaining - e, i + 1)

    walk([], bound, 0)
    return sorted(out)


def macaulay_quotient_dim(gens: list[Poly], bound: int) -> int:
    """Dimension of (monomials of degree <= bound) modulo the span of all
    degree-<= bound multiples of the generators; equals the quotient
    dimension once `bound` passes the staircase."""
    nv = len(gens[0].vars)
    cols = {m: i for i, m in enumerate(monomials_up_to(nv, bound))}
    rows = []
    for g in gens:
        dg = g.degree()
        for m in monomials_up_to(nv, bound - dg):
            row = [Fraction(0)] * len(cols)
            for gm, c in g.terms.items():
                row[cols[mono_mul(m, gm)]] = Fraction(c)
            rows.append(row)
    return len(cols) - fraction_rank(rows)


def random_zero_dim_ideal(seed: int, nv: int) -> list[Poly]:
    """Deterministic random ideal guaranteed zero-dimensional: one generator
    per variable with a pure-power leading term plus a lower-degree tail."""
    rng = SplitMix64(seed)
    names = var_names(nv)
    gens = []
    for i in range(nv):
        d = rng.randint(2, 4)
        terms = {tuple(d if j == i else 0 for j in range(nv)): Fraction(1)}
        for _ in range(rng.randint(0, 3)):
            mono = tuple(rng.randint(0, d - 1) for _ in range(nv))
            if sum(mono) >= d:
                continue
            c = rng.randint(-3, 3)
            if c:
                terms[mono] = terms.get(mono, Fraction(0)) + c
        gens.append(Poly(names, terms))
    return gens


# ------------------------------------------------- Rabinowitsch cross-check


def rabinowitsch_saturate(I: Ideal, g: Poly) -> Ideal:
    """I : g^inf via the extra-variable construction (1 - t*g)."""
    tname = "t_rab"
    new_vars = (tname,) + I.vars
    lifted = [
        Poly(new_vars, {(0,) + m: c for m, c in p.terms.items()}, I.domain)
        for p in I.gens
    ]
    tg = Poly(new_vars, {(1,) + m: c for m, c in g.terms.items()}, I.domain)
    one = Poly.constant(new_vars, 1, I.domain)
    lifted.append(one - tg)
    order = elimination_order((0,), tuple(range(1, len(new_vars))))
    basis = buchberger(lifted, order)
    kept = [
        Poly(I.vars, {m[1:]: c for m, c in p.terms.items()}, I.domain)
        for p in basis
        if all(m[0] == 0 for m in p.terms)
    ]
    return Ideal(kept, I.order, vars=I.vars, domain=I.domain)


# ------------------------------------------- eigenvalue product enumeration


def brute_force_mult(exponents: list[int], k: int) -> int:
    """Multiplicity of exp(2*pi*i/k) among products of nontrivial roots of
    unity: count exponent tuples whose fractional angle sum is 1/k."""
    target = Fraction(1, k) % 1
    count = 0
    for combo in iproduct(*[range(1, a) for a in exponents]):
        angle = sum(Fraction(c, a) for c, a in zip(combo, exponents)) % 1
        if angle == target:
            count += 1
    return count


def bp_tuples_up_to(product_bound: int) -> list[tuple[int, ...]]:
    """All nondecreasing tuples of integers >= 2 with product <= bound."""
    out: list[tuple[int, ...]] = []

    def walk(prefix: list[int], minimum: int, prod: int):
        if prefix:
            out.append(tuple(prefix))
        a = minimum
        while prod * a <= product_bound:
            walk(prefix + [a], a, prod * a)
            a += 1

    walk([], 2, 1)
    return out
