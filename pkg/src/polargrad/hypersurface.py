"""Hypersurface-level analysis: Jacobian ideals, singular points, local
Milnor numbers, generic affine frames and the critical-multiplicity split.

Local Milnor numbers are computed with the global Groebner engine by double
saturation: first remove the component at the point of interest to find the
"everything else" ideal, then remove everything else from the original to
isolate the primary component at the point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import divisors as _divisors
from .groebner import (
    GREVLEX,
    LEX,
    Ideal,
    NotZeroDimensional,
    projective_dim,
    quotient_vs_dim,
    saturate,
    saturate_ideal,
    zero_dim_degree_projective,
)
from .monodromy import CycDivisor, divisor_degree, mu0_from_charpoly
from .poly import (
    Poly,
    ProjectivePoint,
    dehomogenize,
    det_fraction,
    gradient,
    homogeneous_degree,
    set_variable_zero,
    substitute_linear,
    translate,
)
from .rng import SplitMix64


class HypersurfaceError(Exception):
    pass


class NotACriticalPoint(HypersurfaceError):
    pass


class NotIsolated(HypersurfaceError):
    pass


class NotTame(HypersurfaceError):
    pass


class TransversalityNotFound(HypersurfaceError):
    pass


class IncompleteEnumeration(HypersurfaceError):
    pass


class InconsistentMu(HypersurfaceError):
    pass


def jacobian_ideal(f: Poly) -> Ideal:
    """Ideal generated by all partial derivatives of f."""
    if f.is_zero() or f.degree() == 0:
        raise ValueError("need a non-constant polynomial")
    return Ideal(gradient(f), GREVLEX, vars=f.vars, domain=f.domain)


def has_isolated_singularities(f: Poly) -> bool:
    """True when the projective singular scheme is empty or zero-dimensional."""
    homogeneous_degree(f)
    return projective_dim(jacobian_ideal(f)) <= 0


# ----------------------------------------------------------- local invariants


def local_component_dim(gens, point) -> int:
    """Vector-space dimension of the primary component of the affine ideal
    (gens) at `point`: translate the point to the origin, saturate away the
    component at the origin, then saturate the original by the remainder."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise NotZeroDimensional("zero ideal has no finite local component")
    vars = gens[0].vars
    translated = [translate(g, point) for g in gens]
    J = Ideal(translated, GREVLEX)
    if J.is_unit():
        return 0
    m = Ideal([Poly.variable(vars, i, J.domain) for i in range(len(vars))], GREVLEX)
    rest = saturate_ideal(J, m)
    if rest.is_unit():
        primary = J
    else:
        primary = saturate_ideal(J, rest)
    return quotient_vs_dim(primary)


def local_milnor_number(h: Poly, point) -> int:
    """Milnor number of h at an isolated critical point: the dimension of the
    local algebra of the partial-derivative ideal."""
    partials = gradient(h)
    for p in partials:
        if p.evaluate(point) != p.domain.zero():
            raise NotACriticalPoint(f"gradient of h does not vanish at {tuple(point)}")
    try:
        mu = local_component_dim(partials, point)
    except NotZeroDimensional as exc:
        raise NotIsolated(f"critical point {tuple(point)} is not isolated") from exc
    if mu < 1:
        # the gradient vanishes but no finite primary component sits at the
        # point, so the critical locus through it is positive-dimensional
        raise NotIsolated(f"critical point {tuple(point)} is not isolated")
    return mu


# ------------------------------------------------------- rational point solve


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """All rational roots of a nonzero univariate polynomial."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial")
    roots: list[Fraction] = []
    low = 0
    while cs[low] == 0:
        low += 1
    if low:
        roots.append(Fraction(0))
        cs = cs[low:]
    if len(cs) == 1:
        return roots
    from math import gcd as _gcd

    den_lcm = 1
    for c in cs:
        den_lcm = den_lcm * c.denominator // _gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in cs]
    content = 0
    for v in ints:
        content = _gcd(content, abs(v))
    ints = [v // content for v in ints]
    a0, ad = abs(ints[0]), abs(ints[-1])
    for p in _divisors(a0):
        for q in _divisors(ad):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in roots:
                    continue
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    return sorted(roots)


def _substitute_last(p: Poly, value: Fraction) -> Poly:
    """Evaluate the last variable at `value` and drop it from the ring."""
    new_vars = p.vars[:-1]
    out: dict = {}
    dom = p.domain
    zero = dom.zero()
    for m, c in p.terms.items():
        coeff = dom.mul(c, dom.coerce(Fraction(value) ** m[-1]))
        nm = m[:-1]
        s = dom.add(out.get(nm, zero), coeff)
        if s == zero:
            out.pop(nm, None)
        else:
            out[nm] = s
    return Poly(new_vars, out, dom)


def rational_points_affine(gens: list[Poly]) -> list[tuple[Fraction, ...]]:
    """All rational points of a zero-dimensional affine system, by lex
    triangularization, rational root extraction and back-substitution."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise NotZeroDimensional("zero ideal")
    vars = gens[0].vars
    k = len(vars)
    if k == 0:
        return [()]
    basis = Ideal(gens, LEX).basis
    if any(b.degree() == 0 for b in basis):
        return []
    pure_last = [
        b for b in basis if all(all(e == 0 for e in m[:-1]) for m in b.terms)
    ]
    if not pure_last:
        raise NotZeroDimensional("no univariate eliminant in the last variable")
    coeffs_len = max(m[-1] for m in pure_last[0].terms) + 1
    coeffs = [Fraction(0)] * coeffs_len
    for m, c in pure_last[0].terms.items():
        coeffs[m[-1]] = Fraction(c)
    candidates = _rational_roots(coeffs)
    points: list[tuple[Fraction, ...]] = []
    for r in candidates:
        if any(g.evaluate([Fraction(0)] * (k - 1) + [r]) != 0 for g in pure_last):
            continue
        if k == 1:
            if all(g.evaluate([r]) == 0 for g in gens):
                points.append((r,))
            continue
        reduced = [_substitute_last(b, r) for b in basis]
        reduced = [g for g in reduced if not g.is_zero()]
        if not reduced:
            raise NotZeroDimensional("fiber slice is not zero-dimensional")
        for sub in rational_points_affine(reduced):
            points.append(sub + (r,))
    return sorted(points)


def _chart_restriction(gens, chart: int) -> list[Poly]:
    """Restrict homogeneous generators to the locally closed cell where
    x_chart = 1 and all later coordinates vanish; the result lives in the
    ring of the first `chart` variables."""
    out = []
    nv = len(gens[0].vars)
    for g in gens:
        h = g
        for j in range(chart + 1, nv):
            h = set_variable_zero(h, j)
        for j in range(nv - 1, chart - 1, -1):
            h = dehomogenize(h, j)
        out.append(h)
    return [h for h in out if not h.is_zero()]


def rational_singular_points(
    f: Poly, require_complete: bool = False
) -> tuple[list[ProjectivePoint], bool]:
    """All rational singular points of V(f), with a completeness certificate:
    the flag is True when the local multiplicities of the singular scheme at
    the found points add up to its full projective degree, so that no
    irrational point was missed.  With `require_complete`, an incomplete
    enumeration raises IncompleteEnumeration instead of returning."""
    J = jacobian_ideal(f)
    pd = projective_dim(J)
    if pd == -1:
        return [], True
    if pd > 0:
        raise NotIsolated(f"singular locus has dimension {pd}")
    nv = len(f.vars)
    points: list[ProjectivePoint] = []
    for chart in range(nv - 1, -1, -1):
        cell_gens = _chart_restriction(J.gens, chart)
        if chart == 0:
            if not cell_gens:
                points.append(ProjectivePoint((1,) + (0,) * (nv - 1)))
            continue
        if not cell_gens:
            raise NotIsolated("singular scheme meets a coordinate cell in a curve")
        if any(g.degree() == 0 for g in cell_gens):
            continue
        for sol in rational_points_affine(cell_gens):
            coords = sol + (Fraction(1),) + (Fraction(0),) * (nv - 1 - chart)
            points.append(ProjectivePoint(coords))
    points.sort(key=lambda p: p.coords)
    total = zero_dim_degree_projective(J)
    found = 0
    for pt in points:
        chart = pt.chart()
        affine_gens = [dehomogenize(g, chart) for g in J.gens]
        found += local_component_dim(affine_gens, pt.affine_coords())
    complete = found == total
    if require_complete and not complete:
        raise IncompleteEnumeration(
            f"rational points carry multiplicity {found} of {total}; "
            "irrational singular points exist"
        )
    return points, complete


# ------------------------------------------------------------- generic frame


@dataclass(frozen=True)
class AffineModel:
    """A certified affine chart for f: a coordinate change M with smooth
    section at infinity and no singular points on the hyperplane x_0 = 0,
    together with the dehomogenized polynomial h."""

    f: Poly
    matrix: tuple[tuple[int, ...], ...]
    h: Poly
    seed: int
    draws: int
    infinity_section_smooth: bool = True
    singularities_off_infinity: bool = True


def _frame_certificates(fM: Poly) -> bool:
    restriction = dehomogenize(set_variable_zero(fM, 0), 0)
    if restriction.is_zero():
        return False
    Jw = Ideal(gradient(restriction), GREVLEX, vars=restriction.vars, domain=fM.domain)
    if Jw.is_zero_ideal() or projective_dim(Jw) != -1:
        return False
    at_infinity = Ideal(
        list(gradient(fM)) + [Poly.variable(fM.vars, 0, fM.domain)], GREVLEX
    )
    return projective_dim(at_infinity) == -1


def generic_frame(f: Poly, seed: int, max_draws: int = 32) -> AffineModel:
    """Seeded random small-integer coordinate change certified to be generic
    enough for the affine critical-point analysis."""
    if not has_isolated_singularities(f):
        raise NotIsolated("singular locus is positive-dimensional")
    nv = len(f.vars)
    rng = SplitMix64(seed * 0x9E3779B9 + 17)
    for draw in range(1, max_draws + 1):
        M = tuple(rng.int_vector(nv, -5, 5) for _ in range(nv))
        if det_fraction(M) == 0:
            continue
        fM = substitute_linear(f, M)
        if not _frame_certificates(fM):
            continue
        return AffineModel(
            f=f, matrix=M, h=dehomogenize(fM, 0), seed=seed, draws=draw
        )
    raise TransversalityNotFound(
        f"no admissible frame after {max_draws} draws from seed {seed}"
    )


def tame_split(model: AffineModel) -> tuple[int, int]:
    """Split the total critical multiplicity of h into the part supported on
    the zero fiber and the part off it.  The total must equal (d-1)^n, which
    certifies that no critical multiplicity escaped to infinity."""
    h = model.h
    d = homogeneous_degree(model.f)
    n = len(h.vars)
    Jh = Ideal(gradient(h), GREVLEX, vars=h.vars, domain=h.domain)
    if Jh.is_zero_ideal():
        raise NotTame("gradient of h vanishes identically")
    try:
        total = quotient_vs_dim(Jh)
    except NotZeroDimensional as exc:
        raise NotTame("affine critical scheme is not finite") from exc
    if total != (d - 1) ** n:
        raise NotTame(
            f"total critical multiplicity {total} differs from (d-1)^n = {(d-1)**n}"
        )
    off_ideal, _ = saturate(Jh, h)
    mu_off = 0 if off_ideal.is_unit() else quotient_vs_dim(off_ideal)
    return total - mu_off, mu_off


# ------------------------------------------------------------- consolidation


@dataclass
class MuSummary:
    """Everything the polar-degree computations need about the singularities
    of V(f) for one certified frame."""

    model: AffineModel
    mu_total: int
    mu_on: int
    mu_off: int
    points: list[ProjectivePoint]
    complete: bool
    local_mu: dict[ProjectivePoint, int] = field(default_factory=dict)


def mu_summary(f: Poly, seed: int, frame_attempts: int = 8) -> MuSummary:
    """Certified frame plus the critical-multiplicity split, cross-checked
    against per-point local Milnor numbers when the rational enumeration of
    singular points is complete."""
    last_error: Exception | None = None
    model = None
    mu_on = mu_off = 0
    for k in range(frame_attempts):
        try:
            model = generic_frame(f, seed + 7919 * k)
            mu_on, mu_off = tame_split(model)
            break
        except NotTame as exc:
            last_error = exc
            model = None
    if model is None:
        raise NotTame(f"all frames rejected: {last_error}")
    points, complete = rational_singular_points(f)
    local_mu: dict[ProjectivePoint, int] = {}
    for pt in points:
        chart = pt.chart()
        h = dehomogenize(f, chart)
        local_mu[pt] = local_milnor_number(h, pt.affine_coords())
    if complete and sum(local_mu.values()) != mu_on:
        raise InconsistentMu(
            f"local Milnor numbers sum to {sum(local_mu.values())} but the "
            f"frame split gives {mu_on}"
        )
    d = homogeneous_degree(f)
    n = len(f.vars) - 1
    return MuSummary(
        model=model,
        mu_total=(d - 1) ** n,
        mu_on=mu_on,
        mu_off=mu_off,
        points=points,
        complete=complete,
        local_mu=local_mu,
    )


def total_mu_on_V(f: Poly, seed: int) -> int:
    """Sum of the Milnor numbers of all singularities of V(f)."""
    return mu_summary(f, seed).mu_on


# --------------------------------------------------------- singularity record


@dataclass
class SingularityRecord:
    """One singular point with its local data.  The weighted-homogeneous
    structure (weights or pure-power exponents) is user-declared; the divisor
    is derived from it and must match the computed Milnor number."""

    point: ProjectivePoint
    mu: int
    label: str | None = None
    bp_exponents: tuple[int, ...] | None = None
    weights: tuple[Fraction, ...] | None = None
    delta: CycDivisor | None = None
    mu0: int | None = None

    def __post_init__(self):
        if self.mu < 1:
            raise ValueError("Milnor number must be at least 1")
        if self.delta is not None:
            if divisor_degree(self.delta) != self.mu:
                raise ValueError(
                    f"divisor degree {divisor_degree(self.delta)} does not match "
                    f"the Milnor number {self.mu} at {self.point}"
                )
            expected = mu0_from_charpoly(self.delta)
            if self.mu0 is None:
                self.mu0 = expected
            elif self.mu0 != expected:
                raise ValueError("declared mu0 contradicts the divisor")
