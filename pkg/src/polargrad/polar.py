"""Degree of the gradient map by three routes, and the bound checkers.

* `polar_degree_formula`: (d-1)^n minus the total Milnor number of V(f).
* `polar_degree_tame`: the critical multiplicity of a certified affine model
  supported off the zero fiber.
* `polar_degree_fiber_oracle`: projective degree of a saturated generic-fiber
  ideal built from the 2x2 minors of (grad f | u).  This route needs no
  reducedness or isolatedness hypotheses and is the general fallback.

The oracle can run its Groebner steps modulo two fixed large primes; a value
is only reported from the modular path when both primes agree, and any
conjecture-counterexample claim is re-verified over the rationals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .groebner import (
    Ideal,
    intersect,
    projective_dim,
    saturate,
    zero_dim_degree_projective,
)
from .hypersurface import has_isolated_singularities, mu_summary
from .monodromy import (
    CycDivisor,
    fermat_mult_reference,
    mult_at_order,
    primitive_betti,
)
from .poly import (
    DomainMismatch,
    Poly,
    Reducedness,
    gradient,
    homogeneous_degree,
    squarefree_probe,
    to_prime_field,
)
from .rng import SplitMix64

ORACLE_PRIMES = (2147483629, 2147483587)


class PolarError(Exception):
    pass


class HypothesisError(PolarError):
    pass


class PositiveDimensionalFiber(PolarError):
    pass


class OracleInconsistent(PolarError):
    pass


class MethodsDisagree(PolarError):
    pass


@dataclass
class PolarDegreeResult:
    method: str
    value: int
    seed: int
    details: dict = field(default_factory=dict)


def require_hypotheses(f: Poly, seed: int = 1) -> None:
    """Reducedness (probabilistic, one-sided) and isolated singularities."""
    if squarefree_probe(f, seed=seed) is not Reducedness.PROBABLY_REDUCED:
        raise HypothesisError("input polynomial is not reduced")
    if not has_isolated_singularities(f):
        raise HypothesisError("singular locus is positive-dimensional")


def polar_degree_formula(f: Poly, seed: int = 1) -> PolarDegreeResult:
    """(d-1)^n - mu(V(f)), with mu computed through a certified frame and
    cross-checked against per-point local Milnor numbers when possible."""
    d = homogeneous_degree(f)
    n = len(f.vars) - 1
    require_hypotheses(f, seed)
    summary = mu_summary(f, seed)
    value = (d - 1) ** n - summary.mu_on
    if value < 0:
        raise PolarError(f"negative degree {(d-1)**n} - {summary.mu_on}")
    return PolarDegreeResult(
        "formula",
        value,
        seed,
        {
            "mu_V": summary.mu_on,
            "frame_seed": summary.model.seed,
            "frame_draws": summary.model.draws,
            "enumeration_complete": summary.complete,
        },
    )


def polar_degree_tame(f: Poly, seed: int = 1) -> PolarDegreeResult:
    """Critical multiplicity of the affine model away from the zero fiber."""
    homogeneous_degree(f)
    require_hypotheses(f, seed)
    summary = mu_summary(f, seed)
    return PolarDegreeResult(
        "tame_split",
        summary.mu_off,
        seed,
        {
            "mu_total": summary.mu_total,
            "mu_on": summary.mu_on,
            "frame_seed": summary.model.seed,
            "frame_draws": summary.model.draws,
        },
    )


# ---------------------------------------------------------------- the oracle


def _minor_gens(grads: list[Poly], u: tuple[int, ...]) -> list[Poly]:
    gens = []
    nv = len(grads)
    for i in range(nv):
        for j in range(i + 1, nv):
            g = grads[i].scale(u[j]) - grads[j].scale(u[i])
            if not g.is_zero():
                gens.append(g)
    return gens


class _OracleContext:
    """Per-domain gradient data shared across trials: the nonzero partials
    and whether the base locus grad f = 0 is empty.  With an empty base
    locus the saturation is skipped: removing the irrelevant component never
    changes the projective dimension or degree of the fiber scheme."""

    def __init__(self, grads: list[Poly]):
        self.grads = grads
        self.nonzero = [g for g in grads if not g.is_zero()]
        self.base_locus_empty = projective_dim(Ideal(self.nonzero)) == -1


def _fiber_degree(ctx: _OracleContext, u: tuple[int, ...]):
    """Fiber count and saturation exponents over one coefficient domain.

    Returns (count, exponents); the count is 0 for an empty (non-dominant)
    fiber.  Raises PositiveDimensionalFiber for a degenerate target."""
    gens = _minor_gens(ctx.grads, u)
    if not gens:
        raise PositiveDimensionalFiber("target is proportional to the gradient")
    fiber = Ideal(gens)
    exponents: list[int] = []
    if not ctx.base_locus_empty:
        parts = []
        for g in ctx.nonzero:
            part, n = saturate(fiber, g)
            parts.append(part)
            exponents.append(n)
        fiber = parts[0]
        for part in parts[1:]:
            fiber = intersect(fiber, part)
    if fiber.is_unit():
        return 0, exponents
    pd = projective_dim(fiber)
    if pd == -1:
        return 0, exponents
    if pd != 0:
        raise PositiveDimensionalFiber(f"saturated fiber has dimension {pd}")
    return zero_dim_degree_projective(fiber), exponents


def _oracle_value(contexts: dict, grads: list[Poly], u: tuple[int, ...], modp: str):
    def context(key) -> _OracleContext:
        if key not in contexts:
            if key == "qq":
                contexts[key] = _OracleContext(grads)
            else:
                contexts[key] = _OracleContext([to_prime_field(g, key) for g in grads])
        return contexts[key]

    if modp == "dual":
        try:
            results = [_fiber_degree(context(p), u) for p in ORACLE_PRIMES]
            if results[0][0] == results[1][0]:
                value, exps = results[0]
                return value, {
                    "u": list(u),
                    "path": "dual-prime",
                    "saturation_exponents": exps,
                    "degree": value,
                }
        except DomainMismatch:
            pass
        value, exps = _fiber_degree(context("qq"), u)
        return value, {
            "u": list(u),
            "path": "rational (prime fallback)",
            "saturation_exponents": exps,
            "degree": value,
        }
    value, exps = _fiber_degree(context("qq"), u)
    return value, {
        "u": list(u),
        "path": "rational",
        "saturation_exponents": exps,
        "degree": value,
    }


def polar_degree_fiber_oracle(
    f: Poly, trials: int = 3, seed: int = 1, modp: str = "dual"
) -> PolarDegreeResult:
    """Count the points of the fiber of the gradient map over random rational
    targets.  Trials must agree; on a mismatch more targets are drawn and the
    smallest value confirmed by three trials is reported, with the
    discrepancy logged in the details."""
    d = homogeneous_degree(f)
    if d < 1:
        raise HypothesisError("the gradient map needs a non-constant polynomial")
    if modp not in ("dual", "off"):
        raise ValueError("modp must be 'dual' or 'off'")
    grads = gradient(f)
    contexts: dict = {}
    rng = SplitMix64(seed * 6364136223846793005 + 0xDA3E39CB94B95BDB)
    nv = len(f.vars)
    values: list[int] = []
    infos: list[dict] = []
    budget = max(4 * trials, trials + 9)
    drawn = 0
    while True:
        if values and len(set(values)) == 1 and len(values) >= trials:
            break
        if len(set(values)) > 1 and max(Counter(values).values()) >= 3:
            break
        if drawn >= budget:
            if values and len(set(values)) == 1:
                break
            raise OracleInconsistent(
                f"no stable fiber count within {budget} targets: {values}"
            )
        result = None
        for _ in range(2):  # one internal retry per trial on a degenerate target
            u = rng.nonzero_vector(nv, -100, 100)
            drawn += 1
            try:
                result = _oracle_value(contexts, grads, u, modp)
                break
            except PositiveDimensionalFiber:
                continue
        if result is None:
            raise PositiveDimensionalFiber(
                "two consecutive degenerate targets; rerun with a new seed"
            )
        values.append(result[0])
        infos.append(result[1])
    if len(set(values)) == 1:
        value = values[0]
        discrepancy = False
    else:
        counts = Counter(values)
        agreeing = sorted(v for v, c in counts.items() if c >= 3)
        value = agreeing[0]
        discrepancy = True
    return PolarDegreeResult(
        "fiber_oracle",
        value,
        seed,
        {"values": values, "trials": infos, "discrepancy": discrepancy, "modp": modp},
    )


# ------------------------------------------------------------- consolidation


def consolidate(results: list[PolarDegreeResult]) -> tuple[int | None, bool]:
    """(consolidated value, unanimous flag); the value is present when at
    least two methods agree."""
    values = [r.value for r in results]
    counts = Counter(values)
    top, freq = counts.most_common(1)[0]
    if freq == len(values):
        return top, True
    if freq >= 2:
        return top, False
    return None, False


def is_homaloidal(
    f: Poly, seed: int = 1, trials: int = 3, modp: str = "dual"
) -> tuple[bool, list[PolarDegreeResult]]:
    """Whether the gradient map is birational, with the agreeing evidence."""
    results = [
        polar_degree_formula(f, seed),
        polar_degree_fiber_oracle(f, trials, seed, modp),
        polar_degree_tame(f, seed + 1),
    ]
    value, unanimous = consolidate(results)
    if not unanimous:
        raise MethodsDisagree(f"methods disagree: {[r.value for r in results]}")
    return value == 1, results


# ------------------------------------------------------------ bound checkers


def check_polar_degree_lower_bound(d: int, n: int, d_f: int, mu0: int) -> dict:
    """d(f) against the primitive Betti number of the dimension-(n-2) smooth
    reference hypersurface minus mu0(V)."""
    if d <= 2 or n < 3:
        raise ValueError("the lower bound needs d > 2 and n >= 3")
    rhs = primitive_betti(d, n - 2) - mu0
    return {"lhs": d_f, "rhs": rhs, "holds": d_f >= rhs}


def check_surface_criterion(d: int, mu0: int) -> dict:
    """Surface case: whether mu0(V) < (d-1)(d-2) - 1, which certifies that the
    gradient map of the surface cannot be birational."""
    bound = (d - 1) * (d - 2) - 1
    return {"mu0": mu0, "bound": bound, "certified": mu0 < bound}


def check_multiplicity_inequality(
    d: int, n: int, delta_v: CycDivisor, d_f: int
) -> dict:
    """For a homaloidal f, every d-th root of unity must satisfy
    mult_V >= reference multiplicity - 1; rows are grouped by the order k of
    the eigenvalue since both sides depend only on it."""
    if d_f != 1:
        return {"applicable": False, "rows": []}
    rows = []
    for k in range(1, d + 1):
        if d % k:
            continue
        mult_v = mult_at_order(delta_v, k)
        ref = fermat_mult_reference(d, n, k)
        rows.append(
            {
                "k": k,
                "mult_V": mult_v,
                "mult_reference": ref,
                "required": ref - 1,
                "holds": mult_v >= ref - 1,
            }
        )
    return {"applicable": True, "rows": rows}


def conjecture_verdict(
    d: int, n: int, reduced: bool, isolated: bool, d_f: int | None
) -> str:
    """Status of the d(f) != 1 expectation for reduced hypersurfaces with
    isolated singularities in the range d > 2, n > 2."""
    if d <= 2 or n <= 2 or not reduced or not isolated:
        return "out_of_hypothesis"
    if d_f is None:
        return "undetermined"
    return "consistent" if d_f != 1 else "COUNTEREXAMPLE"
