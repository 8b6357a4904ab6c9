"""End-to-end analysis of one homogeneous polynomial, and report types.

The pipeline checks the hypotheses (isolated singularities, reducedness),
computes the polar degree by all three methods with independent frames,
assembles local singularity data (with user-declared weighted-homogeneous
structure), evaluates the bound checkers and produces a JSON-serializable
verdict bundle.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import monodromy as mono
from .groebner import projective_dim
from .hypersurface import SingularityRecord, jacobian_ideal, mu_summary
from .parser import ParseError, parse_poly
from .poly import (
    NotHomogeneous,
    ProjectivePoint,
    Reducedness,
    ZeroPolynomial,
    homogeneous_degree,
    squarefree_probe,
)
from .polar import (
    HypothesisError,
    check_multiplicity_inequality,
    check_polar_degree_lower_bound,
    check_surface_criterion,
    conjecture_verdict,
    polar_degree_fiber_oracle,
)


class InputError(Exception):
    """Malformed input: parse failure, bad flags, bad declarations."""


class InconsistencyError(Exception):
    """Internal disagreement between methods that should agree."""


@dataclass
class AnalysisOptions:
    seed: int = 1
    trials: int = 3
    modp: str = "dual"
    declarations: list[dict] = field(default_factory=list)
    timings: bool = False


@dataclass
class AnalysisReport:
    data: dict

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2)

    def to_text(self) -> str:
        d = self.data
        lines = [
            f"input           {d['input']}",
            f"variables       {', '.join(d['vars'])}",
            f"degree d        {d['d']}",
            f"ambient dim n   {d['n']}",
            f"reduced         {d['reduced']['verdict']}",
            f"isolated        {d['isolated']}",
            f"frame seed      {d['frame_seed']}",
        ]
        for sp in d["singular_points"]:
            label = sp.get("label") or "?"
            cp = sp.get("charpoly") or "undeclared"
            mu0 = sp.get("mu0")
            mu0_s = "?" if mu0 is None else str(mu0)
            lines.append(
                f"singular point  ({' : '.join(sp['point'])})  {label}  "
                f"mu={sp['mu']} mu0={mu0_s}  {cp}"
            )
        lines.append(f"enumeration     complete={d['enumeration_complete']}")
        lines.append(f"mu(V)           {d['mu_V']}")
        lines.append(f"mu0(V)          {d['mu0_V'] if d['mu0_V'] is not None else 'unknown'}")
        if d["delta_V"] is not None:
            lines.append(f"Delta_V         {d['delta_V']['factored']}")
        df = d["d_f"]
        lines.append(
            "d(f)            formula=%s oracle=%s tame=%s consolidated=%s"
            % (df["formula"], df["fiber_oracle"], df["tame_split"], df["consolidated"])
        )
        b = d["bounds"]["polar_degree_lower_bound"]
        if b["applicable"]:
            lines.append(
                f"lower bound     {b['lhs']} >= {b['rhs']}  holds={b['holds']}"
            )
        s = d["bounds"]["surface_mu0_criterion"]
        if s["applicable"]:
            lines.append(
                f"surface check   mu0={s['mu0']} < {s['bound']}  certified={s['certified']}"
            )
        m = d["bounds"]["eigenvalue_multiplicities"]
        if m["applicable"]:
            for row in m["rows"]:
                lines.append(
                    f"  eigenvalue order {row['k']}: mult_V={row['mult_V']} >= "
                    f"{row['required']}  holds={row['holds']}"
                )
        lines.append(f"conjecture      {d['conjecture_status']}")
        for note in d.get("notes", []):
            lines.append(f"note            {note}")
        if "timings" in d:
            for k, v in d["timings"].items():
                lines.append(f"time {k:<11} {v:.3f}s")
        return "\n".join(lines)


def _coords_strings(pt: ProjectivePoint) -> list[str]:
    return [
        str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        for c in pt.coords
    ]


def parse_declarations(raw: list[dict], nvars: int) -> dict[ProjectivePoint, dict]:
    """Validate user-supplied singularity declarations (points as rational
    strings plus optional weights / pure-power exponents / label)."""
    out: dict[ProjectivePoint, dict] = {}
    for item in raw:
        if "point" not in item:
            raise InputError("singularity declaration lacks a point")
        coords = [Fraction(str(c)) for c in item["point"]]
        if len(coords) != nvars:
            raise InputError(
                f"declared point {item['point']} has {len(coords)} coordinates, "
                f"expected {nvars}"
            )
        try:
            pt = ProjectivePoint(coords)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        decl = {
            "label": item.get("label"),
            "bp_exponents": tuple(item["bp_exponents"]) if item.get("bp_exponents") else None,
            "weights": tuple(Fraction(str(w)) for w in item["weights"])
            if item.get("weights")
            else None,
        }
        if decl["bp_exponents"] and decl["weights"]:
            raise InputError("declare either weights or pure-power exponents, not both")
        out[pt] = decl
    return out


def _build_records(points, local_mu, declarations) -> list[SingularityRecord]:
    unmatched = set(declarations) - set(points)
    if unmatched:
        raise InputError(
            "declared points are not rational singular points: "
            + ", ".join(str(p) for p in sorted(unmatched, key=lambda q: q.coords))
        )
    records = []
    for pt in points:
        decl = declarations.get(pt, {})
        delta = None
        try:
            if decl.get("bp_exponents"):
                delta = mono.bp_charpoly(decl["bp_exponents"])
            elif decl.get("weights"):
                delta = mono.wh_charpoly(decl["weights"])
        except (ValueError, mono.NonIntegralResult) as exc:
            raise InputError(f"bad singularity declaration at {pt}: {exc}") from exc
        try:
            rec = SingularityRecord(
                point=pt,
                mu=local_mu[pt],
                label=decl.get("label"),
                bp_exponents=decl.get("bp_exponents"),
                weights=decl.get("weights"),
                delta=delta,
            )
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        records.append(rec)
    return records


def analyze_polynomial(text: str, vars, options: AnalysisOptions | None = None) -> AnalysisReport:
    """Full verdict bundle for one input polynomial."""
    options = options or AnalysisOptions()
    timings: dict[str, float] = {}
    t0 = time.monotonic()
    try:
        f = parse_poly(text, vars)
    except ParseError as exc:
        raise InputError(str(exc)) from exc
    try:
        d = homogeneous_degree(f)
    except (NotHomogeneous, ZeroPolynomial) as exc:
        raise HypothesisError(str(exc)) from exc
    n = len(f.vars) - 1
    if n < 1:
        raise HypothesisError("need at least two variables")

    pd = projective_dim(jacobian_ideal(f))
    if pd > 0:
        raise HypothesisError(f"singular locus has dimension {pd}")
    reduced = squarefree_probe(f, seed=options.seed)
    if reduced is not Reducedness.PROBABLY_REDUCED:
        raise HypothesisError("input polynomial is not reduced")
    timings["hypotheses"] = time.monotonic() - t0

    notes: list[str] = []
    t1 = time.monotonic()
    summary = mu_summary(f, options.seed)
    summary_alt = mu_summary(f, options.seed + 1)
    if summary.mu_on != summary_alt.mu_on:
        raise InconsistencyError(
            f"mu(V) differs between frames: {summary.mu_on} vs {summary_alt.mu_on}"
        )
    formula_value = (d - 1) ** n - summary.mu_on
    tame_value = summary_alt.mu_off
    timings["frames"] = time.monotonic() - t1

    t2 = time.monotonic()
    oracle = polar_degree_fiber_oracle(f, options.trials, options.seed, options.modp)
    if oracle.details.get("discrepancy"):
        notes.append(f"oracle trials disagreed: {oracle.details['values']}")
    timings["oracle"] = time.monotonic() - t2

    values = {
        "formula": formula_value,
        "fiber_oracle": oracle.value,
        "tame_split": tame_value,
    }
    ordered = [formula_value, oracle.value, tame_value]
    consolidated = None
    unanimous = len(set(ordered)) == 1
    if unanimous:
        consolidated = ordered[0]
    else:
        top, freq = Counter(ordered).most_common(1)[0]
        if freq >= 2:
            consolidated = top
            notes.append(f"methods disagree: {values}")
        else:
            raise InconsistencyError(f"all three methods disagree: {values}")

    t3 = time.monotonic()
    declarations = parse_declarations(options.declarations, len(f.vars))
    records = _build_records(summary.points, summary.local_mu, declarations)
    if not summary.complete:
        notes.append(
            "rational enumeration incomplete: irrational singular points exist; "
            "per-point monodromy data unavailable for them"
        )
    all_declared = all(r.delta is not None for r in records)
    delta_v = None
    mu0_v = None
    if summary.complete and all_declared:
        delta_v = mono.charpoly_product([r.delta for r in records])
        mu0_v = mono.mu0_from_charpoly(delta_v)
    timings["singularities"] = time.monotonic() - t3

    bounds: dict = {}
    if d > 2 and n >= 3 and mu0_v is not None and consolidated is not None:
        bounds["polar_degree_lower_bound"] = {
            "applicable": True,
            **check_polar_degree_lower_bound(d, n, consolidated, mu0_v),
        }
    else:
        bounds["polar_degree_lower_bound"] = {"applicable": False}
    if n == 3 and mu0_v is not None:
        bounds["surface_mu0_criterion"] = {
            "applicable": True,
            **check_surface_criterion(d, mu0_v),
        }
    else:
        bounds["surface_mu0_criterion"] = {"applicable": False}
    if consolidated == 1 and delta_v is not None and n >= 2:
        bounds["eigenvalue_multiplicities"] = check_multiplicity_inequality(
            d, n, delta_v, consolidated
        )
    else:
        bounds["eigenvalue_multiplicities"] = {"applicable": False, "rows": []}

    status = conjecture_verdict(d, n, True, True, consolidated)
    if status == "COUNTEREXAMPLE" and not unanimous:
        # a counterexample claim needs all three methods, not a majority
        status = "undetermined"
        notes.append("d(f) = 1 by majority only; counterexample claim withheld")
    if status == "COUNTEREXAMPLE" and options.modp != "off":
        # a counterexample claim must not rest on modular luck
        rational = polar_degree_fiber_oracle(f, options.trials, options.seed, "off")
        if rational.value != 1:
            raise InconsistencyError(
                f"modular oracle said 1 but the rational oracle says {rational.value}"
            )
        notes.append("COUNTEREXAMPLE verified with rational arithmetic; review manually")

    data = {
        "input": text,
        "vars": list(f.vars),
        "d": d,
        "n": n,
        "reduced": {
            "verdict": reduced.value,
            "method": "random-line probe, one-sided error",
        },
        "isolated": True,
        "frame_seed": summary.model.seed,
        "singular_points": [
            {
                "point": _coords_strings(r.point),
                "mu": r.mu,
                "mu0": r.mu0,
                "label": r.label,
                "charpoly": mono.factored_string(r.delta) if r.delta else None,
                "charpoly_exponents": mono.to_json_map(r.delta) if r.delta else None,
            }
            for r in records
        ],
        "enumeration_complete": summary.complete,
        "mu_V": summary.mu_on,
        "mu0_V": mu0_v,
        "delta_V": {
            "factored": mono.factored_string(delta_v),
            "exponents": mono.to_json_map(delta_v),
        }
        if delta_v is not None
        else None,
        "d_f": {
            "formula": formula_value,
            "fiber_oracle": oracle.value,
            "tame_split": tame_value,
            "consolidated": consolidated,
            "unanimous": unanimous,
        },
        "bounds": bounds,
        "conjecture_status": status,
        "notes": notes,
    }
    if options.timings:
        timings["total"] = time.monotonic() - t0
        data["timings"] = timings
    return AnalysisReport(data)
