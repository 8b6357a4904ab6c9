"""Groebner-basis engine: term orders, Buchberger, elimination, quotients,
saturation and staircase invariants (dimension, degree, quotient dimension).

Everything is deterministic: the normal pair-selection strategy, sorted
generator intake and final inter-reduction make the reduced basis unique for
a given input and order.  Resource caps fail loudly instead of hanging.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .poly import (
    DomainMismatch,
    Mono,
    Poly,
    homogeneous_parts,
    is_homogeneous,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class GroebnerError(Exception):
    pass


class ResourceLimit(GroebnerError):
    """A configured basis-size or degree cap was exceeded."""


class NotZeroDimensional(GroebnerError):
    pass


class NotHomogeneousIdeal(GroebnerError):
    pass


@dataclass(frozen=True)
class Caps:
    max_basis: int = 600
    max_degree: int = 120


DEFAULT_CAPS = Caps()
_active_caps = DEFAULT_CAPS


def set_default_caps(caps: Caps) -> None:
    global _active_caps
    _active_caps = caps


def active_caps() -> Caps:
    return _active_caps


# -------------------------------------------------------------- term orders


def _grevlex_key_on(m: Mono, sig: tuple[int, ...]):
    return (sum(m[i] for i in sig), tuple(-m[i] for i in reversed(sig)))


@dataclass(frozen=True)
class TermOrder:
    """Monomial order: graded-reverse-lex, lex, or a two-block elimination
    order (grevlex inside each block).  `perm` lists variable indices from
    most to least significant; None means the natural order."""

    kind: str
    perm: tuple[int, ...] | None = None
    block_size: int | None = None

    def key(self, m: Mono):
        sig = self.perm if self.perm is not None else tuple(range(len(m)))
        if self.kind == "grevlex":
            return _grevlex_key_on(m, sig)
        if self.kind == "lex":
            return tuple(m[i] for i in sig)
        if self.kind == "block":
            k = self.block_size or 0
            return (_grevlex_key_on(m, sig[:k]), _grevlex_key_on(m, sig[k:]))
        raise ValueError(f"unknown term order kind {self.kind!r}")


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


def elimination_order(eliminated: tuple[int, ...], kept: tuple[int, ...]) -> TermOrder:
    return TermOrder("block", perm=tuple(eliminated) + tuple(kept), block_size=len(eliminated))


def _neg_key(k):
    if isinstance(k, tuple):
        return tuple(_neg_key(x) for x in k)
    return -k


def leading_monomial(p: Poly, order: TermOrder) -> Mono:
    return max(p.terms, key=order.key)


# ----------------------------------------------------------------- division


def poly_divmod(p: Poly, divisors: list[Poly], order: TermOrder, caps: Caps | None = None):
    """Multivariate division: returns (quotients, remainder) with
    p = sum(q_i * divisors_i) + remainder and no remainder term divisible by
    any leading term of the divisors."""
    caps = caps or _active_caps
    dom = p.domain
    zero = dom.zero()
    lead = []
    for g in divisors:
        if g.is_zero():
            lead.append(None)
            continue
        lt = leading_monomial(g, order)
        lead.append((lt, g.terms[lt], g.terms))
    work = dict(p.terms)
    heap = [(_neg_key(order.key(m)), m) for m in work]
    heapq.heapify(heap)
    remainder: dict[Mono, object] = {}
    quotients: list[dict[Mono, object]] = [{} for _ in divisors]
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m)
        if c is None:
            continue
        for gi, entry in enumerate(lead):
            if entry is None:
                continue
            ltm, lc, gterms = entry
            if mono_divides(ltm, m):
                shift = mono_div(m, ltm)
                factor = dom.div(c, lc)
                q = quotients[gi]
                q[shift] = dom.add(q.get(shift, zero), factor)
                del work[m]
                for gm, gc in gterms.items():
                    if gm == ltm:
                        continue
                    nm = mono_mul(gm, shift)
                    if mono_degree(nm) > caps.max_degree:
                        raise ResourceLimit(
                            f"degree cap {caps.max_degree} exceeded during reduction"
                        )
                    d = dom.sub(work.get(nm, zero), dom.mul(factor, gc))
                    if d == zero:
                        work.pop(nm, None)
                    else:
                        if nm not in work:
                            heapq.heappush(heap, (_neg_key(order.key(nm)), nm))
                        work[nm] = d
                break
        else:
            remainder[m] = c
            del work[m]
    rem = Poly.zero(p.vars, dom)
    object.__setattr__(rem, "terms", remainder)
    qpolys = []
    for q in quotients:
        qp = Poly.zero(p.vars, dom)
        object.__setattr__(qp, "terms", q)
        qpolys.append(qp)
    return qpolys, rem


def normal_form(p: Poly, basis, order: TermOrder, caps: Caps | None = None) -> Poly:
    """Remainder of p under full reduction by `basis`."""
    basis = list(basis)
    if p.is_zero() or not basis:
        return p
    _, rem = poly_divmod(p, basis, order, caps)
    return rem


def exact_div(p: Poly, g: Poly, order: TermOrder = GREVLEX) -> Poly:
    """p / g for exact divisibility; raises GroebnerError otherwise."""
    if p.is_zero():
        return p
    qs, rem = poly_divmod(p, [g], order)
    if not rem.is_zero():
        raise GroebnerError("exact division has a nonzero remainder")
    return qs[0]


# --------------------------------------------------------------- buchberger


def _monic(p: Poly, order: TermOrder) -> Poly:
    lt = leading_monomial(p, order)
    lc = p.terms[lt]
    if lc == p.domain.one():
        return p
    return p.scale(p.domain.inv(lc))


def s_polynomial(f: Poly, g: Poly, order: TermOrder) -> Poly:
    ltf = leading_monomial(f, order)
    ltg = leading_monomial(g, order)
    lcm = mono_lcm(ltf, ltg)
    dom = f.domain
    mf = Poly(f.vars, {mono_div(lcm, ltf): dom.inv(f.terms[ltf])}, dom)
    mg = Poly(f.vars, {mono_div(lcm, ltg): dom.inv(g.terms[ltg])}, dom)
    return mf * f - mg * g


def buchberger(gens, order: TermOrder = GREVLEX, caps: Caps | None = None) -> list[Poly]:
    """Unique reduced Groebner basis (normal strategy, both skip criteria)."""
    caps = caps or _active_caps
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    vars0, dom0 = gens[0].vars, gens[0].domain
    for g in gens:
        if g.vars != vars0 or g.domain != dom0:
            raise DomainMismatch("generators live in different rings")

    G: list[Poly] = []
    lts: list[Mono] = []
    pending: set[tuple[int, int]] = set()

    def add(h: Poly) -> None:
        h = _monic(h, order)
        idx = len(G)
        if idx + 1 > caps.max_basis:
            raise ResourceLimit(f"basis cap {caps.max_basis} exceeded")
        for i in range(idx):
            pending.add((i, idx))
        G.append(h)
        lts.append(leading_monomial(h, order))

    intake = sorted(
        {g for g in (_monic(g, order) for g in gens)},
        key=lambda p: (order.key(leading_monomial(p, order)), sorted(p.terms.items())),
    )
    for g in intake:
        add(g)

    while pending:
        i, j = min(
            pending,
            key=lambda ij: (order.key(mono_lcm(lts[ij[0]], lts[ij[1]])), ij),
        )
        pending.discard((i, j))
        lcm = mono_lcm(lts[i], lts[j])
        if lcm == mono_mul(lts[i], lts[j]):
            continue  # coprime leading terms
        skip = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if mono_divides(lts[k], lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        h = normal_form(s_polynomial(G[i], G[j], order), G, order, caps)
        if not h.is_zero():
            if h.degree() > caps.max_degree:
                raise ResourceLimit(f"degree cap {caps.max_degree} exceeded")
            add(h)

    # minimal generators of the leading-term ideal
    order_of = sorted(range(len(G)), key=lambda i: order.key(lts[i]))
    kept: list[int] = []
    for i in order_of:
        if not any(mono_divides(lts[k], lts[i]) for k in kept):
            kept.append(i)
    basis = [G[i] for i in kept]

    # inter-reduce tails until stable
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            others = basis[:i] + basis[i + 1 :]
            h = normal_form(basis[i], others, order, caps)
            if h != basis[i]:
                basis[i] = _monic(h, order)
                changed = True

    basis.sort(key=lambda p: order.key(leading_monomial(p, order)), reverse=True)
    return basis


# -------------------------------------------------------------------- ideal


class Ideal:
    """Generator list with a term order and a lazily cached reduced basis.

    Instances are immutable; the basis is computed at most once and then
    shared read-only, so concurrent readers are safe.
    """

    __slots__ = ("gens", "order", "vars", "domain", "_basis")

    def __init__(self, gens, order: TermOrder = GREVLEX, vars=None, domain=None):
        gens = tuple(g for g in gens if not g.is_zero())
        if gens:
            vars = gens[0].vars
            domain = gens[0].domain
            for g in gens:
                if g.vars != vars or g.domain != domain:
                    raise DomainMismatch("generators live in different rings")
        elif vars is None or domain is None:
            raise ValueError("zero ideal needs explicit vars and domain")
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "vars", tuple(vars))
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "_basis", None)

    def __setattr__(self, name, value):
        raise AttributeError("Ideal is immutable")

    @property
    def basis(self) -> tuple[Poly, ...]:
        if self._basis is None:
            object.__setattr__(self, "_basis", tuple(buchberger(self.gens, self.order)))
        return self._basis

    def is_zero_ideal(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(p.degree() == 0 for p in self.basis)

    def contains(self, p: Poly) -> bool:
        if self.is_zero_ideal():
            return p.is_zero()
        return normal_form(p, self.basis, self.order).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_homogeneous(self) -> bool:
        return all(is_homogeneous(g) for g in self.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.contains_ideal(other) and other.contains_ideal(self)

    def __hash__(self):
        raise TypeError("Ideal is unhashable; compare with ==")

    def __repr__(self):
        return f"Ideal({len(self.gens)} gens in {self.vars}, {self.domain})"


def _fresh_var(vars: tuple[str, ...]) -> str:
    i = 0
    while f"t{i}" in vars:
        i += 1
    return f"t{i}"


def _prepend_var(p: Poly, name: str, t_exponent: int) -> Poly:
    new_vars = (name,) + p.vars
    return Poly(new_vars, {(t_exponent,) + m: c for m, c in p.terms.items()}, p.domain)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via the single-auxiliary-variable elimination trick."""
    if I.vars != J.vars or I.domain != J.domain:
        raise DomainMismatch("ideals live in different rings")
    if I.is_zero_ideal():
        return I
    if J.is_zero_ideal():
        return J
    tname = _fresh_var(I.vars)
    lifted = [_prepend_var(g, tname, 1) for g in I.gens]
    for g in J.gens:
        lifted.append(_prepend_var(g, tname, 0) - _prepend_var(g, tname, 1))
    nv = len(I.vars) + 1
    order = elimination_order((0,), tuple(range(1, nv)))
    basis = buchberger(lifted, order)
    kept = []
    for g in basis:
        if all(m[0] == 0 for m in g.terms):
            kept.append(Poly(I.vars, {m[1:]: c for m, c in g.terms.items()}, I.domain))
    return Ideal(kept, I.order, vars=I.vars, domain=I.domain)


def eliminate(I: Ideal, keep) -> Ideal:
    """Generators of I ∩ k[kept variables], via a block elimination order."""
    keep = sorted(set(keep))
    elim = tuple(i for i in range(len(I.vars)) if i not in keep)
    if I.is_zero_ideal() or not elim:
        return I
    order = elimination_order(elim, tuple(keep))
    basis = buchberger(I.gens, order)
    kept = [g for g in basis if all(all(m[i] == 0 for i in elim) for m in g.terms)]
    return Ideal(kept, I.order, vars=I.vars, domain=I.domain)


def ideal_quotient(I: Ideal, g: Poly) -> Ideal:
    """I : g, computed as (I ∩ (g)) / g."""
    if g.is_zero():
        raise ValueError("quotient by the zero polynomial")
    if I.is_zero_ideal():
        return I
    inter = intersect(I, Ideal([g], I.order))
    qgens: list[Poly] = []
    split = I.is_homogeneous() and is_homogeneous(g)
    for h in inter.gens:
        q = exact_div(h, g, I.order)
        if split:
            qgens.extend(homogeneous_parts(q))
        else:
            qgens.append(q)
    return Ideal(qgens, I.order, vars=I.vars, domain=I.domain)


def saturate(I: Ideal, g: Poly) -> tuple[Ideal, int]:
    """(I : g^inf, N) by iterated quotients; N is the stabilization exponent,
    so g^N * (I : g^inf) is contained in I."""
    if g.is_zero():
        raise ValueError("saturation by the zero polynomial")
    current = I
    steps = 0
    while True:
        nxt = ideal_quotient(current, g)
        if current.contains_ideal(nxt):
            return current, steps
        current = nxt
        steps += 1


def saturate_ideal(I: Ideal, J: Ideal) -> Ideal:
    """I : J^inf.  Equals the intersection of the saturations by the
    generators of J; a single pass is already stable because a product of
    high powers of the generators contains a high power of each."""
    gens = [g for g in J.gens if not g.is_zero()]
    if not gens:
        raise ValueError("saturation by the zero ideal")
    parts = [saturate(I, g)[0] for g in gens]
    result = parts[0]
    for part in parts[1:]:
        result = intersect(result, part)
    if result.is_homogeneous():
        regraded: list[Poly] = []
        for g in result.gens:
            regraded.extend(homogeneous_parts(g))
        result = Ideal(regraded, I.order, vars=I.vars, domain=I.domain)
    return result


# ---------------------------------------------------------------- staircase


@dataclass(frozen=True)
class StaircaseReport:
    """Leading-term data of a reduced basis: the staircase, the standard
    monomials when finitely many, and the Krull dimension of the
    leading-term quotient."""

    lead_monomials: tuple[Mono, ...]
    standard_monomials: tuple[Mono, ...] | None
    krull_dim: int


def _support(m: Mono) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(m) if e)


def _minimalize(monos) -> list[Mono]:
    out: list[Mono] = []
    for m in sorted(set(monos), key=lambda m: (mono_degree(m), m)):
        if not any(mono_divides(k, m) for k in out):
            out.append(m)
    return out


def _krull_dim(leads: list[Mono], nvars: int) -> int:
    """Affine Krull dimension of k[x]/(leads): size of the largest variable
    subset meeting the support of no leading monomial."""
    if any(mono_degree(m) == 0 for m in leads):
        return -1
    supports = [_support(m) for m in leads]
    best = 0
    for mask in range(1 << nvars):
        subset = frozenset(i for i in range(nvars) if mask >> i & 1)
        if len(subset) <= best:
            continue
        if all(not s <= subset for s in supports):
            best = len(subset)
    return best


def _standard_monomials(leads: list[Mono], nvars: int) -> tuple[Mono, ...] | None:
    """All monomials outside (leads), or None when infinitely many."""
    if any(mono_degree(m) == 0 for m in leads):
        return ()
    bounds = []
    for i in range(nvars):
        pures = [m[i] for m in leads if _support(m) == frozenset({i})]
        if not pures:
            return None
        bounds.append(min(pures))
    std: list[Mono] = []

    def walk(prefix: list[int], i: int) -> None:
        if i == nvars:
            m = tuple(prefix)
            if not any(mono_divides(l, m) for l in leads):
                std.append(m)
            return
        for e in range(bounds[i]):
            walk(prefix + [e], i + 1)

    walk([], 0)
    return tuple(sorted(std, key=lambda m: (mono_degree(m), m)))


def staircase(I: Ideal) -> StaircaseReport:
    leads = _minimalize(leading_monomial(g, I.order) for g in I.basis)
    nv = len(I.vars)
    return StaircaseReport(
        lead_monomials=tuple(leads),
        standard_monomials=_standard_monomials(leads, nv),
        krull_dim=_krull_dim(leads, nv),
    )


def projective_dim(I: Ideal) -> int:
    """Dimension of Proj of the quotient; -1 for the empty scheme."""
    if not I.is_homogeneous():
        raise NotHomogeneousIdeal("projective dimension needs homogeneous generators")
    if I.is_zero_ideal():
        return len(I.vars) - 1
    report = staircase(I)
    return max(report.krull_dim - 1, -1)


def quotient_vs_dim(I: Ideal) -> int:
    """Vector-space dimension of k[x]/I for a zero-dimensional affine ideal."""
    if I.is_zero_ideal():
        raise NotZeroDimensional("the zero ideal has an infinite quotient")
    report = staircase(I)
    if report.standard_monomials is None:
        raise NotZeroDimensional(
            "no pure power of some variable among the leading terms"
        )
    return len(report.standard_monomials)


def hilbert_numerator(leads, nvars: int) -> list[int]:
    """Coefficients of the Hilbert-series numerator of k[x]/(leads) over
    (1-t)^nvars, via the colon recursion on monomial ideals."""
    mins = tuple(_minimalize(leads))
    memo: dict[tuple[Mono, ...], dict[int, int]] = {}

    def rec(gens: tuple[Mono, ...]) -> dict[int, int]:
        if not gens:
            return {0: 1}
        if any(mono_degree(m) == 0 for m in gens):
            return {}
        cached = memo.get(gens)
        if cached is not None:
            return cached
        pivot = gens[-1]
        rest = gens[:-1]
        a = rec(rest)
        colon = tuple(
            _minimalize(tuple(max(e - f, 0) for e, f in zip(g, pivot)) for g in rest)
        )
        b = rec(colon)
        out = dict(a)
        d = mono_degree(pivot)
        for k, v in b.items():
            nv = out.get(k + d, 0) - v
            if nv:
                out[k + d] = nv
            else:
                out.pop(k + d, None)
        memo[gens] = out
        return out

    series = rec(mins)
    if not series:
        return [0]
    top = max(series)
    return [series.get(k, 0) for k in range(top + 1)]


def _divide_one_minus_t(coeffs: list[int]) -> list[int]:
    # exact division by (1 - t); prefix sums, assuming the value at 1 is 0
    out = []
    acc = 0
    for c in coeffs[:-1]:
        acc += c
        out.append(acc)
    return out or [0]


def zero_dim_degree_projective(I: Ideal) -> int:
    """Degree of a zero-dimensional projective scheme: the stable value of
    the Hilbert function, read off the staircase."""
    if projective_dim(I) != 0:
        raise NotZeroDimensional("projective scheme is not zero-dimensional")
    leads = _minimalize(leading_monomial(g, I.order) for g in I.basis)
    num = hilbert_numerator(leads, len(I.vars))
    strips = 0
    while sum(num) == 0:
        num = _divide_one_minus_t(num)
        strips += 1
    if len(I.vars) - strips != 1:
        raise GroebnerError("staircase dimension does not match the Hilbert series")
    return sum(num)
