"""Sparse multivariate polynomials with exact coefficients.

The coefficient domain of every polynomial is either the rationals (stdlib
``Fraction``, always in lowest terms with positive denominator) or a prime
field F_p with canonical representatives in ``[0, p)``.  All values are
immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .arith import is_prime
from .rng import SplitMix64

Mono = tuple[int, ...]


class PolyError(Exception):
    pass


class ZeroPolynomial(PolyError):
    pass


class NotHomogeneous(PolyError):
    def __init__(self, message: str, offending: tuple[Mono, Mono] | None = None):
        super().__init__(message)
        self.offending = offending


class SingularMatrix(PolyError):
    pass


class DomainMismatch(PolyError):
    pass


class DegeneratePencil(PolyError):
    pass


@dataclass(frozen=True)
class Domain:
    """Coefficient domain tag: rationals when ``p`` is None, else F_p."""

    p: int | None = None

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def coerce(self, value):
        if self.p is None:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, int):
                return Fraction(value)
            raise TypeError(f"cannot coerce {value!r} into Q")
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise DomainMismatch(
                    f"denominator {value.denominator} not invertible mod {self.p}"
                )
            return value.numerator * pow(den, -1, self.p) % self.p
        if isinstance(value, int):
            return value % self.p
        raise TypeError(f"cannot coerce {value!r} into F_{self.p}")

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else a * b % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __str__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Domain()


def GF(p: int) -> Domain:
    if p == 2 or p >= 2**31 or not is_prime(p):
        raise ValueError("prime field modulus must be an odd prime below 2^31")
    return Domain(p)


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    """True when a | b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Mono, b: Mono) -> Mono:
    """a / b, assuming b | a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(m: Mono) -> int:
    return sum(m)


class Poly:
    """Immutable sparse polynomial: variable list, term map, domain tag."""

    __slots__ = ("vars", "terms", "domain")

    def __init__(
        self,
        vars: Sequence[str],
        terms: Mapping[Mono, object] | Iterable[tuple[Mono, object]] = (),
        domain: Domain = QQ,
    ):
        object.__setattr__(self, "vars", tuple(vars))
        object.__setattr__(self, "domain", domain)
        clean: dict[Mono, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        n = len(self.vars)
        for mono, coeff in items:
            mono = tuple(mono)
            if len(mono) != n:
                raise PolyError(f"monomial {mono} has wrong length for {self.vars}")
            if any(e < 0 for e in mono):
                raise PolyError(f"negative exponent in {mono}")
            c = domain.coerce(coeff)
            if mono in clean:
                c = domain.add(clean[mono], c)
            if c == domain.zero():
                clean.pop(mono, None)
            else:
                clean[mono] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # ---------------------------------------------------------------- basics

    @classmethod
    def zero(cls, vars: Sequence[str], domain: Domain = QQ) -> "Poly":
        return cls(vars, {}, domain)

    @classmethod
    def constant(cls, vars: Sequence[str], c, domain: Domain = QQ) -> "Poly":
        return cls(vars, {(0,) * len(vars): c}, domain)

    @classmethod
    def variable(cls, vars: Sequence[str], i: int, domain: Domain = QQ) -> "Poly":
        mono = tuple(1 if j == i else 0 for j in range(len(vars)))
        return cls(vars, {mono: 1}, domain)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def _check_compatible(self, other: "Poly") -> None:
        if self.vars != other.vars or self.domain != other.domain:
            raise DomainMismatch(
                f"incompatible polynomials: {self.vars}/{self.domain} vs "
                f"{other.vars}/{other.domain}"
            )

    # ------------------------------------------------------------ arithmetic

    def __add__(self, other: "Poly") -> "Poly":
        self._check_compatible(other)
        dom = self.domain
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = dom.add(out.get(m, dom.zero()), c)
            if s == dom.zero():
                out.pop(m, None)
            else:
                out[m] = s
        p = Poly.zero(self.vars, dom)
        object.__setattr__(p, "terms", out)
        return p

    def __neg__(self) -> "Poly":
        dom = self.domain
        p = Poly.zero(self.vars, dom)
        object.__setattr__(p, "terms", {m: dom.neg(c) for m, c in self.terms.items()})
        return p

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_compatible(other)
        dom = self.domain
        out: dict[Mono, object] = {}
        zero = dom.zero()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = dom.add(out.get(m, zero), dom.mul(c1, c2))
                if s == zero:
                    out.pop(m, None)
                else:
                    out[m] = s
        p = Poly.zero(self.vars, dom)
        object.__setattr__(p, "terms", out)
        return p

    def scale(self, c) -> "Poly":
        dom = self.domain
        c = dom.coerce(c)
        if c == dom.zero():
            return Poly.zero(self.vars, dom)
        p = Poly.zero(self.vars, dom)
        object.__setattr__(p, "terms", {m: dom.mul(v, c) for m, v in self.terms.items()})
        return p

    def __rmul__(self, c) -> "Poly":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.constant(self.vars, 1, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return (
            self.vars == other.vars
            and self.domain == other.domain
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.vars, self.domain, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({poly_text(self)!r}, vars={self.vars}, domain={self.domain})"

    # -------------------------------------------------------------- calculus

    def partial(self, i: int) -> "Poly":
        """Formal partial derivative with respect to variable i."""
        if not 0 <= i < len(self.vars):
            raise IndexError(f"variable index {i} out of range")
        dom = self.domain
        out: dict[Mono, object] = {}
        zero = dom.zero()
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            dm = m[:i] + (e - 1,) + m[i + 1 :]
            s = dom.add(out.get(dm, zero), dom.mul(c, dom.coerce(e)))
            if s == zero:
                out.pop(dm, None)
            else:
                out[dm] = s
        p = Poly.zero(self.vars, dom)
        object.__setattr__(p, "terms", out)
        return p

    def evaluate(self, point: Sequence) -> object:
        """Evaluate at a point (coefficients coerced into the domain)."""
        dom = self.domain
        if len(point) != len(self.vars):
            raise ValueError("point has wrong length")
        pt = [dom.coerce(x) for x in point]
        total = dom.zero()
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                for _ in range(e):
                    v = dom.mul(v, x)
            total = dom.add(total, v)
        return total

    def subs(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute images[i] for variable i; images share a common ring."""
        if len(images) != len(self.vars):
            raise ValueError("need one image per variable")
        target = images[0]
        for im in images:
            target._check_compatible(im)
        # cache successive powers of each image
        powers: list[list[Poly]] = [[Poly.constant(target.vars, 1, target.domain)] for _ in images]
        out = Poly.zero(target.vars, target.domain)
        for m, c in sorted(self.terms.items()):
            term = Poly.constant(target.vars, c, target.domain)
            for i, e in enumerate(m):
                cache = powers[i]
                while len(cache) <= e:
                    cache.append(cache[-1] * images[i])
                term = term * cache[e]
            out = out + term
        return out


# ------------------------------------------------------------------ helpers


def variables(names: Sequence[str], domain: Domain = QQ) -> list[Poly]:
    return [Poly.variable(names, i, domain) for i in range(len(names))]


def gradient(f: Poly) -> list[Poly]:
    """All partial derivatives, in variable order."""
    return [f.partial(i) for i in range(len(f.vars))]


def homogeneous_degree(f: Poly) -> int:
    """Common total degree of all terms; errors when f is 0 or mixed."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no homogeneous degree")
    degrees: dict[int, Mono] = {}
    for m in f.terms:
        degrees.setdefault(mono_degree(m), m)
        if len(degrees) > 1:
            (d1, m1), (d2, m2) = sorted(degrees.items())[:2]
            raise NotHomogeneous(
                f"terms of degrees {d1} and {d2} present", offending=(m1, m2)
            )
    return next(iter(degrees))


def is_homogeneous(f: Poly) -> bool:
    if f.is_zero():
        return True
    return len({mono_degree(m) for m in f.terms}) == 1


def euler_check(f: Poly) -> bool:
    """Whether sum_i x_i * df/dx_i equals deg(f) * f exactly."""
    d = homogeneous_degree(f)
    acc = Poly.zero(f.vars, f.domain)
    for i in range(len(f.vars)):
        acc = acc + Poly.variable(f.vars, i, f.domain) * f.partial(i)
    return acc == f.scale(d)


def det_fraction(M: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix via fraction Gaussian elimination."""
    n = len(M)
    rows = [[Fraction(x) for x in row] for row in M]
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            factor = rows[r][col] * inv
            if factor:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det


def substitute_linear(f: Poly, M: Sequence[Sequence]) -> Poly:
    """f composed with the linear map x -> M x; M must be invertible over Q."""
    n = len(f.vars)
    if len(M) != n or any(len(row) != n for row in M):
        raise PolyError("matrix size does not match the variable count")
    if det_fraction(M) == 0:
        raise SingularMatrix("coordinate change matrix is singular")
    images = []
    for i in range(n):
        img = Poly.zero(f.vars, f.domain)
        for j, a in enumerate(M[i]):
            if a:
                img = img + Poly.variable(f.vars, j, f.domain).scale(Fraction(a))
        images.append(img)
    return f.subs(images)


def set_variable_zero(f: Poly, i: int) -> Poly:
    """Restrict to the hyperplane x_i = 0 (variable kept in the ring)."""
    return Poly(f.vars, {m: c for m, c in f.terms.items() if m[i] == 0}, f.domain)


def dehomogenize(f: Poly, i: int) -> Poly:
    """Set x_i = 1 and drop the variable from the ring."""
    if not 0 <= i < len(f.vars):
        raise IndexError(f"variable index {i} out of range")
    new_vars = f.vars[:i] + f.vars[i + 1 :]
    out: dict[Mono, object] = {}
    dom = f.domain
    zero = dom.zero()
    for m, c in f.terms.items():
        nm = m[:i] + m[i + 1 :]
        s = dom.add(out.get(nm, zero), c)
        if s == zero:
            out.pop(nm, None)
        else:
            out[nm] = s
    return Poly(new_vars, out, dom)


def homogeneous_parts(f: Poly) -> list[Poly]:
    """Graded components of f, by increasing degree."""
    buckets: dict[int, dict[Mono, object]] = {}
    for m, c in f.terms.items():
        buckets.setdefault(mono_degree(m), {})[m] = c
    return [Poly(f.vars, terms, f.domain) for _, terms in sorted(buckets.items())]


def translate(f: Poly, point: Sequence) -> Poly:
    """Shift coordinates so that `point` becomes the origin: x -> x + a."""
    images = []
    for i, a in enumerate(point):
        img = Poly.variable(f.vars, i, f.domain)
        if a:
            img = img + Poly.constant(f.vars, Fraction(a), f.domain)
        images.append(img)
    return f.subs(images)


def to_prime_field(f: Poly, p: int) -> Poly:
    """Reduce a rational polynomial mod p; denominators must be invertible."""
    dom = GF(p)
    return Poly(f.vars, {m: dom.coerce(c) for m, c in f.terms.items()}, dom)


# -------------------------------------------------------------- text output


def _grevlex_key(m: Mono):
    return (mono_degree(m), tuple(-e for e in reversed(m)))


def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def poly_text(f: Poly) -> str:
    """Canonical text form; `parse_poly(poly_text(f), f.vars)` returns f."""
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for m in sorted(f.terms, key=_grevlex_key, reverse=True):
        c = f.terms[m]
        if f.domain.is_prime_field:
            c = Fraction(c)
        factors = []
        for name, e in zip(f.vars, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(mag) + "*" + "*".join(factors)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts)


# -------------------------------------------------- projective rational point


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of P^n with exact rational coordinates.

    Normalized so the last nonzero coordinate equals 1; normalization is
    idempotent and makes equality and hashing well defined.
    """

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Sequence):
        cs = [Fraction(c) for c in coords]
        last = next((i for i in range(len(cs) - 1, -1, -1) if cs[i] != 0), None)
        if last is None:
            raise ValueError("projective point cannot be all zero")
        scale = cs[last]
        object.__setattr__(self, "coords", tuple(c / scale for c in cs))

    def __str__(self) -> str:
        return "(" + " : ".join(_format_coeff(c) for c in self.coords) + ")"

    def chart(self) -> int:
        """Index of the last nonzero (== 1) coordinate."""
        return max(i for i, c in enumerate(self.coords) if c != 0)

    def affine_coords(self) -> tuple[Fraction, ...]:
        """Coordinates in the standard chart `self.chart()`."""
        c = self.chart()
        return self.coords[:c] + self.coords[c + 1 :]


# -------------------------------------------------------- reducedness probe


class Reducedness(Enum):
    PROBABLY_REDUCED = "probably_reduced"
    NOT_REDUCED = "not_reduced"


def line_restriction(f: Poly, base: Sequence[Fraction], direction: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of t^k of f(base + t*direction), ascending in k."""
    n = len(f.vars)
    tpoly_vars = ("t",)
    images = []
    for i in range(n):
        img = Poly.constant(tpoly_vars, Fraction(base[i]))
        img = img + Poly.variable(tpoly_vars, 0).scale(Fraction(direction[i]))
        images.append(img)
    g = f.subs(images)
    deg = g.degree()
    coeffs = [Fraction(0)] * (deg + 1 if deg >= 0 else 0)
    for (e,), c in g.terms.items():
        coeffs[e] = c
    return coeffs


def _univar_gcd_degree(a: list[Fraction], b: list[Fraction]) -> int:
    """Degree of gcd of two univariate rational polynomials."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        # remainder of a mod b
        while len(a) >= len(b) and a:
            factor = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[i + shift] -= factor * bc
            trim(a)
        a, b = b, a
    return len(a) - 1


def squarefree_probe(f: Poly, trials: int = 8, seed: int = 0) -> Reducedness:
    """One-sided probabilistic reducedness check by random line restriction.

    Restricts f to random rational lines and tests the restriction for square
    factors via a univariate gcd.  Only full-degree restrictions count as
    squarefree evidence: a non-reduced f can never restrict to a squarefree
    polynomial of full degree, so NOT_REDUCED is never wrongly upgraded.
    A reduced f may still be reported NOT_REDUCED with small probability.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot probe the zero polynomial")
    if f.domain.is_prime_field:
        raise DomainMismatch("reducedness probe runs over the rationals")
    d = homogeneous_degree(f)
    if d == 0:
        return Reducedness.PROBABLY_REDUCED
    rng = SplitMix64(seed + 0x51AB)
    n = len(f.vars)
    done = 0
    degenerate = 0
    while done < trials:
        base = rng.int_vector(n, -9, 9)
        direction = rng.nonzero_vector(n, -9, 9)
        coeffs = line_restriction(f, [Fraction(x) for x in base], [Fraction(x) for x in direction])
        done += 1
        if not coeffs:
            # line inside the zero locus; counted against the trial budget
            degenerate += 1
            continue
        if len(coeffs) - 1 < d:
            continue
        deriv = [coeffs[k] * k for k in range(1, len(coeffs))]
        if _univar_gcd_degree(coeffs, deriv) == 0:
            return Reducedness.PROBABLY_REDUCED
    if degenerate == trials:
        raise DegeneratePencil("every sampled line lies inside the zero locus")
    return Reducedness.NOT_REDUCED
