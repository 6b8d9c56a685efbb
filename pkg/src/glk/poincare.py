"""Exact Poincaré series over Q(zeta_m), the Molien counting oracle, and
kernel-relation discovery for the series map.

The series attached to a generator with irreducible polynomial f of degree d
(root lifting to w) is the rational function

    p = 2 :  1 / ((w - t)(w^2 - t) ... (w^(2^(d-1)) - t))
    p > 2 :  (w + t)(w^p + t) ... / ((w - t^2)(w^p - t^2) ...)

and extends to arbitrary ring elements as an algebra map through
decompose_into_generators.  All coefficients are exact cyclotomic numbers;
expansions come from the linear recurrence of the denominator.

The denominator polynomial prod_i (w^(p^i) - t) equals the lifted-roots
polynomial of the RECIPROCAL of f (inverse roots), up to the unit
theta(norm), which is 1 for p = 2.  Kernel relations are therefore solved
on these denominator polynomials: a vanishing combination is exactly what
makes the corresponding combination of generator products have zero series.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .cyclo import CycPoly, Cyclotomic, zeta
from .errors import ConfigError, DomainError
from .ffpoly import ExtFieldCtx, FpPoly, factor, is_irreducible
from .glring import RingElement, decompose_into_generators


class RationalSeries:
    """num/den with den(0) != 0; exact truncated expansions on demand."""

    __slots__ = ("m", "num", "den", "_coeffs", "_d0inv")

    def __init__(self, num: CycPoly, den: CycPoly):
        if num.m != den.m:
            raise ConfigError("numerator and denominator in different fields")
        if den.is_zero() or den.coeff(0).is_zero():
            raise DomainError("denominator must have a nonzero constant term")
        self.m = num.m
        self.num = num
        self.den = den
        self._coeffs: list[Cyclotomic] = []
        self._d0inv = None

    @classmethod
    def zero(cls, m):
        return cls(CycPoly.zero(m), CycPoly.one(m))

    @classmethod
    def one(cls, m):
        return cls(CycPoly.one(m), CycPoly.one(m))

    def is_zero(self):
        return self.num.is_zero()

    def expand(self, order: int) -> list[Cyclotomic]:
        """Coefficients c_0..c_order with sum c_k t^k * den = num exactly."""
        if self._d0inv is None:
            self._d0inv = self.den.coeff(0).inverse()
        c = self._coeffs
        while len(c) <= order:
            k = len(c)
            acc = self.num.coeff(k)
            for i in range(1, min(k, self.den.degree) + 1):
                acc = acc - self.den.coeff(i) * c[k - i]
            c.append(acc * self._d0inv)
        return c[: order + 1]

    def coefficient(self, k: int) -> Cyclotomic:
        return self.expand(k)[k]

    def __add__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return RationalSeries(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalSeries(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalSeries):
            return RationalSeries(self.num * other.num, self.den * other.den)
        return RationalSeries(self.num * other, self.den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative series powers are not defined here")
        out = RationalSeries.one(self.m)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        # equality as rational functions (cross multiplication), not as pairs
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __repr__(self):
        return f"RationalSeries(({self.num}) / ({self.den}))"


def _root_lift_exponent(ctx: ExtFieldCtx, h: FpPoly) -> int:
    return min(ctx.root_exponents(h))


def denominator_poly(ctx: ExtFieldCtx, f: FpPoly) -> CycPoly:
    """prod over lifted roots w of f (with multiplicity) of (w - t).

    Constant term theta(norm of the roots), top coefficient (-1)^deg;
    for p = 2 this equals the lifted-roots polynomial of the reciprocal."""
    if not f.is_basis_poly() or f.degree < 1:
        raise DomainError(f"need a basis polynomial of degree >= 1, got {f}")
    m = ctx.m
    out = CycPoly.one(m)
    minus_t = CycPoly(m, [Cyclotomic.zero(m), Cyclotomic.from_fraction(m, -1)])
    for h, e in factor(f).factors:
        for k in ctx.root_exponents(h):
            out = out * (minus_t + zeta(m, k)) ** e
    return out


def generator_series(ctx: ExtFieldCtx, f: FpPoly) -> RationalSeries:
    """Closed-form series of the generator attached to irreducible f."""
    if f.degree < 1 or not is_irreducible(f):
        raise DomainError(
            f"generator series needs an irreducible polynomial, got {f}"
        )
    if f.constant_term() == 0:
        raise DomainError("constant term must be nonzero")
    m = ctx.m
    exps = ctx.root_exponents(f)
    if ctx.p == 2:
        return RationalSeries(CycPoly.one(m), denominator_poly(ctx, f))
    t = CycPoly.variable(m)
    num = CycPoly.one(m)
    den = CycPoly.one(m)
    t2 = t * t
    for k in exps:
        num = num * (t + zeta(m, k))
        den = den * (zeta(m, k) - t2)
    return RationalSeries(num, den)


def series_normalization(f: FpPoly) -> int:
    """prod (p^(d_i) - 1)^(e_i) over the irreducible factors of f: the ratio
    between the closed-form series convention and the group-side Brauer
    pairing of the same basis element."""
    out = 1
    for h, e in factor(f).factors:
        out *= (f.p**h.degree - 1) ** e
    return out


def minimal_ambient_degree(x: RingElement) -> int:
    """Smallest N so that every irreducible factor degree divides N."""
    out = 1
    for f in x.support():
        for h, _ in factor(f).factors:
            out = math.lcm(out, h.degree)
    return out


def _coerce_coeff(c: Cyclotomic, m: int) -> Cyclotomic:
    if c.m == m:
        return c
    if c.is_rational():
        return Cyclotomic.from_fraction(m, c.as_fraction())
    raise ConfigError(f"coefficient in Q(zeta_{c.m}) does not embed in Q(zeta_{m})")


_TERM_CACHE: dict = {}


def _basis_term_series(ctx: ExtFieldCtx, f: FpPoly) -> RationalSeries:
    """(decompose scalar) * product of generator series for one basis poly.
    Cached per (field, polynomial); the cached object also accumulates its
    expansion, so repeated truncations are incremental."""
    key = (ctx.p, ctx.N, ctx.modulus.coeffs, f.coeffs)
    got = _TERM_CACHE.get(key)
    if got is None:
        scalar, gens = decompose_into_generators(f)
        got = RationalSeries.one(ctx.m)
        for h, e in gens:
            if ctx.N % h.degree:
                raise ConfigError(
                    f"factor degree {h.degree} does not divide the ambient N={ctx.N}"
                )
            got = got * generator_series(ctx, h) ** e
        got = got * Cyclotomic.from_fraction(ctx.m, scalar)
        _TERM_CACHE[key] = got
    return got


def series_of_element(ctx: ExtFieldCtx, x: RingElement) -> RationalSeries:
    """Algebra-map extension as one exact rational function.  Summing many
    terms multiplies denominators together; for coefficient lists of large
    elements prefer series_coefficients, which expands term by term."""
    if x.p != ctx.p:
        raise ConfigError("element and field context have different primes")
    total = RationalSeries.zero(ctx.m)
    for f in x.support():
        term = _basis_term_series(ctx, f)
        total = total + term * _coerce_coeff(x.coeff(f), ctx.m)
    return total


def series_coefficients(ctx: ExtFieldCtx, x: RingElement, order: int):
    """Exact coefficients 0..order of the element's series, accumulated per
    basis term (no common-denominator blowup)."""
    if x.p != ctx.p:
        raise ConfigError("element and field context have different primes")
    total = [Cyclotomic.zero(ctx.m)] * (order + 1)
    for f in x.support():
        coeffs = _basis_term_series(ctx, f).expand(order)
        c = _coerce_coeff(x.coeff(f), ctx.m)
        total = [t + s * c for t, s in zip(total, coeffs)]
    return total


# -- Molien counting ---------------------------------------------------------


@lru_cache(maxsize=None)
def _molien_table(p: int, n: int, up_to: int):
    """table[D][j] = dimension of the degree-D part of the j-th summand:
    p = 2 counts monomials a in N^n with sum a_i = D weighted by
    sum a_i 2^i mod 2^n - 1; p odd counts (epsilon, a) in {0,1}^n x N^n with
    sum eps_i + 2 sum a_i = D weighted by sum (eps_i + a_i) p^i."""
    m = p**n - 1
    table = [[0] * m for _ in range(up_to + 1)]
    table[0][0] = 1
    for i in range(n):
        w = pow(p, i, m)
        nxt = [[0] * m for _ in range(up_to + 1)]
        for d in range(up_to + 1):
            row = table[d]
            for r in range(m):
                cur = row[r]
                if not cur:
                    continue
                if p == 2:
                    a = 0
                    while d + a <= up_to:
                        nxt[d + a][(r + a * w) % m] += cur
                        a += 1
                else:
                    for eps in (0, 1):
                        a = 0
                        while d + eps + 2 * a <= up_to:
                            nxt[d + eps + 2 * a][(r + (eps + a) * w) % m] += cur
                            a += 1
        table = nxt
    return tuple(tuple(row) for row in table)


def molien_count(p: int, n: int, j: int, D: int) -> int:
    if D < 0 or not 0 <= j < p**n - 1:
        raise DomainError("need D >= 0 and 0 <= j < p^n - 1")
    return _molien_table(p, n, D)[D][j]


class MolienCheck:
    __slots__ = ("p", "n", "k", "order", "equal", "first_mismatch")

    def __init__(self, p, n, k, order, equal, first_mismatch):
        self.p = p
        self.n = n
        self.k = k
        self.order = order
        self.equal = equal
        # (D, closed-form coefficient, Molien sum) or None
        self.first_mismatch = first_mismatch

    def __repr__(self):
        tail = "equal" if self.equal else f"mismatch at {self.first_mismatch}"
        return f"MolienCheck(p={self.p}, n={self.n}, k={self.k}, order={self.order}: {tail})"


def ambient_closed_form(ctx: ExtFieldCtx, k: int) -> RationalSeries:
    """The n-factor closed form at w = zeta^k: orbit factors repeat, so for
    an orbit of size d this is the generator series raised to the n/d."""
    m = ctx.m
    t = CycPoly.variable(m)
    num = CycPoly.one(m)
    den = CycPoly.one(m)
    t2 = t * t
    for i in range(ctx.N):
        w = zeta(m, k * pow(ctx.p, i, m))
        if ctx.p == 2:
            den = den * (w - t)
        else:
            num = num * (w + t)
            den = den * (w - t2)
    return RationalSeries(num, den)


def molien_series_check(ctx: ExtFieldCtx, k, order: int) -> MolienCheck:
    """Coefficient-by-coefficient comparison of the closed form at w = zeta^k
    against the Fourier-weighted Molien counts sum_j zeta^(-jk) count(j, D)."""
    if isinstance(k, FpPoly):
        k = _root_lift_exponent(ctx, k)
    if not 0 <= k < ctx.m:
        raise DomainError(f"exponent {k} out of range [0, {ctx.m})")
    closed = ambient_closed_form(ctx, k).expand(order)
    table = _molien_table(ctx.p, ctx.N, order)
    first = None
    for D in range(order + 1):
        acc = Cyclotomic.zero(ctx.m)
        for j, cnt in enumerate(table[D]):
            if cnt:
                acc = acc + zeta(ctx.m, -j * k) * cnt
        if acc != closed[D]:
            first = (D, closed[D], acc)
            break
    return MolienCheck(ctx.p, ctx.N, k, order, first is None, first)


# -- kernel of the series map ------------------------------------------------


class KernelReport:
    """Exact kernel of (alpha_i) -> sum alpha_i * denominator_poly(f_i).

    Each relation corresponds to the ring element
    sum_i alpha_i * prod_(j != i) Q_(f_j), coefficient attached to the term
    OMITTING f_i, where Q_f is the GENERATOR MONOMIAL of f: the product of
    pi[h]^e over the irreducible factorization f = prod h^e.  Generator
    monomials (not the basis elements pi[f]) are what make the series of a
    relation vanish: series(Q_f) = 1/den_f with no decompose scalar, so the
    numerator of the combination is exactly sum alpha_i den_i = 0."""

    __slots__ = ("polys", "lifts", "relations", "residual_ok", "m")

    def __init__(self, polys, lifts, relations, residual_ok, m):
        self.polys = tuple(polys)
        self.lifts = tuple(lifts)
        self.relations = tuple(tuple(r) for r in relations)
        self.residual_ok = residual_ok
        self.m = m

    @property
    def dimension(self):
        return len(self.relations)

    def ring_element(self, idx: int) -> RingElement:
        alpha = self.relations[idx]
        p = self.polys[0].p
        total = RingElement.zero(p, self.m)
        for i, a in enumerate(alpha):
            if a.is_zero():
                continue
            term = RingElement.unit(p, self.m)
            for j, f in enumerate(self.polys):
                if j == i:
                    continue
                for h, e in factor(f).factors:
                    term = term * RingElement.basis(h, m=self.m) ** e
            total = total + term.scale(a)
        return total

    def ring_elements(self):
        return [self.ring_element(i) for i in range(self.dimension)]

    def verify_series(self, ctx: ExtFieldCtx, order: int = 64) -> bool:
        for i in range(self.dimension):
            coeffs = series_coefficients(ctx, self.ring_element(i), order)
            if any(not c.is_zero() for c in coeffs):
                return False
        return True

    def __repr__(self):
        return (
            f"KernelReport(dim={self.dimension}, polys={len(self.polys)}, "
            f"residual_ok={self.residual_ok})"
        )


def kernel_relations(ctx: ExtFieldCtx, polys) -> KernelReport:
    from .linalg import nullspace

    polys = list(polys)
    if not polys:
        raise DomainError("kernel solver needs at least one polynomial")
    for f in polys:
        if not f.is_basis_poly() or f.degree < 1:
            raise DomainError(f"not a basis polynomial: {f}")
    lifts = [denominator_poly(ctx, f) for f in polys]
    height = max(q.degree for q in lifts) + 1
    rows = [[q.coeff(d) for q in lifts] for d in range(height)]
    relations = nullspace(rows)
    residual_ok = True
    for alpha in relations:
        acc = CycPoly.zero(ctx.m)
        for a, q in zip(alpha, lifts):
            acc = acc + q * a
        if not acc.is_zero():
            residual_ok = False
    return KernelReport(polys, lifts, relations, residual_ok, ctx.m)


def quartic_family(p: int = 2):
    """The four degree-4 basis polynomials over F_2 whose lifts satisfy a
    one-dimensional relation: the order-5 irreducible, the two order-15
    (primitive) irreducibles, and the square of the order-3 quadratic."""
    if p != 2:
        raise ConfigError("the quartic witness family lives over F_2")
    E = FpPoly.from_human(2, "x^4+x^3+x^2+x+1")
    F = FpPoly.from_human(2, "x^4+x^3+1")
    G = FpPoly.from_human(2, "x^2+x+1") ** 2
    H = FpPoly.from_human(2, "x^4+x+1")
    return [E, F, G, H]


def t_fixed_kernel_witness(ctx: ExtFieldCtx, order: int = 64) -> KernelReport:
    """A nonzero element fixed by the torsion-free part operator (eigenvalue
    p^0 = 1: no (x - 1) factor anywhere in its support) whose series
    vanishes identically; built from the quartic family kernel."""
    if ctx.p != 2:
        raise ConfigError("witness construction requires p = 2")
    if ctx.N % 4:
        raise ConfigError("ambient degree must be a multiple of 4")
    report = kernel_relations(ctx, quartic_family(ctx.p))
    if report.dimension != 1 or not report.residual_ok:
        raise RuntimeError("quartic family kernel should be one-dimensional")
    elt = report.ring_element(0)
    if elt.t_functor() != elt:
        raise RuntimeError("witness is not fixed by the T operator")
    if not report.verify_series(ctx, order):
        raise RuntimeError("witness series does not vanish")
    return report
