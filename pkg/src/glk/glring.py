"""The complexified Grothendieck ring of projective F_p GL_n(F_p)-modules.

Basis symbols pi[f] are indexed by monic polynomials f over F_p with nonzero
constant term (the characteristic polynomials of semisimple classes); deg f
is the grading, deg 0 giving the unit.  Products follow the induction
formula: pi[f]*pi[g] = c(f,g)*pi[f*g] with an integer structure constant
supported on the shared irreducible factors.

The ring is polynomial on the generators pi[h], h irreducible, so every
basis symbol decomposes as an explicit rational multiple of a generator
monomial; Poincare series and kernel hunting build on that decomposition.

The endomorphism t_functor scales pi[f] by p^nu with nu the multiplicity of
(x - 1) in f; it is a ring map, and its eigenspace dimensions on the
filtered span (all degrees <= n) follow the closed formula checked in
t_eigenspace_dimensions.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclo import Cyclotomic
from .errors import ConfigError, DomainError
from .ffpoly import FpPoly, enumerate_basis_polys, factor, is_irreducible


def q_pochhammer(k: int, q: int) -> int:
    """prod_{i=1..k} (q^i - 1); the unit-group order ladder for GL_k."""
    if k < 0:
        raise DomainError("q_pochhammer needs k >= 0")
    out = 1
    for i in range(1, k + 1):
        out *= q**i - 1
    return out


def gl_order(m: int, q: int) -> int:
    """|GL_m(F_q)| = q^C(m,2) * prod(q^i - 1)."""
    return q ** math.comb(m, 2) * q_pochhammer(m, q)


def _check_basis(f: FpPoly) -> None:
    if not f.is_basis_poly():
        raise DomainError(f"not a basis polynomial: {f}")


def structure_constant(f: FpPoly, g: FpPoly) -> int:
    """c(f,g) with pi[f]*pi[g] = c(f,g)*pi[fg].

    Product over shared irreducible factors h (degree d, multiplicities
    a in f and b in g) of p^(d*a*b) * psi_(a+b)(p^d) / (psi_a psi_b),
    where psi_k(q) = q_pochhammer(k, q).  Coprime parts contribute 1.
    The result is always an integer (a power times a q-multinomial).
    """
    _check_basis(f)
    _check_basis(g)
    if f.p != g.p:
        raise ConfigError("mixed characteristics")
    p = f.p
    mults_g = {h: e for h, e in factor(g).factors}
    out = 1
    for h, a in factor(f).factors:
        b = mults_g.get(h)
        if b is None:
            continue
        q = p**h.degree
        num = p ** (h.degree * a * b) * q_pochhammer(a + b, q)
        den = q_pochhammer(a, q) * q_pochhammer(b, q)
        if num % den:
            raise RuntimeError(f"non-integral structure constant for {f}, {g}")
        out *= num // den
    return out


def generator_power(h: FpPoly, n: int) -> tuple[int, FpPoly]:
    """(pi[h])^n = scalar * pi[h^n] for irreducible h; returns (scalar, h^n)."""
    _check_basis(h)
    if n < 1:
        raise DomainError("generator power needs n >= 1")
    if not is_irreducible(h):
        raise DomainError(f"generator_power needs an irreducible polynomial: {h}")
    q = h.p**h.degree
    num = h.p ** (h.degree * math.comb(n, 2)) * q_pochhammer(n, q)
    den = q_pochhammer(1, q) ** n
    if num % den:
        raise RuntimeError("generator power scalar must be integral")
    return num // den, h**n


def decompose_into_generators(f: FpPoly) -> tuple[Fraction, list[tuple[FpPoly, int]]]:
    """pi[f] = scalar * prod (pi[h])^e over the factorization f = prod h^e."""
    _check_basis(f)
    scalar = Fraction(1)
    monomial = []
    for h, e in factor(f).factors:
        gp, _ = generator_power(h, e)
        scalar /= gp
        monomial.append((h, e))
    return scalar, monomial


def steinberg_value(f: FpPoly) -> int:
    """Steinberg character at the semisimple class with char poly f:
    (-1)^(n - sum n_i) * p^(sum d_i * C(n_i, 2)) over f = prod f_i^(n_i)."""
    _check_basis(f)
    n = f.degree
    sign_exp = n
    pow_exp = 0
    for h, e in factor(f).factors:
        sign_exp -= e
        pow_exp += h.degree * math.comb(e, 2)
    return (-1) ** sign_exp * f.p**pow_exp


def unit_multiplicity(f: FpPoly) -> int:
    """Multiplicity of (x - 1) in f: the t_functor eigenvalue exponent."""
    x_minus_1 = FpPoly(f.p, (-1, 1))
    nu = 0
    while f.degree > 0:
        q, r = divmod(f, x_minus_1)
        if not r.is_zero():
            break
        f, nu = q, nu + 1
    return nu


class RingElement:
    """Finite formal combination of basis symbols with cyclotomic
    coefficients of a fixed order m (m=1 means plain rationals)."""

    __slots__ = ("p", "m", "terms")

    def __init__(self, p, m, terms, *, trusted=False):
        if not trusted:
            clean = {}
            for f, c in terms.items():
                _check_basis(f)
                if f.p != p:
                    raise ConfigError("term polynomial has wrong characteristic")
                if not isinstance(c, Cyclotomic):
                    c = Cyclotomic.from_fraction(m, c)
                elif c.m != m:
                    raise ConfigError("coefficient has wrong cyclotomic order")
                if not c.is_zero():
                    clean[f] = c
            terms = clean
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    @classmethod
    def zero(cls, p, m=1):
        return cls(p, m, {}, trusted=True)

    @classmethod
    def basis(cls, f: FpPoly, m=1, coeff=1):
        return cls(f.p, m, {f: coeff})

    @classmethod
    def unit(cls, p, m=1):
        return cls.basis(FpPoly.one(p), m)

    # -- structure -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coeff(self, f: FpPoly) -> Cyclotomic:
        return self.terms.get(f, Cyclotomic.zero(self.m))

    def support(self):
        return sorted(self.terms, key=lambda f: f.key())

    def degrees(self):
        return sorted({f.degree for f in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and (self.p, self.m) == (other.p, other.m)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, self.m, frozenset(self.terms.items())))

    def _compat(self, other):
        if self.p != other.p or self.m != other.m:
            raise ConfigError("ring elements live in different contexts")

    # -- linear structure ------------------------------------------------------

    def __add__(self, other):
        self._compat(other)
        terms = dict(self.terms)
        for f, c in other.terms.items():
            s = terms.get(f, Cyclotomic.zero(self.m)) + c
            if s.is_zero():
                terms.pop(f, None)
            else:
                terms[f] = s
        return RingElement(self.p, self.m, terms, trusted=True)

    def __neg__(self):
        return RingElement(
            self.p, self.m, {f: -c for f, c in self.terms.items()}, trusted=True
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RingElement":
        if not isinstance(c, Cyclotomic):
            c = Cyclotomic.from_fraction(self.m, c)
        if c.is_zero():
            return RingElement.zero(self.p, self.m)
        return RingElement(
            self.p, self.m, {f: v * c for f, v in self.terms.items()}, trusted=True
        )

    # -- ring structure ----------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        self._compat(other)
        out: dict[FpPoly, Cyclotomic] = {}
        for f, cf in self.terms.items():
            for g, cg in other.terms.items():
                c = cf * cg * structure_constant(f, g)
                key = f * g
                s = out.get(key)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return RingElement(self.p, self.m, out, trusted=True)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise DomainError("negative ring power")
        out = RingElement.unit(self.p, self.m)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def t_functor(self) -> "RingElement":
        """Scale each term pi[f] by p^(multiplicity of (x-1) in f)."""
        return RingElement(
            self.p,
            self.m,
            {f: c * self.p ** unit_multiplicity(f) for f, c in self.terms.items()},
            trusted=True,
        )

    def comultiply(self) -> list[tuple[Cyclotomic, FpPoly, FpPoly]]:
        """Delta(pi[f]) = pi[f] (x) pi[f], extended linearly: a list of
        (coefficient, left basis poly, right basis poly) triples."""
        return [(c, f, f) for f, c in sorted(self.terms.items(), key=lambda t: t[0].key())]

    # -- output --------------------------------------------------------------

    def text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for f in self.support():
            c = self.terms[f]
            cs = str(c)
            if cs == "1":
                parts.append(f"pi[{f.digits()}]")
            elif cs == "-1":
                parts.append(f"-pi[{f.digits()}]")
            else:
                if not c.is_rational():
                    cs = f"({cs})"
                parts.append(f"{cs}*pi[{f.digits()}]")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"RingElement(p={self.p}, m={self.m}, {self.text()})"

    def to_json(self):
        return [
            {"basis": f.digits(), "coeff": self.terms[f].to_json()}
            for f in self.support()
        ]

    @classmethod
    def from_json(cls, p, arr, m=None):
        terms = {}
        for item in arr:
            f = FpPoly.from_digits(p, item["basis"])
            c = Cyclotomic.from_json(item["coeff"])
            if m is None:
                m = c.m
            terms[f] = c
        return cls(p, m if m is not None else 1, terms)


def expand_generators(
    p: int, monomial: list[tuple[FpPoly, int]], scalar=1, m: int = 1
) -> RingElement:
    """Evaluate scalar * prod (pi[h])^e as a RingElement."""
    out = RingElement.unit(p, m).scale(scalar)
    for h, e in monomial:
        gp, key = generator_power(h, e)
        out = out * RingElement.basis(key, m, coeff=gp)
    return out


def t_eigenspace_formula(p: int, n: int, i: int) -> int:
    """Dimension of the p^i eigenspace on the degree <= n filtered span."""
    if not 0 <= i <= n:
        raise DomainError("eigenvalue exponent out of range")
    if i == n:
        return 1
    return p ** (n - i) - p ** (n - i - 1)


def t_eigenspace_dimensions(p: int, n: int) -> list[tuple[int, int]]:
    """(exponent i, dimension) pairs from explicit enumeration of basis
    polynomials of degree <= n grouped by the multiplicity of (x-1)."""
    if n < 0:
        raise DomainError("n must be >= 0")
    counts = {i: 0 for i in range(n + 1)}
    for d in range(n + 1):
        for f in enumerate_basis_polys(p, d):
            counts[unit_multiplicity(f)] += 1
    return [(i, counts[i]) for i in range(n + 1)]
