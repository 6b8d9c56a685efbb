"""Polynomials over prime fields F_p and discrete-log bookkeeping in F_{p^N}.

Representation: an FpPoly stores the modulus p and an ascending tuple of
coefficients in range(p) with no trailing zeros, so coeffs[i] is the
coefficient of x^i.  The zero polynomial has coeffs == () and degree -1.

Canonical order: polynomials are compared by (degree, integer value), where
the value reads the ascending coefficient sequence as a base-p numeral
(most-significant digit = highest degree).  The digit-string form used by the
CLI is the same sequence written low degree first: "11001" over F_2 is
x^4 + x + 1.  For p > 10 digits are comma-separated.

Factorization is squarefree decomposition + distinct-degree + equal-degree
splitting (Cantor-Zassenhaus).  The equal-degree stage draws random elements
from a Mersenne generator seeded with the fixed constant SPLIT_SEED on every
factor() call, so results are bit-identical across runs and platforms.
"""

from __future__ import annotations

import functools
import itertools
import random

from .errors import ConfigError, DomainError

MAX_PRIME = 97
FIELD_SCAN_LIMIT = 1 << 20
SPLIT_SEED = 0x5EED


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> None:
    if not is_prime(p) or p > MAX_PRIME:
        raise ConfigError(f"p must be a prime <= {MAX_PRIME}, got {p}")


class FpPoly:
    """Immutable polynomial over F_p, ascending coefficients."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs, *, trusted=False):
        if not trusted:
            check_prime(p)
            coeffs = [c % p for c in coeffs]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            coeffs = tuple(coeffs)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("FpPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p):
        return cls(p, (), trusted=True) if is_prime(p) else cls(p, ())

    @classmethod
    def one(cls, p):
        return cls(p, (1,))

    @classmethod
    def x(cls, p):
        return cls(p, (0, 1))

    @classmethod
    def monomial(cls, p, d, c=1):
        return cls(p, (0,) * d + (c,))

    @classmethod
    def from_digits(cls, p, s):
        """Parse the CLI digit-string form ("11001", or "1,0,96" for p > 10)."""
        s = s.strip()
        if not s:
            raise DomainError("empty polynomial string")
        if "," in s:
            digits = [int(tok) for tok in s.split(",")]
        else:
            if not s.isdigit():
                raise DomainError(f"bad polynomial digit string {s!r}")
            digits = [int(ch) for ch in s]
        if any(d >= p for d in digits):
            raise DomainError(f"digit out of range for p={p} in {s!r}")
        return cls(p, digits)

    @classmethod
    def from_human(cls, p, s):
        """Parse a human form like "x^4+x+1" or "2*x^2 + x + 1"."""
        s = s.replace(" ", "").replace("-", "+-")
        if not s:
            raise DomainError("empty polynomial string")
        coeffs: dict[int, int] = {}
        for term in s.split("+"):
            if not term:
                continue
            neg = term.startswith("-")
            if neg:
                term = term[1:]
            if "x" in term:
                head, _, tail = term.partition("x")
                c = int(head.rstrip("*")) if head.rstrip("*") else 1
                e = int(tail[1:]) if tail.startswith("^") else (1 if not tail else None)
                if e is None:
                    raise DomainError(f"bad term {term!r}")
            else:
                c, e = int(term), 0
            coeffs[e] = coeffs.get(e, 0) + (-c if neg else c)
        deg = max(coeffs) if coeffs else 0
        return cls(p, [coeffs.get(i, 0) for i in range(deg + 1)])

    @classmethod
    def parse(cls, p, s):
        s = s.strip()
        if "x" in s:
            return cls.from_human(p, s)
        return cls.from_digits(p, s)

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else 0

    def is_basis_poly(self):
        """Monic with nonzero constant term (deg 0 gives the ring unit)."""
        return self.is_monic() and self.coeffs[0] != 0

    def value(self):
        """Ascending coefficients read as a base-p numeral."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.p + c
        return v

    def key(self):
        return (self.degree, self.value())

    def digits(self):
        if self.is_zero():
            return "0"
        if self.p <= 10:
            return "".join(str(c) for c in self.coeffs)
        return ",".join(str(c) for c in self.coeffs)

    def human(self):
        if self.is_zero():
            return "0"
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            if e == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                terms.append(f"{head}x" if e == 1 else f"{head}x^{e}")
        return "+".join(terms)

    def __repr__(self):
        return f"FpPoly(p={self.p}, {self.human()})"

    def __str__(self):
        return self.human()

    def __eq__(self, other):
        return (
            isinstance(other, FpPoly)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __lt__(self, other):
        self._same_field(other)
        return self.key() < other.key()

    def _same_field(self, other):
        if not isinstance(other, FpPoly) or other.p != self.p:
            raise ConfigError("mixed polynomial moduli")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._same_field(other)
        p = self.p
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        return FpPoly(p, out)

    def __neg__(self):
        return FpPoly(self.p, tuple((-c) % self.p for c in self.coeffs), trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return FpPoly(self.p, [c * other for c in self.coeffs])
        self._same_field(other)
        if self.is_zero() or other.is_zero():
            return FpPoly.zero(self.p)
        p = self.p
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return FpPoly(p, [c % p for c in out])

    __rmul__ = __mul__

    def __divmod__(self, other):
        self._same_field(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        dd, dv = len(rem) - 1, other.degree
        if dd < dv:
            return FpPoly.zero(p), self
        inv_lead = pow(other.coeffs[-1], -1, p)
        quot = [0] * (dd - dv + 1)
        for i in range(dd - dv, -1, -1):
            c = rem[i + dv] % p
            if c:
                q = (c * inv_lead) % p
                quot[i] = q
                for j, cb in enumerate(other.coeffs):
                    rem[i + j] = (rem[i + j] - q * cb) % p
        return FpPoly(p, quot), FpPoly(p, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        if e < 0:
            raise DomainError("negative polynomial power")
        result = FpPoly.one(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def pow_mod(self, e, mod):
        result = FpPoly.one(self.p)
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def derivative(self):
        return FpPoly(self.p, [i * c for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, a):
        v = 0
        for c in reversed(self.coeffs):
            v = (v * a + c) % self.p
        return v

    def monic(self):
        """Return (unit, monic polynomial) with unit * monic == self."""
        if self.is_zero():
            raise DomainError("zero polynomial has no monic form")
        lead = self.coeffs[-1]
        if lead == 1:
            return 1, self
        inv = pow(lead, -1, self.p)
        return lead, FpPoly(self.p, [c * inv for c in self.coeffs])


def gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()[1]


def multiplicity_of(f: FpPoly, h: FpPoly) -> int:
    """Multiplicity of the factor h in f."""
    count = 0
    while f.degree >= h.degree:
        q, r = divmod(f, h)
        if not r.is_zero():
            break
        f, count = q, count + 1
    return count


def reciprocal_basis_poly(f: FpPoly) -> FpPoly:
    """x^deg(f) * f(1/x) / f(0): the char poly of the inverse class."""
    if not f.is_basis_poly():
        raise DomainError(f"not a basis polynomial: {f}")
    inv = pow(f.constant_term(), -1, f.p)
    return FpPoly(f.p, [c * inv for c in reversed(f.coeffs)])


# -- factorization ---------------------------------------------------------


class Factorization:
    """unit * prod(poly^mult) == the factored polynomial; factors are monic
    irreducible, sorted in canonical order."""

    __slots__ = ("p", "unit", "factors")

    def __init__(self, p, unit, factors):
        self.p = p
        self.unit = unit
        self.factors = tuple(sorted(factors, key=lambda fm: fm[0].key()))

    def expand(self) -> FpPoly:
        out = FpPoly(self.p, (self.unit,))
        for poly, mult in self.factors:
            out = out * poly**mult
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Factorization)
            and (self.p, self.unit, self.factors) == (other.p, other.unit, other.factors)
        )

    def __repr__(self):
        inner = " ".join(f"({f.human()})^{m}" for f, m in self.factors)
        return f"Factorization(unit={self.unit}, {inner})"


def _squarefree_decomposition(f: FpPoly) -> list[tuple[FpPoly, int]]:
    """Monic f -> [(g_i, i)] with f = prod g_i^i, g_i squarefree coprime."""
    p = f.p
    out: dict[int, FpPoly] = {}

    def accumulate(g, mult):
        if g.degree > 0:
            out[mult] = out.get(mult, FpPoly.one(p)) * g

    def pth_root(f):
        # valid when f = h(x)^p = h(x^p) over the prime field
        return FpPoly(p, f.coeffs[::p])

    def recurse(f, outer):
        if f.degree <= 0:
            return
        d = f.derivative()
        if d.is_zero():
            recurse(pth_root(f), outer * p)
            return
        c = gcd(f, d)
        w = f // c
        i = 1
        while w.degree > 0:
            y = gcd(w, c)
            accumulate(w // y, outer * i)
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            recurse(pth_root(c), outer * p)  # leftover factors have mult divisible by p

    recurse(f, 1)
    merged: dict[FpPoly, int] = {}
    for mult, g in out.items():
        merged[g] = mult
    return [(g, m) for g, m in merged.items()]


def _frobenius_power(h: FpPoly, p: int, mod: FpPoly) -> FpPoly:
    return h.pow_mod(p, mod)


def _distinct_degree(f: FpPoly) -> list[tuple[FpPoly, int]]:
    """Squarefree monic f -> [(product of irreducibles of degree d, d)]."""
    p = f.p
    out = []
    h = FpPoly.x(p) % f
    d = 0
    rest = f
    while rest.degree > 2 * (d + 1) - 1 and rest.degree > 0:
        d += 1
        h = _frobenius_power(h, p, rest) if d > 1 else h.pow_mod(p, rest)
        g = gcd(h - FpPoly.x(p), rest)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _trace_split(f, d, rng):
    """One split attempt for char 2: gcd with a random trace polynomial."""
    p = f.p
    u = FpPoly(p, [rng.randrange(p) for _ in range(f.degree)])
    if u.is_zero():
        return None
    t = u % f
    acc = t
    for _ in range(d - 1):
        t = (t * t) % f
        acc = acc + t
    g = gcd(acc, f)
    if 0 < g.degree < f.degree:
        return g
    return None


def _power_split(f, d, rng):
    """One split attempt for odd p: gcd(f, u^((p^d-1)/2) - 1)."""
    p = f.p
    u = FpPoly(p, [rng.randrange(p) for _ in range(f.degree)])
    if u.degree < 1:
        return None
    e = (p**d - 1) // 2
    w = u.pow_mod(e, f) - FpPoly.one(p)
    g = gcd(w, f)
    if 0 < g.degree < f.degree:
        return g
    return None


def _equal_degree_factor(f: FpPoly, d: int, rng) -> list[FpPoly]:
    if f.degree == d:
        return [f]
    split = _trace_split if f.p == 2 else _power_split
    while True:
        g = split(f, d, rng)
        if g is not None:
            return _equal_degree_factor(g, d, rng) + _equal_degree_factor(f // g, d, rng)


def factor(f: FpPoly) -> Factorization:
    """Full factorization into monic irreducibles; deterministic."""
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    unit, f = f.monic()
    if f.degree == 0:
        return Factorization(f.p, unit, ())
    rng = random.Random(SPLIT_SEED)
    factors = []
    for g, mult in _squarefree_decomposition(f):
        for part, d in _distinct_degree(g):
            for irred in _equal_degree_factor(part, d, rng):
                factors.append((irred, mult))
    return Factorization(f.p, unit, factors)


def is_irreducible(f: FpPoly) -> bool:
    """Rabin test; consistent with factor() by construction of both."""
    if not f.is_monic():
        raise DomainError(f"irreducibility test needs a monic polynomial: {f}")
    n = f.degree
    if n < 1:
        raise DomainError("irreducibility needs degree >= 1")
    if n == 1:
        return True
    p = f.p
    x = FpPoly.x(p)
    powers = {}
    h = x % f
    for i in range(1, n + 1):
        h = _frobenius_power(h, p, f)
        powers[i] = h
    if powers[n] != x % f:
        return False
    for q in _prime_divisors(n):
        if gcd(powers[n // q] - x, f).degree != 0:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def squarefree_part(f: FpPoly) -> FpPoly:
    """Radical: product of the distinct irreducible factors."""
    out = FpPoly.one(f.p)
    for g, _ in factor(f).factors:
        out = out * g
    return out


def is_squarefree(f: FpPoly) -> bool:
    if f.degree < 1:
        return True
    d = f.derivative()
    return (not d.is_zero()) and gcd(f, d).degree == 0


# -- enumeration -----------------------------------------------------------


def enumerate_monic(p, d):
    """All monic degree-d polynomials in canonical order."""
    check_prime(p)
    if d < 0:
        raise DomainError("degree must be >= 0")
    if d == 0:
        yield FpPoly.one(p)
        return
    for v in range(p**d):
        digits = []
        t = v
        for _ in range(d):
            digits.append(t % p)
            t //= p
        yield FpPoly(p, digits + [1])


def enumerate_basis_polys(p, d, require_nonzero_constant=True):
    """Monic degree-d polynomials, optionally with nonzero constant term."""
    out = []
    for f in enumerate_monic(p, d):
        if require_nonzero_constant and d > 0 and f.coeffs[0] == 0:
            continue
        out.append(f)
    return out


def irreducible_count(p, d):
    """Moebius necklace count of monic irreducibles of degree d."""
    if d < 1:
        raise DomainError("degree must be >= 1")
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += _moebius(d // e) * p**e
    return total // d


def _moebius(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


# -- primitive polynomials and F_{p^N} ------------------------------------


def _multiplicative_order_of_x(g: FpPoly) -> int:
    p, n = g.p, g.degree
    m = p**n - 1
    x = FpPoly.x(p)
    if x.pow_mod(m, g) != FpPoly.one(p):
        return 0  # not even a unit of full-order candidate; callers treat as non-primitive
    order = m
    for q in _prime_divisors(m):
        while order % q == 0 and x.pow_mod(order // q, g) == FpPoly.one(p):
            order //= q
    return order


def is_primitive(g: FpPoly) -> bool:
    """Irreducible and x generates the unit group of F_p[x]/(g)."""
    if not is_irreducible(g):
        return False
    return _multiplicative_order_of_x(g) == g.p ** g.degree - 1


@functools.lru_cache(maxsize=None)
def canonical_primitive(p, N) -> FpPoly:
    """First primitive degree-N polynomial in canonical order."""
    check_prime(p)
    if N < 1:
        raise ConfigError("ambient degree N must be >= 1")
    if p**N > FIELD_SCAN_LIMIT:
        raise ConfigError(f"field size p^N = {p**N} exceeds scan bound {FIELD_SCAN_LIMIT}")
    for f in enumerate_monic(p, N):
        if f.coeffs[0] == 0:
            continue
        if is_primitive(f):
            return f
    raise RuntimeError("unreachable: primitive polynomials exist for every (p, N)")


class ExtFieldCtx:
    """Ambient extension field F_{p^N} = F_p[x]/(g) with g primitive.

    alpha denotes the class of x, a generator of the unit group of order
    m = p^N - 1.  Root finding scans alpha powers, so p^N must stay under
    FIELD_SCAN_LIMIT.  Instances are cached and immutable; everything here
    is safe to share across threads.
    """

    __slots__ = ("p", "N", "modulus", "m", "_pow_table", "_dlog")

    def __init__(self, p, N, modulus):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "m", p**N - 1)
        x = FpPoly.x(p)
        table = [FpPoly.one(p) % modulus]
        for _ in range(self.m - 1):
            table.append((table[-1] * x) % modulus)
        object.__setattr__(self, "_pow_table", tuple(table))
        object.__setattr__(
            self, "_dlog", {elt.coeffs: k for k, elt in enumerate(table)}
        )

    def __setattr__(self, name, value):
        raise AttributeError("ExtFieldCtx is immutable")

    @classmethod
    @functools.lru_cache(maxsize=None)
    def _cached(cls, p, N, modulus_coeffs):
        return cls(p, N, FpPoly(p, modulus_coeffs))

    @classmethod
    def create(cls, p, N, primitive: FpPoly | str | None = None) -> "ExtFieldCtx":
        check_prime(p)
        if N < 1:
            raise ConfigError("ambient degree N must be >= 1")
        if p**N > FIELD_SCAN_LIMIT:
            raise ConfigError(
                f"field size p^N = {p**N} exceeds scan bound {FIELD_SCAN_LIMIT}"
            )
        if primitive is None:
            g = canonical_primitive(p, N)
        else:
            g = FpPoly.parse(p, primitive) if isinstance(primitive, str) else primitive
            if g.degree != N:
                raise ConfigError(f"override polynomial has degree {g.degree}, need {N}")
            if not is_primitive(g):
                raise ConfigError(f"override polynomial {g.human()} is not primitive")
        return cls._cached(p, N, g.coeffs)

    def __repr__(self):
        return f"ExtFieldCtx(p={self.p}, N={self.N}, g={self.modulus.human()})"

    def alpha_pow(self, k: int) -> FpPoly:
        return self._pow_table[k % self.m]

    def dlog(self, elt: FpPoly) -> int:
        elt = elt % self.modulus
        try:
            return self._dlog[elt.coeffs]
        except KeyError:
            raise DomainError("element is zero or not reduced") from None

    def frobenius_orbit(self, k: int) -> tuple[int, ...]:
        """Orbit of k under multiplication by p on Z/m, starting at min."""
        k %= self.m
        orbit = [k]
        j = (k * self.p) % self.m
        while j != k:
            orbit.append(j)
            j = (j * self.p) % self.m
        rep = min(orbit)
        i = orbit.index(rep)
        return tuple(orbit[i:] + orbit[:i])

    def orbit_reps(self) -> list[int]:
        seen = set()
        reps = []
        for k in range(self.m):
            if k in seen:
                continue
            orbit = self.frobenius_orbit(k)
            seen.update(orbit)
            reps.append(orbit[0])
        return reps

    def min_poly_of_power(self, k: int):
        """Minimal polynomial of alpha^k over F_p.

        Returns (f, d, mult) with d = Frobenius orbit size = deg f and
        mult = N//d, the multiplicity of f in the char poly of alpha^k
        acting on F_{p^N} as an F_p-space.
        """
        orbit = self.frobenius_orbit(k)
        d = len(orbit)
        if self.N % d:
            raise RuntimeError("orbit size must divide N")
        prod = [FpPoly.one(self.p)]  # coefficients over the extension, ascending
        for j in orbit:
            root = self.alpha_pow(j)
            new = [FpPoly.zero(self.p) for _ in range(len(prod) + 1)]
            for i, c in enumerate(prod):
                new[i + 1] = new[i + 1] + c
                new[i] = new[i] - (c * root) % self.modulus
            prod = [c % self.modulus for c in new]
        coeffs = []
        for c in prod:
            if c.degree > 0:
                raise RuntimeError("minimal polynomial coefficient not in F_p")
            coeffs.append(c.constant_term())
        f = FpPoly(self.p, coeffs)
        return f, d, self.N // d

    def root_exponents(self, h: FpPoly) -> tuple[int, ...]:
        """Exponents k with h(alpha^k) = 0, for irreducible h with deg | N."""
        if h.degree < 1 or not is_irreducible(h):
            raise DomainError(f"root scan needs an irreducible polynomial: {h}")
        if self.N % h.degree:
            raise ConfigError(
                f"factor degree {h.degree} does not divide the ambient N={self.N}"
            )
        lifted = [FpPoly(self.p, (c,)) for c in h.coeffs]
        for k in range(self.m):
            a = self.alpha_pow(k)
            acc = FpPoly.zero(self.p)
            for c in reversed(lifted):
                acc = (acc * a + c) % self.modulus
            if acc.is_zero():
                return self.frobenius_orbit(k)
        raise RuntimeError("irreducible of dividing degree must split")
