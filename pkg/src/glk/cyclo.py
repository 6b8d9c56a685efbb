"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A Cyclotomic stores integer coordinates in the power basis
1, zeta, ..., zeta^(phi(m)-1) of Q(zeta_m) over a single positive common
denominator, reduced mod the m-th cyclotomic polynomial and normalized so
gcd(coords, den) == 1.  All arithmetic is exact; approx() is for display
and sanity checks only.

The multiplicative lift used throughout the package sends a fixed generator
alpha of F_{p^N}^x (the class of x for the canonical primitive polynomial)
to zeta_m with m = p^N - 1, so lifting alpha^k means zeta(m, k).

CycPoly is a thin dense polynomial layer over Cyclotomic, used for
characteristic-zero lifts of characteristic polynomials and for rational
series numerators and denominators.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction

from .errors import ConfigError, DomainError
from .ffpoly import ExtFieldCtx, FpPoly, factor


def euler_phi(m: int) -> int:
    if m < 1:
        raise DomainError("euler_phi needs m >= 1")
    out = m
    d = 2
    n = m
    while d * d <= n:
        if n % d == 0:
            out -= out // d
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out -= out // n
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, ascending."""
    if m < 1:
        raise DomainError("cyclotomic index must be >= 1")
    # (x^m - 1) divided by the product of proper cyclotomic divisors
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _exact_poly_div(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _exact_poly_div(num: list[int], den: list[int]) -> list[int]:
    out = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(rem[i + len(den) - 1], den[-1])
        assert r == 0, "cyclotomic division must be exact"
        out[i] = q
        for j, c in enumerate(den):
            rem[i + j] -= q * c
    assert all(c == 0 for c in rem), "cyclotomic division must be exact"
    return out


@functools.lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """x^k mod Phi_m as integer vectors, k up to max(m, 2*phi(m)-1)."""
    phi = euler_phi(m)
    mod = cyclotomic_polynomial(m)
    top = [-c for c in mod[:phi]]  # x^phi == top (Phi_m is monic)
    rows: list[tuple[int, ...]] = []
    cur = [0] * phi
    if phi > 0:
        cur[0] = 1
    for _ in range(max(m, 2 * phi - 1)):
        rows.append(tuple(cur))
        lead = cur[phi - 1]
        cur = [0] + cur[:-1]  # multiply by x; lead overflows into x^phi
        if lead:
            for i in range(phi):
                cur[i] += lead * top[i]
    return tuple(rows)


class Cyclotomic:
    """Element of Q(zeta_m) with exact integer/denominator coordinates."""

    __slots__ = ("m", "nums", "den")

    def __init__(self, m, nums, den=1, *, trusted=False):
        if not trusted:
            phi = euler_phi(m)
            nums = list(nums)
            if len(nums) > phi:
                raise DomainError("coordinate vector longer than phi(m)")
            nums += [0] * (phi - len(nums))
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if den < 0:
                den = -den
                nums = [-c for c in nums]
            g = math.gcd(den, *nums) if any(nums) else den
            nums = tuple(c // g for c in nums)
            den //= g
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "nums", tuple(nums))
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, m):
        return cls(m, (0,) * euler_phi(m), 1, trusted=True)

    @classmethod
    def one(cls, m):
        nums = [0] * euler_phi(m)
        nums[0] = 1
        return cls(m, tuple(nums), 1, trusted=True)

    @classmethod
    def from_fraction(cls, m, q):
        q = Fraction(q)
        nums = [0] * euler_phi(m)
        nums[0] = q.numerator
        return cls(m, nums, q.denominator)

    @classmethod
    def zeta(cls, m, k=1):
        return cls(m, _power_table(m)[k % m], 1, trusted=True)

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return not any(self.nums)

    def is_rational(self):
        return not any(self.nums[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"not a rational number: {self}")
        return Fraction(self.nums[0], self.den)

    def as_int(self) -> int:
        q = self.as_fraction()
        if q.denominator != 1:
            raise DomainError(f"not an integer: {self}")
        return q.numerator

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.m, self.nums, self.den) == (other.m, other.nums, other.den)

    def __hash__(self):
        return hash((self.m, self.nums, self.den))

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.m != self.m:
                raise ConfigError(
                    f"mixed cyclotomic orders {self.m} and {other.m}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_fraction(self.m, other)
        return NotImplemented

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        da, db = self.den, other.den
        g = math.gcd(da, db)
        la, lb = db // g, da // g
        nums = [a * la + b * lb for a, b in zip(self.nums, other.nums)]
        return Cyclotomic(self.m, nums, da * la)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(
            self.m, tuple(-c for c in self.nums), self.den, trusted=True
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.nums, other.nums
        phi = len(a)
        conv = [0] * (2 * phi - 1 if phi else 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    conv[i + j] += ca * cb
        table = _power_table(self.m)
        nums = [0] * phi
        for k, c in enumerate(conv):
            if c:
                row = table[k]
                for i in range(phi):
                    nums[i] += c * row[i]
        return Cyclotomic(self.m, nums, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclotomic.from_fraction(self.m, 1 / self.as_fraction())
        # extended Euclid in Q[x] against Phi_m
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        a = [Fraction(c) for c in self.nums]
        u, v = [Fraction(1)], [Fraction(0)]  # u*a + (..)*mod == r invariant
        r0, r1 = a, mod
        u0, u1 = u, v
        while any(r1):
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            u0, u1 = u1, _qpoly_sub(u0, _qpoly_mul(q, u1))
        if len(r0) != 1:
            # gcd must be a nonzero constant since Phi_m is irreducible
            raise RuntimeError("cyclotomic inverse: unexpected gcd")
        scale = 1 / r0[0]
        inv_coeffs = [c * scale for c in u0]
        den = math.lcm(*(c.denominator for c in inv_coeffs)) if inv_coeffs else 1
        nums = [int(c * den) for c in inv_coeffs]
        out = Cyclotomic(self.m, nums, den) * self.den
        return out

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = Cyclotomic.one(self.m)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- Galois ------------------------------------------------------------

    def galois(self, s: int) -> "Cyclotomic":
        """Apply zeta -> zeta^s; s must be invertible mod m."""
        if math.gcd(s, self.m) != 1:
            raise DomainError(f"galois exponent {s} not a unit mod {self.m}")
        table = _power_table(self.m)
        nums = [0] * len(self.nums)
        for i, c in enumerate(self.nums):
            if c:
                row = table[(i * s) % self.m]
                for j in range(len(nums)):
                    nums[j] += c * row[j]
        return Cyclotomic(self.m, nums, self.den)

    def conjugate(self):
        return self.galois(self.m - 1) if self.m > 1 else self

    # -- output ------------------------------------------------------------

    def approx(self) -> complex:
        tau = 2 * math.pi / self.m
        out = 0j
        for i, c in enumerate(self.nums):
            if c:
                out += c * complex(math.cos(tau * i), math.sin(tau * i))
        return out / self.den

    def to_json(self):
        fracs = [Fraction(n, self.den) for n in self.nums]
        return {
            "m": self.m,
            "num": [str(q.numerator) for q in fracs],
            "den": [str(q.denominator) for q in fracs],
        }

    @classmethod
    def from_json(cls, obj):
        m = int(obj["m"])
        num = [int(s) for s in obj["num"]]
        den = [int(s) for s in obj["den"]]
        if len(num) != len(den):
            raise DomainError("num/den arrays must be parallel")
        fracs = [Fraction(a, b) for a, b in zip(num, den)]
        common = math.lcm(*(q.denominator for q in fracs)) if fracs else 1
        return cls(m, [int(q * common) for q in fracs], common)

    def __repr__(self):
        return f"Cyclotomic(m={self.m}, {self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        if self.is_rational():
            return str(self.as_fraction())
        inner = []
        for i, c in enumerate(self.nums):
            if not c:
                continue
            if i == 0:
                inner.append(str(c))
            else:
                z = f"z^{i}" if i > 1 else "z"
                if c == 1:
                    inner.append(z)
                elif c == -1:
                    inner.append(f"-{z}")
                else:
                    inner.append(f"{c}*{z}")
        body = "+".join(inner).replace("+-", "-")
        if self.den == 1:
            return body
        return f"({body})/{self.den}"


def zeta(m, k=1):
    return Cyclotomic.zeta(m, k)


def cyc_rational(m, q):
    return Cyclotomic.from_fraction(m, q)


# rational polynomial helpers for the inverse computation


def _qpoly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _qpoly_sub(a, b):
    out = list(a) + [Fraction(0)] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _qpoly_trim(out)


def _qpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _qpoly_trim(out)


def _qpoly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] * inv
        q[i] = c
        if c:
            for j, cb in enumerate(b):
                a[i + j] -= c * cb
    return _qpoly_trim(q), _qpoly_trim(a[: len(b) - 1])


class CycPoly:
    """Dense polynomial with Cyclotomic coefficients, ascending order."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m, coeffs, *, trusted=False):
        if not trusted:
            coeffs = [
                c if isinstance(c, Cyclotomic) else Cyclotomic.from_fraction(m, c)
                for c in coeffs
            ]
            while coeffs and coeffs[-1].is_zero():
                coeffs.pop()
            coeffs = tuple(coeffs)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycPoly is immutable")

    @classmethod
    def zero(cls, m):
        return cls(m, (), trusted=True)

    @classmethod
    def one(cls, m):
        return cls(m, (Cyclotomic.one(m),), trusted=True)

    @classmethod
    def variable(cls, m):
        return cls(m, (Cyclotomic.zero(m), Cyclotomic.one(m)), trusted=True)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coeff(self, k) -> Cyclotomic:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Cyclotomic.zero(self.m)

    def __eq__(self, other):
        return (
            isinstance(other, CycPoly)
            and self.m == other.m
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __add__(self, other):
        if not isinstance(other, CycPoly):
            other = CycPoly(self.m, (other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return CycPoly(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return CycPoly(self.m, tuple(-c for c in self.coeffs), trusted=True)

    def __sub__(self, other):
        if not isinstance(other, CycPoly):
            other = CycPoly(self.m, (other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycPoly):
            return CycPoly(self.m, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return CycPoly.zero(self.m)
        out = [Cyclotomic.zero(self.m)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ca in enumerate(self.coeffs):
            if not ca.is_zero():
                for j, cb in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + ca * cb
        return CycPoly(self.m, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = CycPoly.one(self.m)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def evaluate(self, a: Cyclotomic) -> Cyclotomic:
        out = Cyclotomic.zero(self.m)
        for c in reversed(self.coeffs):
            out = out * a + c
        return out

    def shift(self, k) -> "CycPoly":
        """Multiply by t^k."""
        if self.is_zero():
            return self
        return CycPoly(
            self.m, (Cyclotomic.zero(self.m),) * k + self.coeffs, trusted=True
        )

    def galois(self, s):
        return CycPoly(self.m, tuple(c.galois(s) for c in self.coeffs), trusted=True)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            t = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            cs = str(c)
            if t and cs == "1":
                parts.append(t)
            elif t and cs == "-1":
                parts.append(f"-{t}")
            else:
                parts.append(f"({cs})*{t}" if t and ("+" in cs or "-" in cs[1:]) else f"{cs}{'*' + t if t else ''}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"CycPoly(m={self.m}, {self})"


def brauer_lift(ctx: ExtFieldCtx, k: int) -> Cyclotomic:
    """Lift alpha^k through the fixed embedding alpha -> zeta_(p^N - 1)."""
    return Cyclotomic.zeta(ctx.m, k)


def lifted_roots_polynomial(ctx: ExtFieldCtx, f: FpPoly) -> CycPoly:
    """prod over lifted roots lam of f (with multiplicity) of (1 - lam*t).

    Needs every irreducible factor degree of f to divide the ambient N.
    The result has constant term 1 and coefficients in Z[zeta_m].
    """
    if f.p != ctx.p:
        raise ConfigError("polynomial and field context use different p")
    if not f.is_basis_poly():
        raise DomainError(f"not a basis polynomial: {f}")
    m = ctx.m
    out = CycPoly.one(m)
    t = CycPoly.variable(m)
    for h, mult in factor(f).factors:
        if ctx.N % h.degree:
            raise ConfigError(
                f"factor degree {h.degree} of {h.human()} does not divide N={ctx.N}"
            )
        for k in ctx.root_exponents(h):
            term = CycPoly.one(m) - CycPoly(m, (Cyclotomic.zero(m), zeta(m, k)))
            out = out * term**mult
    return out
