"""The anisotropic maximal torus of GL_n(F_p) and the induced-character
change of basis.

T_n is the image of F_{p^n}^x embedded by the companion matrix of the
canonical primitive polynomial; it is cyclic of order m = p^n - 1 with a
distinguished generator alpha (the companion matrix itself, equivalently
the class of x).  Its irreducible characters are phi_i(alpha^k) = zeta^(ik).

Induction to GL_n sends the indicator of alpha^k to a single basis symbol:

    Ind(indicator of alpha^k) = s_k * pi[f_k^(m_k)],
    s_k = |GL_(m_k)(F_(p^(d_k)))| / (p^n - 1),

where f_k is the minimal polynomial of alpha^k, d_k its degree, and
m_k = n/d_k.  The scalar is the centralizer order over the torus order;
the brute-force oracle validates it (the once-tempting scalar without the
p^(d_k*C(m_k,2)) power factor is wrong already at k=0, n=2, p=2).

Everything else is exact Fourier analysis on Z/m.  Induced characters
depend only on the Frobenius orbit of the exponent, so the two change-of-
basis matrices are square, indexed by orbit representatives, and exact
mutual inverses.  The formal labels dl[j] stand for the virtual characters
R^(phi_j) (x) St_n; the genuine projective class is (-1)^(n-1) times one.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import Cyclotomic, zeta
from .errors import DomainError
from .ffpoly import ExtFieldCtx
from .glring import RingElement, generator_power, gl_order
from .linalg import mat_mul, matrix_inverse


class TorusChar:
    """Character phi_i of the cyclic torus: phi_i(alpha^k) = zeta^(ik)."""

    __slots__ = ("ctx", "index")

    def __init__(self, ctx: ExtFieldCtx, index: int):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "index", index % ctx.m)

    def __setattr__(self, name, value):
        raise AttributeError("TorusChar is immutable")

    def value(self, k: int) -> Cyclotomic:
        return zeta(self.ctx.m, self.index * k)

    def __mul__(self, other: "TorusChar") -> "TorusChar":
        if other.ctx is not self.ctx:
            raise DomainError("characters of different tori")
        return TorusChar(self.ctx, self.index + other.index)

    def __eq__(self, other):
        return (
            isinstance(other, TorusChar)
            and self.ctx is other.ctx
            and self.index == other.index
        )

    def __hash__(self):
        return hash((id(self.ctx), self.index))

    def __repr__(self):
        return f"TorusChar(i={self.index}, m={self.ctx.m})"


def fourier_indicator(ctx: ExtFieldCtx, k: int) -> list[Cyclotomic]:
    """Coefficients x_j with indicator(alpha^k) = sum_j x_j phi_j:
    x_j = zeta^(-jk) / m."""
    if not 0 <= k < ctx.m:
        raise DomainError(f"exponent {k} out of range [0, {ctx.m})")
    inv_m = Cyclotomic.from_fraction(ctx.m, Fraction(1, ctx.m))
    return [zeta(ctx.m, -j * k) * inv_m for j in range(ctx.m)]


def evaluate_character_combination(
    ctx: ExtFieldCtx, coeffs: list[Cyclotomic], l: int
) -> Cyclotomic:
    """Evaluate sum_j coeffs[j] * phi_j at alpha^l."""
    out = Cyclotomic.zero(ctx.m)
    for j, c in enumerate(coeffs):
        if not c.is_zero():
            out = out + c * zeta(ctx.m, j * l)
    return out


def induced_indicator_scalar(ctx: ExtFieldCtx, k: int) -> int:
    """|GL_(m_k)(F_(p^(d_k)))| / (p^n - 1), always an integer."""
    _, d, mult = ctx.min_poly_of_power(k)
    s = Fraction(gl_order(mult, ctx.p**d), ctx.m)
    if s.denominator != 1:
        raise RuntimeError("induced indicator scalar must be integral")
    return s.numerator


def induced_indicator(ctx: ExtFieldCtx, k: int) -> RingElement:
    """Ind from T_n to GL_n of the indicator of alpha^k, in the pi basis."""
    if not 0 <= k < ctx.m:
        raise DomainError(f"exponent {k} out of range [0, {ctx.m})")
    f, _, mult = ctx.min_poly_of_power(k)
    return RingElement.basis(f**mult, m=ctx.m, coeff=induced_indicator_scalar(ctx, k))


def dl_to_pi(ctx: ExtFieldCtx, i: int) -> RingElement:
    """pi-basis expansion of Ind(phi_i) = (-1)^(n-1) R^(phi_i) (x) St_n,
    by Fourier inversion: Ind(phi_i) = sum_k zeta^(ik) Ind(indicator_k)."""
    if not 0 <= i < ctx.m:
        raise DomainError(f"character index {i} out of range [0, {ctx.m})")
    out = RingElement.zero(ctx.p, ctx.m)
    for rep in ctx.orbit_reps():
        weight = Cyclotomic.zero(ctx.m)
        for k in ctx.frobenius_orbit(rep):
            weight = weight + zeta(ctx.m, i * k)
        out = out + induced_indicator(ctx, rep).scale(weight)
    return out


def pi_to_dl(ctx: ExtFieldCtx, k: int) -> list[Cyclotomic]:
    """Coefficients c_j with (pi[f_k])^(m_k) = sum_j c_j * dl[j], the dl[j]
    being the formal labels R^(phi_j) (x) St_n.

    Derivation (never transcribed constants): pi[f_k^(m_k)] is
    (1/s_k) Ind(indicator_k), the indicator expands through
    fourier_indicator, and (pi[f_k])^(m_k) = gp_k * pi[f_k^(m_k)]."""
    f, _, mult = ctx.min_poly_of_power(k)
    gp, _ = generator_power(f, mult)
    s = induced_indicator_scalar(ctx, k)
    sign = (-1) ** (ctx.N - 1)
    scale = Cyclotomic.from_fraction(ctx.m, Fraction(sign * gp, s))
    return [c * scale for c in fourier_indicator(ctx, k)]


class DLBasisMatrix:
    """Exact orbit-indexed change of basis between {Ind(phi_j)} and the
    degree-n pi-basis symbols {pi[f_k^(m_k)]}.

    to_pi[row J][col K] = coefficient of pi[f_K^(m_K)] in Ind(phi_(rep J));
    from_pi is its exact matrix inverse, computed by elimination (not from
    any printed closed form).  Rows and columns share the ordering of
    orbit_reps().
    """

    __slots__ = ("ctx", "reps", "keys", "to_pi", "from_pi")

    def __init__(self, ctx: ExtFieldCtx):
        reps = ctx.orbit_reps()
        keys = []
        for rep in reps:
            f, _, mult = ctx.min_poly_of_power(rep)
            keys.append(f**mult)
        rows = []
        for i in reps:
            expansion = dl_to_pi(ctx, i)
            rows.append([expansion.coeff(key) for key in keys])
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "reps", reps)
        object.__setattr__(self, "keys", keys)
        object.__setattr__(self, "to_pi", rows)
        object.__setattr__(self, "from_pi", matrix_inverse(rows))

    def __setattr__(self, name, value):
        raise AttributeError("DLBasisMatrix is immutable")

    def identity_residual(self) -> bool:
        """True when to_pi . from_pi and from_pi . to_pi are both exactly
        the identity."""
        n = len(self.reps)
        one = Cyclotomic.one(self.ctx.m)
        zero = Cyclotomic.zero(self.ctx.m)
        eye = [[one if i == j else zero for j in range(n)] for i in range(n)]
        return (
            mat_mul(self.to_pi, self.from_pi) == eye
            and mat_mul(self.from_pi, self.to_pi) == eye
        )


_DL_CACHE: dict[tuple, DLBasisMatrix] = {}


def dl_basis_matrix(ctx: ExtFieldCtx) -> DLBasisMatrix:
    key = (ctx.p, ctx.N, ctx.modulus.coeffs)
    if key not in _DL_CACHE:
        _DL_CACHE[key] = DLBasisMatrix(ctx)
    return _DL_CACHE[key]
