import pytest

from glk.cyclo import Cyclotomic, zeta
from glk.errors import DomainError
from glk.ffpoly import ExtFieldCtx, FpPoly
from glk.glring import RingElement, generator_power, gl_order
from glk.torus import (
    DLBasisMatrix,
    TorusChar,
    dl_basis_matrix,
    dl_to_pi,
    evaluate_character_combination,
    fourier_indicator,
    induced_indicator,
    induced_indicator_scalar,
    pi_to_dl,
)


def test_torus_char_multiplicative():
    ctx = ExtFieldCtx.create(2, 4)
    phi = TorusChar(ctx, 3)
    psi = TorusChar(ctx, 13)
    assert phi.value(2) == zeta(15, 6)
    assert (phi * psi).index == 1
    for k in range(15):
        assert (phi * psi).value(k) == phi.value(k) * psi.value(k)


def test_fourier_indicator_is_delta():
    for p, N in ((2, 2), (2, 3), (3, 2), (2, 4)):
        ctx = ExtFieldCtx.create(p, N)
        for k in range(ctx.m):
            coeffs = fourier_indicator(ctx, k)
            for l in range(ctx.m):
                want = Cyclotomic.one(ctx.m) if l == k else Cyclotomic.zero(ctx.m)
                assert evaluate_character_combination(ctx, coeffs, l) == want


def test_trivial_torus():
    ctx = ExtFieldCtx.create(2, 1)
    assert fourier_indicator(ctx, 0) == [Cyclotomic.one(1)]
    assert induced_indicator(ctx, 0) == RingElement.basis(FpPoly(2, [1, 1]), m=1)
    assert dl_to_pi(ctx, 0) == RingElement.basis(FpPoly(2, [1, 1]), m=1)


def test_induced_indicator_examples():
    ctx2 = ExtFieldCtx.create(2, 2)
    sq = FpPoly(2, [1, 1]) ** 2
    assert induced_indicator(ctx2, 0) == RingElement.basis(sq, m=3, coeff=2)
    assert induced_indicator(ctx2, 1) == RingElement.basis(
        FpPoly(2, [1, 1, 1]), m=3
    )
    ctx4 = ExtFieldCtx.create(2, 4)
    assert induced_indicator(ctx4, 5) == RingElement.basis(
        FpPoly(2, [1, 1, 1]) ** 2, m=15, coeff=12
    )
    assert induced_indicator_scalar(ctx4, 0) == gl_order(4, 2) // 15  # 1344


def test_induced_indicator_scalar_is_centralizer_over_torus():
    for p, N in ((2, 2), (2, 3), (2, 4), (3, 2)):
        ctx = ExtFieldCtx.create(p, N)
        for k in range(ctx.m):
            _, d, mult = ctx.min_poly_of_power(k)
            assert induced_indicator_scalar(ctx, k) * ctx.m == gl_order(mult, p**d)


def test_induced_indicator_orbit_invariance():
    ctx = ExtFieldCtx.create(2, 4)
    for k in range(ctx.m):
        assert induced_indicator(ctx, k) == induced_indicator(ctx, (2 * k) % 15)


def test_dl_to_pi_examples():
    ctx = ExtFieldCtx.create(2, 2)
    sq = FpPoly(2, [1, 1]) ** 2
    xx1 = FpPoly(2, [1, 1, 1])
    got = dl_to_pi(ctx, 0)
    assert got == RingElement(2, 3, {sq: 2, xx1: 2})
    assert dl_to_pi(ctx, 1) == RingElement(2, 3, {sq: 2, xx1: -1})
    # orbit invariance of the induced character
    assert dl_to_pi(ctx, 2) == dl_to_pi(ctx, 1)


def test_dl_to_pi_inversion_round_trip():
    # sum_i dl_to_pi(i) * zeta^(-ik) / m recovers induced_indicator(k)
    ctx = ExtFieldCtx.create(2, 3)
    for k in range(ctx.m):
        acc = RingElement.zero(2, ctx.m)
        for i in range(ctx.m):
            acc = acc + dl_to_pi(ctx, i).scale(zeta(ctx.m, -i * k))
        from fractions import Fraction

        acc = acc.scale(Fraction(1, ctx.m))
        assert acc == induced_indicator(ctx, k)


def test_pi_to_dl_frozen_pattern():
    ctx = ExtFieldCtx.create(2, 2)
    got = pi_to_dl(ctx, 1)
    third = Cyclotomic.from_fraction(3, 1) / 3
    assert got == [-third, -third * zeta(3, 2), -third * zeta(3, 1)]


def test_pi_to_dl_resubstitution():
    # substituting dl_to_pi for the labels recovers (pi[f_k])^(m_k) exactly
    for p, N in ((2, 2), (2, 3), (3, 2)):
        ctx = ExtFieldCtx.create(p, N)
        sign = (-1) ** (N - 1)
        for k in range(ctx.m):
            coeffs = pi_to_dl(ctx, k)
            acc = RingElement.zero(p, ctx.m)
            for j, c in enumerate(coeffs):
                # dl[j] = (-1)^(n-1) Ind(phi_j)
                acc = acc + dl_to_pi(ctx, j).scale(c * sign)
            f, _, mult = ctx.min_poly_of_power(k)
            gp, key = generator_power(f, mult)
            assert acc == RingElement.basis(key, m=ctx.m, coeff=gp)


def test_dl_matrix_mutual_inverse():
    for p, N in ((2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2)):
        M = dl_basis_matrix(ExtFieldCtx.create(p, N))
        assert M.identity_residual()


def test_dl_matrix_orbit_sizes():
    M = dl_basis_matrix(ExtFieldCtx.create(2, 4))
    assert M.reps == [0, 1, 3, 5, 7]
    assert [f.degree for f in M.keys] == [4, 4, 4, 4, 4]
    M3 = dl_basis_matrix(ExtFieldCtx.create(3, 2))
    assert len(M3.reps) == 5


def test_dl_matrix_agrees_with_per_j_expansion():
    # per-j coefficients, summed over each orbit, match the exact inverse
    # matrix composed with the generator-power scalar
    for p, N in ((2, 2), (2, 3), (2, 4), (3, 2)):
        ctx = ExtFieldCtx.create(p, N)
        M = dl_basis_matrix(ctx)
        sign = (-1) ** (N - 1)
        for row, k in enumerate(M.reps):
            f, _, mult = ctx.min_poly_of_power(k)
            gp, _ = generator_power(f, mult)
            per_j = pi_to_dl(ctx, k)
            for col, rep in enumerate(M.reps):
                orbit_sum = Cyclotomic.zero(ctx.m)
                for j in ctx.frobenius_orbit(rep):
                    orbit_sum = orbit_sum + per_j[j]
                assert orbit_sum * sign == M.from_pi[row][col] * gp


def test_out_of_range_rejected():
    ctx = ExtFieldCtx.create(2, 2)
    with pytest.raises(DomainError):
        fourier_indicator(ctx, 3)
    with pytest.raises(DomainError):
        dl_to_pi(ctx, -1)
