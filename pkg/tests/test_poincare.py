import random
from fractions import Fraction

import pytest

from glk.cyclo import CycPoly, Cyclotomic, lifted_roots_polynomial, zeta
from glk.errors import ConfigError, DomainError
from glk.ffpoly import (
    ExtFieldCtx,
    FpPoly,
    enumerate_basis_polys,
    is_irreducible,
    reciprocal_basis_poly,
)
from glk.glring import RingElement, unit_multiplicity
from glk.poincare import (
    KernelReport,
    RationalSeries,
    denominator_poly,
    generator_series,
    kernel_relations,
    minimal_ambient_degree,
    molien_count,
    molien_series_check,
    quartic_family,
    series_coefficients,
    series_normalization,
    series_of_element,
    t_fixed_kernel_witness,
)


def P(p, text):
    return FpPoly.from_human(p, text)


def rat(m, q):
    return Cyclotomic.from_fraction(m, q)


def test_rational_series_expansion_and_ops():
    m = 3
    one = CycPoly.one(m)
    t = CycPoly.variable(m)
    geo = RationalSeries(one, one - t)
    assert geo.expand(5) == [rat(m, 1)] * 6
    sq = geo * geo
    assert [c.as_fraction() for c in sq.expand(4)] == [1, 2, 3, 4, 5]
    assert (geo - geo).is_zero()
    assert geo**0 == RationalSeries.one(m)
    # cross-multiplied equality: (1+t)/(1-t^2) == 1/(1-t)
    lhs = RationalSeries(one + t, one - t * t)
    assert lhs == geo
    with pytest.raises(DomainError):
        RationalSeries(one, t)


def test_generator_series_examples():
    ctx1 = ExtFieldCtx.create(2, 1)
    s = generator_series(ctx1, P(2, "x+1"))
    assert all(c == rat(1, 1) for c in s.expand(10))

    ctx2 = ExtFieldCtx.create(2, 2)
    s = generator_series(ctx2, P(2, "x^2+x+1"))
    assert s.den == CycPoly(3, [1, 1, 1])
    want = [1, -1, 0, 1, -1, 0, 1, -1, 0]
    assert s.expand(8) == [rat(3, v) for v in want]

    ctx3 = ExtFieldCtx.create(3, 1)
    s = generator_series(ctx3, P(3, "x+2"))  # x - 1, root 1
    assert all(c == rat(2, 1) for c in s.expand(10))
    s = generator_series(ctx3, P(3, "x+1"))  # root -1
    assert s.expand(5) == [rat(2, v) for v in [1, -1, -1, 1, 1, -1]]

    with pytest.raises(DomainError):
        generator_series(ctx2, P(2, "x^2+1"))  # (x+1)^2 reducible


def test_denominator_poly_sanity():
    # top coefficient (-1)^deg, constant term = lift of the root norm,
    # and (for p=2) equality with the lifted reciprocal polynomial
    from glk.ffpoly import factor

    ctx = ExtFieldCtx.create(2, 6)
    for d in (1, 2, 3, 6):
        for f in enumerate_basis_polys(2, d):
            if any(6 % h.degree for h, _ in factor(f).factors):
                continue
            q = denominator_poly(ctx, f)
            assert q.degree == d
            assert q.coeff(d) == rat(ctx.m, (-1) ** d)
            assert q.coeff(0) == Cyclotomic.one(ctx.m)
            assert q == lifted_roots_polynomial(ctx, reciprocal_basis_poly(f))
    ctx3 = ExtFieldCtx.create(3, 2)
    for d in (1, 2):
        for f in enumerate_basis_polys(3, d):
            q = denominator_poly(ctx3, f)
            assert q.coeff(d) == rat(ctx3.m, (-1) ** d)
            norm = (pow(-1, d, 3) * f.constant_term()) % 3
            k = ctx3.dlog(FpPoly(3, [norm]))
            assert q.coeff(0) == zeta(ctx3.m, k)


def test_series_of_element_examples():
    ctx1 = ExtFieldCtx.create(2, 1)
    e = RingElement.basis(P(2, "x^2+1"))
    s = series_of_element(ctx1, e)
    one = CycPoly.one(1)
    t = CycPoly.variable(1)
    want = RationalSeries(one, (one - t) * (one - t)) * rat(1, Fraction(1, 6))
    assert s == want
    assert [c.as_fraction() for c in s.expand(5)] == [
        Fraction(d + 1, 6) for d in range(6)
    ]

    ctx2 = ExtFieldCtx.create(2, 2)
    cube = RingElement.basis(P(2, "x^3+1"))
    coeffs = series_coefficients(ctx2, cube, 9)
    assert coeffs == [rat(3, 1 if d % 3 == 0 else 0) for d in range(10)]

    zero = RingElement.zero(2)
    assert all(c.is_zero() for c in series_coefficients(ctx2, zero, 8))

    mixed = RingElement.basis(P(2, "x^2+x+1"), m=3, coeff=zeta(3, 1)) + RingElement.basis(
        P(2, "x^2+1"), m=3, coeff=2
    )
    assert series_coefficients(ctx2, mixed, 12) == series_of_element(ctx2, mixed).expand(12)


def test_series_ambient_errors():
    ctx1 = ExtFieldCtx.create(2, 1)
    with pytest.raises(ConfigError):
        series_of_element(ctx1, RingElement.basis(P(2, "x^2+x+1")))
    with pytest.raises(ConfigError):
        series_of_element(ctx1, RingElement.basis(P(3, "x+1")))


def test_minimal_ambient_degree():
    x = RingElement.basis(P(2, "x^3+x+1")) + RingElement.basis(P(2, "x^2+x+1"))
    assert minimal_ambient_degree(x) == 6
    assert minimal_ambient_degree(RingElement.basis(P(2, "x^3+1"))) == 2
    assert minimal_ambient_degree(RingElement.zero(2)) == 1


def _random_homogeneous(rng, p, degree, N, m):
    from glk.ffpoly import factor

    out = RingElement.zero(p, m)
    for f in enumerate_basis_polys(p, degree):
        if any(N % h.degree for h, _ in factor(f).factors):
            continue
        c = rng.randint(-3, 3)
        if c:
            out = out + RingElement.basis(f, m=m, coeff=c)
    return out


def _convolve(a, b, order, m):
    out = [Cyclotomic.zero(m)] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if ai.is_zero():
            continue
        for j in range(order + 1 - i):
            out[i + j] = out[i + j] + ai * b[j]
    return out


def test_series_multiplicativity():
    rng = random.Random(20240816)
    cases = [(2, 4, (1, 2)), (2, 3, (3, 3)), (3, 2, (1, 2))]
    for p, N, degs in cases:
        ctx = ExtFieldCtx.create(p, N)
        for _ in range(6):
            x = _random_homogeneous(rng, p, degs[0], N, ctx.m)
            y = _random_homogeneous(rng, p, degs[1], N, ctx.m)
            sx = series_coefficients(ctx, x, 20)
            sy = series_coefficients(ctx, y, 20)
            sxy = series_coefficients(ctx, x * y, 20)
            assert sxy == _convolve(sx, sy, 20, ctx.m), (p, N)


def test_molien_count_examples():
    assert molien_count(2, 2, 0, 3) == 2
    assert molien_count(2, 2, 0, 0) == 1
    for j in (1, 2):
        assert molien_count(2, 2, j, 0) == 0
    for D in range(9):
        assert sum(molien_count(2, 2, j, D) for j in range(3)) == D + 1
    assert molien_count(3, 1, 1, 1) == 1
    assert molien_count(3, 1, 0, 1) == 0
    with pytest.raises(DomainError):
        molien_count(2, 2, 3, 1)
    with pytest.raises(DomainError):
        molien_count(2, 2, 0, -1)


def test_molien_series_check_small():
    for p, n in [(2, 1), (2, 2), (3, 1)]:
        ctx = ExtFieldCtx.create(p, n)
        for k in range(ctx.m):
            chk = molien_series_check(ctx, k, 24)
            assert chk.equal and chk.first_mismatch is None, (p, n, k)
    # polynomial argument resolves to its root's discrete log
    ctx = ExtFieldCtx.create(2, 2)
    assert molien_series_check(ctx, P(2, "x^2+x+1"), 12).equal
    with pytest.raises(DomainError):
        molien_series_check(ctx, 3, 4)


def test_kernel_quartic_family():
    ctx = ExtFieldCtx.create(2, 4)
    E, F, G, H = quartic_family()
    assert [f.human() for f in (E, F, G, H)] == [
        "x^4+x^3+x^2+x+1",
        "x^4+x^3+1",
        "x^4+x^2+1",
        "x^4+x+1",
    ]
    rep = kernel_relations(ctx, [E, F, G, H])
    assert rep.dimension == 1
    assert rep.residual_ok
    assert list(rep.relations[0]) == [rat(15, v) for v in (-5, 1, 3, 1)]

    elt = rep.ring_element(0)
    assert len(elt.support()) == 4
    # coefficient attached to the term omitting G is 3 * (generator monomial
    # of E*F*H expressed in the basis)
    prod = RingElement.basis(E) * RingElement.basis(F) * RingElement.basis(H)
    (efh,) = prod.support()
    assert elt.coeff(efh) == rat(15, 3) * rat(15, prod.coeff(efh).as_fraction())
    assert rep.verify_series(ctx, 32)


def test_kernel_nine_degree6():
    ctx = ExtFieldCtx.create(2, 6)
    nine = [f for f in enumerate_basis_polys(2, 6) if is_irreducible(f)]
    assert len(nine) == 9
    rep = kernel_relations(ctx, nine)
    # the required bound is dim >= 2 (nine vectors in a 7-dimensional space);
    # the exact rank of the lifts is 5, cross-checked by floating SVD
    assert rep.dimension == 4
    assert rep.residual_ok
    assert rep.verify_series(ctx, 8)


def test_kernel_edge_cases():
    ctx = ExtFieldCtx.create(2, 4)
    with pytest.raises(DomainError):
        kernel_relations(ctx, [])
    f = P(2, "x^4+x+1")
    rep = kernel_relations(ctx, [f])
    assert rep.dimension == 0 and rep.residual_ok
    rep2 = kernel_relations(ctx, [f, f])
    assert rep2.dimension == 1
    with pytest.raises(DomainError):
        kernel_relations(ctx, [P(2, "x^2+x")])


def test_t_fixed_witness():
    ctx = ExtFieldCtx.create(2, 4)
    rep = t_fixed_kernel_witness(ctx, order=48)
    assert isinstance(rep, KernelReport)
    elt = rep.ring_element(0)
    assert elt.t_functor() == elt
    for f in elt.support():
        assert unit_multiplicity(f) == 0
    with pytest.raises(ConfigError):
        t_fixed_kernel_witness(ExtFieldCtx.create(3, 4))
    with pytest.raises(ConfigError):
        t_fixed_kernel_witness(ExtFieldCtx.create(2, 2))


def test_series_normalization_values():
    assert series_normalization(P(2, "x^2+1")) == 1
    assert series_normalization(P(2, "x^2+x+1")) == 3
    assert series_normalization(P(2, "x^3+1")) == 3
    assert series_normalization(P(3, "x+1")) == 2
    assert series_normalization(P(3, "x+1") ** 2) == 4


def test_closed_form_matches_brauer_pairing():
    # group-side pairing x normalization == closed-form series coefficients
    from glk.oracle import brauer_pairing_coefficient

    ctx = ExtFieldCtx.create(2, 2)
    for d in (1, 2):
        for f in enumerate_basis_polys(2, d):
            closed = series_coefficients(ctx, RingElement.basis(f, m=ctx.m), 8)
            r = series_normalization(f)
            for D in range(9):
                pairing = brauer_pairing_coefficient(ctx, f, D)
                assert closed[D] == pairing * r, (f, D)


def test_kernel_invariant_under_theta_conjugation():
    # the kernel is an invariant of the family, not of the chosen embedding:
    # Frobenius (zeta -> zeta^p) fixes every lift, a non-Frobenius Galois
    # twist only permutes lifts within the family, and solving over a
    # different primitive modulus reproduces the same rational relation
    ctx = ExtFieldCtx.create(2, 4)
    report = kernel_relations(ctx, quartic_family())
    for q in report.lifts:
        assert q.galois(2) == q
    twisted = [q.galois(7) for q in report.lifts]
    assert twisted[0] == report.lifts[0]
    assert twisted[1] == report.lifts[3]
    assert twisted[2] == report.lifts[2]
    assert twisted[3] == report.lifts[1]

    assert ExtFieldCtx.create(2, 4).modulus == P(2, "x^4+x+1")
    other = ExtFieldCtx.create(2, 4, P(2, "x^4+x^3+1"))
    report2 = kernel_relations(other, quartic_family())
    assert report2.dimension == report.dimension == 1
    assert [c.as_fraction() for c in report2.relations[0]] == [
        c.as_fraction() for c in report.relations[0]
    ]

    sextics = [f for f in enumerate_basis_polys(2, 6) if is_irreducible(f)]
    base6 = kernel_relations(ExtFieldCtx.create(2, 6), sextics)
    alt6 = kernel_relations(
        ExtFieldCtx.create(2, 6, P(2, "x^6+x^5+1")), sextics
    )
    assert base6.dimension == alt6.dimension == 4
