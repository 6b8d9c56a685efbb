import itertools
import random
from fractions import Fraction

import pytest

from glk.cyclo import Cyclotomic, zeta
from glk.errors import ConfigError, DomainError
from glk.ffpoly import FpPoly, enumerate_basis_polys
from glk.glring import (
    RingElement,
    decompose_into_generators,
    expand_generators,
    generator_power,
    gl_order,
    q_pochhammer,
    steinberg_value,
    structure_constant,
    t_eigenspace_dimensions,
    t_eigenspace_formula,
    unit_multiplicity,
    q_pochhammer as psi,
)


def basis_polys_up_to(p, maxdeg):
    out = []
    for d in range(maxdeg + 1):
        out.extend(enumerate_basis_polys(p, d))
    return out


def test_q_pochhammer_values():
    assert psi(0, 7) == 1
    assert psi(2, 2) == 3
    assert psi(2, 4) == 45
    assert psi(3, 2) == 21


def test_gl_orders():
    assert gl_order(1, 2) == 1
    assert gl_order(2, 2) == 6
    assert gl_order(3, 2) == 168
    assert gl_order(4, 2) == 20160
    assert gl_order(3, 3) == 11232
    assert gl_order(2, 4) == 180


def test_structure_constant_examples():
    x1 = FpPoly(2, [1, 1])
    xx1 = FpPoly(2, [1, 1, 1])
    assert structure_constant(x1, x1) == 6
    assert structure_constant(x1 * x1, x1) == 28
    assert structure_constant(x1, xx1) == 1
    assert structure_constant(FpPoly.one(2), x1) == 1


def test_structure_constant_rejects_non_basis():
    with pytest.raises(DomainError):
        structure_constant(FpPoly(2, [0, 1]), FpPoly(2, [1, 1]))


def test_structure_constant_symmetric_and_integral_exhaustive():
    for p, maxdeg in ((2, 4), (3, 3)):
        polys = [f for f in basis_polys_up_to(p, maxdeg) if f.degree >= 1]
        for f, g in itertools.combinations_with_replacement(polys, 2):
            if f.degree + g.degree > maxdeg:
                continue
            c = structure_constant(f, g)
            assert isinstance(c, int) and c >= 1
            assert c == structure_constant(g, f)


def test_mul_commutative_associative_exhaustive_f2():
    polys = [f for f in basis_polys_up_to(2, 2) if f.degree >= 1]
    elts = [RingElement.basis(f) for f in polys]
    for a, b in itertools.product(elts, repeat=2):
        assert a * b == b * a
    for a, b, c in itertools.product(elts, repeat=3):
        assert (a * b) * c == a * (b * c)


def test_mul_bilinear():
    x1 = RingElement.basis(FpPoly(2, [1, 1]))
    xx1 = RingElement.basis(FpPoly(2, [1, 1, 1]))
    lhs = (x1 + xx1) * x1
    assert lhs == x1 * x1 + xx1 * x1
    assert (x1 * 3) * xx1 == (x1 * xx1) * 3


def test_unit_element():
    one = RingElement.unit(2)
    x1 = RingElement.basis(FpPoly(2, [1, 1]))
    assert one * x1 == x1
    assert x1 ** 0 == one


def test_generator_power_examples():
    x1 = FpPoly(2, [1, 1])
    xx1 = FpPoly(2, [1, 1, 1])
    assert generator_power(x1, 2) == (6, x1 * x1)
    assert generator_power(x1, 1) == (1, x1)
    assert generator_power(xx1, 2) == (20, xx1 * xx1)
    with pytest.raises(DomainError):
        generator_power(x1 * x1, 2)


def test_generator_power_matches_iterated_mul():
    for p in (2, 3):
        for h in basis_polys_up_to(p, 2):
            if h.degree < 1 or not h.is_basis_poly():
                continue
            try:
                generator_power(h, 1)
            except DomainError:
                continue
            e = RingElement.basis(h)
            for n in (2, 3):
                scalar, key = generator_power(h, n)
                assert e**n == RingElement.basis(key, coeff=scalar)


def test_decompose_round_trip_exhaustive():
    for p, maxdeg in ((2, 4), (3, 3)):
        for f in basis_polys_up_to(p, maxdeg):
            scalar, mono = decompose_into_generators(f)
            assert expand_generators(p, mono, scalar) == RingElement.basis(f)


def test_decompose_examples():
    x1 = FpPoly(2, [1, 1])
    xx1 = FpPoly(2, [1, 1, 1])
    assert decompose_into_generators(x1) == (Fraction(1), [(x1, 1)])
    assert decompose_into_generators(x1 * x1) == (Fraction(1, 6), [(x1, 2)])
    assert decompose_into_generators(x1 * xx1) == (Fraction(1), [(x1, 1), (xx1, 1)])


def test_comultiply_grouplike():
    x1 = FpPoly(2, [1, 1])
    e = RingElement.basis(x1)
    assert e.comultiply() == [(Cyclotomic.one(1), x1, x1)]
    assert RingElement.zero(2).comultiply() == []
    two_terms = e + RingElement.basis(FpPoly(2, [1, 1, 1]))
    assert len(two_terms.comultiply()) == 2


def test_comultiply_multiplicative_identity():
    # c(f,g) * Delta(pi_f pi_g) == Delta(pi_f) * Delta(pi_g) componentwise
    for p in (2, 3):
        polys = [f for f in basis_polys_up_to(p, 2) if f.degree >= 1]
        for f, g in itertools.combinations_with_replacement(polys, 2):
            c = structure_constant(f, g)
            prod = RingElement.basis(f) * RingElement.basis(g)
            lhs = [(coef * c, a, b) for coef, a, b in prod.comultiply()]
            cc = Cyclotomic.from_fraction(1, c * c)
            rhs = [(cc, f * g, f * g)]
            assert lhs == rhs


def test_steinberg_values():
    assert steinberg_value(FpPoly(2, [1, 1]) ** 3) == 2**3  # p^C(3,2)
    assert steinberg_value(FpPoly(2, [1, 1, 1])) == -1
    assert steinberg_value(FpPoly(2, [1, 1]) * FpPoly(2, [1, 1, 1])) == -1
    assert steinberg_value(FpPoly.one(2)) == 1
    assert steinberg_value(FpPoly(3, [2, 1]) ** 2) == 3


def test_t_functor_eigenvalues():
    x1 = FpPoly(2, [1, 1])
    xx1 = FpPoly(2, [1, 1, 1])
    assert RingElement.basis(x1).t_functor() == RingElement.basis(x1, coeff=2)
    assert RingElement.basis(xx1).t_functor() == RingElement.basis(xx1)
    heavy = RingElement.basis(x1 * x1 * xx1)
    assert heavy.t_functor() == heavy * 4
    assert unit_multiplicity(x1 * x1 * xx1) == 2
    # p = 3: the eigenvalue tracks x-1, not x+1
    assert unit_multiplicity(FpPoly(3, [1, 1])) == 0
    assert unit_multiplicity(FpPoly(3, [2, 1])) == 1


def test_t_functor_is_ring_map():
    polys = [f for f in basis_polys_up_to(2, 3) if f.degree >= 1]
    rng = random.Random(41)
    for _ in range(30):
        a = RingElement.basis(rng.choice(polys), coeff=rng.randrange(1, 5))
        b = RingElement.basis(rng.choice(polys))
        assert (a * b).t_functor() == a.t_functor() * b.t_functor()


def test_t_eigenspace_dimensions():
    assert [d for _, d in t_eigenspace_dimensions(2, 3)] == [4, 2, 1, 1]
    assert [d for _, d in t_eigenspace_dimensions(2, 1)] == [1, 1]
    assert t_eigenspace_dimensions(7, 0) == [(0, 1)]
    for p in (2, 3, 5):
        for n in range(7):
            dims = t_eigenspace_dimensions(p, n)
            assert sum(d for _, d in dims) == p**n
            for i, d in dims:
                assert d == t_eigenspace_formula(p, n, i)


def test_ring_element_text():
    x1 = FpPoly(2, [1, 1])
    e = RingElement.basis(x1) * RingElement.basis(x1)
    assert e.text() == "6*pi[101]"
    combo = RingElement.basis(x1, coeff=Fraction(1, 6)) - RingElement.basis(
        FpPoly(2, [1, 1, 1])
    )
    assert combo.text() == "1/6*pi[11] - pi[111]"
    assert RingElement.zero(2).text() == "0"
    zc = RingElement.basis(x1, m=3, coeff=zeta(3))
    assert zc.text() == "(z)*pi[11]"


def test_ring_element_json_round_trip():
    x1 = FpPoly(2, [1, 1])
    e = RingElement.basis(x1, m=15, coeff=zeta(15) + 2) + RingElement.basis(
        FpPoly(2, [1, 1, 1]), m=15
    )
    arr = e.to_json()
    assert all(set(item) == {"basis", "coeff"} for item in arr)
    assert RingElement.from_json(2, arr) == e


def test_context_mismatch_rejected():
    a = RingElement.basis(FpPoly(2, [1, 1]), m=1)
    b = RingElement.basis(FpPoly(2, [1, 1]), m=3)
    with pytest.raises(ConfigError):
        a + b
    with pytest.raises(ConfigError):
        a * b


def test_homogeneous_grading():
    x1 = FpPoly(2, [1, 1])
    e = RingElement.basis(x1)
    assert e.is_homogeneous()
    assert (e * e).degrees() == [2]
    mixed = e + RingElement.unit(2)
    assert not mixed.is_homogeneous()
