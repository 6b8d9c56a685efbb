"""Formula-vs-oracle consistency checks behind the `verify` command.

Every check pits a closed-form quantity of the exact ring model against an
independent computation: brute-force group enumeration, a generating
function DP, or exact linear algebra.  A check returns one report row

    {check, parameters, formula_value, oracle_value, equal}

whose values are canonical strings (short listings verbatim, long ones as a
sha256 digest, and on a mismatch the first differing entry from each side).
Rows carry no timestamps and no environment echoes, so a suite serializes
byte-identically across runs.
"""

from __future__ import annotations

import hashlib
import math
import os

from .cyclo import Cyclotomic, zeta
from .ffpoly import (
    ExtFieldCtx,
    FpPoly,
    enumerate_basis_polys,
    factor,
    is_irreducible,
)
from .glring import (
    RingElement,
    t_eigenspace_dimensions,
    t_eigenspace_formula,
)
from .linalg import mat_mul
from .oracle import (
    ClassFunction,
    brauer_pairing_coefficient,
    comultiplication_value,
    group_table,
    induce_fourier_indicator,
    induction_product,
)
from .poincare import (
    ambient_closed_form,
    kernel_relations,
    minimal_ambient_degree,
    molien_count,
    quartic_family,
    series_coefficients,
    series_normalization,
)
from .torus import DLBasisMatrix, induced_indicator

BUDGET_ENV = "GLK_ORACLE_BUDGET"

# listings longer than this many characters are reported as a digest
_VERBATIM_LIMIT = 160


def resolve_budget(explicit=None):
    """Explicit budget if given, else the GLK_ORACLE_BUDGET env override,
    else None (the oracle default)."""
    if explicit is not None:
        return explicit
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else None


def _digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()[:16]


def _pack(check: str, parameters: dict, items) -> dict:
    """items: (label, formula string, oracle string) triples."""
    equal = all(a == b for _, a, b in items)
    if equal:
        text = ";".join(f"{lab}={a}" for lab, a, _ in items)
        shown = text if len(text) <= _VERBATIM_LIMIT else _digest(text)
        formula, oracle = shown, shown
    else:
        lab, a, b = next(t for t in items if t[1] != t[2])
        formula, oracle = f"{lab}={a}", f"{lab}={b}"
    return {
        "check": check,
        "parameters": parameters,
        "formula_value": formula,
        "oracle_value": oracle,
        "equal": equal,
    }


def _pi(f: FpPoly) -> ClassFunction:
    return ClassFunction(f.degree, f.p, 1, {f: 1})


def check_structure_constants(p: int, deg_a: int, deg_b: int, budget=None) -> dict:
    """Ring product of basis elements against the induction oracle."""
    items = []
    for fa in enumerate_basis_polys(p, deg_a):
        for fb in enumerate_basis_polys(p, deg_b):
            want = RingElement.basis(fa) * RingElement.basis(fb)
            got = induction_product(_pi(fa), _pi(fb), budget=budget)
            items.append(
                (
                    f"{fa.digits()}*{fb.digits()}",
                    want.text(),
                    got.to_ring_element().text(),
                )
            )
    params = {"p": p, "deg_a": deg_a, "deg_b": deg_b}
    return _pack("structure_constants", params, items)


def check_torus_induction(p: int, n: int, ks=None, budget=None) -> dict:
    """Closed-form induced indicator against averaging over the group."""
    ctx = ExtFieldCtx.create(p, n)
    ks = list(range(ctx.m)) if ks is None else list(ks)
    items = []
    for k in ks:
        want = induced_indicator(ctx, k)
        got = induce_fourier_indicator(ctx, k, budget=budget)
        items.append((f"k={k}", want.text(), got.to_ring_element().text()))
    return _pack("torus_induction", {"p": p, "n": n, "k": ks}, items)


def check_comultiplication(p: int, n: int, budget=None) -> dict:
    """Grouplike contract: the pair average is 1 exactly on the diagonal."""
    table = group_table(n, p, budget=budget)
    classes = sorted(table.class_sizes, key=lambda f: f.key())
    items = []
    for f in enumerate_basis_polys(p, n):
        rho = _pi(f)
        for fa in classes:
            for fb in classes:
                want = 1 if fa == f == fb else 0
                got = comultiplication_value(rho, fa, fb, budget=budget)
                items.append(
                    (
                        f"{f.digits()}|{fa.digits()},{fb.digits()}",
                        str(Cyclotomic.from_fraction(1, want)),
                        str(got),
                    )
                )
    return _pack("comultiplication_grouplike", {"p": p, "n": n}, items)


def check_dl_round_trip(p: int, n: int) -> dict:
    """The two change-of-basis matrices must be exact mutual inverses."""
    ctx = ExtFieldCtx.create(p, n)
    mat = DLBasisMatrix(ctx)
    size = len(mat.reps)

    def render(prod):
        for i in range(size):
            for j in range(size):
                want = 1 if i == j else 0
                if prod[i][j] != want:
                    return f"mismatch at ({i},{j}): {prod[i][j]}"
        return "identity"

    items = [
        ("to_pi*from_pi", "identity", render(mat_mul(mat.to_pi, mat.from_pi))),
        ("from_pi*to_pi", "identity", render(mat_mul(mat.from_pi, mat.to_pi))),
    ]
    return _pack("dl_round_trip", {"p": p, "n": n}, items)


def check_t_spectrum(p: int, n: int) -> dict:
    """Eigenspace dimension formula against basis enumeration."""
    enum = dict(t_eigenspace_dimensions(p, n))
    items = [
        (f"i={i}", str(t_eigenspace_formula(p, n, i)), str(enum[i]))
        for i in range(n + 1)
    ]
    return _pack("t_spectrum", {"p": p, "n": n}, items)


def check_molien(p: int, n: int, order: int) -> dict:
    """Ambient closed form at every w = zeta^k against the Fourier-weighted
    sum of Molien summand counts."""
    ctx = ExtFieldCtx.create(p, n)
    items = []
    for k in range(ctx.m):
        closed = ambient_closed_form(ctx, k).expand(order)
        sums = []
        for big_d in range(order + 1):
            acc = Cyclotomic.zero(ctx.m)
            for j in range(ctx.m):
                cnt = molien_count(p, n, j, big_d)
                if cnt:
                    acc = acc + zeta(ctx.m, (-j * k) % ctx.m) * cnt
            sums.append(acc)
        items.append(
            (f"k={k}", ",".join(map(str, closed)), ",".join(map(str, sums)))
        )
    return _pack("molien_closed_form", {"p": p, "n": n, "order": order}, items)


def check_brauer_pairing(p: int, f: FpPoly, order: int, budget=None) -> dict:
    """Series coefficients of a basis element against the graded pairing
    computed from lifted eigenvalues and class sizes."""
    ambient = minimal_ambient_degree(RingElement.basis(f))
    ctx = ExtFieldCtx.create(p, ambient)
    closed = series_coefficients(ctx, RingElement.basis(f, m=ctx.m), order)
    norm = series_normalization(f)
    items = []
    for big_d in range(order + 1):
        pairing = brauer_pairing_coefficient(ctx, f, big_d, budget=budget)
        items.append((f"D={big_d}", str(closed[big_d]), str(pairing * norm)))
    params = {"p": p, "f": f.digits(), "N": ambient, "order": order}
    return _pack("brauer_pairing", params, items)


def check_series_algebra_map(p: int, deg_a: int, deg_b: int, order: int) -> dict:
    """Series of a product against the product of the series, coefficient by
    coefficient, each pair in its minimal ambient field."""
    items = []
    ctxs = {}
    for fa in enumerate_basis_polys(p, deg_a):
        for fb in enumerate_basis_polys(p, deg_b):
            ambient = 1
            for h, _ in factor(fa * fb).factors:
                ambient = math.lcm(ambient, h.degree)
            if ambient not in ctxs:
                ctxs[ambient] = ExtFieldCtx.create(p, ambient)
            ctx = ctxs[ambient]
            ca = series_coefficients(ctx, RingElement.basis(fa, m=ctx.m), order)
            cb = series_coefficients(ctx, RingElement.basis(fb, m=ctx.m), order)
            conv = []
            for big_d in range(order + 1):
                acc = Cyclotomic.zero(ctx.m)
                for i in range(big_d + 1):
                    acc = acc + ca[i] * cb[big_d - i]
                conv.append(acc)
            prod = RingElement.basis(fa, m=ctx.m) * RingElement.basis(fb, m=ctx.m)
            direct = series_coefficients(ctx, prod, order)
            items.append(
                (
                    f"{fa.digits()}*{fb.digits()}",
                    ",".join(map(str, direct)),
                    ",".join(map(str, conv)),
                )
            )
    params = {"p": p, "deg_a": deg_a, "deg_b": deg_b, "order": order}
    return _pack("series_algebra_map", params, items)


def check_kernel_quartic(order: int = 48) -> dict:
    """The quartic family: kernel dimension 1, the frozen relation
    (-5, 1, 3, 1), a T-fixed witness, and series vanishing."""
    ctx = ExtFieldCtx.create(2, 4)
    polys = quartic_family()
    report = kernel_relations(ctx, polys)
    items = [("dimension", str(report.dimension), "1")]
    if report.dimension == 1:
        rel = ",".join(str(c) for c in report.relations[0])
        items.append(("relation", rel, "-5,1,3,1"))
        elt = report.ring_element(0)
        items.append(("t_fixed", str(elt.t_functor() == elt), "True"))
        coeffs = series_coefficients(ctx, elt, order)
        vanish = all(c.is_zero() for c in coeffs)
        items.append((f"series_zero_to_{order}", str(vanish), "True"))
    params = {
        "p": 2,
        "N": 4,
        "order": order,
        "polys": [f.digits() for f in polys],
    }
    return _pack("kernel_quartic", params, items)


def check_kernel_degree6(order: int = 16) -> dict:
    """All nine irreducible sextics: kernel of dimension 4 (the requirement
    is >= 2), exact zero residuals, and series vanishing for every relation."""
    ctx = ExtFieldCtx.create(2, 6)
    nine = [f for f in enumerate_basis_polys(2, 6) if is_irreducible(f)]
    report = kernel_relations(ctx, nine)
    items = [
        ("count", str(len(nine)), "9"),
        ("dimension", str(report.dimension), "4"),
        ("dimension_at_least_2", str(report.dimension >= 2), "True"),
        ("residual_exact_zero", str(report.residual_ok), "True"),
    ]
    vanish = True
    for idx in range(report.dimension):
        coeffs = series_coefficients(ctx, report.ring_element(idx), order)
        vanish = vanish and all(c.is_zero() for c in coeffs)
    items.append((f"series_zero_to_{order}", str(vanish), "True"))
    return _pack("kernel_degree6", {"p": 2, "N": 6, "order": order}, items)


def default_suite(budget=None) -> list[dict]:
    """The fast deterministic suite run by `verify` with no flags."""
    budget = resolve_budget(budget)
    rows = []
    for deg_a, deg_b in [(1, 1), (1, 2), (2, 1)]:
        rows.append(check_structure_constants(2, deg_a, deg_b, budget=budget))
    rows.append(check_torus_induction(2, 2, budget=budget))
    rows.append(check_torus_induction(2, 3, budget=budget))
    rows.append(check_comultiplication(2, 1, budget=budget))
    rows.append(check_comultiplication(2, 2, budget=budget))
    for p, tops in ((2, 3), (3, 2)):
        for n in range(1, tops + 1):
            rows.append(check_dl_round_trip(p, n))
    for p in (2, 3, 5):
        for n in range(1, 7):
            rows.append(check_t_spectrum(p, n))
    rows.append(check_molien(2, 1, 16))
    rows.append(check_molien(2, 2, 16))
    rows.append(check_molien(3, 1, 16))
    for d in (1, 2):
        for f in enumerate_basis_polys(2, d):
            rows.append(check_brauer_pairing(2, f, 8, budget=budget))
    rows.append(check_series_algebra_map(2, 1, 1, 12))
    rows.append(check_series_algebra_map(2, 1, 2, 12))
    rows.append(check_kernel_quartic(order=32))
    rows.append(check_kernel_degree6(order=12))
    return rows


def full_suite(budget=None) -> list[dict]:
    """The default suite plus the larger sweeps (GL4(F2), GL3(F3), order-30
    series comparisons, order-64 kernel certification)."""
    budget = resolve_budget(budget)
    rows = default_suite(budget=budget)
    for deg_a, deg_b in [(1, 3), (3, 1), (2, 2)]:
        rows.append(check_structure_constants(2, deg_a, deg_b, budget=budget))
    for deg_a, deg_b in [(1, 1), (1, 2), (2, 1)]:
        rows.append(check_structure_constants(3, deg_a, deg_b, budget=budget))
    rows.append(check_torus_induction(2, 4, ks=[0, 1, 3, 5], budget=budget))
    rows.append(check_torus_induction(3, 2, budget=budget))
    rows.append(check_comultiplication(3, 1, budget=budget))
    rows.append(check_comultiplication(3, 2, budget=budget))
    rows.append(check_dl_round_trip(2, 4))
    for p, ns in ((2, (1, 2, 3, 4)), (3, (1, 2))):
        for n in ns:
            rows.append(check_molien(p, n, 30))
    for d in (1, 2, 3):
        for f in enumerate_basis_polys(2, d):
            rows.append(check_brauer_pairing(2, f, 12, budget=budget))
    for deg_a, deg_b in [(1, 3), (3, 1), (2, 2)]:
        rows.append(check_series_algebra_map(2, deg_a, deg_b, 20))
    rows.append(check_kernel_quartic(order=64))
    rows.append(check_kernel_degree6(order=64))
    return rows


SUITES = {"default": default_suite, "full": full_suite}


def run_suite(name: str, budget=None) -> list[dict]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](budget=budget)
