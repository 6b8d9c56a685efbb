"""Brute-force ground truth over explicitly enumerated GL_n(F_p).

Everything the formula modules compute in closed form, this module
recomputes by literal summation over group elements: induction products,
torus induction, diagonal comultiplication, centralizer orders, and the
graded Brauer pairing.  Nothing here consults a structure constant or a
printed scalar; agreement between the two routes is the package's main
correctness evidence.

Enumeration is deterministic (rows chosen in ascending base-p encoding,
linearly independent by construction) and guarded by a hard budget on the
group order; refusals always carry the exact order.  Matrix stacks are
numpy int64 and all arithmetic is exact: sums over the group are regrouped
through integer counters keyed by conjugate encodings, which is a
reordering of an exact sum and therefore bit-identical to the literal loop.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

import numpy as np

from .cyclo import Cyclotomic, zeta
from .errors import BudgetError, ConfigError, DomainError
from .ffpoly import ExtFieldCtx, FpPoly, factor, squarefree_part
from .glring import RingElement, gl_order
from .torus import fourier_indicator

DEFAULT_BUDGET = 10_000_000


def companion_matrix(f: FpPoly) -> np.ndarray:
    """Companion matrix (column convention: last column = -coeffs)."""
    if not f.is_monic() or f.degree < 1:
        raise DomainError("companion matrix needs a monic polynomial of degree >= 1")
    n = f.degree
    M = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        M[i, i - 1] = 1
    for i in range(n):
        M[i, n - 1] = (-f.coeffs[i]) % f.p
    return M


def semisimple_representative(f: FpPoly) -> np.ndarray:
    """Block-diagonal semisimple matrix with characteristic polynomial f:
    one companion block per irreducible factor, repeated with multiplicity."""
    if not f.is_basis_poly() or f.degree < 1:
        raise DomainError("need a basis polynomial of degree >= 1")
    blocks = []
    for h, e in factor(f).factors:
        blocks.extend([companion_matrix(h)] * e)
    n = f.degree
    M = np.zeros((n, n), dtype=np.int64)
    at = 0
    for b in blocks:
        k = b.shape[0]
        M[at : at + k, at : at + k] = b
        at += k
    return M


def charpoly_of_matrix(M, p: int) -> FpPoly:
    """Characteristic polynomial via signed principal-minor sums."""
    M = np.asarray(M, dtype=np.int64) % p
    n = M.shape[0]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for size in range(1, n + 1):
        total = 0
        for subset in _subsets(n, size):
            total += _int_det(M[np.ix_(subset, subset)], p)
        # coefficient of x^(n-size) is (-1)^size * e_size
        coeffs[n - size] = ((-1) ** size * total) % p
    return FpPoly(p, coeffs)


def _subsets(n, size):
    import itertools

    return itertools.combinations(range(n), size)


def _int_det(M, p: int) -> int:
    n = M.shape[0]
    if n == 1:
        return int(M[0, 0]) % p
    if n == 2:
        return int(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]) % p
    total = 0
    for j in range(n):
        if M[0, j]:
            minor = np.delete(np.delete(M, 0, axis=0), j, axis=1)
            total += (-1) ** j * int(M[0, j]) * _int_det(minor, p)
    return total % p


def is_semisimple_matrix(M, p: int) -> bool:
    """Squarefree minimal polynomial test: radical(charpoly)(M) == 0."""
    M = np.asarray(M, dtype=np.int64) % p
    rad = squarefree_part(charpoly_of_matrix(M, p))
    n = M.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    for c in reversed(rad.coeffs):
        acc = (acc @ M + c * np.eye(n, dtype=np.int64)) % p
    return not acc.any()


def semisimple_class_of(M, p: int) -> FpPoly | None:
    """Characteristic polynomial when M is semisimple, else None."""
    M = np.asarray(M, dtype=np.int64) % p
    cp = charpoly_of_matrix(M, p)
    if cp.constant_term() == 0:
        raise DomainError("matrix is singular")
    return cp if is_semisimple_matrix(M, p) else None


class GroupTable:
    """Fully enumerated GL_n(F_p) with per-element class data.

    mats[i] runs over the group exactly once; invs[i] = mats[i]^(-1);
    charpoly_idx[i] indexes into cp_list; semisimple[i] flags a squarefree
    minimal polynomial.  Semisimple classes are keyed by their
    characteristic polynomial (a bijection for semisimple classes).
    """

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.order = gl_order(n, p)
        self.mats = self._enumerate(n, p)
        assert self.mats.shape[0] == self.order, "enumeration mismatch"
        self._powers = np.array(
            [p**i for i in range(n * n)], dtype=np.int64
        )
        self.enc_to_idx = {
            int(e): i for i, e in enumerate(self.encode(self.mats))
        }
        self._fill_charpolys()
        self._fill_inverses()
        self._fill_classes()
        self._split_counters: dict[int, dict] = {}
        self._torus_counters: dict[tuple, dict] = {}
        self._conjugation_counters: dict[FpPoly, Counter] = {}

    # -- construction ------------------------------------------------------

    @staticmethod
    def _enumerate(n: int, p: int) -> np.ndarray:
        vectors = []
        for k in range(p**n):
            digits = []
            t = k
            for _ in range(n):
                digits.append(t % p)
                t //= p
            vectors.append(tuple(digits))
        out = []
        rows: list[tuple] = []

        def build(span: set):
            if len(rows) == n:
                out.append([list(r) for r in rows])
                return
            for v in vectors:
                if v in span:
                    continue
                rows.append(v)
                new_span = {
                    tuple((s[i] + c * v[i]) % p for i in range(n))
                    for s in span
                    for c in range(p)
                }
                build(new_span)
                rows.pop()

        build({tuple([0] * n)})
        return np.array(out, dtype=np.int64)

    def encode(self, stack: np.ndarray) -> np.ndarray:
        flat = stack.reshape(stack.shape[0], self.n * self.n)
        return flat @ self._powers

    def _fill_charpolys(self):
        n, p = self.n, self.p
        count = self.mats.shape[0]
        # e_k via vectorized principal-minor determinant sums
        elem = [np.zeros(count, dtype=np.int64) for _ in range(n + 1)]
        elem[0][:] = 1
        for size in range(1, n + 1):
            acc = np.zeros(count, dtype=np.int64)
            for subset in _subsets(n, size):
                sub = self.mats[:, subset, :][:, :, subset]
                acc = (acc + _stack_det(sub, p)) % p
            elem[size] = acc
        coeff_cols = []
        for k in range(n + 1):
            # coefficient of x^k is (-1)^(n-k) e_(n-k)
            col = ((-1) ** (n - k) * elem[n - k]) % p
            coeff_cols.append(col)
        coeffs = np.stack(coeff_cols, axis=1)
        cp_list: list[FpPoly] = []
        cp_index: dict[tuple, int] = {}
        idx = np.empty(count, dtype=np.int64)
        for i in range(count):
            key = tuple(int(c) for c in coeffs[i])
            at = cp_index.get(key)
            if at is None:
                at = len(cp_list)
                cp_index[key] = at
                cp_list.append(FpPoly(p, key))
            idx[i] = at
        self.cp_list = cp_list
        self.charpoly_idx = idx
        # semisimplicity per element, batched by shared characteristic poly
        ss = np.zeros(count, dtype=bool)
        eye = np.eye(n, dtype=np.int64)
        for at, cp in enumerate(cp_list):
            members = np.nonzero(idx == at)[0]
            rad = squarefree_part(cp)
            stack = self.mats[members]
            acc = np.zeros_like(stack)
            for c in reversed(rad.coeffs):
                acc = (np.matmul(acc, stack) + c * eye) % p
            ss[members] = ~acc.reshape(len(members), -1).any(axis=1)
        self.semisimple = ss

    def _fill_inverses(self):
        # Cayley-Hamilton: M^-1 = -c0^-1 (M^(n-1) + c_(n-1) M^(n-2) + ... + c1 I)
        n, p = self.n, self.p
        count = self.mats.shape[0]
        eye = np.broadcast_to(np.eye(n, dtype=np.int64), (count, n, n))
        powers = [eye.copy()]
        for _ in range(n - 1):
            powers.append(np.matmul(powers[-1], self.mats) % p)
        coeffs = np.zeros((count, n + 1), dtype=np.int64)
        for i in range(count):
            cp = self.cp_list[int(self.charpoly_idx[i])]
            coeffs[i, : len(cp.coeffs)] = cp.coeffs
        acc = np.zeros((count, n, n), dtype=np.int64)
        for k in range(1, n + 1):
            term = coeffs[:, k][:, None, None] * powers[k - 1]
            acc = (acc + term) % p
        inv_table = np.array([0] + [pow(c, -1, p) for c in range(1, p)], dtype=np.int64)
        c0_inv = inv_table[coeffs[:, 0] % p]
        self.invs = ((-c0_inv)[:, None, None] * acc) % p
        check = np.matmul(self.mats[:64], self.invs[:64]) % p
        assert (check == np.eye(n, dtype=np.int64)).all(), "inverse table corrupt"

    def _fill_classes(self):
        self.class_rep_idx: dict[FpPoly, int] = {}
        sizes: Counter = Counter()
        for i in range(self.mats.shape[0]):
            if not self.semisimple[i]:
                continue
            cp = self.cp_list[int(self.charpoly_idx[i])]
            sizes[cp] += 1
            self.class_rep_idx.setdefault(cp, i)
        self.class_sizes = dict(sizes)
        self.class_polys = sorted(self.class_rep_idx, key=lambda f: f.key())

    # -- conjugation machinery ----------------------------------------------

    def conjugates_of(self, g: np.ndarray) -> np.ndarray:
        """Stack of h g h^(-1) over all h, aligned with mats."""
        return np.matmul(np.matmul(self.mats, g) % self.p, self.invs) % self.p

    def conjugation_counter(self, f: FpPoly) -> Counter:
        """Counter {encoding of c: #h with h g h^(-1) = c} for the
        semisimple class representative g of f."""
        got = self._conjugation_counters.get(f)
        if got is None:
            g = self.mats[self.class_rep_idx[f]]
            enc = self.encode(self.conjugates_of(g))
            got = Counter(int(e) for e in enc)
            self._conjugation_counters[f] = got
        return got

    def centralizer_order(self, f: FpPoly) -> int:
        """Exact count of group elements commuting with the class rep."""
        g = self.mats[self.class_rep_idx[f]]
        left = np.matmul(self.mats, g) % self.p
        right = np.matmul(g, self.mats) % self.p
        agree = (left == right).reshape(self.mats.shape[0], -1).all(axis=1)
        return int(agree.sum())

    def split_counters(self, k: int) -> dict:
        """Per semisimple class of this group: Counter over
        (top-left k-block encoding, bottom-right block encoding) of
        conjugates that are block diagonal for the (k, n-k) split."""
        if k in self._split_counters:
            return self._split_counters[k]
        n, p = self.n, self.p
        top_powers = np.array([p**i for i in range(k * k)], dtype=np.int64)
        bot_powers = np.array(
            [p**i for i in range((n - k) * (n - k))], dtype=np.int64
        )
        out = {}
        for f in self.class_polys:
            g = self.mats[self.class_rep_idx[f]]
            conj = self.conjugates_of(g)
            off1 = conj[:, :k, k:].reshape(conj.shape[0], -1)
            off2 = conj[:, k:, :k].reshape(conj.shape[0], -1)
            mask = ~(off1.any(axis=1) | off2.any(axis=1))
            tops = conj[mask][:, :k, :k].reshape(-1, k * k) @ top_powers
            bots = conj[mask][:, k:, k:].reshape(-1, (n - k) * (n - k)) @ bot_powers
            out[f] = Counter(zip(tops.tolist(), bots.tolist()))
        self._split_counters[k] = out
        return out

    def torus_counters(self, ctx: ExtFieldCtx) -> dict:
        """Per semisimple class: Counter {torus exponent k: #h with
        h g h^(-1) = C^k}, C the companion matrix of the field modulus."""
        key = (ctx.p, ctx.N, ctx.modulus.coeffs)
        if key in self._torus_counters:
            return self._torus_counters[key]
        if ctx.p != self.p or ctx.N != self.n:
            raise ConfigError("field context does not match this group")
        C = companion_matrix(ctx.modulus)
        powers = {}
        cur = np.eye(self.n, dtype=np.int64)
        for k in range(ctx.m):
            powers[int(self.encode(cur[None])[0])] = k
            cur = (cur @ C) % self.p
        out = {}
        for f in self.class_polys:
            counter = Counter()
            for enc, cnt in self.conjugation_counter(f).items():
                k = powers.get(enc)
                if k is not None:
                    counter[k] += cnt
            out[f] = counter
        self._torus_counters[key] = out
        return out


_TABLES: dict[tuple[int, int], GroupTable] = {}


def group_table(n: int, p: int, budget: int | None = None) -> GroupTable:
    key = (n, p)
    if key in _TABLES:
        return _TABLES[key]
    limit = DEFAULT_BUDGET if budget is None else budget
    order = gl_order(n, p)
    if order > limit:
        raise BudgetError(
            f"|GL_{n}(F_{p})| = {order} exceeds the oracle budget {limit}",
            required=order,
            budget=limit,
        )
    _TABLES[key] = GroupTable(n, p)
    return _TABLES[key]


def enumerate_gl(n: int, p: int, budget: int | None = None):
    """All invertible matrices, each exactly once, deterministic order."""
    return group_table(n, p, budget).mats


def _stack_det(sub: np.ndarray, p: int) -> np.ndarray:
    """Determinants of a stack of small square matrices, exact mod p."""
    k = sub.shape[1]
    if k == 1:
        return sub[:, 0, 0] % p
    if k == 2:
        return (sub[:, 0, 0] * sub[:, 1, 1] - sub[:, 0, 1] * sub[:, 1, 0]) % p
    total = np.zeros(sub.shape[0], dtype=np.int64)
    cols = list(range(k))
    for j in range(k):
        rest = cols[:j] + cols[j + 1 :]
        minor = sub[:, 1:, :][:, :, rest]
        total = (total + (-1) ** j * sub[:, 0, j] * _stack_det(minor, p)) % p
    return total


class ClassFunction:
    """Exact function on semisimple classes of GL_n(F_p), keyed by
    characteristic polynomial; implicitly zero elsewhere."""

    __slots__ = ("n", "p", "m", "values")

    def __init__(self, n, p, m, values):
        self.n = n
        self.p = p
        self.m = m
        clean = {}
        for f, c in values.items():
            if f.degree != n or not f.is_basis_poly():
                raise DomainError(f"bad class key {f} for degree {n}")
            if not isinstance(c, Cyclotomic):
                c = Cyclotomic.from_fraction(m, c)
            if not c.is_zero():
                clean[f] = c
        self.values = clean

    @classmethod
    def from_ring_element(cls, x: RingElement) -> "ClassFunction":
        degs = x.degrees()
        if len(degs) != 1:
            raise DomainError("class function needs a homogeneous ring element")
        return cls(degs[0], x.p, x.m, dict(x.terms))

    def to_ring_element(self) -> RingElement:
        return RingElement(self.p, self.m, dict(self.values))

    def at(self, f: FpPoly) -> Cyclotomic:
        return self.values.get(f, Cyclotomic.zero(self.m))

    def __eq__(self, other):
        return (
            isinstance(other, ClassFunction)
            and (self.n, self.p, self.m) == (other.n, other.p, other.m)
            and self.values == other.values
        )

    def __repr__(self):
        return f"ClassFunction(n={self.n}, p={self.p}, {self.to_ring_element().text()})"


def _block_value(table: GroupTable, rho: ClassFunction, enc: int) -> Cyclotomic:
    """rho at the block with the given encoding: zero off semisimple."""
    i = table.enc_to_idx[enc]
    if not table.semisimple[i]:
        return Cyclotomic.zero(rho.m)
    return rho.at(table.cp_list[int(table.charpoly_idx[i])])


def induction_product(
    rho1: ClassFunction, rho2: ClassFunction, budget: int | None = None
) -> ClassFunction:
    """Literal double-normalized induction sum

        (1/(|GL_n| |GL_k|)) sum over h in GL_(n+k) with h g h^(-1)
        block diagonal of rho1(top block) rho2(bottom block),

    evaluated at one representative g per semisimple class, regrouped
    through exact integer counters (bit-identical to the plain loop)."""
    if rho1.p != rho2.p or rho1.m != rho2.m:
        raise ConfigError("class functions live in different contexts")
    p, m = rho1.p, rho1.m
    N = rho1.n + rho2.n
    big = group_table(N, p, budget)
    small1 = group_table(rho1.n, p, budget)
    small2 = group_table(rho2.n, p, budget)
    norm = Fraction(1, small1.order * small2.order)
    counters = big.split_counters(rho1.n)
    out = {}
    for f, counter in counters.items():
        acc = Cyclotomic.zero(m)
        for (enc_top, enc_bot), count in counter.items():
            v1 = _block_value(small1, rho1, enc_top)
            if v1.is_zero():
                continue
            v2 = _block_value(small2, rho2, enc_bot)
            if v2.is_zero():
                continue
            acc = acc + v1 * v2 * count
        acc = acc * Cyclotomic.from_fraction(m, norm)
        if not acc.is_zero():
            out[f] = acc
    return ClassFunction(N, p, m, out)


def induce_from_torus(
    ctx: ExtFieldCtx, torus_values: list[Cyclotomic], budget: int | None = None
) -> ClassFunction:
    """(1/|T_n|) sum over h with h g h^(-1) in T_n of the torus value,
    at one representative per semisimple class."""
    if len(torus_values) != ctx.m:
        raise DomainError(f"need {ctx.m} torus values, got {len(torus_values)}")
    table = group_table(ctx.N, ctx.p, budget)
    counters = table.torus_counters(ctx)
    inv_m = Cyclotomic.from_fraction(ctx.m, Fraction(1, ctx.m))
    out = {}
    for f, counter in counters.items():
        acc = Cyclotomic.zero(ctx.m)
        for k, count in counter.items():
            acc = acc + torus_values[k] * count
        acc = acc * inv_m
        if not acc.is_zero():
            out[f] = acc
    return ClassFunction(ctx.N, ctx.p, ctx.m, out)


def induce_fourier_indicator(
    ctx: ExtFieldCtx, k: int, budget: int | None = None
) -> ClassFunction:
    """Brute-force induction of the Fourier indicator of alpha^k; the
    formula side is torus.induced_indicator."""
    coeffs = fourier_indicator(ctx, k)
    values = [
        sum(
            (coeffs[j] * zeta(ctx.m, j * l) for j in range(ctx.m)),
            Cyclotomic.zero(ctx.m),
        )
        for l in range(ctx.m)
    ]
    return induce_from_torus(ctx, values, budget)


def comultiplication_value(
    rho: ClassFunction, fa: FpPoly, fb: FpPoly, budget: int | None = None
) -> Cyclotomic:
    """Diagonal-induction value of Delta(rho) at the semisimple class pair
    (fa, fb), normalized so indicator functions push forward to indicator
    pairs.

    The literal pair sum (1/|G|) sum_(h,l)[h a h^(-1) = l b l^(-1)] rho(...)
    counts every common conjugate |Z(a)| |Z(b)| times, which leaves a
    residual centralizer factor |Z(a)| after the 1/|G| normalization; that
    factor is divided out here.  (A bijection argument identifying the pair
    set with Stab x Orb, of size |G|, yields the same normalized value.)"""
    table = group_table(rho.n, rho.p, budget)
    if fa not in table.class_rep_idx or fb not in table.class_rep_idx:
        raise DomainError("comultiplication oracle needs semisimple class keys")
    ca = table.conjugation_counter(fa)
    cb = table.conjugation_counter(fb)
    acc = Cyclotomic.zero(rho.m)
    for enc, na in ca.items():
        nb = cb.get(enc)
        if not nb:
            continue
        val = _block_value(table, rho, enc)
        if not val.is_zero():
            acc = acc + val * (na * nb)
    za = table.order // table.class_sizes[fa]
    return acc * Cyclotomic.from_fraction(rho.m, Fraction(1, table.order * za))


def centralizer_order_formula(f: FpPoly) -> int:
    """prod |GL_(e_i)(F_(p^(d_i)))| over the factor pattern of f."""
    out = 1
    for h, e in factor(f).factors:
        out *= gl_order(e, f.p**h.degree)
    return out


def graded_brauer_character(ctx: ExtFieldCtx, f: FpPoly, D: int) -> Cyclotomic:
    """Lifted character of the degree-D graded piece of the mod-p cohomology
    of (Z/p)^n at the semisimple class f, n = deg f.

    p = 2: complete homogeneous h_D of the lifted eigenvalues (polynomial
    algebra on degree-1 generators).  p odd: coefficient of t^D in
    E(t) * H(t^2), exterior degree-1 generators times polynomial degree-2
    generators on the same eigenvalue list."""
    if D < 0:
        raise DomainError("graded degree must be >= 0")
    lam = _lifted_eigenvalues(ctx, f)
    m = ctx.m
    h = _h_series(lam, D if ctx.p == 2 else D // 2, m)
    if ctx.p == 2:
        return h[D]
    e = _e_series(lam, min(D, len(lam)), m)
    acc = Cyclotomic.zero(m)
    for a in range(D % 2, min(D, len(lam)) + 1, 2):
        b = (D - a) // 2
        acc = acc + e[a] * h[b]
    return acc


def _lifted_eigenvalues(ctx: ExtFieldCtx, f: FpPoly) -> list[Cyclotomic]:
    lam = []
    for h, e in factor(f).factors:
        for k in ctx.root_exponents(h):
            lam.extend([zeta(ctx.m, k)] * e)
    return lam


def _h_series(lam, upto, m):
    """h_0..h_upto of the list lam: expand prod 1/(1 - lam_i t)."""
    out = [Cyclotomic.one(m)] + [Cyclotomic.zero(m)] * upto
    for lv in lam:
        # multiply the truncated series by 1/(1 - lv t): prefix-sum recurrence
        for d in range(1, upto + 1):
            out[d] = out[d] + out[d - 1] * lv
    return out

def _e_series(lam, upto, m):
    out = [Cyclotomic.one(m)] + [Cyclotomic.zero(m)] * upto
    for lv in lam:
        for d in range(upto, 0, -1):
            out[d] = out[d] + out[d - 1] * lv
    return out


def brauer_pairing_coefficient(
    ctx: ExtFieldCtx, f: FpPoly, D: int, budget: int | None = None
) -> Cyclotomic:
    """(1/|G|) sum over semisimple classes of
    class size * pi[f](inverse class) * graded character:
    the inverse class of f is the class of the reciprocal polynomial."""
    from .ffpoly import reciprocal_basis_poly

    n = f.degree
    table = group_table(n, ctx.p, budget)
    recip = reciprocal_basis_poly(f)
    if recip not in table.class_sizes:
        raise DomainError(f"no semisimple class for {recip}")
    size = table.class_sizes[recip]
    gbc = graded_brauer_character(ctx, recip, D)
    return gbc * Cyclotomic.from_fraction(ctx.m, Fraction(size, table.order))
