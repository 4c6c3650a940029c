"""Narrow-sense BCH codes of length n = (q^m - 1)/lambda.

Construction goes through defining sets (unions of cyclotomic cosets); the
closed-form dimensions for odd and even m are separate functions that the
tests compare with the coset-union count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import ceil

import numpy as np

from .cosets import CosetSpace, q_digits
from .distribution import WeightDistribution
from .errors import BadDelta, LambdaOne, OddM, OutOfProvenRange, SizeExceeded, UnsupportedParams
from .field import field_for_q
from .poly import Poly, minimal_polynomial, parity_check, product

ENUM_CAP = 10**7
COSET_CAP = 10**7


@dataclass(frozen=True)
class BchDescriptor:
    q: int
    m: int
    lam: int
    delta: int
    b: int = 1
    hat: bool = False

    @property
    def n(self) -> int:
        return (self.q**self.m - 1) // self.lam

    def validate(self):
        if (self.q - 1) % self.lam:
            raise UnsupportedParams(f"lambda={self.lam} does not divide q-1")
        if not 2 <= self.delta <= self.n:
            raise BadDelta(f"delta={self.delta} not in [2, n={self.n}]")
        if self.hat and self.b != 1:
            raise BadDelta("the even-like subcode is only defined for b = 1")


def defining_set(desc: BchDescriptor) -> np.ndarray:
    """Sorted union of C_{b+j}, j = 0..delta-2 (with C_0 when hat)."""
    desc.validate()
    n = desc.n
    if n > COSET_CAP:
        raise SizeExceeded(f"n={n} exceeds the coset cap")
    space = CosetSpace(desc.q, desc.m, desc.lam)
    covered = np.zeros(n, dtype=bool)
    if desc.hat:
        covered[0] = True
    for j in range(desc.delta - 1):
        i = (desc.b + j) % n
        if not covered[i]:
            covered[space.orbit(i)] = True
    return np.flatnonzero(covered)


@dataclass
class BchCode:
    descriptor: BchDescriptor
    defining_set: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.descriptor.n

    @property
    def dimension(self) -> int:
        return self.n - len(self.defining_set)

    @cached_property
    def ctx(self):
        d = self.descriptor
        return field_for_q(d.q, d.m)

    @cached_property
    def generator(self) -> Poly:
        """prod of minimal polynomials of theta^l over the coset leaders l in the defining set."""
        n, q = self.n, self.descriptor.q
        seen = set()
        factors = []
        ds = set(int(x) for x in self.defining_set)
        for z in sorted(ds):
            if z in seen:
                continue
            space_orbit = []
            j = z
            while True:
                space_orbit.append(j)
                j = (j * q) % n
                if j == z:
                    break
            seen.update(space_orbit)
            factors.append(minimal_polynomial(self.ctx, n, z))
        if not factors:
            return Poly.one(self.ctx.Fq)
        g = product(factors)
        if g.degree != len(self.defining_set):
            raise AssertionError("generator degree disagrees with the defining set")
        return g

    @cached_property
    def parity_check(self) -> Poly:
        return parity_check(self.ctx, self.n, self.generator)

    def generator_matrix(self) -> np.ndarray:
        """k x n matrix whose rows are x^i g(x)."""
        g = self.generator.c
        k = self.dimension
        G = np.zeros((k, self.n), dtype=np.int64)
        for i in range(k):
            G[i, i:i + g.size] = g
        return G

    def to_json(self, d_bruteforce: int | None = None) -> dict:
        d = self.descriptor
        out = {"q": d.q, "m": d.m, "lambda": d.lam, "delta": d.delta, "b": d.b,
               "hat": d.hat, "n": self.n, "k": self.dimension,
               "generator": self.generator.to_list(),
               "defining_set_size": int(len(self.defining_set))}
        if d_bruteforce is not None:
            out["d_bruteforce"] = d_bruteforce
        return out


def build_bch(desc: BchDescriptor) -> BchCode:
    return BchCode(desc, defining_set(desc))


def dims_bruteforce(q: int, m: int, lam: int, delta_max: int) -> dict[int, int]:
    """dim C_(q,m,lambda,delta) for every delta in [2, delta_max] by coset union."""
    space = CosetSpace(q, m, lam)
    n = space.n
    if n > COSET_CAP:
        raise SizeExceeded(f"n={n} exceeds the coset cap")
    covered = np.zeros(n, dtype=bool)
    count = 0
    out = {}
    for delta in range(2, delta_max + 1):
        i = delta - 1
        if i < n and not covered[i]:
            orb = space.orbit(i)
            covered[orb] = True
            count += len(orb)
        out[delta] = n - count
    return out


# ---------------------------------------------------------------------------
# closed-form dimensions
# ---------------------------------------------------------------------------

def _delta_bar(q: int, delta: int) -> int:
    return -((-(delta - 1) * (q - 1)) // q)


def odd_range_max(q: int, m: int, lam: int) -> int:
    """Largest delta covered by the odd-m formula."""
    return (q ** ((m + 1) // 2) - 1) // lam + 1


def even_range_max(q: int, m: int, lam: int) -> int:
    """Largest delta covered by the even-m formula."""
    return (q ** (m // 2 + 1) - 1) // lam + 1


def dim_closed_odd(q: int, m: int, lam: int, delta: int) -> int:
    """n - m * ceil((delta-1)(q-1)/q) for odd m >= 3 and 1 <= delta-1 <= (q^((m+1)/2)-1)/lambda."""
    if m < 3 or m % 2 == 0:
        raise OutOfProvenRange("needs odd m >= 3")
    if (q - 1) % lam:
        raise UnsupportedParams("lambda must divide q-1")
    if not 2 <= delta <= odd_range_max(q, m, lam):
        raise OutOfProvenRange(f"delta={delta} outside the proven range")
    n = (q**m - 1) // lam
    return n - m * _delta_bar(q, delta)


def dim_closed_even(q: int, m: int, lam: int, delta: int, trace: list | None = None) -> int:
    """Closed-form dimension for m = 2h >= 4, lambda >= 2, 1 <= delta-1 <= (q^(h+1)-1)/lambda.

    If ``trace`` is a list, the label of the branch taken is appended to it.
    """
    if m < 4 or m % 2:
        raise OddM("needs m = 2h >= 4")
    if (q - 1) % lam:
        raise UnsupportedParams("lambda must divide q-1")
    if lam == 1:
        raise LambdaOne("the even-m formula is stated for lambda >= 2")
    if not 2 <= delta <= even_range_max(q, m, lam):
        raise OutOfProvenRange(f"delta={delta} outside the proven range")
    h = m // 2
    qh = q**h
    n = (q**m - 1) // lam
    dig = q_digits(delta - 1, q, h + 1)
    d0, dh = dig[0], dig[h]
    base = n - m * _delta_bar(q, delta)
    F = Fraction
    r = F(q - 1, lam)

    def done(val, label):
        if trace is not None:
            trace.append(label)
        if val.denominator != 1:
            raise ArithmeticError(f"non-integral dimension in branch {label}")
        return int(val)

    if delta <= qh + 1:
        eps = ((delta - 2) * lam) // (qh - 1)
        if eps < lam // 2:
            return done(F(base), "(i)/ε<⌊λ/2⌋")
        if eps < lam:
            return done(base + m * (eps - F(lam - 1, 2)), "(i)/⌊λ/2⌋≤ε<λ")
        return done(base + m * F(lam - 1, 2), "(i)/ε=λ")

    sq = F(lam * dh * dh, 2)
    if dh < r:
        th = ((delta - 2 - dh * qh) * lam) // (qh - 1)
        lo = dh * qh + F(th * (qh - 1), lam) + 1
        hi = lo + dh
        if delta <= dh * qh + dh:
            return done(base + m * F(lam * dh * dh + 2 * (d0 - dh) + 1, 2), "(ii)/a")
        if delta <= dh * qh + F(qh - 1, lam) + 1:
            return done(base + m * sq, "(ii)/b")
        mid = m * ((th - 1) * dh + d0 - th * r)
        if lo < delta <= hi and 1 <= th and F(th) <= F(lam, 2):
            return done(base + m * sq + mid, "(ii)/c")
        if lo < delta <= hi and F(th) > F(lam, 2):
            return done(base + m * sq + mid + m * (th - F(lam + 1, 2)), "(ii)/d")
        if delta > hi and 1 <= th and F(th) < F(lam, 2):
            return done(base + m * sq + m * th * dh, "(ii)/e")
        if delta > hi and F(th) >= F(lam, 2):
            return done(base + m * sq + m * th * dh + m * (th - F(lam - 1, 2)), "(ii)/f")
        raise AssertionError(f"no branch of case (ii) applies to delta={delta}")
    if dh == r:
        if delta <= dh * qh + dh:
            return done(base + m * F(lam * dh * dh + 2 * (d0 - dh) + 1, 2), "(iii)/a")
        return done(base + m * sq, "(iii)/b")
    raise OutOfProvenRange("top digit exceeds (q-1)/lambda")


def dim_closed(q: int, m: int, lam: int, delta: int, trace: list | None = None) -> int:
    if m % 2:
        return dim_closed_odd(q, m, lam, delta)
    return dim_closed_even(q, m, lam, delta, trace)


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

def bch_bound_check(code: BchCode, d_actual: int) -> bool:
    return d_actual >= code.descriptor.delta


def griesmer_sum(k: int, d: int, q: int) -> int:
    return sum(ceil(Fraction(d, q**i)) for i in range(k))


def griesmer_check(n: int, k: int, d: int, q: int) -> str:
    if k < 1:
        raise ValueError("k must be >= 1")
    g = griesmer_sum(k, d, q)
    if n == g:
        return "meets"
    return "satisfies" if n > g else "violates"


# ---------------------------------------------------------------------------
# exhaustive enumeration from a generator matrix
# ---------------------------------------------------------------------------

def _span(F, rows: np.ndarray) -> np.ndarray:
    """All GF(q)-combinations of the rows, as label vectors."""
    S = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for r in rows:
        S = np.concatenate([F.add_tab[S, F.mul_tab[c, r][None, :]] for c in range(F.q)])
    return S


def weight_distribution_from_matrix(F, G: np.ndarray, *, cap: int = ENUM_CAP,
                                    threads: int = 1, block: int = 1 << 21) -> WeightDistribution:
    """Weights of all q^k combinations of the rows of G (labels over GF(q))."""
    k, n = G.shape
    q = F.q
    if q**k > cap:
        raise SizeExceeded(f"q^k = {q}^{k} exceeds the enumeration cap {cap}")
    k2 = 0
    while k2 < k and q ** (k2 + 1) * n <= block:
        k2 += 1
    k2 = max(k2, min(k, 1))
    inner = _span(F, G[k - k2:]) if k2 else np.zeros((1, n), dtype=np.int64)
    outer_rows = G[: k - k2]
    n_outer = q ** (k - k2)

    def work(rng):
        counts = np.zeros(n + 1, dtype=np.int64)
        for idx in range(*rng):
            v = np.zeros(n, dtype=np.int64)
            t = idx
            for r in outer_rows:
                t, c = divmod(t, q)
                if c:
                    v = F.add_tab[v, F.mul_tab[c, r]]
            words = F.add_tab[v[None, :], inner]
            counts += np.bincount((words != 0).sum(axis=1), minlength=n + 1)
        return counts

    parts = max(1, min(threads, n_outer))
    step = -(-n_outer // parts)
    ranges = [(a, min(a + step, n_outer)) for a in range(0, n_outer, step)]
    if parts > 1:
        with ThreadPoolExecutor(parts) as ex:
            results = list(ex.map(work, ranges))
    else:
        results = [work(r) for r in ranges]
    total = sum(results)
    return WeightDistribution.from_counts(total, length=n, k=k, q=q)


def weight_distribution_bch(code: BchCode, **kw) -> WeightDistribution:
    return weight_distribution_from_matrix(code.ctx.Fq, code.generator_matrix(), **kw)


def min_distance_bruteforce(code: BchCode, **kw) -> int:
    return weight_distribution_bch(code, **kw).min_distance()
