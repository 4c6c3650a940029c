"""Exponential sums of the quadratic forms behind the second-largest-leader codes.

For a pair (a, b) the form is
    odd m:  Q(x) = Tr_q^{q^m}(a x^(q^((m-1)/2)+1) + b x^(q^((m-3)/2)+1)),   a, b in GF(q^m)
    even m: Q(x) = Tr_q^{q^h}(a x^(q^h+1)) + Tr_q^{q^m}(b x^(q^(h-1)+1)),  a in GF(q^h), b in GF(q^m)
and T(a, b) = sum_{x in GF(q^m)} zeta_p^(Tr_p^q(Q(x))), held exactly as a CycInt.
Values of Q at x = alpha^l are the coordinates of the length q^m - 1 trace family
with the same exponents, so one table pass yields every T at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..cycint import CycInt
from ..errors import EvenQ, SizeExceeded, UnsupportedParams
from ..field import ZERO, FieldCtx, field_for_q, sqrt_signed_q
from .families import TraceFamily, build_family

PAIR_WORK_CAP = 2 * 10**9


@dataclass(frozen=True)
class QuadFormSpec:
    q: int
    m: int

    def __post_init__(self):
        if self.q % 2 == 0:
            raise EvenQ("the quadratic forms need odd q")
        if self.m < 2:
            raise UnsupportedParams("m must be at least 2")

    @property
    def odd(self) -> bool:
        return self.m % 2 == 1

    def family(self, ctx: FieldCtx | None = None) -> TraceFamily:
        """Q_{a,b}(alpha^l) for l < q^m - 1, messages (a, b)."""
        ctx = ctx or field_for_q(self.q, self.m)
        short = build_family("V3", self.q, self.m, ctx=ctx)
        return TraceFamily("Q", ctx, short.components, ctx.N)


def eta_power_sum(q: int, r: int) -> int:
    """sum_{y in GF(q)*} eta(y^r): q - 1 for even r, 0 for odd r."""
    F = field_for_q(q, 1).Fq
    return sum(F.quadratic_character(y) ** r for y in range(1, q))


def batch_rank(F, M: np.ndarray) -> np.ndarray:
    """Ranks of a stack of matrices over GF(q) (labels), by simultaneous elimination."""
    M = np.array(M, dtype=np.int64, copy=True)
    P, R, C = M.shape
    rank = np.zeros(P, dtype=np.int64)
    rows = np.arange(R)
    for col in range(C):
        cand = (M[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        idx = np.flatnonzero(has)
        pr = np.argmax(cand[idx], axis=1)
        rk = rank[idx]
        tmp = M[idx, pr].copy()
        M[idx, pr] = M[idx, rk]
        M[idx, rk] = tmp
        inv = F.inv_tab[M[idx, rk, col]]
        M[idx, rk] = F.mul_tab[inv[:, None], M[idx, rk]]
        piv = M[idx, rk]
        fac = M[idx, :, col].copy()
        fac[np.arange(idx.size), rk] = 0
        M[idx] = F.sub_tab[M[idx], F.mul_tab[fac[:, :, None], piv[:, None, :]]]
        rank[idx] += 1
    return rank


class PairScan:
    """Every (a, b): T as count vectors, the rank of Q, and the length-n weight of the codeword.

    Pair index is u_a * size_b + u_b with u the message index of the family
    (0 for zero, 1 + t for alpha^(t*step)).
    """

    def __init__(self, spec: QuadFormSpec, ctx: FieldCtx | None = None, *, work_cap: int = PAIR_WORK_CAP):
        self.spec = spec
        self.ctx = ctx or field_for_q(spec.q, spec.m)
        self.fam = spec.family(self.ctx)
        self.size_a, self.size_b = self.fam.message_sizes()
        self.P = self.size_a * self.size_b
        if self.P * self.ctx.N > work_cap:
            raise SizeExceeded(f"{self.P} pairs x {self.ctx.N} points exceed the work budget")
        self._scan()

    def _scan(self):
        ctx, F, p = self.ctx, self.ctx.Fq, self.ctx.p
        Ta, Tb = self.fam.table(0), self.fam.table(1)
        n = ctx.N // 2
        counts = np.zeros((self.P, p), dtype=np.int64)
        zeros_n = np.zeros(self.P, dtype=np.int64)
        for ua in range(self.size_a):
            words = F.add_tab[Ta[ua][None, :], Tb]
            tp = F.trace_p_tab[words]
            blk = slice(ua * self.size_b, (ua + 1) * self.size_b)
            for t in range(p):
                counts[blk, t] = (tp == t).sum(axis=1)
            zeros_n[blk] = (words[:, :n] == 0).sum(axis=1)
        counts[:, 0] += 1  # x = 0
        self.counts = counts
        self.weights_n = n - zeros_n

    def pair(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.size_b)

    def T(self, idx: int) -> CycInt:
        return CycInt.from_counts(self.ctx.p, self.counts[idx])

    @cached_property
    def ranks(self) -> np.ndarray:
        """Rank of each Q_{a,b} from its polar matrix on the basis 1, alpha, ..., alpha^(m-1)."""
        ctx, F, m = self.ctx, self.ctx.Fq, self.spec.m
        Ta, Tb = self.fam.table(0), self.fam.table(1)

        def qcol(x):  # Q at log-form x for all pairs, shape (size_a, size_b)
            return F.add_tab[Ta[:, x][:, None], Tb[:, x][None, :]]

        single = [qcol(i) for i in range(m)]
        B = np.zeros((self.size_a, self.size_b, m, m), dtype=np.int64)
        for i in range(m):
            for j in range(i, m):
                x = ctx.add(i, j)
                v = F.sub_tab[F.sub_tab[qcol(x), single[i]], single[j]]
                B[:, :, i, j] = v
                B[:, :, j, i] = v
        return batch_rank(F, B.reshape(self.P, m, m))

    def value_distribution(self) -> "ValueDistribution":
        keys = np.concatenate([self.ranks[:, None], self.counts], axis=1)
        uniq, mult = np.unique(keys, axis=0, return_counts=True)
        rows = [(int(k[0]), CycInt.from_counts(self.ctx.p, k[1:]), int(c)) for k, c in zip(uniq, mult)]
        return ValueDistribution(rows)

    def scaled_index(self, y_label: int) -> np.ndarray:
        """Pair index of (y a, y b) for every pair, y a nonzero GF(q) label."""
        ly = self.ctx.embed(y_label)
        maps = []
        for j, size in enumerate((self.size_a, self.size_b)):
            step = self.ctx.N // (size - 1)
            u = np.arange(size)
            mp = np.where(u == 0, 0, (((u - 1) * step + ly) % self.ctx.N) // step + 1)
            maps.append(mp)
        ua, ub = np.divmod(np.arange(self.P), self.size_b)
        return maps[0][ua] * self.size_b + maps[1][ub]

    def S_counts(self) -> np.ndarray:
        """Count vectors of S(a, b) = sum_{y in GF(q)*} T(ya, yb)."""
        acc = np.zeros_like(self.counts)
        for y in range(1, self.spec.q):
            acc += self.counts[self.scaled_index(y)]
        return acc


class ValueDistribution:
    """Multiset of (rank, value, multiplicity); equal (rank, value) rows are merged."""

    def __init__(self, rows):
        acc: dict = {}
        for r, v, c in rows:
            if c:
                acc[(r, v)] = acc.get((r, v), 0) + c
        self.rows = sorted(((r, v, c) for (r, v), c in acc.items()),
                           key=lambda t: (t[0], t[1].complex().real, t[1].complex().imag))

    def total(self) -> int:
        return sum(c for _, _, c in self.rows)

    def ranks(self) -> set[int]:
        return {r for r, _, _ in self.rows}

    def moment(self, k: int) -> CycInt:
        p = self.rows[0][1].p
        acc = CycInt.zero(p)
        for _, v, c in self.rows:
            acc = acc + (v**k) * c
        return acc

    def multiplicity(self, value: CycInt) -> int:
        return sum(c for _, v, c in self.rows if v == value)

    def __eq__(self, other):
        if not isinstance(other, ValueDistribution):
            return NotImplemented
        return {(r, v): c for r, v, c in self.rows} == {(r, v): c for r, v, c in other.rows}

    def __repr__(self):
        body = ", ".join(f"r={r}: {v.complex():.4g} x{c}" for r, v, c in self.rows)
        return f"ValueDistribution({body})"

    def to_json(self) -> list:
        return [{"rank": r, "value": v.to_json(), "approx": [round(v.complex().real, 6), round(v.complex().imag, 6)],
                 "multiplicity": str(c)} for r, v, c in self.rows]


def T_distribution(spec: QuadFormSpec, ctx: FieldCtx | None = None) -> ValueDistribution:
    return PairScan(spec, ctx).value_distribution()


def rank_magnitude_check(scan: PairScan) -> bool:
    """|T(a, b)|^2 = q^(2m - r) for every pair, r the rank from linear algebra."""
    q, m, p = scan.spec.q, scan.spec.m, scan.ctx.p
    keys = np.concatenate([scan.ranks[:, None], scan.counts], axis=1)
    for k in np.unique(keys, axis=0):
        T = CycInt.from_counts(p, k[1:])
        if T * T.conj() != q ** (2 * m - int(k[0])):
            return False
    return True


def rank_by_linearized_roots(ctx: FieldCtx, a: int, b: int) -> int:
    """Odd m: rank of Q_{a,b} as m - log_q #roots of the linearised polynomial
    g(x) = b^(q^((m+3)/2)) x^(q^((m+3)/2)) + a^(q^((m+1)/2)) x^(q^((m+1)/2)) + a x^(q^((m-1)/2)) + b x^(q^((m-3)/2)).
    a, b in log form.
    """
    q, m, N = ctx.q, ctx.m, ctx.N
    if m % 2 == 0:
        raise UnsupportedParams("the linearised root count is written for odd m")
    xs = np.arange(N, dtype=np.int64)
    acc = np.full(N, ZERO, dtype=np.int64)
    for coef, e in ((ctx.power(b, q ** ((m + 3) // 2)), (m + 3) // 2),
                    (ctx.power(a, q ** ((m + 1) // 2)), (m + 1) // 2),
                    (a, (m - 1) // 2), (b, (m - 3) // 2)):
        if coef == ZERO:
            continue
        term = (coef + xs * pow(q, e, N)) % N
        acc = ctx.add_vec(acc, term)
    roots = 1 + int((acc == ZERO).sum())
    r, k = m, 1
    while k < roots:
        k *= q
        r -= 1
    if k != roots:
        raise ArithmeticError(f"{roots} roots is not a power of q")
    return r


def T_moment_check(scan: PairScan) -> dict:
    """Exact power moments of T and the second moment of S, next to their closed forms (odd m)."""
    q, m, p = scan.spec.q, scan.spec.m, scan.ctx.p
    dist = scan.value_distribution()
    got = {f"sum_T^{k}": dist.moment(k) for k in (1, 2, 3)}
    s_keys, s_mult = np.unique(scan.S_counts(), axis=0, return_counts=True)
    S2 = CycInt.zero(p)
    for k, c in zip(s_keys, s_mult):
        v = CycInt.from_counts(p, k)
        S2 = S2 + v * v * int(c)
    got["sum_S^2"] = S2
    out = {"computed": {k: v.to_int() if v.is_integer() else v.complex() for k, v in got.items()}}
    if scan.spec.odd:
        want = {
            "sum_T^1": q ** (2 * m),
            "sum_T^2": q ** (2 * m) if q % 4 == 3 else (2 * q**m - 1) * q ** (2 * m),
            "sum_T^3": (q**m + q ** (m - 1) - 1) * q ** (2 * m + 1),
            "sum_S^2": (q - 1) ** 2 * q ** (3 * m),
        }
        out["closed"] = want
        out["ok"] = all(got[k] == want[k] for k in want)
    return out


def eta_twist_check(scan: PairScan, idx: int, y_label: int) -> bool:
    """sum_x zeta^(Tr(y Q(x))) == eta(y)^r T(a, b) for a nonzero y in GF(q)."""
    ctx, F = scan.ctx, scan.ctx.Fq
    ua, ub = scan.pair(idx)
    words = F.add_tab[scan.fam.table(0)[ua], scan.fam.table(1)[ub]]
    tp = F.trace_p_tab[F.mul_tab[y_label, words]]
    counts = np.bincount(tp, minlength=ctx.p)
    counts[0] += 1
    lhs = CycInt.from_counts(ctx.p, counts)
    r = int(scan.ranks[idx])
    return lhs == scan.T(idx) * (F.quadratic_character(y_label) ** r)


def weight_formula_check(scan: PairScan) -> tuple[int, int]:
    """Compare each (a, b) != 0 codeword weight of length (q^m-1)/2 with
    w = (q-1) q^(m-1)/2 - T(a, b)/(2q) * sum_{y != 0} eta(y^r).
    Returns (number checked, number of mismatches).
    """
    q, m, p = scan.spec.q, scan.spec.m, scan.ctx.p
    sums = {r: eta_power_sum(q, r) for r in range(m + 1)}
    keys = np.concatenate([scan.ranks[:, None], scan.counts, scan.weights_n[:, None]], axis=1)
    uniq, mult = np.unique(keys[1:], axis=0, return_counts=True)  # skip (0, 0)
    bad = 0
    for k, c in zip(uniq, mult):
        T = CycInt.from_counts(p, k[1:-1])
        rhs = CycInt.from_int(p, (q - 1) * q**m) - T * sums[int(k[0])]
        if rhs != CycInt.from_int(p, 2 * q * int(k[-1])):
            bad += int(c)
    return scan.P - 1, bad


def T_values_odd_m(q: int, m: int) -> ValueDistribution:
    """Closed value distribution of T(a, b) for odd m."""
    if m % 2 == 0:
        raise UnsupportedParams("odd m only")
    p = field_for_q(q, 1).p
    s = field_for_q(q, 1).s
    G = sqrt_signed_q(p, s)
    Qm = q**m - 1
    rows = [
        (m, G * q ** ((m - 1) // 2), Qm * (q ** (m + 2) - q ** (m + 1) - q**m + q**2) // (2 * (q * q - 1))),
        (m, G * (-q ** ((m - 1) // 2)), Qm * (q ** (m + 2) - q ** (m + 1) - q**m + q**2) // (2 * (q * q - 1))),
        (m - 1, CycInt.from_int(p, q ** ((m + 1) // 2)), Qm * (q ** (m - 1) + q ** ((m - 1) // 2)) // 2),
        (m - 1, CycInt.from_int(p, -q ** ((m + 1) // 2)), Qm * (q ** (m - 1) - q ** ((m - 1) // 2)) // 2),
        (m - 2, G * q ** ((m + 1) // 2), Qm * (q ** (m - 1) - 1) // (2 * (q * q - 1))),
        (m - 2, G * (-q ** ((m + 1) // 2)), Qm * (q ** (m - 1) - 1) // (2 * (q * q - 1))),
        (0, CycInt.from_int(p, q**m), 1),
    ]
    return ValueDistribution(rows)


def T_values_even_m(q: int, m: int) -> ValueDistribution:
    """Closed value distribution of T(a, b) for even m (a in GF(q^h), b in GF(q^m))."""
    if m % 2:
        raise UnsupportedParams("even m only")
    F = field_for_q(q, 1)
    G = sqrt_signed_q(F.p, F.s)
    p = F.p
    h = m // 2
    Qm = q**m - 1
    rows = [
        (m, CycInt.from_int(p, q**h), Qm * (q ** (h + 1) + q) // (2 * (q + 1))),
        (m, CycInt.from_int(p, -q**h), (q**h - 1) * (q ** (m + 1) - 2 * q**m + q) // (2 * (q - 1))),
        (m - 1, G * q**h, Qm * q ** (h - 1) // 2),
        (m - 1, G * (-q**h), Qm * q ** (h - 1) // 2),
        (m - 2, CycInt.from_int(p, -q ** (h + 1)), Qm * (q ** (h - 1) - 1) // (q * q - 1)),
        (0, CycInt.from_int(p, q**m), 1),
    ]
    return ValueDistribution(rows)


def closed_T_distribution(q: int, m: int) -> ValueDistribution:
    return T_values_odd_m(q, m) if m % 2 else T_values_even_m(q, m)


def side_conditions_odd(scan: PairScan) -> dict:
    """Odd m: no nonzero pair of rank m - 3, and #(T = q^((m+1)/2)) - #(T = -q^((m+1)/2)) = (q^m - 1) q^((m-1)/2)."""
    q, m, p = scan.spec.q, scan.spec.m, scan.ctx.p
    dist = scan.value_distribution()
    big = q ** ((m + 1) // 2)
    diff = dist.multiplicity(CycInt.from_int(p, big)) - dist.multiplicity(CycInt.from_int(p, -big))
    low = int((scan.ranks[1:] == m - 3).sum())  # pair 0 is (0, 0)
    return {
        "rank_m_minus_3": low,
        "difference": diff,
        "expected_difference": (q**m - 1) * q ** ((m - 1) // 2),
        "ok": diff == (q**m - 1) * q ** ((m - 1) // 2) and low == 0,
    }


def quadratic_form_rank(q: int, m: int, a: int, b: int, ctx: FieldCtx | None = None) -> int:
    """Rank of Q_{a,b} (a, b in log form; a in GF(q^h) for even m): m minus the radical dimension.

    The radical of the polar form is the kernel of x -> g_{a,b}(x), so the rank
    of the polar matrix on a GF(q)-basis is the rank asked for.
    """
    spec = QuadFormSpec(q, m)
    ctx = ctx or field_for_q(q, m)
    fam = spec.family(ctx)
    F = ctx.Fq
    ua, ub = fam.message_index(0, a), fam.message_index(1, b)
    word = F.add_tab[fam.table(0)[ua], fam.table(1)[ub]]
    B = np.zeros((1, m, m), dtype=np.int64)
    for i in range(m):
        for j in range(i, m):
            v = F.sub_tab[F.sub_tab[word[ctx.add(i, j)], word[i]], word[j]]
            B[0, i, j] = B[0, j, i] = v
    return int(batch_rank(F, B)[0])
