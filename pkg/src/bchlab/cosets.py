"""q-cyclotomic cosets modulo n = (q^m - 1)/lambda and the closed-form leader results.

Every closed form here has a brute-force counterpart (``bruteforce_leader_scan``
or ``coset_of``) that the tests compare against.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EvenQ,
    MTooSmallForDelta3,
    OddM,
    OutOfRange,
    QTooSmall,
    SizeExceeded,
    UnsupportedParams,
    UnsupportedResidue,
)

ORACLE_CAP = 10**7


def bracket(a: int, n: int) -> int:
    """[a]_n: the smallest non-negative integer congruent to a modulo n."""
    return a % n


def q_digits(i: int, q: int, m: int) -> list[int]:
    """q-adic digits i_0..i_{m-1}."""
    out = []
    for _ in range(m):
        i, r = divmod(i, q)
        out.append(r)
    return out


def multiplicative_order(q: int, n: int) -> int:
    if n == 1:
        return 1
    if math.gcd(q, n) != 1:
        raise UnsupportedParams(f"q={q} is not invertible modulo {n}")
    k, x = 1, q % n
    while x != 1:
        x = (x * q) % n
        k += 1
    return k


@dataclass(frozen=True)
class CosetRecord:
    leader: int
    size: int
    members: tuple = field(default=(), repr=False)

    def to_json(self, with_members: bool = True) -> dict:
        d = {"leader": self.leader, "size": self.size}
        if with_members:
            d["members"] = list(self.members)
        return d


class CosetSpace:
    """Integers modulo n = (q^m - 1)/lambda acted on by multiplication by q."""

    def __init__(self, q: int, m: int, lam: int = 1):
        if q < 2 or m < 1 or lam < 1:
            raise UnsupportedParams("need q >= 2, m >= 1, lambda >= 1")
        if (q - 1) % lam:
            raise UnsupportedParams(f"lambda={lam} does not divide q-1={q - 1}")
        self.q, self.m, self.lam = q, m, lam
        self.n = (q**m - 1) // lam
        if multiplicative_order(q, self.n) != m:
            raise UnsupportedParams(f"ord_n(q) != m for n={self.n}")

    def _check(self, i):
        if not 0 <= i < self.n:
            raise OutOfRange(f"{i} not in [0, {self.n})")

    def orbit(self, i: int) -> list[int]:
        out = [i]
        j = (i * self.q) % self.n
        while j != i:
            out.append(j)
            j = (j * self.q) % self.n
        return out

    def __repr__(self):
        return f"CosetSpace(q={self.q}, m={self.m}, lambda={self.lam}, n={self.n})"


def coset_of(space: CosetSpace, i: int) -> CosetRecord:
    space._check(i)
    mem = sorted(space.orbit(i))
    return CosetRecord(mem[0], len(mem), tuple(mem))


def is_leader(space: CosetSpace, i: int) -> bool:
    """Orbit walk that stops at the first member smaller than i."""
    space._check(i)
    n, q = space.n, space.q
    j = (i * q) % n
    while j != i:
        if j < i:
            return False
        j = (j * q) % n
    return True


def coset_size(space: CosetSpace, i: int) -> int:
    space._check(i)
    return len(space.orbit(i))


# ---------------------------------------------------------------------------
# brute-force scan
# ---------------------------------------------------------------------------

@dataclass
class LeaderScan:
    """Result of a full orbit computation on [lo, hi)."""
    lo: int
    hi: int
    is_leader: np.ndarray
    size: np.ndarray

    def leaders(self) -> np.ndarray:
        return self.lo + np.flatnonzero(self.is_leader)

    def __getitem__(self, i):
        k = i - self.lo
        return bool(self.is_leader[k]), int(self.size[k])


def _scan_chunk(n, q, m, lo, hi):
    i = np.arange(lo, hi, dtype=np.int64)
    cur = i.copy()
    mn = i.copy()
    size = np.zeros(i.shape, dtype=np.int16)
    for j in range(1, m + 1):
        cur = (cur * q) % n
        np.minimum(mn, cur, out=mn)
        size[(size == 0) & (cur == i)] = j
    return mn == i, size


def bruteforce_leader_scan(space: CosetSpace, lo: int = 0, hi: int | None = None, *,
                           cap: int = ORACLE_CAP, threads: int = 1,
                           chunk: int = 1 << 18) -> LeaderScan:
    """Exhaustive orbits of every i in [lo, hi): leader flag and coset size.

    Orbits are walked for whole blocks of i at once (vectorised), and blocks
    may be handed to a thread pool; results are reassembled in index order.
    """
    hi = space.n if hi is None else hi
    if space.n > cap:
        raise SizeExceeded(f"n={space.n} exceeds the oracle cap {cap}")
    if not 0 <= lo <= hi <= space.n:
        raise OutOfRange("scan range outside [0, n]")
    bounds = [(a, min(a + chunk, hi)) for a in range(lo, hi, chunk)]
    work = lambda ab: _scan_chunk(space.n, space.q, space.m, *ab)  # noqa: E731
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(work, bounds))
    else:
        parts = [work(ab) for ab in bounds]
    if not parts:
        return LeaderScan(lo, hi, np.zeros(0, bool), np.zeros(0, np.int16))
    return LeaderScan(lo, hi, np.concatenate([p[0] for p in parts]),
                      np.concatenate([p[1] for p in parts]))


def leader_records(space: CosetSpace, *, with_members: bool = False, **kw) -> list[CosetRecord]:
    scan = bruteforce_leader_scan(space, **kw)
    out = []
    for i in scan.leaders():
        i = int(i)
        mem = tuple(sorted(space.orbit(i))) if with_members else ()
        out.append(CosetRecord(i, int(scan.size[i]), mem))
    return out


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def small_range_bound(space: CosetSpace) -> int:
    """Largest i in the range where every i not divisible by q leads a coset of size m.

    This is floor(n q^ceil(m/2) / (q^m - 1)) = floor(q^ceil(m/2) / lambda).
    """
    q, m = space.q, space.m
    return (space.n * q ** ((m + 1) // 2)) // (q**m - 1)


def _qm1_shape(q: int, m: int):
    """m - 1 = a(q-1) + b with a >= 1; returns (a, b)."""
    a, b = divmod(m - 1, q - 1)
    return a, b


def leader_digit_conditions(space: CosetSpace, i: int) -> bool:
    """Necessary digit conditions for i to be a coset leader.

    Always: i_{m-1} <= (q-1)/lambda - 1 and i_l >= i_{m-1} for l < m-1.
    For lambda = q-1, q > 3, m >= q additionally: if the eps digits just below
    the top are all q-1, the lower digits are nonzero and non-decreasing.
    """
    if not 1 <= i <= space.n - 1:
        raise OutOfRange(f"{i} not in [1, n-1]")
    q, m, lam = space.q, space.m, space.lam
    d = q_digits(i, q, m)
    top = d[m - 1]
    if top > (q - 1) // lam - 1:
        return False
    if any(d[l] < top for l in range(m - 1)):
        return False
    if lam == q - 1 and q > 3 and m >= q:
        a, b = _qm1_shape(q, m)
        eps = a + 1 if b == q - 2 else a
        if all(d[l] == q - 1 for l in range(m - 1 - eps, m - 1)):
            if not all(1 <= d[l - 1] <= d[l] for l in range(1, m - 1)):
                return False
    return True


@dataclass
class NonLeaderSets:
    """Delta_0, Delta_1, Delta_2 (non-leaders) and Delta (size-h indices) for m = 2h."""
    h: int
    delta0: set
    delta1: set
    delta2: set
    delta: set

    @property
    def nonleaders(self) -> set:
        return self.delta0 | self.delta1 | self.delta2


def f_abc(space: CosetSpace, a: int, b: int, c: int) -> int:
    """a q^h + b (q^h - 1)/lambda + c."""
    qh = space.q ** (space.m // 2)
    return a * qh + b * (qh - 1) // space.lam + c


def nonleader_sets_even_m(space: CosetSpace) -> NonLeaderSets:
    q, m, lam = space.q, space.m, space.lam
    if m % 2 or m < 4:
        raise OddM("needs m = 2h >= 4")
    h = m // 2
    qh = q**h
    r = (q - 1) // lam  # (q-1)/lambda
    f = lambda a, b, c: f_abc(space, a, b, c)  # noqa: E731
    d0 = {f(a, 0, c) for a in range(1, r + 1) for c in range(1, a)}
    d1 = {f(a, b, c) for a in range(1, r) for c in range(1, a + 1) for b in range(1, lam)}
    d2 = {f(a, b, a + 1) for a in range(0, r) for b in range(lam // 2 + 1, lam)}
    if lam % 2:
        delta = {c * (qh + 1) for c in range(1, r + 1)}
    else:
        delta = {c * (qh + 1) // 2 for c in range(1, 2 * r + 1)}
    return NonLeaderSets(h, d0, d1, d2, delta)


def nonleader_range_top(space: CosetSpace) -> int:
    """Upper end (q^{h+1} - 1)/lambda of the range covered by the non-leader sets."""
    return (space.q ** (space.m // 2 + 1) - 1) // space.lam


def smallest_nonleader_even_m(space: CosetSpace) -> int:
    """Smallest i, not divisible by q, that is not a coset leader (m = 2h >= 4)."""
    q, m, lam = space.q, space.m, space.lam
    if m % 2 or m < 4:
        raise OddM("needs m = 2h >= 4")
    qh = q ** (m // 2)
    if lam == 1:
        if q < 3:
            raise UnsupportedParams("q = 2 with lambda = 1 has no such formula here")
        return 2 * qh + 1
    if lam == 2:
        return (3 * qh + 1) // 2
    if lam % 2:
        return ((lam + 1) * qh + lam - 1) // (2 * lam)
    return ((lam + 2) * qh + lam - 2) // (2 * lam)


def smallest_nonleader_scan(space: CosetSpace) -> int | None:
    """Oracle: the first i not divisible by q that is not a leader."""
    for i in range(1, space.n):
        if i % space.q and not is_leader(space, i):
            return i
    return None


@dataclass(frozen=True)
class LargestLeaders:
    deltas: tuple
    sizes: tuple


def largest_leaders_half(q: int, m: int, count: int = 2) -> LargestLeaders:
    """delta_1, delta_2 (and delta_3 when count = 3) modulo (q^m - 1)/2, with coset sizes."""
    if q % 2 == 0:
        raise EvenQ("needs odd q")
    if count >= 3 and m < 6:
        raise MTooSmallForDelta3("delta_3 is only established for m >= 6")
    Q = q**m
    d1 = (Q - 1 - q ** (m - 1) - q ** ((m - 1) // 2)) // 2
    d2 = (Q - 1 - q ** (m - 1) - q ** ((m + 1) // 2)) // 2
    deltas = [d1, d2]
    sizes = [m if m % 2 else m // 2, m]
    if count >= 3:
        deltas.append((Q - 1 - q ** (m - 1) - q ** ((m + 3) // 2)) // 2)
        sizes.append(m)
    return LargestLeaders(tuple(deltas[:count]), tuple(sizes[:count]))


def largest_leader_qm1(q: int, m: int) -> tuple[int, int, str]:
    """Largest leader modulo (q^m - 1)/(q - 1) for m - 1 = a(q-1) + b, b in {0, 1, q-2}.

    Returns (delta, coset size, case label).
    """
    if q <= 3:
        raise QTooSmall("needs q > 3")
    if m < q:
        raise UnsupportedParams("needs m >= q")
    a, b = _qm1_shape(q, m)
    Q = q**m
    if b == 0:
        s = sum(q ** (a * l) for l in range(1, q - 1))
        return (Q - 1 - q ** (m - 1) - s) // (q - 1), m, "i"
    if b == 1:
        A = (q - 1) // 2
        s = sum(q ** (a * l) for l in range(1, A + 1)) + sum(q ** (a * l + 1) for l in range(A + 1, q - 1))
        size = m // 2 if q % 2 else m
        return (Q - 1 - q ** (m - 1) - s) // (q - 1), size, "ii"
    if b == q - 2:
        s = sum(q ** ((a + 1) * l - 1) for l in range(1, q - 1))
        return (Q - 1 - q ** (m - 1) - s) // (q - 1), a + 1, "iii"
    raise UnsupportedResidue(f"m - 1 = {a}(q-1) + {b}: residue {b} not in {{0, 1, q-2}}")


def top_leaders(scan: LeaderScan, k: int) -> list[int]:
    """The k largest leaders found by a scan (oracle for the closed forms)."""
    ls = scan.leaders()
    return [int(x) for x in ls[::-1][:k]]


def space_to_json(space: CosetSpace, records: list[CosetRecord], with_members: bool = False) -> dict:
    return {"n": space.n, "q": space.q, "m": space.m, "lambda": space.lam,
            "leaders": [r.to_json(with_members) for r in records]}
