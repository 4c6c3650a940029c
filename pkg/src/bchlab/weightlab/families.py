"""Trace-representation codeword families and their exhaustive weight enumeration.

A family is a list of components (d, e): a message a in GF(q^d) contributes
Tr_q^{q^d}(a * alpha^(e*l)) to coordinate l.  A constant term c in GF(q) is
the component (1, 0).  Any cyclic code of length n | q^m - 1 has this shape
(one component per nonzero), which is what ``delsarte_family`` builds from a
BCH code; the named kinds use the simplified exponents of the weight
derivations, and ``equivalence_witness`` ties the two together.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd

import numpy as np

from ..bch import BchDescriptor, build_bch
from ..cosets import CosetSpace, largest_leader_qm1, largest_leaders_half
from ..distribution import WeightDistribution
from ..errors import KindParityMismatch, SizeExceeded, UnsupportedParams
from ..field import ZERO, FieldCtx, field_for_q
from ..poly import Poly

KINDS = ("V1", "V2", "V3", "V4", "V5", "D1", "HAT_D1", "QM1_ONEWEIGHT")
ENUM_CAP = 10**7
WORK_CAP = 4 * 10**9


@dataclass(frozen=True)
class Component:
    d: int   # message lives in GF(q^d)
    e: int   # coordinate l uses alpha^(e*l)


class TraceFamily:
    """Codewords (sum_j Tr_q^{q^{d_j}}(a_j alpha^{e_j l}))_{l < length}."""

    def __init__(self, kind: str, ctx: FieldCtx, components, length: int, note: str = ""):
        self.kind = kind
        self.ctx = ctx
        self.length = length
        self.note = note
        comps = []
        for c in components:
            d, e = c.d, c.e % ctx.N
            if ctx.m % d:
                raise UnsupportedParams(f"GF(q^{d}) is not a subfield of GF(q^{ctx.m})")
            step = ctx.N // (ctx.q**d - 1)
            if e % step:
                raise UnsupportedParams(f"alpha^{e} is not in GF(q^{d})")
            comps.append(Component(d, e))
        self.components = tuple(comps)
        self._tables: dict = {}

    @property
    def q(self):
        return self.ctx.q

    @property
    def k(self) -> int:
        """Message-space dimension over GF(q)."""
        return sum(c.d for c in self.components)

    def message_sizes(self):
        return [self.ctx.q**c.d for c in self.components]

    def message_log(self, j: int, u: int) -> int:
        """Log-form value of message index u in component j (u = 0 is zero)."""
        c = self.components[j]
        if u == 0:
            return ZERO
        step = self.ctx.N // (self.ctx.q**c.d - 1)
        return (u - 1) * step

    def message_index(self, j: int, x: int) -> int:
        """Inverse of message_log."""
        if x == ZERO:
            return 0
        step = self.ctx.N // (self.ctx.q ** self.components[j].d - 1)
        return x // step + 1

    def table(self, j: int) -> np.ndarray:
        """Coordinates of every message of component j: shape (q^d, length), GF(q) labels."""
        if j not in self._tables:
            ctx = self.ctx
            c = self.components[j]
            size = ctx.q**c.d
            step = ctx.N // (size - 1)
            tr = ctx.subfield_trace_table(c.d)
            ell = np.arange(self.length, dtype=np.int64)
            u = np.arange(size - 1, dtype=np.int64)
            logs = (u[:, None] * step + c.e * ell[None, :]) % ctx.N
            T = np.zeros((size, self.length), dtype=np.int64)
            T[1:] = tr[logs // step]
            self._tables[j] = T
        return self._tables[j]

    def codeword(self, messages) -> np.ndarray:
        """Codeword for a tuple of message indices, one per component."""
        F = self.ctx.Fq
        v = np.zeros(self.length, dtype=np.int64)
        for j, u in enumerate(messages):
            v = F.add_tab[v, self.table(j)[u]]
        return v

    def codeword_from_logs(self, values) -> np.ndarray:
        return self.codeword([self.message_index(j, x) for j, x in enumerate(values)])

    def basis_codewords(self) -> list[np.ndarray]:
        """Images of a GF(q)-basis of the message space (powers of a generator of each GF(q^d))."""
        out = []
        sizes = len(self.components)
        for j, c in enumerate(self.components):
            for i in range(c.d):
                msg = [0] * sizes
                msg[j] = i + 1  # alpha^(step*i): 1, w, w^2, ... with w of degree d
                out.append(self.codeword(msg))
        return out

    def messages(self):
        return itertools.product(*[range(s) for s in self.message_sizes()])

    def __repr__(self):
        comps = ", ".join(f"(GF(q^{c.d}), alpha^{c.e})" for c in self.components)
        return f"TraceFamily({self.kind}, q={self.q}, m={self.ctx.m}, length={self.length}, [{comps}])"


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _need_odd_q(q):
    if q % 2 == 0:
        raise UnsupportedParams("the lambda = 2 families need odd q")


def build_family(kind: str, q: int, m: int, *, ctx: FieldCtx | None = None, **ctx_kw) -> TraceFamily:
    """The named families of the weight derivations.

    HAT_D1 / D1: the even-like and full codes at the largest leader (lambda = 2);
    V1 / V2: the even-like code at the second largest leader (odd / even m);
    V3: the punctured version of V1 / V2 of length (q^m - 1)/(q - 1);
    V4 / V5: V1 / V2 plus a constant term;
    QM1_ONEWEIGHT: the even-like code at the largest leader for lambda = q - 1.
    """
    if kind not in KINDS:
        raise UnsupportedParams(f"unknown family {kind!r}")
    ctx = ctx or field_for_q(q, m, **ctx_kw)
    N = ctx.N
    h = m // 2
    const = Component(1, 0)
    if kind == "QM1_ONEWEIGHT":
        delta, size, case = largest_leader_qm1(q, m)
        if case == "iii":
            raise UnsupportedParams("no one-weight statement for residue q-2")
        e = (-(q - 1) * delta) % N
        return TraceFamily(kind, ctx, [Component(size, e)], N // (q - 1), note=f"case ({case})")
    _need_odd_q(q)
    n = N // 2
    odd = m % 2 == 1
    if kind in ("V1", "V4") and not odd:
        raise KindParityMismatch(f"{kind} needs odd m")
    if kind in ("V2", "V5") and odd:
        raise KindParityMismatch(f"{kind} needs even m")
    if kind in ("V1", "V2", "V3", "V4", "V5") and m < 2 + odd:
        raise UnsupportedParams("m too small")
    if odd:
        pair = [Component(m, q ** ((m - 1) // 2) + 1), Component(m, q ** ((m - 3) // 2) + 1)]
    else:
        pair = [Component(h, q**h + 1), Component(m, q ** (h - 1) + 1)]
    if kind in ("V1", "V2"):
        return TraceFamily(kind, ctx, pair, n)
    if kind == "V3":
        return TraceFamily(kind, ctx, pair, N // (q - 1))
    if kind in ("V4", "V5"):
        return TraceFamily(kind, ctx, pair + [const], n)
    single = Component(m, 2) if odd else Component(h, q**h + 1)
    if kind == "HAT_D1":
        return TraceFamily(kind, ctx, [single], n)
    return TraceFamily(kind, ctx, [single, const], n)  # D1


def bch_descriptor_for(kind: str, q: int, m: int) -> BchDescriptor | None:
    """The BCH code whose weight distribution the family reproduces (None for V3)."""
    if kind == "QM1_ONEWEIGHT":
        delta, _, _ = largest_leader_qm1(q, m)
        return BchDescriptor(q, m, q - 1, delta, hat=True)
    d1, d2 = largest_leaders_half(q, m, 2).deltas
    return {
        "HAT_D1": BchDescriptor(q, m, 2, d1, hat=True),
        "D1": BchDescriptor(q, m, 2, d1),
        "V1": BchDescriptor(q, m, 2, d2, hat=True),
        "V2": BchDescriptor(q, m, 2, d2, hat=True),
        "V4": BchDescriptor(q, m, 2, d2),
        "V5": BchDescriptor(q, m, 2, d2),
    }.get(kind)


def delsarte_family(desc: BchDescriptor, ctx: FieldCtx | None = None) -> TraceFamily:
    """Trace representation of a BCH code from its nonzeros theta^i (i outside the defining set).

    Coordinate l is sum_j Tr(a_j theta^(-l i_j)) over one i_j per nonzero coset.
    """
    ctx = ctx or field_for_q(desc.q, desc.m)
    code = build_bch(desc)
    space = CosetSpace(desc.q, desc.m, desc.lam)
    inside = np.zeros(code.n, dtype=bool)
    inside[code.defining_set] = True
    comps = []
    for i in range(code.n):
        if inside[i]:
            continue
        orb = space.orbit(i)
        inside[orb] = True
        comps.append(Component(len(orb), (-desc.lam * i) % ctx.N))
    return TraceFamily("DELSARTE", ctx, comps, code.n, note=repr(desc))


def family_spans_code(fam: TraceFamily, desc: BchDescriptor) -> bool:
    """True iff the family's codewords form exactly the BCH code.

    Every basis codeword must be divisible by the generator, and the message
    dimension must equal the code dimension (the trace map is injective here).
    """
    code = build_bch(desc)
    if fam.length != code.n or fam.k != code.dimension:
        return False
    g = code.generator
    for w in fam.basis_codewords():
        if not (Poly(fam.ctx.Fq, w) % g).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# equivalence witnesses
# ---------------------------------------------------------------------------

def frobenius_exponent(e_from: int, e_to: int, q: int, d: int, N: int) -> int | None:
    """j < d with q^j * e_from = e_to (mod N), if any."""
    for j in range(d):
        if (pow(q, j, N) * e_from - e_to) % N == 0:
            return j
    return None


@dataclass
class Witness:
    kind: str
    map: str              # "frobenius" or "permutation"
    detail: dict
    verified: bool
    checked_messages: int


def equivalence_witness(kind: str, q: int, m: int, *, max_messages: int = 5000) -> Witness:
    """Relate a named family to the Delsarte form of its BCH code, coordinate-exactly.

    Either every component maps by a Frobenius power on messages (a -> a^(q^j),
    codewords equal pointwise), or (single-exponent case alpha^(tau l) vs
    alpha^(2l)) codewords agree up to the coordinate permutation l -> (tau/2) l.
    """
    desc = bch_descriptor_for(kind, q, m)
    if desc is None:
        raise UnsupportedParams(f"{kind} is not a BCH code")
    ctx = field_for_q(q, m)
    fam = build_family(kind, q, m, ctx=ctx)
    bch = delsarte_family(desc, ctx)
    N = ctx.N
    # match components by subfield size (the constant term is d=1, e=0 in both)
    pairs = []
    used = set()
    frob = {}
    for jf, cf in enumerate(fam.components):
        for jb, cb in enumerate(bch.components):
            if jb in used or cb.d != cf.d:
                continue
            jj = frobenius_exponent(cb.e, cf.e, q, cf.d, N)
            if jj is not None:
                pairs.append((jb, jf, jj))
                used.add(jb)
                frob[jf] = jj
                break
    total = int(np.prod([float(s) for s in fam.message_sizes()]))
    msgs = _sample_messages(fam, max_messages)
    if len(pairs) == len(fam.components) == len(bch.components):
        ok = True
        for msg in msgs:
            # family message a_f corresponds to bch message a_b with a_b^(q^j) = a_f
            vals = [ZERO] * len(bch.components)
            for jb, jf, jj in pairs:
                x = fam.message_log(jf, msg[jf])
                d = fam.components[jf].d
                inv = pow(q, (d - jj) % d, N) if d else 1
                vals[jb] = ZERO if x == ZERO else (x * inv) % N
            if not np.array_equal(fam.codeword(msg), bch.codeword_from_logs(vals)):
                ok = False
                break
        return Witness(kind, "frobenius", {"powers": {str(k): v for k, v in frob.items()}},
                       ok, len(msgs) if total > len(msgs) else total)
    # permutation witness: a single nonconstant component alpha^(tau l) vs alpha^(2 l) on n = N/2
    nonconst_f = [c for c in fam.components if c.e != 0]
    nonconst_b = [c for c in bch.components if c.e != 0]
    if len(nonconst_f) == len(nonconst_b) == 1 and nonconst_f[0].d == nonconst_b[0].d:
        ef, eb = nonconst_f[0].e, nonconst_b[0].e
        n = fam.length
        # alpha^(eb*l) = alpha^(ef*pi(l)) with pi(l) = (eb/ef) l mod n, when ef | eb mod N
        g = gcd(ef, N)
        if eb % g == 0 and gcd(ef // g, N // g) == 1 and (N // g) == n:
            r = (eb // g) * pow(ef // g, -1, N // g) % n
            if gcd(r, n) == 1:
                pi = (r * np.arange(n)) % n
                jf_nc = fam.components.index(nonconst_f[0])
                jb_nc = bch.components.index(nonconst_b[0])
                ok = True
                for msg in msgs:
                    vals = [ZERO] * len(bch.components)
                    vals[jb_nc] = fam.message_log(jf_nc, msg[jf_nc])
                    for jf, c in enumerate(fam.components):
                        if c.e == 0:
                            jb = [k for k, cb in enumerate(bch.components) if cb.e == 0][0]
                            vals[jb] = fam.message_log(jf, msg[jf])
                    if not np.array_equal(fam.codeword(msg)[pi], bch.codeword_from_logs(vals)):
                        ok = False
                        break
                return Witness(kind, "permutation", {"multiplier": int(r), "n": n}, ok,
                               len(msgs) if total > len(msgs) else total)
    return Witness(kind, "none", {}, False, 0)


def _sample_messages(fam: TraceFamily, limit: int) -> list[tuple]:
    sizes = fam.message_sizes()
    total = 1
    for s in sizes:
        total *= s
    if total <= limit:
        return list(fam.messages())
    # deterministic spread: a linear-congruential walk over the mixed-radix index space
    out = []
    stride = 2654435761 % total or 1
    while gcd(stride, total) != 1:
        stride += 1
    idx = 0
    for _ in range(limit):
        t = idx
        msg = []
        for s in sizes:
            t, r = divmod(t, s)
            msg.append(r)
        out.append(tuple(msg))
        idx = (idx + stride) % total
    return out


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def enumerate_weights(fam: TraceFamily, *, cap: int = ENUM_CAP, work_cap: int = WORK_CAP,
                      threads: int = 1) -> WeightDistribution:
    """Exact weight distribution over every message, by zero counting."""
    sizes = fam.message_sizes()
    total = 1
    for s in sizes:
        total *= s
    if total > cap:
        raise SizeExceeded(f"{total} messages exceed the enumeration cap {cap}")
    if total * fam.length > work_cap:
        raise SizeExceeded("enumeration work exceeds the budget")
    F = fam.ctx.Fq
    L = fam.length
    inner = int(np.argmax(sizes))
    outer = [j for j in range(len(sizes)) if j != inner]
    Tin = fam.table(inner)
    outer_tabs = [fam.table(j) for j in outer]
    combos = list(itertools.product(*[range(sizes[j]) for j in outer]))

    def work(chunk):
        counts = np.zeros(L + 1, dtype=np.int64)
        for combo in chunk:
            v = np.zeros(L, dtype=np.int64)
            for T, u in zip(outer_tabs, combo):
                if u:
                    v = F.add_tab[v, T[u]]
            words = F.add_tab[v[None, :], Tin] if v.any() else Tin
            counts += np.bincount(L - (words == 0).sum(axis=1), minlength=L + 1)
        return counts

    threads = max(1, threads)
    if threads > 1 and len(combos) > 1:
        step = -(-len(combos) // threads)
        chunks = [combos[i:i + step] for i in range(0, len(combos), step)]
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(work, chunks))
    else:
        parts = [work(combos)]
    counts = sum(parts)
    return WeightDistribution.from_counts(counts, length=L, k=fam.k, q=fam.q)


# ---------------------------------------------------------------------------
# concatenation structure
# ---------------------------------------------------------------------------

def concat_structure_check(kind: str, q: int, m: int, *, max_messages: int = 5000) -> bool:
    """Check that long codewords are concatenations of (scaled) copies of short ones.

    HAT_D1_even: the even-m HAT_D1 word is (q^h+1)/2 copies of its first q^h - 1 coordinates;
    V3_from_V2: V1 / V2 word = v3 || g^2 v3 || ... || g^(2(t-1)) v3, g = alpha^N, t = (q-1)/2;
    QM1: the lambda = q-1 one-weight word repeats with period n' = 2(q^h - 1)/(q - 1)
         (case b = 1, q odd) or is a single block otherwise.
    """
    ctx = field_for_q(q, m)
    F = ctx.Fq
    if kind == "HAT_D1_even":
        if m % 2:
            raise KindParityMismatch("HAT_D1_even needs even m")
        fam = build_family("HAT_D1", q, m, ctx=ctx)
        short = TraceFamily("HAT_D1_short", ctx, fam.components, q ** (m // 2) - 1)
        reps = (q ** (m // 2) + 1) // 2
        for msg in _sample_messages(fam, max_messages):
            if not np.array_equal(fam.codeword(msg), np.tile(short.codeword(msg), reps)):
                return False
        return True
    if kind == "V3_from_V2":
        longk = "V1" if m % 2 else "V2"
        fam = build_family(longk, q, m, ctx=ctx)
        v3 = build_family("V3", q, m, ctx=ctx)
        t = (q - 1) // 2
        Nn = v3.length
        gamma2 = ctx.project((2 * Nn) % ctx.N)  # gamma^2 as a GF(q) label
        for msg in _sample_messages(fam, max_messages):
            w = v3.codeword(msg)
            blocks = []
            scale = 1
            for _ in range(t):
                blocks.append(F.mul_tab[scale, w])
                scale = int(F.mul_tab[scale, gamma2])
            if not np.array_equal(fam.codeword(msg), np.concatenate(blocks)):
                return False
        return True
    if kind == "QM1":
        fam = build_family("QM1_ONEWEIGHT", q, m, ctx=ctx)
        c = fam.components[0]
        period = ctx.N // gcd(c.e, ctx.N)
        if fam.length % period:
            return False
        for msg in _sample_messages(fam, max_messages):
            w = fam.codeword(msg)
            if not np.array_equal(w, np.tile(w[:period], fam.length // period)):
                return False
        return True
    raise KindParityMismatch(f"unknown concatenation kind {kind!r}")


def qm1_period(q: int, m: int) -> int:
    """Period of the lambda = q-1 one-weight codewords as a sequence in l."""
    fam = build_family("QM1_ONEWEIGHT", q, m)
    return fam.ctx.N // gcd(fam.components[0].e, fam.ctx.N)
