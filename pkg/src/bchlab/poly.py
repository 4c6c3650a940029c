"""Univariate polynomials over GF(q), minimal polynomials and generator assembly.

Coefficients are GF(q) labels, lowest degree first, stored in an int64
numpy array without trailing zeros.  Multiplication goes through the GF(p)
coordinate planes of the coefficients so that it reduces to a handful of
integer convolutions; division is schoolbook with table lookups.
"""

from __future__ import annotations

import numpy as np

from .errors import CoefficientNotInSubfield, DivisionByZeroPoly, NotADivisor
from .field import ZERO, FieldCtx, SmallField


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    return c[: nz[-1] + 1] if nz.size else c[:0]


class Poly:
    """Immutable polynomial over a SmallField."""

    __slots__ = ("F", "c")

    def __init__(self, F: SmallField, coeffs):
        c = np.array(coeffs, dtype=np.int64).reshape(-1)
        if c.size and (c.min() < 0 or c.max() >= F.q):
            raise ValueError("coefficient labels must lie in [0, q)")
        c = _trim(c)
        c.setflags(write=False)
        self.F = F
        self.c = c

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, F):
        return cls(F, [])

    @classmethod
    def one(cls, F):
        return cls(F, [1])

    @classmethod
    def x_pow(cls, F, n: int, const: int = 0):
        """x^n + const (const a GF(q) label)."""
        c = np.zeros(n + 1, dtype=np.int64)
        c[n] = 1
        c[0] = F.add(c[0], const)
        return cls(F, c)

    @classmethod
    def xn_minus_1(cls, F, n: int):
        return cls.x_pow(F, n, F.neg(1))

    # -- basic properties ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 stands in for minus infinity on the zero polynomial."""
        return self.c.size - 1

    def is_zero(self) -> bool:
        return self.c.size == 0

    def lead(self) -> int:
        return int(self.c[-1]) if self.c.size else 0

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.F.inv(self.lead())
        return Poly(self.F, self.F.mul(inv, self.c))

    def to_list(self) -> list[int]:
        return [int(v) for v in self.c]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.F.q == other.F.q and np.array_equal(self.c, other.c)

    def __hash__(self):
        return hash((self.F.q, self.c.tobytes()))

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for k, v in enumerate(self.c):
            if v:
                terms.append(f"{v}" if k == 0 else (f"{v}*x^{k}" if v != 1 else f"x^{k}"))
        return "Poly(" + " + ".join(reversed(terms)) + ")"

    # -- arithmetic ------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Poly) or other.F.q != self.F.q:
            raise TypeError("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        n = max(self.c.size, other.c.size)
        a = np.zeros(n, dtype=np.int64)
        b = np.zeros(n, dtype=np.int64)
        a[: self.c.size] = self.c
        b[: other.c.size] = other.c
        return Poly(self.F, self.F.add(a, b))

    def __neg__(self):
        return Poly(self.F, self.F.neg(self.c))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        return Poly(self.F, _mul_labels(self.F, self.c, other.c))

    def __divmod__(self, other):
        self._check(other)
        return _divmod(self, other)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __call__(self, x: int) -> int:
        """Evaluate at a GF(q) label (Horner)."""
        acc = 0
        for v in self.c[::-1]:
            acc = int(self.F.add(self.F.mul(acc, x), v))
        return acc


def _planes(F: SmallField, c: np.ndarray) -> np.ndarray:
    return (c[None, :] // (F.p ** np.arange(F.s))[:, None]) % F.p


def _mul_labels(F: SmallField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return a[:0]
    p, s = F.p, F.s
    A, B = _planes(F, a), _planes(F, b)
    L = a.size + b.size - 1
    # product of coefficient polynomials in y, coefficient-wise in x
    prod = np.zeros((2 * s - 1, L), dtype=np.int64)
    for u in range(s):
        for v in range(s):
            prod[u + v] += np.convolve(A[u], B[v]) % p
    # reduce y^k, k >= s, with the defining polynomial of GF(q)
    f = F.poly
    for k in range(2 * s - 2, s - 1, -1):
        top = prod[k] % p
        if top.any():
            for j in range(s):
                prod[k - s + j] -= top * f[j]
        prod[k] = 0
    planes = prod[:s] % p
    return (planes * (p ** np.arange(s))[:, None]).sum(axis=0)


def _divmod(a: Poly, b: Poly):
    if b.is_zero():
        raise DivisionByZeroPoly("division by the zero polynomial")
    F = a.F
    db = b.degree
    if a.degree < db:
        return Poly.zero(F), a
    r = a.c.copy()
    qc = np.zeros(a.degree - db + 1, dtype=np.int64)
    inv_lead = int(F.inv(b.lead()))
    bc = b.c
    for k in range(a.degree - db, -1, -1):
        t = r[k + db]
        if t:
            coef = int(F.mul(t, inv_lead))
            qc[k] = coef
            r[k:k + db + 1] = F.sub(r[k:k + db + 1], F.mul(coef, bc))
    return Poly(F, qc), Poly(F, r[:db] if db > 0 else r[:0])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly.zero(a.F)
    return ((a * b) // poly_gcd(a, b)).monic()


def poly_arith(a: Poly, b: Poly, op: str):
    """One entry point for the ring operations: add, sub, mul, mod, div, divmod, gcd, lcm."""
    ops = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "mod": lambda: a % b,
        "div": lambda: a // b,
        "divmod": lambda: divmod(a, b),
        "gcd": lambda: poly_gcd(a, b),
        "lcm": lambda: poly_lcm(a, b),
    }
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    return ops[op]()


def product(polys) -> Poly:
    """Balanced product tree, so the big multiplications happen only once."""
    polys = list(polys)
    if not polys:
        raise ValueError("empty product")
    while len(polys) > 1:
        nxt = [polys[i] * polys[i + 1] for i in range(0, len(polys) - 1, 2)]
        if len(polys) % 2:
            nxt.append(polys[-1])
        polys = nxt
    return polys[0]


# ---------------------------------------------------------------------------
# minimal polynomials
# ---------------------------------------------------------------------------

def _orbit(i: int, q: int, n: int) -> list[int]:
    out = [i % n]
    j = (i * q) % n
    while j != out[0]:
        out.append(j)
        j = (j * q) % n
    return out


def poly_from_roots(ctx: FieldCtx, roots_log) -> np.ndarray:
    """Coefficients (log form, lowest first) of prod (x - alpha^r) in GF(q^m)."""
    c = np.array([0], dtype=np.int64)  # the constant 1
    for r in roots_log:
        negr = ctx.neg(int(r))
        shifted = np.concatenate([[ZERO], c])           # x * c
        scaled = np.concatenate([np.where(c < 0, ZERO, (c + negr) % ctx.N), [ZERO]])
        c = ctx.add_vec(shifted, scaled)
    return c


def minimal_polynomial(ctx: FieldCtx, n: int, i: int) -> Poly:
    """m_i(x) = prod_{j in C_i} (x - theta^j), theta = alpha^((q^m-1)/n), over GF(q)."""
    if ctx.N % n:
        raise ValueError(f"{n} does not divide q^m - 1")
    lam = ctx.N // n
    coset = _orbit(i, ctx.q, n)
    logs = poly_from_roots(ctx, [(lam * j) % ctx.N for j in coset])
    try:
        labels = ctx.project(logs)
    except Exception as exc:
        raise CoefficientNotInSubfield(f"m_{i} has a coefficient outside GF(q)") from exc
    return Poly(ctx.Fq, labels)


def parity_check(ctx: FieldCtx, n: int, g: Poly) -> Poly:
    """h(x) = (x^n - 1) / g(x)."""
    h, r = divmod(Poly.xn_minus_1(ctx.Fq, n), g)
    if not r.is_zero():
        raise NotADivisor("g does not divide x^n - 1")
    return h
