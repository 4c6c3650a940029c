"""Closed-form weight distributions of the trace families.

Every function returns a WeightDistribution including the zero word; rows
whose weights coincide for a particular (q, m) are merged.
"""

from __future__ import annotations

from ..cosets import largest_leader_qm1
from ..distribution import WeightDistribution
from ..errors import EvenQ, KindParityMismatch, OutOfProvenRange, UnsupportedParams


def _odd_q(q):
    if q % 2 == 0:
        raise EvenQ("closed forms for lambda = 2 need odd q")


def _half(x: int) -> int:
    if x % 2:
        raise ArithmeticError("non-integral weight")
    return x // 2


def _div(a: int, b: int) -> int:
    if a % b:
        raise ArithmeticError(f"{a} / {b} is not an integer")
    return a // b


def hat_d1(q: int, m: int) -> WeightDistribution:
    """The even-like code at the largest leader: one nonzero weight."""
    _odd_q(q)
    n = (q**m - 1) // 2
    if m % 2:
        return WeightDistribution({0: 1, (q - 1) * q ** (m - 1) // 2: q**m - 1}, length=n, k=m, q=q)
    h = m // 2
    w = _half((q - 1) * (q ** (m - 1) + q ** (h - 1)))
    return WeightDistribution({0: 1, w: q**h - 1}, length=n, k=h, q=q)


def d1(q: int, m: int) -> WeightDistribution:
    """The full code at the largest leader (the even-like code plus constants)."""
    _odd_q(q)
    n = (q**m - 1) // 2
    if m % 2:
        t = q ** ((m - 1) // 2)
        rows = [
            (_half(q**m - q ** (m - 1) - t - 1), (q - 1) * (q**m - 1) // 2),
            (_half(q**m - q ** (m - 1)), q**m - 1),
            (_half(q**m - q ** (m - 1) + t - 1), (q - 1) * (q**m - 1) // 2),
            (n, q - 1),
        ]
        k = m + 1
    else:
        h = m // 2
        rows = [
            (_half(q**m - q ** (m - 1) - q ** (h - 1) - 1), (q - 1) * (q**h - 1)),
            (_half((q - 1) * (q ** (m - 1) + q ** (h - 1))), q**h - 1),
            (n, q - 1),
        ]
        k = h + 1
    return WeightDistribution([(0, 1)] + rows, length=n, k=k, q=q)


def v1_v2(q: int, m: int) -> WeightDistribution:
    """The even-like code at the second largest leader (length (q^m - 1)/2)."""
    _odd_q(q)
    n = (q**m - 1) // 2
    Qm = q**m - 1
    if m % 2:
        t = q ** ((m - 1) // 2)
        rows = [
            (_half((q - 1) * (q ** (m - 1) - t)), Qm * (q ** (m - 1) + t) // 2),
            (_half((q - 1) * q ** (m - 1)), Qm * (q**m - q ** (m - 1) + 1)),
            (_half((q - 1) * (q ** (m - 1) + t)), Qm * (q ** (m - 1) - t) // 2),
        ]
        k = 2 * m
    else:
        h = m // 2
        rows = [
            (_half((q - 1) * (q ** (m - 1) - q ** (h - 1))), _div(Qm * (q ** (h + 1) + q), 2 * (q + 1))),
            (_half((q - 1) * q ** (m - 1)), q ** (h - 1) * Qm),
            (_half((q - 1) * (q ** (m - 1) + q ** (h - 1))),
             _div((q ** (h + 1) - q) * (q**m - 2 * q ** (m - 1) + 1), 2 * (q - 1))),
            (_half((q - 1) * (q ** (m - 1) + q**h)), _div(Qm * (q ** (h - 1) - 1), q * q - 1)),
        ]
        k = 3 * h
    return WeightDistribution([(0, 1)] + rows, length=n, k=k, q=q)


def v3(q: int, m: int) -> WeightDistribution:
    """Length (q^m - 1)/(q - 1): the weights above divided by (q - 1)/2, same frequencies."""
    _odd_q(q)
    long = v1_v2(q, m)
    t = (q - 1) // 2
    rows = [(_div(w, t), f) for w, f in long.entries.items()]
    return WeightDistribution(rows, length=(q**m - 1) // (q - 1), k=long.k, q=q)


def v4_v5(q: int, m: int) -> WeightDistribution:
    """The full code at the second largest leader (length (q^m - 1)/2)."""
    _odd_q(q)
    n = (q**m - 1) // 2
    Qm = q**m - 1
    base = q**m - q ** (m - 1)
    if m % 2:
        a = q ** ((m - 1) // 2)
        b = q ** ((m + 1) // 2)
        c = q ** ((m + 3) // 2)
        rows = [
            (_half(base - b - 1), _div(Qm * (q ** (m - 1) - 1), 2 * (q + 1))),
            (_half(base - b + a), Qm * (q ** (m - 1) + a) // 2),
            (_half(base - a - 1), _div(Qm * (q ** (m + 2) - q**m - q ** (m - 1) - c + a + q * q), 2 * (q + 1))),
            (_half(base), Qm * (q**m - q ** (m - 1) + 1)),
            (_half(base + a - 1), _div(Qm * (q ** (m + 2) - q**m - q ** (m - 1) + c - a + q * q), 2 * (q + 1))),
            (_half(base + b - a), Qm * (q ** (m - 1) - a) // 2),
            (_half(base + b - 1), _div(Qm * (q ** (m - 1) - 1), 2 * (q + 1))),
            (n, q - 1),
        ]
        k = 2 * m + 1
    else:
        h = m // 2
        rows = [
            (_half(base - q**h - 1), _div(Qm * (q ** (h + 1) + q ** (h - 1) - 2), 2 * (q + 1))),
            (_half(base - q**h + q ** (h - 1)), _div(Qm * (q ** (h + 1) + q), 2 * (q + 1))),
            (_half(base - q ** (h - 1) - 1), _div((q**h - 1) * (q ** (m + 1) - 2 * q**m + q), 2)),
            (_half(base), Qm * q ** (h - 1)),
            (_half(base + q ** (h - 1) - 1), _div(Qm * (q ** (h + 1) + q) * (q - 1), 2 * (q + 1))),
            (_half(base + q**h - q ** (h - 1)), _div((q ** (h + 1) - q) * (q**m - 2 * q ** (m - 1) + 1), 2 * (q - 1))),
            (_half(base + q**h - 1), _div(Qm * (q**h - q ** (h - 1)), 2)),
            (_half(base + q ** (h + 1) - q**h), _div(Qm * (q ** (h - 1) - 1), q * q - 1)),
            (n, q - 1),
        ]
        k = 3 * h + 1
    return WeightDistribution([(0, 1)] + rows, length=n, k=k, q=q)


def qm1_oneweight(q: int, m: int) -> WeightDistribution:
    """lambda = q - 1 at the largest leader: one nonzero weight."""
    _, _, case = largest_leader_qm1(q, m)
    N = (q**m - 1) // (q - 1)
    # residue 1 with even q behaves like residue 0
    if case == "i" or case == "ii" and q % 2 == 0:
        return WeightDistribution({0: 1, q ** (m - 1): q**m - 1}, length=N, k=m, q=q)
    if case == "ii":
        h = m // 2
        return WeightDistribution({0: 1, (q**h + 1) * q ** (h - 1): q**h - 1}, length=N, k=h, q=q)
    raise UnsupportedParams("no closed form for residue q-2")


_BY_KIND = {
    "HAT_D1": hat_d1,
    "D1": d1,
    "V1": v1_v2,
    "V2": v1_v2,
    "V3": v3,
    "V4": v4_v5,
    "V5": v4_v5,
    "QM1_ONEWEIGHT": qm1_oneweight,
}


# smallest m for which each table is stated (parity handled separately)
_MIN_M = {"HAT_D1": 2, "D1": 3, "V1": 3, "V2": 2, "V3": 2, "V4": 3, "V5": 2}


def closed_form_distribution(kind: str, q: int, m: int, *, strict: bool = True) -> WeightDistribution:
    """Evaluate the table for ``kind`` at (q, m).

    With strict=True, parameters below the stated range raise OutOfProvenRange
    (the even-m full code at the largest leader is only claimed for m >= 4).
    """
    if kind not in _BY_KIND:
        raise UnsupportedParams(f"unknown family {kind!r}")
    if kind in ("V1", "V4") and m % 2 == 0 or kind in ("V2", "V5") and m % 2 == 1:
        raise KindParityMismatch(f"{kind} does not match the parity of m = {m}")
    if strict and kind != "QM1_ONEWEIGHT":
        low = 4 if kind == "D1" and m % 2 == 0 else _MIN_M[kind]
        if m < low:
            raise OutOfProvenRange(f"{kind} is stated for m >= {low}")
    return _BY_KIND[kind](q, m)
