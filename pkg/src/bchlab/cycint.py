"""Exact arithmetic in the ring of cyclotomic integers Z[zeta_p].

Every character sum in this package is an element of Z[zeta_p] with
zeta_p = exp(2*pi*i/p).  Elements are stored in the power basis
1, zeta, ..., zeta^(p-2); the relation 1 + zeta + ... + zeta^(p-1) = 0 is
used to eliminate zeta^(p-1).  Equality is coefficient-wise, so every test
on these values is an exact integer comparison.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Iterable, Sequence


def _canonical(p: int, full: Sequence[int]) -> tuple[int, ...]:
    # full has length p (exponents 0..p-1); fold zeta^(p-1) into the rest
    top = full[p - 1]
    return tuple(int(full[k]) - top for k in range(p - 1))


class CycInt:
    """An element sum_k c_k zeta_p^k of Z[zeta_p] in canonical form."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) == p:
            coeffs = _canonical(p, coeffs)
        elif len(coeffs) != p - 1:
            raise ValueError(f"expected {p - 1} or {p} coefficients, got {len(coeffs)}")
        self.p = p
        self.coeffs = coeffs

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def from_int(cls, p: int, value: int) -> "CycInt":
        return cls(p, (int(value),) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CycInt":
        """zeta_p ** k."""
        full = [0] * p
        full[k % p] = 1
        return cls(p, full)

    @classmethod
    def from_counts(cls, p: int, counts: Sequence[int]) -> "CycInt":
        """sum_t counts[t] * zeta^t for t in GF(p), i.e. an additive-character sum."""
        return cls(p, counts)

    # -- ring operations --------------------------------------------------
    def _coerce(self, other) -> "CycInt":
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise ValueError("mixing cyclotomic rings of different order")
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, (-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, (a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        full[(i + j) % p] += a * b
        return CycInt(p, full)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in Z[zeta_p]")
        result = CycInt.from_int(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "CycInt":
        """Complex conjugate: zeta -> zeta^(-1)."""
        p = self.p
        full = [0] * p
        for k, c in enumerate(self.coeffs):
            full[(-k) % p] += c
        return CycInt(p, full)

    def galois(self, t: int) -> "CycInt":
        """Automorphism zeta -> zeta^t for t coprime to p."""
        p = self.p
        if t % p == 0:
            raise ValueError("t must be coprime to p")
        full = [0] * p
        for k, c in enumerate(self.coeffs):
            full[(k * t) % p] += c
        return CycInt(p, full)

    # -- predicates / conversions -----------------------------------------
    def is_integer(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def to_fraction(self) -> Fraction:
        return Fraction(self.to_int())

    def complex(self) -> complex:
        """Value under the canonical embedding zeta -> exp(2 pi i / p).

        Floating point; only used for sign/quadrant diagnostics.
        """
        return sum(c * cmath.exp(2j * cmath.pi * k / self.p) for k, c in enumerate(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        if self.is_integer():
            return f"CycInt(p={self.p}, {self.coeffs[0]})"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return f"CycInt(p={self.p}, {' + '.join(terms) or '0'})"

    def to_json(self) -> list[int]:
        return list(self.coeffs)
