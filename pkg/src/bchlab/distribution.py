"""Weight distributions with arbitrary-precision frequencies."""

from __future__ import annotations

import csv
import io

import numpy as np


class WeightDistribution:
    """Multiset {weight: frequency}; zero-frequency rows are never stored."""

    def __init__(self, entries, *, length: int, k: int | None = None, q: int | None = None):
        acc: dict[int, int] = {}
        items = entries.items() if isinstance(entries, dict) else entries
        for w, f in items:
            w, f = int(w), int(f)
            if f:
                acc[w] = acc.get(w, 0) + f
        self.entries = dict(sorted(acc.items()))
        self.length = length
        self.k = k
        self.q = q

    @classmethod
    def from_counts(cls, counts, **kw):
        """From an array indexed by weight."""
        counts = np.asarray(counts)
        return cls({int(w): int(counts[w]) for w in np.flatnonzero(counts)}, **kw)

    def total(self) -> int:
        return sum(self.entries.values())

    def nonzero_weights(self) -> list[int]:
        return [w for w in self.entries if w]

    def min_distance(self) -> int | None:
        nz = self.nonzero_weights()
        return min(nz) if nz else None

    def check(self) -> list[str]:
        """Structural problems (empty list when consistent)."""
        probs = []
        if self.entries.get(0) != 1:
            probs.append("A_0 != 1")
        if self.q is not None and self.k is not None and self.total() != self.q**self.k:
            probs.append(f"sum A_w = {self.total()} != q^k = {self.q ** self.k}")
        if any(w < 0 or w > self.length for w in self.entries):
            probs.append("weight outside [0, length]")
        return probs

    def enumerator(self) -> str:
        terms = []
        for w, f in self.entries.items():
            terms.append(str(f) if w == 0 else f"{f}z^{w}")
        return "+".join(terms)

    def __eq__(self, other):
        if isinstance(other, WeightDistribution):
            return self.entries == other.entries
        if isinstance(other, dict):
            return self.entries == {int(w): int(f) for w, f in other.items() if f}
        return NotImplemented

    def __repr__(self):
        return f"WeightDistribution([{self.length}], {self.enumerator()})"

    def to_json(self, **extra) -> dict:
        d = dict(extra)
        d.update({"length": self.length, "k": self.k,
                  "entries": [[w, str(f)] for w, f in self.entries.items()]})
        return d

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["weight", "frequency"])
        for w, f in self.entries.items():
            wr.writerow([w, f])
        return buf.getvalue()
