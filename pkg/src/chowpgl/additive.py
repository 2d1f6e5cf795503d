"""Closed-form counts for the additive structure of CH^m(BPGL_p) and H^m(BPGL_p).

``CH^m = Z^r(m,p) + (Z/p)^s(m,p)`` where ``r(m,p)`` counts partitions of m
into parts in ``[2, p]`` and ``s(m,p)`` counts ``(i, j)`` with ``i >= 0``,
``j > 0`` and ``(p^2 - p) i + (p + 1) j = m``.  Even cohomology agrees with
the Chow groups in half the degree; odd cohomology in degree m is
``(Z/p)^s'((m-3)/2, p)`` where ``s'`` also allows ``j = 0``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Dict, List, Tuple


@dataclass(frozen=True)
class AbelianGroupDesc:
    """``Z^free_rank`` plus cyclic factors of the listed prime-power orders."""

    free_rank: int
    torsion: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative rank")
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order_of_torsion(self) -> int:
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        counts: Dict[int, int] = {}
        for t in self.torsion:
            counts[t] = counts.get(t, 0) + 1
        for t, k in sorted(counts.items()):
            parts.append(f"(Z/{t})^{k}" if k > 1 else f"Z/{t}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj) -> "AbelianGroupDesc":
        return cls(obj["rank"], tuple(obj["torsion"]))


class PartitionCounter:
    """Memoised counters for one prime p.  Safe to share between threads."""

    def __init__(self, p: int):
        if p < 1:
            raise ValueError("p must be positive")
        self.p = p
        self._lock = threading.Lock()
        self._pi: List[int] = [1]
        self._r: List[int] = [1]

    @staticmethod
    def _extend(table: List[int], m: int, parts) -> None:
        # recompute from scratch up to m: a partition DP is not incremental in m
        n = max(m + 1, 2 * len(table))
        dp = [0] * n
        dp[0] = 1
        for k in parts:
            for i in range(k, n):
                dp[i] += dp[i - k]
        table[:] = dp

    def pi(self, m: int) -> int:
        """Partitions of m into parts ``<= p``."""
        if m < 0:
            return 0
        with self._lock:
            if m >= len(self._pi):
                self._extend(self._pi, m, range(1, self.p + 1))
            return self._pi[m]

    def r(self, m: int) -> int:
        """Partitions of m into parts in ``[2, p]``."""
        if m < 0:
            raise ValueError("m must be nonnegative")
        with self._lock:
            if m >= len(self._r):
                self._extend(self._r, m, range(2, self.p + 1))
            return self._r[m]

    def s(self, m: int) -> int:
        return _count_lin(m, self.p, j_min=1)

    def s_prime(self, m: int) -> int:
        return _count_lin(m, self.p, j_min=0)


def _count_lin(m: int, p: int, j_min: int) -> int:
    if m < 0:
        return 0
    a, b = p * p - p, p + 1
    total = 0
    for i in range(m // a + 1):
        rest = m - a * i
        if rest % b == 0 and rest // b >= j_min:
            total += 1
    return total


_COUNTERS: Dict[int, PartitionCounter] = {}
_COUNTERS_LOCK = threading.Lock()


def counter(p: int) -> PartitionCounter:
    with _COUNTERS_LOCK:
        if p not in _COUNTERS:
            _COUNTERS[p] = PartitionCounter(p)
        return _COUNTERS[p]


def count_pi(m: int, p: int) -> int:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return counter(p).pi(m)


def count_r(m: int, p: int) -> int:
    return counter(p).r(m)


def count_s(m: int, p: int) -> int:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return counter(p).s(m)


def count_s_prime(m: int, p: int) -> int:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return counter(p).s_prime(m)


def chow_group_descriptor(m: int, p: int) -> AbelianGroupDesc:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return AbelianGroupDesc(count_r(m, p), (p,) * count_s(m, p))


def cohomology_group_descriptor(m: int, p: int) -> AbelianGroupDesc:
    """``H^m`` with m the topological degree."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m % 2 == 0:
        return chow_group_descriptor(m // 2, p)
    if m < 3:
        return AbelianGroupDesc(0)
    return AbelianGroupDesc(0, (p,) * count_s_prime((m - 3) // 2, p))
