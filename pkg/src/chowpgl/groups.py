"""Permutation subgroups of S_p used as Weyl-group actions on ``Z[x1..xp]``.

Permutations are tuples of 0-based images: ``g[i]`` is where ``x_{i+1}`` goes.
Composition is ``(g*h)(i) = g(h(i))`` which makes ``g -> permute_variables(., g)``
a left action.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Sequence, Tuple

from .polyring import is_prime

Perm = Tuple[int, ...]

#: refuse to enumerate groups larger than |S_7|
MAX_GROUP_ORDER = 5040


class GroupTooLarge(RuntimeError):
    pass


def compose(g: Perm, h: Perm) -> Perm:
    return tuple(g[h[i]] for i in range(len(h)))


def inverse(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, gi in enumerate(g):
        out[gi] = i
    return tuple(out)


def identity(n: int) -> Perm:
    return tuple(range(n))


def cycle_perm(p: int) -> Perm:
    """The cycle ``(1 2 ... p)``: ``x_i -> x_{i+1}``."""
    return tuple((i + 1) % p for i in range(p))


def transposition(n: int, i: int, j: int) -> Perm:
    g = list(range(n))
    g[i], g[j] = g[j], g[i]
    return tuple(g)


def primitive_root(p: int) -> int:
    for a in range(2, p):
        if all(pow(a, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1)):
            return a
    return 1


def _prime_factors(n: int) -> List[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def affine_perm(p: int, a: int, b: int = 0) -> Perm:
    """``t -> a t + b`` on labels ``1..p`` identified with F_p (label p is 0)."""
    img = []
    for i in range(p):
        t = (a * (i + 1) + b) % p
        img.append(p - 1 if t == 0 else t - 1)
    return tuple(img)


def closure(gens: Sequence[Perm], n: int, limit: int = MAX_GROUP_ORDER) -> FrozenSet[Perm]:
    e = identity(n)
    seen = {e}
    frontier = [e]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > limit:
                        raise GroupTooLarge(f"group exceeds enumeration bound {limit}")
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


class GroupKind(str, enum.Enum):
    FULL_SYMMETRIC = "symmetric"
    CYCLIC = "cyclic"
    NORMALIZER = "normalizer"
    SYMMETRIC_FIX_LAST = "symmetric-fix-last"
    TRIVIAL = "trivial"


@dataclass(frozen=True)
class GroupSpec:
    """One of the standard subgroups of S_p, or an explicit generator list."""

    kind: GroupKind
    p: int
    extra_generators: Tuple[Perm, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "kind", GroupKind(self.kind))
        if self.p < 2:
            raise ValueError("need at least two points")

    @classmethod
    def explicit(cls, p: int, generators: Iterable[Sequence[int]]) -> "GroupSpec":
        return cls(GroupKind.TRIVIAL, p, tuple(tuple(g) for g in generators))

    @property
    def generators(self) -> Tuple[Perm, ...]:
        p = self.p
        k = self.kind
        if k is GroupKind.FULL_SYMMETRIC:
            gens = (transposition(p, 0, 1), cycle_perm(p))
        elif k is GroupKind.CYCLIC:
            gens = (cycle_perm(p),)
        elif k is GroupKind.NORMALIZER:
            gens = (cycle_perm(p), affine_perm(p, primitive_root(p)))
        elif k is GroupKind.SYMMETRIC_FIX_LAST:
            gens = tuple(transposition(p, i, i + 1) for i in range(p - 2))
        else:
            gens = ()
        return gens + self.extra_generators

    def elements(self) -> FrozenSet[Perm]:
        return _elements(self.generators, self.p)

    def order(self) -> int:
        return len(self.elements())

    @property
    def label(self) -> str:
        if self.extra_generators:
            return f"{self.kind.value}+{len(self.extra_generators)}gens"
        return self.kind.value


@lru_cache(maxsize=256)
def _elements(gens: Tuple[Perm, ...], n: int) -> FrozenSet[Perm]:
    return closure(gens, n)


def parse_group(name: str, p: int) -> GroupSpec:
    aliases = {
        "S": GroupKind.FULL_SYMMETRIC, "sym": GroupKind.FULL_SYMMETRIC, "full": GroupKind.FULL_SYMMETRIC,
        "symmetric": GroupKind.FULL_SYMMETRIC, "C": GroupKind.CYCLIC, "cyclic": GroupKind.CYCLIC,
        "N": GroupKind.NORMALIZER, "normalizer": GroupKind.NORMALIZER,
        "symmetric-fix-last": GroupKind.SYMMETRIC_FIX_LAST, "fixlast": GroupKind.SYMMETRIC_FIX_LAST,
        "trivial": GroupKind.TRIVIAL, "1": GroupKind.TRIVIAL,
    }
    if name not in aliases:
        raise ValueError(f"unknown group {name!r}; expected one of {sorted(set(aliases))}")
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    return GroupSpec(aliases[name], p)
