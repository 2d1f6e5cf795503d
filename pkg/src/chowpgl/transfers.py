"""Transfers between invariant rings of subgroups of S_p acting on ``Z[x1..xp]``.

For finite groups acting by permutations, restriction is the inclusion of
invariants and the transfer from H to G is ``f -> sum_{s in G/H} s.f``.
Mackey's formula

    res_K tsf_H^G f = sum_{s in K\\G/H} tsf_{K_s}^K (s.f),   K_s = K ∩ s H s^-1

is checked exactly on explicit polynomials.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .groups import (GroupKind, GroupSpec, MAX_GROUP_ORDER, Perm, affine_perm, closure, compose, identity,
                     inverse, primitive_root)
from .polyring import ZZ, Poly, permute_variables, x_vars


class NotInvariantError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """A permutation group on ``n`` points given by its full element set."""

    n: int
    elements: FrozenSet[Perm]
    name: str = ""

    @classmethod
    def from_spec(cls, spec: GroupSpec) -> "FiniteGroup":
        return cls(spec.p, spec.elements(), spec.label)

    @classmethod
    def generated(cls, n: int, gens: Iterable[Sequence[int]], name: str = "", limit: int = MAX_GROUP_ORDER):
        return cls(n, closure([tuple(g) for g in gens], n, limit), name)

    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return tuple(g) in self.elements

    def sorted(self) -> List[Perm]:
        return sorted(self.elements)

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return self.elements <= other.elements

    def conjugate(self, s: Perm) -> "FiniteGroup":
        si = inverse(s)
        return FiniteGroup(self.n, frozenset(compose(compose(s, h), si) for h in self.elements))

    def intersect(self, other: "FiniteGroup") -> "FiniteGroup":
        return FiniteGroup(self.n, self.elements & other.elements)


SubgroupDesc = Union[GroupSpec, FiniteGroup]


def as_group(g: SubgroupDesc) -> FiniteGroup:
    return g if isinstance(g, FiniteGroup) else FiniteGroup.from_spec(g)


def act(g: Perm, f: Poly) -> Poly:
    return permute_variables(f, g)


def is_invariant(f: Poly, group: SubgroupDesc) -> bool:
    if isinstance(group, GroupSpec):
        gens = group.generators
    else:
        gens = group.elements
    return all(act(g, f) == f for g in gens)


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    reps: Tuple[Perm, ...]
    intersections: Tuple[FiniteGroup, ...]  # K ∩ s H s^-1
    sizes: Tuple[int, ...]

    def __len__(self):
        return len(self.reps)

    def check_partition(self, G: FiniteGroup, K: FiniteGroup, H: FiniteGroup) -> bool:
        """``sum |K| |H| / |K_s| = |G|`` and every coset size agrees."""
        total = 0
        for Ks, size in zip(self.intersections, self.sizes):
            if K.order() * H.order() != size * Ks.order():
                return False
            total += size
        return total == G.order()


def double_cosets(G: SubgroupDesc, K: SubgroupDesc, H: SubgroupDesc) -> DoubleCosetDecomposition:
    """``K \\ G / H`` with the lexicographically least element of each double coset as representative."""
    G, K, H = as_group(G), as_group(K), as_group(H)
    if not (K.is_subgroup_of(G) and H.is_subgroup_of(G)):
        raise ValueError("K and H must be subgroups of G")
    seen = set()
    reps, inters, sizes = [], [], []
    Hs = list(H.elements)
    Ks = list(K.elements)
    for g in G.sorted():
        if g in seen:
            continue
        coset = {compose(compose(k, g), h) for k in Ks for h in Hs}
        seen |= coset
        reps.append(g)
        inters.append(K.intersect(H.conjugate(g)))
        sizes.append(len(coset))
    return DoubleCosetDecomposition(tuple(reps), tuple(inters), tuple(sizes))


def cyclic_double_coset_formula(p: int) -> int:
    """``(p-1) + (p-1)((p-2)! - 1)/p``."""
    return (p - 1) + (p - 1) * (factorial(p - 2) - 1) // p


def left_transversal(G: SubgroupDesc, H: SubgroupDesc, rng: Optional[random.Random] = None) -> List[Perm]:
    """One element from each left coset ``gH``; the least one, or a random one if ``rng`` is given."""
    G, H = as_group(G), as_group(H)
    seen = set()
    out = []
    for g in G.sorted():
        if g in seen:
            continue
        coset = sorted(compose(g, h) for h in H.elements)
        seen.update(coset)
        out.append(rng.choice(coset) if rng is not None else coset[0])
    return out


def transfer_poly(f: Poly, H: SubgroupDesc, G: SubgroupDesc, transversal: Optional[Sequence[Perm]] = None,
                  check: bool = True) -> Poly:
    """``tsf_H^G f = sum_{s in G/H} s.f`` for an H-invariant ``f``."""
    if check and not is_invariant(f, H):
        raise NotInvariantError("polynomial is not fixed by the subgroup")
    if transversal is None:
        transversal = left_transversal(G, H)
    out = Poly.zero(f.variables, f.domain)
    for s in transversal:
        out = out + act(s, f)
    return out


@dataclass(frozen=True)
class MackeyReport:
    lhs: Poly
    rhs: Poly
    terms: Tuple[Poly, ...]
    decomposition: DoubleCosetDecomposition

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def mackey_report(G: SubgroupDesc, K: SubgroupDesc, H: SubgroupDesc, f: Poly) -> MackeyReport:
    G_, K_, H_ = as_group(G), as_group(K), as_group(H)
    if not is_invariant(f, H):
        raise NotInvariantError("polynomial is not fixed by H")
    lhs = transfer_poly(f, H_, G_, check=False)
    dc = double_cosets(G_, K_, H_)
    terms = []
    for s, Ks in zip(dc.reps, dc.intersections):
        terms.append(transfer_poly(act(s, f), Ks, K_, check=True))
    rhs = Poly.zero(f.variables, f.domain)
    for t in terms:
        rhs = rhs + t
    return MackeyReport(lhs, rhs, tuple(terms), dc)


def mackey_verify(G: SubgroupDesc, K: SubgroupDesc, H: SubgroupDesc, f: Poly) -> bool:
    return mackey_report(G, K, H, f).holds


# ---------------------------------------------------------------------------------
# the (C_p, C_p) case


def normalizer_elements(p: int) -> FrozenSet[Perm]:
    return frozenset(affine_perm(p, a, b) for a in range(1, p) for b in range(p))


@dataclass(frozen=True)
class CyclicDecomposition:
    normalizer_part: Poly
    generic_part: Poly
    n_normalizer: int
    n_generic: int

    @property
    def total(self) -> Poly:
        return self.normalizer_part + self.generic_part


def cyclic_two_part_decomposition(p: int, u: Poly) -> CyclicDecomposition:
    """Split ``res_C tsf_C^{S_p} u`` over ``C\\S_p/C`` into normalizer and generic cosets.

    Normalizer representatives fix C under conjugation and contribute ``s.u``;
    for the others ``C ∩ sCs^-1`` is trivial and they contribute the C-orbit
    sum of ``s.u``.  For symmetric ``u`` the parts are ``(p-1) u`` and
    ``(p-1)((p-2)! - 1) u``.
    """
    C = as_group(GroupSpec(GroupKind.CYCLIC, p))
    S = as_group(GroupSpec(GroupKind.FULL_SYMMETRIC, p))
    if not is_invariant(u, C):
        raise NotInvariantError("polynomial is not fixed by the cycle")
    N = normalizer_elements(p)
    dc = double_cosets(S, C, C)
    norm = Poly.zero(u.variables)
    gen = Poly.zero(u.variables)
    nn = ng = 0
    for s, Ks in zip(dc.reps, dc.intersections):
        su = act(s, u)
        if s in N:
            if Ks.order() != p:
                raise ArithmeticError("normalizer coset with a small intersection")
            norm = norm + su
            nn += 1
        else:
            if Ks.order() != 1:
                raise ArithmeticError("generic coset with a nontrivial intersection")
            gen = gen + transfer_poly(su, Ks, C, check=False)
            ng += 1
    return CyclicDecomposition(norm, gen, nn, ng)


# ---------------------------------------------------------------------------------
# random instances


def standard_subgroups(p: int) -> List[GroupSpec]:
    return [GroupSpec(k, p) for k in (GroupKind.TRIVIAL, GroupKind.CYCLIC, GroupKind.NORMALIZER,
                                      GroupKind.SYMMETRIC_FIX_LAST, GroupKind.FULL_SYMMETRIC)]


def random_poly(p: int, rng: random.Random, max_degree: int = 4, n_terms: int = 3, bound: int = 5) -> Poly:
    terms = {}
    for _ in range(n_terms):
        d = rng.randint(0, max_degree)
        e = [0] * p
        for _ in range(d):
            e[rng.randrange(p)] += 1
        terms[tuple(e)] = rng.randint(-bound, bound)
    return Poly(terms, x_vars(p), ZZ)


def random_invariant(p: int, H: SubgroupDesc, rng: random.Random, **kw) -> Poly:
    """Orbit sum over H of a random polynomial."""
    f = random_poly(p, rng, **kw)
    return transfer_poly(f, FiniteGroup(p, frozenset([identity(p)])), H, check=False)


def random_mackey_instance(p: int, rng: random.Random):
    subs = standard_subgroups(p)
    K = rng.choice(subs)
    H = rng.choice(subs)
    f = random_invariant(p, H, rng)
    return GroupSpec(GroupKind.FULL_SYMMETRIC, p), K, H, f
