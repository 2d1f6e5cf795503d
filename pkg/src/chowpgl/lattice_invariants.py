"""Invariants of Weyl-group actions on torus character lattices.

The three Chow rings in play are

* ``GL``: ``Z[x1..xp]``;
* ``SL``: ``Z[x1..xp]/(x1+...+xp)``, represented either in the sigma-basis
  without ``sigma1`` or, for non-symmetric groups, by eliminating ``xp``;
* ``PGL``: the subring generated by the differences ``xi - xj``, which is the
  subring of translation-invariant polynomials ``f(x + t) = f(x)``.

For the full symmetric group all computations happen in the sigma-basis,
where invariance under translation is the kernel of the derivation
``D(sigma_k) = (p-k+1) sigma_{k-1}``.  For the other subgroups we use orbit
sums of x-monomials.  The x-monomial route for ``(PGL, S_p)`` is kept as an
independent cross-check (:func:`invariant_lattice_by_orbits`).
"""

from __future__ import annotations

import enum
import hashlib
import itertools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .groups import GroupKind, GroupSpec, Perm
from .linalg import (EchelonLattice, IntegrityError, hnf, integer_kernel, minimal_generator_count,
                     smith_with_left_inverse)
from .polyring import (GF, ZZ, Poly, elementary_symmetric, from_sigma_basis, is_prime,
                       permute_variables, sigma_vars, sigma_weights, substitute, to_sigma_basis,
                       x_vars, x_vars_in)

ENGINE_VERSION = "1"

DEFAULT_DEGREE_LIMITS = {3: 30, 5: 20, 7: 10}


def degree_limit(p: int) -> int:
    return DEFAULT_DEGREE_LIMITS.get(p, 8)


class DegreeLimitExceeded(RuntimeError):
    """Requested degree exceeds the configured limit."""


class ResourceLimitExceeded(RuntimeError):
    """A time budget ran out; ``partial`` holds what was computed."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class TorusKind(str, enum.Enum):
    GL = "GL"
    SL = "SL"
    PGL = "PGL"


def _check_p(p: int):
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def _as_group(group, p: int) -> GroupSpec:
    if isinstance(group, GroupSpec):
        return group
    return GroupSpec(GroupKind(group), p)


# ---------------------------------------------------------------------------------
# translation invariance


def is_translation_invariant(f: Poly) -> bool:
    """``f(x1+t, ..., xp+t) == f`` for an integer polynomial in the x-variables."""
    if not f.domain.is_integers:
        raise ValueError("translation invariance is tested over the integers")
    xs = x_vars_in(f)
    if not xs:
        return True
    t = Poly.var("t", f.variables + ("t",))
    shifted = substitute(f, {v: Poly.var(v, f.variables + ("t",)) + t for v in xs})
    return shifted == f


def translation_derivative(f: Poly) -> Poly:
    """``sum_i df/dx_i``; zero exactly for translation-invariant ``f`` (characteristic 0)."""
    out = Poly.zero(f.variables, f.domain)
    for v in x_vars_in(f):
        out = out + f.derivative(v)
    return out


def shift_sigma(g: Poly, p: int) -> Poly:
    """Substitute the shift formula ``sigma_k -> sum_i C(p-k+i, i) t^i sigma_{k-i}``."""
    names = sigma_vars(p) + ("t",)
    t = Poly.var("t", names)
    sig = [Poly.constant(1, names)] + [Poly.var(s, names) for s in sigma_vars(p)]
    images = {}
    for k in range(1, p + 1):
        acc = Poly.zero(names)
        for i in range(k + 1):
            acc = acc + (t ** i) * sig[k - i] * comb(p - k + i, i)
        images[f"sigma{k}"] = acc
    return substitute(g.with_variables(sigma_vars(p)), images)


def is_translation_invariant_sigma(g: Poly, p: int) -> bool:
    return shift_sigma(g, p) == g.with_variables(sigma_vars(p))


def sigma_derivation(g: Poly, p: int) -> Poly:
    """The derivation ``D(sigma_k) = (p-k+1) sigma_{k-1}`` (``sigma_0 = 1``)."""
    g = g.with_variables(sigma_vars(p))
    out: Dict[Tuple[int, ...], int] = {}
    for e, c in g.items():
        for k in range(p):
            if e[k]:
                ne = list(e)
                ne[k] -= 1
                if k > 0:
                    ne[k - 1] += 1
                ne = tuple(ne)
                out[ne] = out.get(ne, 0) + c * e[k] * (p - k)
    return Poly(out, sigma_vars(p), g.domain)


# ---------------------------------------------------------------------------------
# monomial enumeration


@lru_cache(maxsize=None)
def weighted_exponents(d: int, weights: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    """Exponent vectors ``e`` with ``sum e_i w_i = d``, in descending lex order."""
    n = len(weights)
    out = []

    def rec(i, rem, acc):
        if i == n:
            if rem == 0:
                out.append(tuple(acc))
            return
        w = weights[i]
        if w == 0:
            rec(i + 1, rem, acc + [0])
            return
        for k in range(rem // w, -1, -1):
            rec(i + 1, rem - k * w, acc + [k])

    rec(0, d, [])
    return tuple(out)


@lru_cache(maxsize=None)
def x_monomials(d: int, n: int) -> Tuple[Tuple[int, ...], ...]:
    return weighted_exponents(d, (1,) * n)


def _act(e: Tuple[int, ...], g: Perm) -> Tuple[int, ...]:
    out = [0] * len(e)
    for i, k in enumerate(e):
        out[g[i]] = k
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_orbits(d: int, gens: Tuple[Perm, ...], n: int) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    """Orbits of degree-d monomials; each orbit sorted descending, orbits sorted by representative."""
    seen = set()
    orbits = []
    for m in x_monomials(d, n):
        if m in seen:
            continue
        orb = {m}
        frontier = [m]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = _act(a, g)
                    if b not in orb:
                        orb.add(b)
                        nxt.append(b)
            frontier = nxt
        seen |= orb
        orbits.append(tuple(sorted(orb, reverse=True)))
    orbits.sort(key=lambda o: o[0], reverse=True)
    return tuple(orbits)


def orbit_sum(orbit: Sequence[Tuple[int, ...]], p: int) -> Poly:
    return Poly({e: 1 for e in orbit}, x_vars(p), ZZ, _clean=True)


def sl_reduce(f: Poly, p: int) -> Poly:
    """Representative of ``f mod sigma1`` in ``Z[x1..x_{p-1}]`` (eliminate ``xp``)."""
    f = f.with_variables(x_vars(p)) if set(f.variables) <= set(x_vars(p)) else f
    rest = x_vars(p - 1)
    xp = Poly.zero(rest)
    for v in rest:
        xp = xp - Poly.var(v, rest)
    g = substitute(f, {f"x{p}": xp})
    return g.with_variables(rest) if set(g.used_variables()) <= set(rest) else g


# ---------------------------------------------------------------------------------
# invariant spaces


def _inverse_fraction(B: List[List[int]]) -> List[List[Fraction]]:
    n = len(B)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(B)]
    for c in range(n):
        k = next(i for i in range(c, n) if A[i][c])
        A[c], A[k] = A[k], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


class InvariantSpace:
    """Degree-wise Z-basis of an invariant ring in a fixed ambient coordinate system."""

    def __init__(self, p: int, torus: TorusKind, group: GroupSpec):
        self.p = p
        self.torus = TorusKind(torus)
        self.group = group
        self._basis: Dict[int, List[List[int]]] = {}
        self._lattice: Dict[int, EchelonLattice] = {}

    # subclasses provide: variables, weights, keys(d), to_x(f), from_x(f), _compute_basis(d)
    def coords(self, f: Poly, d: int) -> List[int]:
        f = f.with_variables(self.variables)
        index = self.key_index(d)
        v = [0] * len(index)
        for e, c in f.items():
            if e in index:
                v[index[e]] = c
            elif not self._ignorable(e, d):
                raise IntegrityError(f"monomial {e} is outside the degree-{d} coordinate system")
        return v

    def _ignorable(self, e, d) -> bool:
        return False

    @lru_cache(maxsize=None)
    def key_index(self, d: int) -> Dict[Tuple[int, ...], int]:
        return {k: i for i, k in enumerate(self.keys(d))}

    def from_coords(self, vec: Sequence[int], d: int) -> Poly:
        return Poly({k: c for k, c in zip(self.keys(d), vec) if c}, self.variables, ZZ, _clean=True)

    def basis_vectors(self, d: int) -> List[List[int]]:
        if d not in self._basis:
            self._basis[d] = self._compute_basis(d)
        return self._basis[d]

    def lattice(self, d: int) -> EchelonLattice:
        if d not in self._lattice:
            lat = EchelonLattice(len(self.keys(d)))
            for v in self.basis_vectors(d):
                lat.insert(v)
            self._lattice[d] = lat
        return self._lattice[d]

    def basis(self, d: int) -> List[Poly]:
        return [self.from_coords(v, d) for v in self.basis_vectors(d)]

    def rank(self, d: int) -> int:
        return len(self.basis_vectors(d))

    def contains(self, f: Poly, d: int) -> bool:
        try:
            return self.lattice(d).contains(self.coords(f, d))
        except IntegrityError:
            return False

    def one(self) -> Poly:
        return Poly.constant(1, self.variables)

    def degree_of(self, f: Poly) -> int:
        return f.degree(self.weight_map)

    @property
    def weight_map(self):
        return dict(zip(self.variables, self.weights))


class SigmaSpace(InvariantSpace):
    """Ambient ``Z[sigma1..sigmap]`` (full symmetric group)."""

    def __init__(self, p, torus, group):
        super().__init__(p, torus, group)
        self.variables = sigma_vars(p)
        self.weights = tuple(range(1, p + 1))

    @lru_cache(maxsize=None)
    def keys(self, d: int):
        ks = weighted_exponents(d, self.weights)
        if self.torus is TorusKind.SL:
            ks = tuple(k for k in ks if k[0] == 0)
        return ks

    def _ignorable(self, e, d):
        # sigma1-multiples vanish in the SL quotient
        return self.torus is TorusKind.SL and e[0] > 0

    def coords(self, f, d):
        return super().coords(f, d)

    def _compute_basis(self, d):
        n = len(self.keys(d))
        if self.torus is not TorusKind.PGL:
            return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        if d == 0:
            return [[1]]
        return self._lift_basis(d)

    def kernel_basis(self, d):
        """The same lattice as the saturated integer kernel of D (slower; kept for cross-checks)."""
        if d == 0:
            return [[1]]
        cols = [self.coords_lower(sigma_derivation(Poly({k: 1}, self.variables, _clean=True), self.p), d - 1)
                for k in self.keys(d)]
        return integer_kernel(cols, len(self.keys(d - 1)))

    def lift_from_sigma1_free(self, g: Dict[Tuple[int, ...], Fraction]) -> Dict[Tuple[int, ...], Fraction]:
        """The unique f in ker D (over Q) whose sigma1-free part is g.

        Writing ``f = sum_a sigma1^a f_a`` and ``D = p d/ds1 + (p-1) s1 d/ds2 + E``,
        ``D f = 0`` becomes ``p (a+1) f_{a+1} = -((p-1) d/ds2 f_{a-1} + E f_a)``.
        """
        p = self.p
        layers = [dict(g)]
        prev: Dict[Tuple[int, ...], Fraction] = {}
        a = 0
        while layers[-1] or prev:
            cur = layers[-1]
            nxt: Dict[Tuple[int, ...], Fraction] = {}
            for e, c in prev.items():
                if e[1]:
                    ne = list(e)
                    ne[1] -= 1
                    ne = tuple(ne)
                    nxt[ne] = nxt.get(ne, 0) + (p - 1) * e[1] * c
            for e, c in cur.items():
                for k in range(2, p):  # sigma_{k+1} -> (p-k) sigma_k, k >= 2
                    if e[k]:
                        ne = list(e)
                        ne[k] -= 1
                        ne[k - 1] += 1
                        ne = tuple(ne)
                        nxt[ne] = nxt.get(ne, 0) + (p - k) * e[k] * c
            div = p * (a + 1)
            nxt = {e: -Fraction(c) / div for e, c in nxt.items() if c}
            prev = cur
            layers.append(nxt)
            a += 1
        out: Dict[Tuple[int, ...], Fraction] = {}
        for a, layer in enumerate(layers):
            for e, c in layer.items():
                out[(a,) + e[1:]] = c
        return out

    def _lift_basis(self, d):
        # ker D is isomorphic over Q to the sigma1-free monomials; the integral
        # elements form the dual of Z^r + (columns of the lift matrix)
        free = [k for k in self.keys(d) if k[0] == 0]
        r = len(free)
        if r == 0:
            return []
        index = self.key_index(d)
        n = len(self.keys(d))
        F = [[Fraction(0)] * n for _ in range(r)]
        for m, e in enumerate(free):
            for k, c in self.lift_from_sigma1_free({e: Fraction(1)}).items():
                F[m][index[k]] = c
        den = 1
        for row in F:
            for c in row:
                den = den * c.denominator // gcd(den, c.denominator)
        Fi = [[int(c * den) for c in row] for row in F]
        lat = EchelonLattice(r)
        for m in range(r):
            lat.insert([den if i == m else 0 for i in range(r)])
        for j in range(n):
            col = [Fi[m][j] for m in range(r)]
            if any(col):
                lat.insert(col)
        B = lat.basis()  # rows span den * (Z^r + cols)
        # dual lattice of span(B / den) has basis den * B^{-T}
        Binv = _inverse_fraction(B)
        dual = [[Binv[i][j] * den for i in range(r)] for j in range(r)]  # rows of den * B^{-T}
        rows = []
        for g in dual:
            if any(c.denominator != 1 for c in g):
                raise IntegrityError("dual basis is not integral")
            gi = [int(c) for c in g]
            vec = [sum(a * row[j] for a, row in zip(gi, Fi) if a) for j in range(n)]
            if any(c % den for c in vec):
                raise IntegrityError("lifted invariant is not integral")
            rows.append([c // den for c in vec])
        return hnf(rows, n)

    def coords_lower(self, f, d):
        index = {k: i for i, k in enumerate(weighted_exponents(d, self.weights))}
        v = [0] * len(index)
        for e, c in f.with_variables(self.variables).items():
            v[index[e]] = c
        return v

    def to_x(self, f: Poly) -> Poly:
        g = from_sigma_basis(f, self.p)
        return sl_reduce(g, self.p) if self.torus is TorusKind.SL else g

    def from_x(self, f: Poly) -> Poly:
        if self.torus is TorusKind.SL:
            raise ValueError("SL elements are given in sigma-form")
        return to_sigma_basis(f, self.p)

    def normalize(self, f: Poly) -> Poly:
        f = f.with_variables(self.variables)
        if self.torus is TorusKind.SL:
            return Poly({e: c for e, c in f.items() if e[0] == 0}, self.variables, f.domain, _clean=True)
        return f


class OrbitSpace(InvariantSpace):
    """Ambient x-monomials; coordinates are coefficients of orbit representatives."""

    def __init__(self, p, torus, group):
        super().__init__(p, torus, group)
        if self.torus is TorusKind.SL:
            self.variables = x_vars(p - 1)
        else:
            self.variables = x_vars(p)
        self.weights = (1,) * len(self.variables)
        self.gens = tuple(group.generators)

    def orbits(self, d):
        return monomial_orbits(d, self.gens, self.p)

    @lru_cache(maxsize=None)
    def keys(self, d: int):
        if self.torus is TorusKind.SL:
            return x_monomials(d, self.p - 1)
        return tuple(o[0] for o in self.orbits(d))

    def coords(self, f, d):
        f = f.with_variables(self.variables)
        index = self.key_index(d)
        v = [0] * len(index)
        for e, c in f.items():
            i = index.get(e)
            if i is not None:
                v[i] = c
        return v

    def from_coords(self, vec, d):
        if self.torus is TorusKind.SL:
            return super().from_coords(vec, d)
        terms = {}
        for orb, c in zip(self.orbits(d), vec):
            if c:
                for e in orb:
                    terms[e] = c
        return Poly(terms, self.variables, ZZ, _clean=True)

    def _compute_basis(self, d):
        p = self.p
        orbs = self.orbits(d)
        if self.torus is TorusKind.GL:
            n = len(orbs)
            return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        if self.torus is TorusKind.SL:
            rows = [self.coords(sl_reduce(orbit_sum(o, p), p), d) for o in orbs]
            lat = EchelonLattice(len(self.keys(d)))
            for r in rows:
                lat.insert(r)
            return lat.basis()
        if d == 0:
            return [[1]]
        lower = {o[0]: i for i, o in enumerate(monomial_orbits(d - 1, self.gens, p))}
        cols = []
        for o in orbs:
            df = translation_derivative(orbit_sum(o, p))
            col = [0] * len(lower)
            for e, c in df.items():
                i = lower.get(e)
                if i is not None:
                    col[i] = c
            cols.append(col)
        return integer_kernel(cols, len(lower))

    def to_x(self, f):
        return f

    def from_x(self, f):
        if self.torus is TorusKind.SL:
            return sl_reduce(f, self.p)
        return f.with_variables(self.variables)

    def normalize(self, f):
        return self.from_x(f)


@lru_cache(maxsize=None)
def get_space(p: int, torus, group) -> InvariantSpace:
    _check_p(p)
    torus = TorusKind(torus)
    group = _as_group(group, p)
    if group.kind is GroupKind.FULL_SYMMETRIC and not group.extra_generators:
        return SigmaSpace(p, torus, group)
    return OrbitSpace(p, torus, group)


def _check_limit(p, d, limit):
    lim = degree_limit(p) if limit is None else limit
    if d > lim:
        raise DegreeLimitExceeded(f"degree {d} exceeds the configured limit {lim} for p={p}")


def invariant_rank(p: int, torus, group, d: int) -> int:
    """Z-rank of the degree-d invariants."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return get_space(p, torus, group).rank(d)


def invariant_basis(p: int, torus, group, d: int, limit: Optional[int] = None) -> List[Poly]:
    """Z-basis of the degree-d invariants, as polynomials in the x-variables.

    For ``SL`` the polynomials are the representatives with ``xp`` eliminated.
    """
    _check_limit(p, d, limit)
    space = get_space(p, torus, group)
    return [space.to_x(f) for f in space.basis(d)]


def invariant_basis_sigma(p: int, torus, d: int, limit: Optional[int] = None) -> List[Poly]:
    """Z-basis of the degree-d ``S_p``-invariants written in ``sigma1..sigmap``."""
    _check_limit(p, d, limit)
    return get_space(p, torus, GroupKind.FULL_SYMMETRIC).basis(d)


def is_group_invariant(f: Poly, group: GroupSpec, torus=TorusKind.GL) -> bool:
    p = group.p
    for g in group.generators:
        h = permute_variables(f.with_variables(x_vars(p)) if set(f.variables) <= set(x_vars(p)) else f, g)
        if TorusKind(torus) is TorusKind.SL:
            if sl_reduce(h, p) != sl_reduce(f, p):
                return False
        elif h != f:
            return False
    return True


def invariant_lattice_by_orbits(p: int, d: int) -> List[List[int]]:
    """Degree-d ``(PGL, S_p)`` invariants by brute force, in orbit-sum coordinates.

    Kernel of ``sum_i d/dx_i`` on the orbit sums of x-monomials; the HNF rows
    are coefficient vectors over the partitions of d into at most p parts.
    """
    orbs = monomial_orbits(d, GroupSpec(GroupKind.FULL_SYMMETRIC, p).generators, p)
    if d == 0:
        return [[1]]
    lower = {o[0]: i for i, o in enumerate(monomial_orbits(d - 1, GroupSpec(GroupKind.FULL_SYMMETRIC, p).generators, p))}
    cols = []
    for o in orbs:
        df = translation_derivative(orbit_sum(o, p))
        col = [0] * len(lower)
        for e, c in df.items():
            if e in lower:
                col[lower[e]] = c
        cols.append(col)
    return integer_kernel(cols, len(lower))


def orbit_coordinates(f: Poly, p: int, d: int) -> List[int]:
    """Coefficients of a symmetric x-polynomial at the partition representatives."""
    f = f.with_variables(x_vars(p))
    orbs = monomial_orbits(d, GroupSpec(GroupKind.FULL_SYMMETRIC, p).generators, p)
    terms = f.terms
    return [terms.get(o[0], 0) for o in orbs]


# ---------------------------------------------------------------------------------
# named invariants


@lru_cache(maxsize=None)
def gamma_generator(k: int, p: int) -> Poly:
    """``gamma_k`` in the sigma-basis.

    ``p^k sigma_k(x - sigma1/p) = sigma_k(p x - sigma1)`` is computed over Z
    and divided by ``p`` for ``k < p`` (``gamma_k = p^(k-1) sigma_k(x - sigma1/p)``),
    kept as is for ``k = p``.
    """
    _check_p(p)
    if not 2 <= k <= p:
        raise ValueError(f"gamma_k is defined for 2 <= k <= p, got k={k}")
    xs = x_vars(p)
    s1 = elementary_symmetric(1, p)
    shifted = substitute(elementary_symmetric(k, p), {v: Poly.var(v, xs) * p - s1 for v in xs})
    sig = to_sigma_basis(shifted, p)
    return sig.exact_div(p) if k < p else sig


def gamma_summation_formula(k: int, p: int) -> Poly:
    """The closed summation for ``gamma_k`` as displayed in the literature.

    For ``k = p`` the displayed sum starts at ``i = 1`` and so lacks the
    ``p^p sigma_p`` term; it is reproduced literally here.
    """
    names = sigma_vars(p)
    s = [Poly.constant(1, names)] + [Poly.var(v, names) for v in names]
    out = Poly.zero(names)
    if k < p:
        for i in range(0, k - 1):
            out = out + s[k - i] * s[1] ** i * ((-1) ** i * p ** (k - i - 1) * comb(p - k + i, i))
        last = Fraction((-1) ** (k - 1) * (k - 1), k) * comb(p - 1, k - 1)
        if last.denominator != 1:
            raise ValueError("non-integral leading coefficient")
        out = out + s[1] ** k * int(last)
    else:
        for i in range(1, p - 1):
            out = out + s[p - i] * s[1] ** i * ((-1) ** i * p ** (p - i))
        out = out + s[1] ** p * (p - 1)
    return out


@lru_cache(maxsize=None)
def discriminant(p: int) -> Poly:
    """``delta = prod_{i != j} (x_i - x_j)`` in the x-variables."""
    _check_p(p) if p > 2 else None
    xs = Poly.gens(x_vars(p))
    out = Poly.constant(1, x_vars(p))
    for i in range(p):
        for j in range(p):
            if i != j:
                out = out * (xs[i] - xs[j])
    return out


@lru_cache(maxsize=None)
def discriminant_sigma(p: int) -> Poly:
    return to_sigma_basis(discriminant(p), p)


def tau_generator(k: int, p: int) -> Poly:
    """Image of ``sigma_k`` in the SL quotient (sigma-form)."""
    return Poly.var(f"sigma{k}", sigma_vars(p))


# ---------------------------------------------------------------------------------
# restriction to mu_p


def _eta(p):
    return Poly.var("eta", ("eta",), GF(p))


def restrict_pgl_to_mu(f: Poly, p: Optional[int] = None, check: bool = True) -> Poly:
    """Image under ``x_i -> i*eta`` in ``F_p[eta]``.

    Accepts x-form polynomials and sigma-form polynomials (variables
    ``sigma1..sigmap``); in the latter case ``sigma_{p-1} -> -eta^{p-1}`` and the
    other ``sigma_k`` vanish, because ``prod_{a in F_p}(1 + a T) = 1 - T^{p-1}``.
    Raises ``ValueError`` for polynomials outside the PGL character ring.
    """
    sig = [v for v in f.variables if v.startswith("sigma")]
    if sig and not x_vars_in(f):
        if p is None:
            p = max(int(v[5:]) for v in sig)
        g = f.with_variables(sigma_vars(p))
        if check and sigma_derivation(g, p):
            raise ValueError("polynomial is not translation invariant")
        out: Dict[Tuple[int], int] = {}
        for e, c in g.items():
            if any(k for i, k in enumerate(e) if i != p - 2):
                continue
            m = e[p - 2]
            out[((p - 1) * m,)] = (out.get(((p - 1) * m,), 0) + c * (-1) ** m) % p
        return Poly(out, ("eta",), GF(p))
    xs = x_vars_in(f)
    if p is None:
        p = len(xs)
    g = f.with_variables(x_vars(p)) if set(f.variables) <= set(x_vars(p)) else f
    if check and translation_derivative(g):
        raise ValueError("polynomial is not translation invariant")
    out = {}
    idx = [g.variables.index(v) for v in x_vars(p)]
    for e, c in g.items():
        val = c
        deg = 0
        for i, pos in enumerate(idx):
            k = e[pos]
            if k:
                val = val * pow(i + 1, k, p) % p
                deg += k
        if val % p:
            out[(deg,)] = (out.get((deg,), 0) + val) % p
    return Poly(out, ("eta",), GF(p))


# ---------------------------------------------------------------------------------
# generator and relation tables


@dataclass
class GeneratorEntry:
    degree: int
    name: str
    form: Poly  # in the ambient coordinates of the space
    preferred: bool = False


@dataclass
class GeneratorTable:
    p: int
    torus: TorusKind
    group: GroupSpec
    max_degree: int
    entries: List[GeneratorEntry] = field(default_factory=list)

    @property
    def space(self) -> InvariantSpace:
        return get_space(self.p, self.torus, self.group)

    def degrees(self) -> List[int]:
        return [e.degree for e in self.entries]

    def names(self) -> List[str]:
        return [e.name for e in self.entries]

    def x_form(self, i: int) -> Poly:
        return self.space.to_x(self.entries[i].form)

    def sigma_form(self, i: int) -> Optional[Poly]:
        return self.entries[i].form if isinstance(self.space, SigmaSpace) else None

    def to_json(self) -> dict:
        ents = []
        for i, e in enumerate(self.entries):
            item = {"degree": e.degree, "name": e.name, "form": e.form.to_json()}
            if isinstance(self.space, SigmaSpace):
                item["sigma_form"] = e.form.to_text()
            x_text = self.x_form(i).to_text()
            item["x_form_hash"] = hashlib.sha256(x_text.encode()).hexdigest()
            ents.append(item)
        return {"p": self.p, "torus": self.torus.value, "group": self.group.label,
                "max_degree": self.max_degree, "engine_version": ENGINE_VERSION, "entries": ents}

    @classmethod
    def from_json(cls, obj) -> "GeneratorTable":
        p = obj["p"]
        group = GroupSpec(GroupKind(obj["group"]), p)
        entries = [GeneratorEntry(e["degree"], e["name"], Poly.from_json(e["form"])) for e in obj["entries"]]
        return cls(p, TorusKind(obj["torus"]), group, obj["max_degree"], entries)


def standard_candidates(p: int, torus, group) -> Dict[int, List[Tuple[str, Poly]]]:
    """Named invariants tried first when choosing generators (ambient forms)."""
    torus = TorusKind(torus)
    group = _as_group(group, p)
    if group.kind is not GroupKind.FULL_SYMMETRIC or group.extra_generators:
        return {}
    out: Dict[int, List[Tuple[str, Poly]]] = {}
    if torus is TorusKind.PGL:
        for k in range(2, p + 1):
            out.setdefault(k, []).append((f"gamma{k}", gamma_generator(k, p)))
        out.setdefault(p * p - p, []).append(("delta", discriminant_sigma(p)))
    else:
        start = 1 if torus is TorusKind.GL else 2
        for k in range(start, p + 1):
            out.setdefault(k, []).append((f"sigma{k}", Poly.var(f"sigma{k}", sigma_vars(p))))
    return out


def _monomials_in(degrees: Sequence[int], d: int):
    return weighted_exponents(d, tuple(degrees))


class _ProductCache:
    def __init__(self, space: InvariantSpace):
        self.space = space
        self.forms: List[Poly] = []
        self.memo: Dict[Tuple[Tuple[int, int], ...], Poly] = {(): space.one()}

    def add(self, f: Poly):
        self.forms.append(f)

    def product(self, e: Sequence[int]) -> Poly:
        key = tuple((i, k) for i, k in enumerate(e) if k)
        return self._prod(key)

    def _prod(self, key):
        if key not in self.memo:
            (i, k), rest = key[0], key[1:]
            smaller = ((i, k - 1),) + rest if k > 1 else rest
            val = self._prod(smaller) * self.forms[i]
            if isinstance(self.space, SigmaSpace):
                val = self.space.normalize(val)
            self.memo[key] = val
        return self.memo[key]


def minimal_generators(p: int, torus, group, max_degree: int, prefer="standard",
                       limit: Optional[int] = None, time_budget: Optional[float] = None) -> GeneratorTable:
    """Minimal homogeneous Z-algebra generators up to ``max_degree``.

    In each degree the products of earlier generators span a submodule ``P_d``
    of the invariants ``I_d``; the new generators lift a minimal generating set
    of ``I_d / P_d``.  Candidates from ``prefer`` (``"standard"``: the gamma_k and
    delta for PGL, the sigma_k otherwise; or a dict degree -> [(name, form)])
    are taken first whenever each one lowers the number of generators still
    needed; the rest come from the Smith normal form of ``P_d`` in ``I_d``.
    """
    _check_limit(p, max_degree, limit)
    torus = TorusKind(torus)
    group = _as_group(group, p)
    space = get_space(p, torus, group)
    if prefer == "standard":
        prefer = standard_candidates(p, torus, group)
    prefer = prefer or {}
    table = GeneratorTable(p, torus, group, max_degree)
    cache = _ProductCache(space)
    start = time.monotonic()
    for d in range(1, max_degree + 1):
        if time_budget is not None and time.monotonic() - start > time_budget:
            raise ResourceLimitExceeded(f"time budget exhausted before degree {d}", partial=table)
        r = space.rank(d)
        if r == 0:
            continue
        basis = space.basis_vectors(d)
        lat = space.lattice(d)
        current = []
        for e in _monomials_in([x.degree for x in table.entries], d):
            if any(e):
                current.append(lat.coordinates(space.coords(cache.product(e), d)))
        mu = minimal_generator_count(current, r)
        new: List[GeneratorEntry] = []
        for name, cand in prefer.get(d, []):
            if mu == 0:
                break
            cand = space.normalize(cand)
            cv = lat.coordinates(space.coords(cand, d))
            m2 = minimal_generator_count(current + [cv], r)
            if m2 < mu:
                new.append(GeneratorEntry(d, name, cand, preferred=True))
                current.append(cv)
                mu = m2
        if mu:
            diag, W = smith_with_left_inverse(current, r)
            lifted = [W[i] for i, di in enumerate(diag) if di != 1]
            for w in lifted:
                vec = [sum(w[j] * basis[j][c] for j in range(r)) for c in range(len(basis[0]))]
                new.append(GeneratorEntry(d, "", space.from_coords(vec, d)))
        unnamed = [g for g in new if not g.name]
        for k, g in enumerate(unnamed):
            g.name = f"g{d}" if len(unnamed) == 1 else f"g{d}_{k + 1}"
        for g in new:
            table.entries.append(g)
            cache.add(g.form)
    return table


@dataclass
class RelationTable:
    table: GeneratorTable
    max_degree: int
    relations: List[Tuple[int, Poly]] = field(default_factory=list)
    kernels: Dict[int, List[List[int]]] = field(default_factory=dict)

    def generator_variables(self) -> Tuple[str, ...]:
        return tuple(self.table.names())

    def to_json(self) -> dict:
        return {"table": self.table.to_json(), "max_degree": self.max_degree,
                "relations": [{"degree": d, "relation": r.to_text()} for d, r in self.relations]}


def evaluate_in_generators(table: GeneratorTable, rel: Poly) -> Poly:
    """Substitute the generator forms (ambient coordinates) into ``rel``."""
    space = table.space
    subs = {e.name: e.form for e in table.entries}
    val = substitute(rel, subs)
    if isinstance(space, SigmaSpace):
        val = space.normalize(val)
    return val


def find_relations(table: GeneratorTable, max_degree: Optional[int] = None) -> RelationTable:
    """Minimal generators of the relation ideal among the table entries.

    Degree by degree the kernel of the evaluation map on generator monomials
    is computed exactly (saturated, HNF); relations are kept when not
    already in the ideal generated by lower-degree relations.
    """
    if max_degree is None:
        max_degree = table.max_degree
    if max_degree > table.max_degree:
        raise ValueError("table is only complete up to its own max_degree")
    space = table.space
    names = tuple(table.names())
    degs = tuple(table.degrees())
    out = RelationTable(table, max_degree)
    if not names:
        return out
    cache = _ProductCache(space)
    for e in table.entries:
        cache.add(e.form)
    for d in range(1, max_degree + 1):
        monos = _monomials_in(degs, d)
        if not monos:
            continue
        nk = len(space.keys(d))
        cols = [space.coords(cache.product(m), d) for m in monos]
        kern = integer_kernel(cols, nk)
        out.kernels[d] = kern
        if not kern:
            continue
        klat = EchelonLattice(len(monos))
        for v in kern:
            klat.insert(v)
        mindex = {m: i for i, m in enumerate(monos)}
        current = []
        for rd, rel in out.relations:
            for m in _monomials_in(degs, d - rd):
                vec = [0] * len(monos)
                shifted = rel.with_variables(names)
                for e, c in shifted.items():
                    vec[mindex[tuple(a + b for a, b in zip(e, m))]] += c
                current.append(klat.coordinates(vec))
        r = len(kern)
        diag, W = smith_with_left_inverse(current, r)
        for i, di in enumerate(diag):
            if di == 1:
                continue
            w = W[i]
            vec = [sum(w[j] * kern[j][c] for j in range(r)) for c in range(len(monos))]
            lead = next(c for c in vec if c)
            if lead < 0:
                vec = [-c for c in vec]
            rel = Poly({m: c for m, c in zip(monos, vec) if c}, names, ZZ)
            out.relations.append((d, rel))
    return out
