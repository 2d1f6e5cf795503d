"""Invariant lattices, named generators, generator and relation tables.

The generator-count oracle below is independent of the engine's sigma-basis
route: invariants are computed from monomial symmetric functions with sympy,
and the number of new generators in each degree is the number of non-unit
Smith invariants of the products of lower generators inside the lattice.
"""

import itertools
from functools import lru_cache

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_decomp, smith_normal_form
from sympy.utilities.iterables import multiset_permutations, partitions

from chowpgl.additive import count_r
from chowpgl.groups import GroupKind, GroupSpec
from chowpgl.lattice_invariants import (DegreeLimitExceeded, GeneratorTable, ResourceLimitExceeded, SigmaSpace,
                                        discriminant, discriminant_sigma, find_relations, gamma_generator,
                                        gamma_summation_formula, get_space, invariant_basis, invariant_basis_sigma,
                                        invariant_lattice_by_orbits, invariant_rank, is_group_invariant,
                                        is_translation_invariant, is_translation_invariant_sigma,
                                        minimal_generators, restrict_pgl_to_mu, sigma_derivation,
                                        translation_derivative)
from chowpgl.linalg import hnf
from chowpgl.polyring import GF, ZZ, Poly, from_sigma_basis, permute_variables, sigma_vars, to_sigma_basis, x_vars


# ---------------------------------------------------------------------------------
# independent oracle


@lru_cache(maxsize=None)
def partition_keys(d, p):
    out = []
    for part in partitions(d, m=p):
        lam = sorted((k for k, mult in part.items() for _ in range(mult)), reverse=True)
        out.append(tuple(lam + [0] * (p - len(lam))))
    if d == 0:
        out = [tuple([0] * p)]
    return sorted(set(out), reverse=True)


def monomial_symmetric(lam, p):
    return Poly({tuple(e): 1 for e in multiset_permutations(list(lam))}, x_vars(p))


def sym_coords(f, d, p):
    t = f.with_variables(x_vars(p)).terms
    return [t.get(k, 0) for k in partition_keys(d, p)]


@lru_cache(maxsize=None)
def oracle_lattice(p, d):
    """Saturated integer kernel of sum_i d/dx_i on monomial symmetric functions, via sympy."""
    keys = partition_keys(d, p)
    if d == 0:
        return sp.Matrix([[1]])
    cols = []
    for lam in keys:
        f = monomial_symmetric(lam, p)
        df = Poly.zero(x_vars(p))
        for v in x_vars(p):
            df = df + f.derivative(v)
        cols.append(sym_coords(df, d - 1, p))
    M = sp.Matrix(cols).T
    null = M.nullspace()
    if not null:
        return sp.zeros(0, len(keys))
    rows = []
    for v in null:
        den = sp.ilcm(*[sp.fraction(x)[1] for x in v])
        rows.append([int(x * den) for x in v])
    # saturate: with S = U K V, the rows of V^-1 matching nonzero S entries span Z^n ∩ QK
    K = sp.Matrix(rows)
    S, U, V = smith_normal_decomp(K, domain=sp.ZZ)
    return V.inv()[:K.rows, :]


def oracle_new_generator_count(table, d):
    p = table.p
    L = oracle_lattice(p, d)
    r = L.rows
    if r == 0:
        return 0
    xs = [table.x_form(i) for i in range(len(table.entries))]
    degs = table.degrees()
    low = [i for i, k in enumerate(degs) if k < d]
    prods = []

    def rec(start, deg, acc):
        if deg == d:
            prods.append(acc)
            return
        for j in range(start, len(low)):
            i = low[j]
            if deg + degs[i] <= d:
                rec(j, deg + degs[i], acc * xs[i])

    rec(0, 0, Poly.constant(1, x_vars(p)))
    if not prods:
        return r
    P = sp.Matrix([sym_coords(f, d, p) for f in prods])
    C = P * L.T * (L * L.T).inv()
    assert all(x.is_integer for x in C), "products are not integral in the oracle lattice"
    S = smith_normal_form(C, domain=sp.ZZ)
    units = sum(1 for i in range(min(S.shape)) if abs(S[i, i]) == 1)
    return r - units


# ---------------------------------------------------------------------------------


class TestTranslationInvariance:
    def test_differences_are_invariant(self):
        xs = Poly.gens(x_vars(3))
        assert is_translation_invariant(xs[0] - xs[1])
        assert not is_translation_invariant(xs[0])
        assert translation_derivative((xs[0] - xs[2]) ** 3).is_zero()

    @given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
    def test_sigma_route_agrees_with_x_route(self, cs):
        p = 3
        s = Poly.gens(sigma_vars(p))
        g = s[0] ** 2 * cs[0] + s[1] * cs[1] + s[0] * s[1] * cs[2] + s[2] * cs[3]
        x_inv = is_translation_invariant(from_sigma_basis(g, p))
        assert x_inv == sigma_derivation(g, p).is_zero() == is_translation_invariant_sigma(g, p)


class TestLattices:
    @pytest.mark.parametrize("p,top", [(3, 12), (5, 9), (7, 6)])
    def test_ranks_match_partition_count(self, p, top):
        for d in range(top + 1):
            assert invariant_rank(p, "PGL", "symmetric", d) == count_r(d, p)

    @pytest.mark.parametrize("p,top", [(3, 10), (5, 8)])
    def test_lattice_matches_sympy_oracle(self, p, top):
        for d in range(top + 1):
            L = oracle_lattice(p, d)
            ours = [sym_coords(f, d, p) for f in invariant_basis(p, "PGL", "symmetric", d)]
            assert len(ours) == L.rows
            if ours:
                assert hnf(ours) == hnf(L.tolist())

    @pytest.mark.parametrize("d", range(0, 9))
    def test_orbit_route_matches_sigma_route(self, d):
        p = 3
        orb = invariant_lattice_by_orbits(p, d)
        ours = [sym_coords(f, d, p) for f in invariant_basis(p, "PGL", "symmetric", d)]
        assert hnf(ours) == hnf(orb) if ours else orb == []

    def test_kernel_basis_equals_fast_lift(self):
        space = get_space(5, "PGL", "symmetric")
        for d in range(1, 13):
            assert hnf(space.kernel_basis(d)) == hnf(space.basis_vectors(d)) if space.rank(d) else True

    @pytest.mark.parametrize("torus", ["GL", "SL", "PGL"])
    @pytest.mark.parametrize("kind", ["cyclic", "normalizer", "symmetric-fix-last", "trivial"])
    def test_basis_elements_are_invariant(self, torus, kind):
        p = 5 if kind != "trivial" else 3
        group = GroupSpec(GroupKind(kind), p)
        for d in range(4):
            for f in invariant_basis(p, torus, group, d):
                assert is_group_invariant(f, group, torus)

    def test_gl_ranks_are_monomial_counts(self):
        # GL with the trivial group: all monomials of degree d in p variables
        for d in range(5):
            assert invariant_rank(3, "GL", "trivial", d) == sp.binomial(d + 2, 2)

    def test_degree_limit(self):
        with pytest.raises(DegreeLimitExceeded):
            invariant_basis(7, "PGL", "symmetric", 11)
        assert len(invariant_basis(7, "PGL", "symmetric", 11, limit=12)) == count_r(11, 7)

    def test_bad_prime(self):
        with pytest.raises(ValueError):
            get_space(9, "PGL", "symmetric")


class TestNamedInvariants:
    def test_gamma_p3(self):
        s1, s2, s3 = Poly.gens(sigma_vars(3))
        assert gamma_generator(2, 3) == -s1 ** 2 + s2 * 3
        assert gamma_generator(3, 3) == s1 ** 3 * 2 - s1 * s2 * 9 + s3 * 27

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_gamma_is_translation_invariant(self, p):
        for k in range(2, p + 1):
            assert sigma_derivation(gamma_generator(k, p), p).is_zero()

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_summation_formula(self, p):
        for k in range(2, p):
            assert gamma_summation_formula(k, p) == gamma_generator(k, p)
        # the displayed sum for k = p misses the p^p sigma_p term
        sp_ = Poly.var(f"sigma{p}", sigma_vars(p))
        assert gamma_summation_formula(p, p) + sp_ * p ** p == gamma_generator(p, p)

    @pytest.mark.parametrize("p", [3, 5])
    def test_discriminant_matches_sympy(self, p):
        t = sp.Symbol("t")
        sig = sp.symbols(sigma_vars(p))
        poly = t ** p + sum((-1) ** k * sig[k - 1] * t ** (p - k) for k in range(1, p + 1))
        disc = sp.discriminant(poly, t)
        sign = (-1) ** (p * (p - 1) // 2)
        ours = discriminant_sigma(p)
        expect = sp.Poly(sp.expand(sign * disc), *sig)
        assert {tuple(m): int(c) for m, c in expect.terms()} == dict(ours.items())

    @pytest.mark.parametrize("p", [3, 5])
    def test_delta_restricts_to_minus_eta_power(self, p):
        eta = Poly.var("eta", ("eta",), GF(p))
        assert restrict_pgl_to_mu(discriminant_sigma(p), p) == -(eta ** (p * p - p))

    def test_restriction_routes_agree(self):
        p = 3
        for d in range(1, 10):
            for g in invariant_basis_sigma(p, "PGL", d):
                assert restrict_pgl_to_mu(g, p) == restrict_pgl_to_mu(from_sigma_basis(g, p))

    @given(st.lists(st.integers(-4, 4), min_size=3, max_size=3), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
    def test_restriction_is_multiplicative(self, a, b):
        p = 3
        basis = [gamma_generator(2, p), gamma_generator(3, p), discriminant_sigma(p)]
        f = sum((g.scale(c) for g, c in zip(basis, a)), Poly.zero(sigma_vars(p)))
        g = sum((h.scale(c) for h, c in zip(basis, b)), Poly.zero(sigma_vars(p)))
        assert restrict_pgl_to_mu(f * g, p) == restrict_pgl_to_mu(f, p) * restrict_pgl_to_mu(g, p)

    def test_restriction_rejects_non_invariant(self):
        with pytest.raises(ValueError):
            restrict_pgl_to_mu(Poly.var("x1", x_vars(3)))


class TestGenerators:
    def test_pgl3(self):
        t = minimal_generators(3, "PGL", "symmetric", 18)
        assert t.degrees() == [2, 3, 6]
        assert t.names() == ["gamma2", "gamma3", "delta"]

    @pytest.mark.parametrize("p,top", [(3, 12), (5, 13)])
    def test_counts_match_oracle(self, p, top):
        t = minimal_generators(p, "PGL", "symmetric", top)
        for d in range(1, top + 1):
            assert t.degrees().count(d) == oracle_new_generator_count(t, d), f"degree {d}"

    def test_pgl5_has_a_degree_8_generator(self):
        # the engine and the oracle agree on a new generator in degree 8
        t = minimal_generators(5, "PGL", "symmetric", 8)
        assert 8 in t.degrees()
        assert oracle_new_generator_count(t, 8) == 1

    @pytest.mark.parametrize("p", [3, 5])
    def test_gl_and_sl(self, p):
        assert minimal_generators(p, "GL", "symmetric", p + 2).names() == [f"sigma{k}" for k in range(1, p + 1)]
        assert minimal_generators(p, "SL", "symmetric", p + 2).names() == [f"sigma{k}" for k in range(2, p + 1)]

    def test_cyclic_gl_p3_small_degrees(self):
        t = minimal_generators(3, "GL", "cyclic", 3)
        # sigma1 in degree 1; in degree 2: x1^2+x2^2+x3^2 and x1x2+x2x3+x3x1 need one more
        assert t.degrees().count(1) == 1 and t.degrees().count(2) == 1
        for i in range(len(t.entries)):
            assert is_group_invariant(t.x_form(i), GroupSpec(GroupKind.CYCLIC, 3))

    def test_generators_are_invariant_and_in_lattice(self):
        t = minimal_generators(5, "PGL", "symmetric", 12)
        for i, e in enumerate(t.entries):
            assert sigma_derivation(e.form, 5).is_zero()
            assert t.space.contains(e.form, e.degree)

    def test_json_roundtrip(self):
        t = minimal_generators(3, "PGL", "symmetric", 12)
        back = GeneratorTable.from_json(t.to_json())
        assert back.to_json() == t.to_json()

    def test_time_budget(self):
        with pytest.raises(ResourceLimitExceeded) as err:
            minimal_generators(5, "PGL", "symmetric", 20, time_budget=-1)
        assert err.value.partial is not None

    def test_limit(self):
        with pytest.raises(DegreeLimitExceeded):
            minimal_generators(3, "PGL", "symmetric", 31)


class TestRelations:
    def test_pgl3_single_relation(self):
        t = minimal_generators(3, "PGL", "symmetric", 12)
        rels = find_relations(t)
        assert len(rels.relations) == 1
        d, rel = rels.relations[0]
        g2, g3, dl = Poly.gens(rel.variables)
        assert d == 6 and rel == g2 ** 3 * 4 + g3 ** 2 - dl * 27
        assert rels.to_json()["relations"][0]["relation"] == "4*gamma2^3 + gamma3^2 - 27*delta"

    def test_relations_vanish(self):
        from chowpgl.lattice_invariants import evaluate_in_generators
        t = minimal_generators(5, "PGL", "symmetric", 8)
        rels = find_relations(t)
        for d, rel in rels.relations:
            assert evaluate_in_generators(t, rel).is_zero()

    def test_max_degree_guard(self):
        t = minimal_generators(3, "PGL", "symmetric", 6)
        with pytest.raises(ValueError):
            find_relations(t, 12)
