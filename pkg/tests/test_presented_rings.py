import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowpgl import cycmu
from chowpgl.additive import chow_group_descriptor, cohomology_group_descriptor
from chowpgl.groups import GroupKind, GroupSpec
from chowpgl.lattice_invariants import (discriminant_sigma, gamma_generator, invariant_basis_sigma,
                                        is_translation_invariant, restrict_pgl_to_mu)
from chowpgl.linalg import rank_mod_p
from chowpgl.polyring import GF, Poly, elementary_symmetric, sigma_vars, x_vars
from chowpgl.presented_rings import (AbelianGroupDesc, BPGLElement, CycGLElement, HBPGLElement,
                                     adjoint_total_chern_on_torus, bpgl_chern_class, bpgl_epsilon, bpgl_multiply,
                                     bpgl_restrict, cycgl_injectivity_check, cycgl_model, cycgl_multiply,
                                     cycgl_restrict_to_cycmu, cycgl_transfer, cycpgl_model, graded_group_from_model,
                                     hbpgl_restrict)
from chowpgl.transfers import is_invariant, random_poly


def xs(p):
    return Poly.gens(x_vars(p))


def random_cycgl(model, rng, max_degree=4):
    p = model.p
    u = model.transfer(random_poly(p, rng, max_degree=max_degree))
    inv = u.inv
    if rng.random() < 0.7:
        k = rng.randint(0, 2)
        inv = inv + elementary_symmetric(p, p) ** k * rng.randint(-3, 3)
    tors = {(rng.randint(1, 3), rng.randint(0, 2)): rng.randint(1, p - 1) for _ in range(rng.randint(0, 2))}
    return model.element(inv, tors)


def random_bpgl(p, rng):
    inv = Poly.zero(sigma_vars(p))
    for d in rng.sample(range(0, 11), 3):
        for g in invariant_basis_sigma(p, "PGL", d):
            inv = inv + g * rng.randint(-2, 2)
    tors = {(rng.randint(0, 1), rng.randint(1, 3)): rng.randint(1, p - 1) for _ in range(rng.randint(0, 2))}
    return BPGLElement.make(p, inv, tors)


class TestCycGL:
    def test_sigma_p_times_xi(self):
        m = cycgl_model(3)
        prod = m.sigma(3) * m.xi()
        assert prod.tors == {(1, 1): 1} and prod.inv.is_zero()

    def test_orbit_sum_annihilates_xi(self):
        m = cycgl_model(3)
        x1, x2, _ = xs(3)
        u = m.transfer(x1 ** 2 * x2)
        assert (u * m.xi()).is_zero()

    def test_p_xi(self):
        m = cycgl_model(5)
        assert m.xi().scale(5).is_zero()

    @pytest.mark.parametrize("p", [3, 5])
    def test_transfer_examples(self, p):
        m = cycgl_model(p)
        x = xs(p)
        assert cycgl_transfer(x[0]).inv == elementary_symmetric(1, p)
        prod = x[0]
        for v in x[1:]:
            prod = prod * v
        assert cycgl_transfer(prod).inv == elementary_symmetric(p, p).scale(p)
        assert cycgl_transfer(Poly.constant(1, x_vars(p))).inv == Poly.constant(p, x_vars(p))

    def test_restriction_examples(self):
        p = 3
        m = cycgl_model(p)
        x, y = cycmu.xi(p), cycmu.eta(p)
        assert cycgl_restrict_to_cycmu(m.sigma(p)) == y ** p - y * x ** (p - 1)
        assert cycgl_restrict_to_cycmu(cycgl_transfer(xs(p)[0] ** 2)).is_zero()
        assert cycgl_restrict_to_cycmu(m.xi()) == x

    def test_non_invariant_rejected(self):
        with pytest.raises(ValueError):
            cycgl_model(3).element(xs(3)[0])
        with pytest.raises(ValueError):
            cycgl_model(3).element(tors={(0, 1): 1})

    @settings(max_examples=30)
    @given(st.integers(0, 10 ** 6), st.sampled_from([3, 5]))
    def test_ring_axioms(self, seed, p):
        rng = random.Random(seed)
        m = cycgl_model(p)
        a, b, c = (random_cycgl(m, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c

    @settings(max_examples=30)
    @given(st.integers(0, 10 ** 6), st.sampled_from([3, 5]))
    def test_restriction_is_multiplicative(self, seed, p):
        rng = random.Random(seed)
        m = cycgl_model(p)
        a, b = random_cycgl(m, rng), random_cycgl(m, rng)
        assert m.restrict_to_cycmu(a * b) == m.restrict_to_cycmu(a) * m.restrict_to_cycmu(b)
        assert m.restrict_to_torus(a * b) == a.inv * b.inv

    @settings(max_examples=30)
    @given(st.integers(0, 10 ** 6))
    def test_epsilon_is_multiplicative(self, seed):
        rng = random.Random(seed)
        m = cycgl_model(3)
        a, b = random_cycgl(m, rng), random_cycgl(m, rng)
        ea, eb, eab = m._eps_tors(a.inv), m._eps_tors(b.inv), m._eps_tors(a.inv * b.inv)
        from chowpgl.presented_rings import _tors_mul
        assert _tors_mul(ea, eb, 3) == eab

    @pytest.mark.parametrize("p,top", [(3, 20), (5, 12)])
    def test_injectivity(self, p, top):
        assert all(cycgl_injectivity_check(p, d) for d in range(top + 1))

    def test_torsion_images_independent(self):
        # xi^i (eta^p - xi^(p-1) eta)^j are independent over F_p, degree by degree
        p = 5
        m = cycgl_model(p)
        for d in range(1, 16):
            imgs = [m.restrict_to_cycmu(m.element(tors={k: 1})) for k in m.tors_basis(d)]
            mat = [[g.coefficient((i, d - i)) for i in range(d + 1)] for g in imgs]
            assert rank_mod_p(mat, p) == len(imgs) if imgs else True

    def test_injectivity_limit(self):
        with pytest.raises(ValueError):
            cycgl_injectivity_check(3, 1000)

    def test_json_roundtrip(self):
        m = cycgl_model(3)
        a = m.sigma(3) * m.xi(2) + m.sigma(1)
        assert CycGLElement.from_json(a.to_json()) == a


class TestCycPGL:
    def test_sigma_one_vanishes(self):
        assert cycpgl_model(3).sigma(1).is_zero()

    @pytest.mark.parametrize("p", [3, 5])
    def test_sigma_p_restricts_to_eta_power(self, p):
        m = cycpgl_model(p)
        eta = Poly.var("eta", ("eta",), GF(p))
        assert m.restrict_to_mu(m.sigma(p)) == eta ** p

    def test_xi_relations(self):
        m = cycpgl_model(3)
        assert m.xi().scale(3).is_zero()
        x1, x2, _ = xs(3)
        assert (m.transfer(x1 ** 2 * x2) * m.xi()).is_zero()
        assert (m.sigma(3) * m.xi()).tors == {(1, 1): 1}

    @settings(max_examples=20)
    @given(st.integers(0, 10 ** 6))
    def test_ring_axioms(self, seed):
        rng = random.Random(seed)
        m = cycpgl_model(3)
        a, b, c = (random_cycgl(m, rng, 3) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert m.restrict_to_cycmu(a * b) == m.restrict_to_cycmu(a) * m.restrict_to_cycmu(b)


class TestAdjointChern:
    def test_top_class_is_delta(self):
        from chowpgl.polyring import to_sigma_basis
        assert to_sigma_basis(adjoint_total_chern_on_torus(3, 6), 3) == discriminant_sigma(3)
        assert adjoint_total_chern_on_torus(3, 1).is_zero()

    @pytest.mark.parametrize("p", [3, 5])
    def test_classes_are_invariant(self, p):
        S = GroupSpec(GroupKind.FULL_SYMMETRIC, p)
        for i in range(1, 7):
            c = adjoint_total_chern_on_torus(p, i)
            assert is_translation_invariant(c) and is_invariant(c, S)
            if i % 2:
                assert c.is_zero()

    def test_range(self):
        with pytest.raises(ValueError):
            adjoint_total_chern_on_torus(3, 7)


class TestBPGL:
    p = 3

    def test_examples(self):
        p = self.p
        rho = BPGLElement.rho(p)
        g2 = BPGLElement.make(p, gamma_generator(2, p))
        assert (g2 * rho).is_zero()
        assert (BPGLElement.delta(p) * rho).tors == {(1, 1): 1}
        assert rho.scale(3).is_zero()

    def test_restriction_examples(self):
        p = self.p
        q, r = cycmu.dickson_q(p), cycmu.dickson_r(p)
        img = bpgl_restrict(BPGLElement.rho(p))
        assert img.torus_part.is_zero() and img.cycmu_part == r
        img = bpgl_restrict(BPGLElement.delta(p))
        assert img.torus_part == discriminant_sigma(p) and img.cycmu_part == -q

    @pytest.mark.parametrize("p", [3, 5])
    def test_rho_power_is_top_chern_class(self, p):
        img = bpgl_restrict(BPGLElement.rho(p) ** (p - 1))
        assert img.cycmu_part == cycmu.adjoint_chern_restriction(p, p * p - 1)
        assert bpgl_chern_class(p, p * p - 1) == BPGLElement.rho(p) ** (p - 1)

    @pytest.mark.parametrize("p", [3, 5])
    def test_delta_chern_class(self, p):
        c = bpgl_chern_class(p, p * p - p)
        assert c == BPGLElement.delta(p)
        assert bpgl_restrict(c).cycmu_part == cycmu.adjoint_chern_restriction(p, p * p - p)

    def test_epsilon_of_delta(self):
        assert bpgl_epsilon(discriminant_sigma(5), 5) == {1: 1}

    def test_rho_kills_exactly_the_restriction_kernel(self):
        p = 3
        rho = BPGLElement.rho(p)
        for d in range(1, 13):
            for u in invariant_basis_sigma(p, "PGL", d):
                kills = (BPGLElement.make(p, u) * rho).is_zero()
                assert kills == restrict_pgl_to_mu(u, p).is_zero()

    @settings(max_examples=25)
    @given(st.integers(0, 10 ** 6), st.sampled_from([3, 5]))
    def test_ring_axioms_and_restriction(self, seed, p):
        rng = random.Random(seed)
        a, b, c = (random_bpgl(p, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        ra, rb, rab = bpgl_restrict(a), bpgl_restrict(b), bpgl_restrict(a * b)
        assert rab.cycmu_part == ra.cycmu_part * rb.cycmu_part
        assert rab.torus_part == ra.torus_part * rb.torus_part

    @settings(max_examples=25)
    @given(st.integers(0, 10 ** 6))
    def test_epsilon_multiplicative(self, seed):
        rng = random.Random(seed)
        p = 3
        a, b = random_bpgl(p, rng), random_bpgl(p, rng)
        ea, eb = bpgl_epsilon(a.inv, p), bpgl_epsilon(b.inv, p)
        prod = {}
        for i, c in ea.items():
            for j, d in eb.items():
                prod[i + j] = (prod.get(i + j, 0) + c * d) % p
        assert {k: v for k, v in prod.items() if v} == bpgl_epsilon(a.inv * b.inv, p)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            BPGLElement.make(3, Poly.var("sigma1", sigma_vars(3)))
        with pytest.raises(ValueError):
            BPGLElement.make(3, tors={(1, 0): 1})

    def test_json(self):
        a = BPGLElement.delta(3) + BPGLElement.rho(3, 2)
        assert BPGLElement.from_json(a.to_json()) == a


class TestHBPGL:
    p = 3

    def test_examples(self):
        p = self.p
        beta = HBPGLElement.beta(p)
        assert (beta * beta).is_zero()
        g2 = HBPGLElement.from_even(BPGLElement.make(p, gamma_generator(2, p)))
        assert (g2 * beta).is_zero()
        d = HBPGLElement.from_even(BPGLElement.delta(p))
        assert (d * beta).odd == {(1, 0): 1}

    def test_degrees(self):
        p = self.p
        e = HBPGLElement.beta(p) + HBPGLElement.from_even(BPGLElement.rho(p))
        assert e.degrees() == [3, 8]

    def test_restriction_sends_beta_to_s(self):
        img = hbpgl_restrict(HBPGLElement.beta(3))
        assert img.cycmu_part == cycmu.HCycmuElement.s(3)

    @settings(max_examples=20)
    @given(st.integers(0, 10 ** 6))
    def test_restriction_is_multiplicative(self, seed):
        rng = random.Random(seed)
        p = 3

        def rnd():
            odd = {(rng.randint(0, 1), rng.randint(0, 2)): rng.randint(1, 2)}
            return HBPGLElement.make(p, random_bpgl(p, rng), odd)

        a, b = rnd(), rnd()
        assert hbpgl_restrict(a * b).cycmu_part == hbpgl_restrict(a).cycmu_part * hbpgl_restrict(b).cycmu_part
        assert (a * b) == (b * a)

    def test_json(self):
        a = HBPGLElement.beta(3) + HBPGLElement.from_even(BPGLElement.rho(3))
        assert HBPGLElement.from_json(a.to_json()) == a


class TestGradedGroups:
    def test_examples(self):
        assert graded_group_from_model(3, 4) == AbelianGroupDesc(1, (3,))
        assert graded_group_from_model(3, 0) == AbelianGroupDesc(1)
        for p in (3, 5):
            assert graded_group_from_model(p, 3, "cohomology-odd") == AbelianGroupDesc(0, (p,))

    @pytest.mark.parametrize("p,top", [(3, 40), (5, 30)])
    def test_matches_closed_forms(self, p, top):
        for m in range(top + 1):
            assert graded_group_from_model(p, m) == chow_group_descriptor(m, p)
        for m in range(2 * top + 2):
            assert graded_group_from_model(p, m, "cohomology") == cohomology_group_descriptor(m, p)

    def test_limits(self):
        with pytest.raises(ValueError):
            graded_group_from_model(3, 61)
        with pytest.raises(ValueError):
            graded_group_from_model(3, 4, "k-theory")
