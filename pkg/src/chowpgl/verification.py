"""Acceptance checks, runnable per prime under a time budget.

Each :class:`Criterion` knows the primes it covers and a rough cost per
prime.  :func:`run_criterion` runs it on any subset of those primes;
:func:`verify_all` runs everything applicable at one prime and turns
checks that would not fit in the remaining budget into ``skipped`` entries.
Failures are recorded with a detail string, never raised.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import cycmu
from .additive import (chow_group_descriptor, cohomology_group_descriptor, count_pi, count_r, count_s,
                       count_s_prime)
from .cache import Cache, generator_table
from .groups import GroupKind, GroupSpec
from .lattice_invariants import (discriminant, discriminant_sigma, find_relations, gamma_generator,
                                 invariant_basis_sigma, invariant_rank, restrict_pgl_to_mu)
from .polyring import GF, ZZ, Poly, is_prime, x_vars
from .presented_rings import (BPGLElement, HBPGLElement, adjoint_total_chern_on_torus, bpgl_chern_class,
                              bpgl_restrict, cycgl_model, graded_group_from_model)
from .transfers import (as_group, cyclic_double_coset_formula, cyclic_two_part_decomposition, double_cosets,
                        mackey_verify, random_invariant, random_mackey_instance, transfer_poly)

SUPPORTED_PRIMES = (3, 5, 7)

# expected generator degrees of the PGL_5 invariants as stated in the literature
PGL5_EXPECTED_DEGREES = [2, 3, 4, 5, 6, 7, 9, 12, 20]
PGL3_EXPECTED_DEGREES = [2, 3, 6]


class CheckFailed(AssertionError):
    pass


def _require(cond: bool, msg: str):
    if not cond:
        raise CheckFailed(msg)


@dataclass
class CheckResult:
    criterion: int
    name: str
    status: str  # pass | fail | skipped
    detail: str = ""
    reason: Optional[str] = None
    seconds: float = 0.0
    primes: Tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"criterion": self.criterion, "name": self.name, "status": self.status,
               "detail": self.detail, "primes": list(self.primes)}
        if self.reason is not None:
            out["reason"] = self.reason
        return out

    def line(self) -> str:
        tag = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}[self.status]
        extra = f" ({self.reason})" if self.reason else ""
        return f"{tag} {self.criterion:2d} {self.name}{extra}: {self.detail}"


@dataclass
class Criterion:
    number: int
    name: str
    primes: Optional[Tuple[int, ...]]  # None: independent of p
    run: Callable[[Sequence[int], Optional[Cache]], str]
    cost: Dict[int, float] = field(default_factory=dict)  # rough seconds per prime, uncached

    def applies(self, p: int) -> bool:
        return self.primes is None or p in self.primes

    def estimate(self, primes: Sequence[int], cache: Optional[Cache]) -> float:
        return sum(self.cost.get(p, 1.0) for p in primes)


# ---------------------------------------------------------------------------------
# the checks; each returns a detail string or raises CheckFailed


def check_dickson_product(primes, cache=None) -> str:
    for p in primes:
        F = GF(p)
        names = cycmu.VARS + ("t",)
        x, y, t = (Poly.var(v, names, F) for v in names)
        one = Poly.constant(1, names, F)
        full, homog = one, one
        for i in range(p):
            for j in range(p):
                full = full * (one + x * i + y * j)
                if i or j:
                    homog = homog * (t + x * i + y * j)
        q = cycmu.dickson_q(p).with_variables(names)
        r = cycmu.dickson_r(p).with_variables(names)
        _require(full == one - q + r ** (p - 1), f"p={p}: product != 1 - q + r^(p-1)")
        _require(homog == t ** (p * p - 1) - q * t ** (p - 1) + r ** (p - 1), f"p={p}: homogenized product")
    return f"product identities hold for p in {list(primes)}"


def check_q_forms(primes, cache=None) -> str:
    for p in primes:
        _require(cycmu.dickson_q(p) == cycmu.dickson_q_alt(p), f"p={p}: closed forms of q differ")
    return f"both closed forms agree for p in {list(primes)}"


def check_adjoint_chern(primes, cache=None) -> str:
    for p in primes:
        q, r = cycmu.dickson_q(p), cycmu.dickson_r(p)
        zero = Poly.zero(cycmu.VARS, GF(p))
        for i in range(1, p * p):
            got = cycmu.adjoint_chern_restriction(p, i)
            want = -q if i == p * p - p else r ** (p - 1) if i == p * p - 1 else zero
            _require(got == want, f"p={p}: c_{i} restricts to {got}")
    return f"c_i(sl_p) restrictions are -q, r^(p-1) and 0 for p in {list(primes)}"


SL2_BOUNDS = {3: 24, 5: 30}


def check_sl2_invariants(primes, cache=None) -> str:
    for p in primes:
        for d in range(SL2_BOUNDS.get(p, 12) + 1):
            basis = cycmu.sl2_invariant_basis(p, d)
            want = cycmu.sl2_invariant_dimension(p, d)
            _require(len(basis) == want, f"p={p} d={d}: dimension {len(basis)} != {want}")
            qr = cycmu.qr_monomials(p, d)
            _require(cycmu.same_span(p, d, basis, qr), f"p={p} d={d}: span differs from q^a r^b")
    return "invariant dimensions and spans match q^a r^b"


def _relation_target(names) -> Poly:
    g2, g3, dl = (Poly.var(v, names) for v in ("gamma2", "gamma3", "delta"))
    return dl * 27 - g2 ** 3 * 4 - g3 ** 2


def check_pgl3_generators(primes=(3,), cache=None) -> str:
    table = generator_table(3, "PGL", "symmetric", 12, cache)
    _require(table.degrees() == PGL3_EXPECTED_DEGREES, f"degrees {table.degrees()}")
    _require(table.names() == ["gamma2", "gamma3", "delta"], f"names {table.names()}")
    rels = find_relations(table, 12)
    _require(len(rels.relations) == 1, f"{len(rels.relations)} relations up to degree 12")
    d, rel = rels.relations[0]
    target = _relation_target(rel.variables)
    _require(d == 6 and rel in (target, -target), f"relation {rel.to_text()} in degree {d}")
    return f"generators in degrees {table.degrees()}, one relation: {rel.to_text()}"


def check_pgl5_generators(primes=(5,), cache=None) -> str:
    table = generator_table(5, "PGL", "symmetric", 20, cache)
    got = table.degrees()
    _require(got == PGL5_EXPECTED_DEGREES,
             f"computed {len(got)} generators in degrees {got}, expected {len(PGL5_EXPECTED_DEGREES)} "
             f"in degrees {PGL5_EXPECTED_DEGREES}")
    return "9 generators in the expected degrees"


RANK_BOUNDS = {3: 30, 5: 20}


def check_invariant_ranks(primes, cache=None) -> str:
    for p in primes:
        for m in range(RANK_BOUNDS.get(p, 8) + 1):
            got = invariant_rank(p, "PGL", "symmetric", m)
            _require(got == count_r(m, p), f"p={p} m={m}: rank {got} != r = {count_r(m, p)}")
    return "ranks equal r(m,p)"


def check_restriction_image(primes=(3,), cache=None) -> str:
    p = 3
    m = p * p - p
    for d in range(19):
        for f in invariant_basis_sigma(p, "PGL", d):
            img = restrict_pgl_to_mu(f, p)
            _require(all(e[0] % m == 0 for e in img.terms), f"degree {d}: image {img} not in F_3[eta^6]")
    eta = Poly.var("eta", ("eta",), GF(p))
    _require(restrict_pgl_to_mu(discriminant(p)) == -(eta ** m), "delta (x-form) does not map to -eta^6")
    dl = discriminant_sigma(p)
    for k in range(1, 4):
        want = (eta ** (m * k)).scale((-1) ** k)
        _require(restrict_pgl_to_mu(dl ** k, p) == want, f"delta^{k} image")
    return "images lie in F_3[eta^6]; delta^k -> (-1)^k eta^(6k)"


DOUBLE_COSETS = {3: 2, 5: 8, 7: 108}


def check_double_cosets(primes, cache=None) -> str:
    counts = {}
    for p in primes:
        S = as_group(GroupSpec(GroupKind.FULL_SYMMETRIC, p))
        C = as_group(GroupSpec(GroupKind.CYCLIC, p))
        dc = double_cosets(S, C, C)
        _require(dc.check_partition(S, C, C), f"p={p}: cosets do not partition S_p")
        _require(len(dc) == cyclic_double_coset_formula(p), f"p={p}: {len(dc)} double cosets vs formula")
        if p in DOUBLE_COSETS:
            _require(len(dc) == DOUBLE_COSETS[p], f"p={p}: {len(dc)} double cosets")
        counts[p] = len(dc)
    return f"double coset counts {counts}"


MACKEY_TRIALS = 60


def check_mackey(primes, cache=None, trials: int = MACKEY_TRIALS, seed: int = 0) -> str:
    total = 0
    for p in primes:
        rng = random.Random(seed * 1000 + p)
        for k in range(trials):
            G, K, H, f = random_mackey_instance(p, rng)
            _require(mackey_verify(G, K, H, f), f"p={p}: instance {k} fails (K={K.label}, H={H.label})")
            total += 1
        C = GroupSpec(GroupKind.CYCLIC, p)
        S = GroupSpec(GroupKind.FULL_SYMMETRIC, p)
        for _ in range(3):
            u = random_invariant(p, C, rng)
            dec = cyclic_two_part_decomposition(p, u)
            _require(dec.total == transfer_poly(u, C, S), f"p={p}: two-part sum differs from the transfer")
            _require(dec.n_normalizer == p - 1, f"p={p}: {dec.n_normalizer} normalizer cosets")
            _require(dec.n_generic == (p - 1) * (factorial(p - 2) - 1) // p, f"p={p}: generic coset count")
        u = random_invariant(p, S, rng)
        dec = cyclic_two_part_decomposition(p, u)
        _require(dec.normalizer_part == u.scale(p - 1), "normalizer part of a symmetric polynomial")
        _require(dec.generic_part == u.scale((p - 1) * (factorial(p - 2) - 1)), "generic part of a symmetric polynomial")
    return f"{total} random instances and the two-part decompositions hold"


def check_bpgl_model(primes, cache=None) -> str:
    if 3 in primes:
        p = 3
        rho = BPGLElement.rho(p)
        g2 = BPGLElement.make(p, gamma_generator(2, p))
        g3 = BPGLElement.make(p, gamma_generator(3, p))
        dl = BPGLElement.delta(p)
        _require(rho.scale(3).is_zero(), "3 rho != 0")
        _require((g2 * rho).is_zero() and (g3 * rho).is_zero(), "gamma rho != 0")
        _require(not (dl * rho).is_zero(), "delta rho = 0")
        beta = HBPGLElement.beta(p)
        _require((beta + beta + beta).is_zero(), "3 beta != 0")
        _require((beta * beta).is_zero(), "beta^2 != 0")
        for g in (g2, g3):
            _require((HBPGLElement.from_even(g) * beta).is_zero(), "gamma beta != 0")
    for p in primes:
        img = bpgl_restrict(BPGLElement.rho(p) ** (p - 1))
        c = bpgl_chern_class(p, p * p - 1)
        want = cycmu.adjoint_chern_restriction(p, p * p - 1)
        _require(img.cycmu_part == want, f"p={p}: rho^(p-1) restricts to {img.cycmu_part}")
        _require(bpgl_restrict(c).cycmu_part == want, f"p={p}: c_(p^2-1) restriction")
        _require(img.torus_part.is_zero(), f"p={p}: rho^(p-1) has a torus part")
    return "relations of the p=3 presentation hold; rho^(p-1) matches c_(p^2-1)(sl_p)"


ADDITIVE_BOUNDS = {3: 40, 5: 30}


def check_additive(primes, cache=None) -> str:
    for p in primes:
        bound = ADDITIVE_BOUNDS.get(p, 12)
        for m in range(bound + 1):
            got = graded_group_from_model(p, m)
            _require(got == chow_group_descriptor(m, p), f"p={p} m={m}: model {got}")
        for top in range(2 * bound + 2):
            got = graded_group_from_model(p, top, "cohomology")
            _require(got == cohomology_group_descriptor(top, p), f"p={p} H^{top}: model {got}")
            if top % 2 == 0:
                _require(got == chow_group_descriptor(top // 2, p), f"p={p}: H^{top} != CH^{top // 2}")
        _require(graded_group_from_model(p, 3, "cohomology").torsion == (p,), f"p={p}: H^3 != Z/p")
    return "model groups match the closed forms"


INJECTIVITY_BOUNDS = {3: 20, 5: 12}


def check_cycgl(primes, cache=None, seed: int = 0) -> str:
    for p in primes:
        model = cycgl_model(p)
        for d in range(INJECTIVITY_BOUNDS.get(p, 6) + 1):
            _require(model.injectivity_check(d), f"p={p}: restriction not injective in degree {d}")
        rng = random.Random(seed + p)
        xs = Poly.gens(x_vars(p))
        xi = model.xi()
        _require(xi.scale(p).is_zero(), "p xi != 0")
        sp = model.sigma(p)
        _require(not (sp * xi).is_zero(), "sigma_p xi = 0")
        for _ in range(5):
            e = [rng.randint(0, 2) for _ in range(p)]
            mono = Poly({tuple(e): 1}, x_vars(p), ZZ)
            if len(set(e)) == 1:
                continue
            # orbit sums of non-diagonal monomials annihilate xi
            _require((model.transfer(mono) * xi).is_zero(), f"p={p}: phi(tsf m) xi != 0")
        for _ in range(5):
            u = model.transfer(Poly({tuple(rng.randint(0, 2) for _ in range(p)): 1}, x_vars(p), ZZ)) + sp
            v = model.transfer(xs[0] * rng.randint(1, 3)) + model.one()
            a, b = u + xi.scale(rng.randint(0, p - 1)), v + model.xi(2)
            _require((u * v).inv == model.normalize(u.inv * v.inv), "phi is not multiplicative")
            lhs = model.restrict_to_cycmu(a * b)
            rhs = model.restrict_to_cycmu(a) * model.restrict_to_cycmu(b)
            _require(lhs == rhs, f"p={p}: restriction is not multiplicative")
    return "restrictions injective; phi multiplicative; phi(u) xi = 0"


def _partitions(m: int, largest: int, smallest: int = 1):
    """Enumerate partitions of m with parts in [smallest, largest], non-increasing."""
    if m == 0:
        yield ()
        return
    for k in range(min(m, largest), smallest - 1, -1):
        for rest in _partitions(m - k, k, smallest):
            yield (k,) + rest


def _count_partitions(m: int, largest: int, smallest: int, memo: dict) -> int:
    # recursion on the largest part, memoised
    if m == 0:
        return 1
    if largest < smallest or m < smallest:
        return 0
    key = (m, largest)
    if key not in memo:
        memo[key] = _count_partitions(m, largest - 1, smallest, memo) + \
            _count_partitions(m - largest, min(largest, m - largest), smallest, memo)
    return memo[key]


def check_partition_identity(primes=None, cache=None) -> str:
    ps = [p for p in range(2, 12) if is_prime(p)]
    for p in ps:
        memo1, memo2 = {}, {}
        for m in range(201):
            pi = _count_partitions(m, p, 1, memo1)
            r = _count_partitions(m, p, 2, memo2)
            _require(count_pi(m, p) == pi, f"pi({m},{p})")
            _require(count_r(m, p) == r, f"r({m},{p})")
            if m >= 1:
                _require(r == count_pi(m, p) - count_pi(m - 1, p), f"r({m},{p}) != pi difference")
            if m <= 30:
                _require(sum(1 for _ in _partitions(m, p, 2)) == r, f"enumeration of r({m},{p})")
        a, b = p * p - p, p + 1
        for m in range(501):
            sols = [(i, j) for i in range(m // a + 1) for j in range(m // b + 1) if a * i + b * j == m]
            s = sum(1 for i, j in sols if j > 0)
            _require(count_s(m, p) == s and count_s_prime(m, p) == len(sols), f"s({m},{p})")
            diff = count_s_prime(m, p) - count_s(m, p)
            _require(diff == (1 if m % a == 0 else 0), f"s'-s at m={m}, p={p}")
    return f"partition identities hold for m <= 200, p in {ps}; s'-s for m <= 500"


CRITERIA: List[Criterion] = [
    Criterion(1, "dickson-product", (3, 5, 7), check_dickson_product, {3: 0.1, 5: 0.2, 7: 2.0}),
    Criterion(2, "q-closed-forms", (3, 5, 7), check_q_forms, {3: 0.05, 5: 0.05, 7: 0.1}),
    Criterion(3, "adjoint-chern", (3, 5), check_adjoint_chern, {3: 0.1, 5: 1.0}),
    Criterion(4, "sl2-invariants", (3, 5), check_sl2_invariants, {3: 0.5, 5: 3.0}),
    Criterion(5, "pgl3-generators", (3,), check_pgl3_generators, {3: 1.0}),
    Criterion(6, "pgl5-generators", (5,), check_pgl5_generators, {5: 30.0}),
    Criterion(7, "invariant-ranks", (3, 5), check_invariant_ranks, {3: 0.5, 5: 2.0}),
    Criterion(8, "restriction-image", (3,), check_restriction_image, {3: 1.0}),
    Criterion(9, "double-cosets", (3, 5, 7), check_double_cosets, {3: 0.01, 5: 0.1, 7: 10.0}),
    Criterion(10, "mackey", (3, 5), check_mackey, {3: 1.0, 5: 5.0}),
    Criterion(11, "bpgl-model", (3, 5), check_bpgl_model, {3: 0.5, 5: 1.0}),
    Criterion(12, "additive-structure", (3, 5), check_additive, {3: 1.0, 5: 10.0}),
    Criterion(13, "cycgl-model", (3, 5), check_cycgl, {3: 2.0, 5: 5.0}),
    Criterion(14, "partition-identity", None, check_partition_identity, {0: 2.0}),
]


def criterion(number: int) -> Criterion:
    for c in CRITERIA:
        if c.number == number:
            return c
    raise KeyError(number)


def run_criterion(c: Criterion, primes: Optional[Sequence[int]] = None, cache: Optional[Cache] = None) -> CheckResult:
    if primes is None:
        primes = c.primes or ()
    primes = tuple(primes)
    start = time.monotonic()
    try:
        detail = c.run(primes, cache)
        status = "pass"
    except CheckFailed as exc:
        detail, status = str(exc), "fail"
    except Exception as exc:  # report, do not raise
        detail, status = f"{type(exc).__name__}: {exc}", "fail"

    return CheckResult(c.number, c.name, status, detail, None, time.monotonic() - start, primes)


def validate_prime(p: int) -> None:
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"p must be one of {list(SUPPORTED_PRIMES)} (an odd prime <= 7), got {p}")


@dataclass
class VerificationReport:
    p: int
    budget: Optional[float]
    results: List[CheckResult]

    @property
    def all_passed(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def to_json(self) -> dict:
        return {"p": self.p, "budget": self.budget, "all_passed": self.all_passed,
                "checks": [r.to_json() for r in self.results]}


def verify_all(p: int, budget: Optional[float] = None, cache: Optional[Cache] = None,
               numbers: Optional[Sequence[int]] = None) -> VerificationReport:
    """Run every criterion applicable at p; skip those whose estimate exceeds what is left of ``budget``."""
    validate_prime(p)
    results = []
    spent = 0.0
    for c in CRITERIA:
        if numbers is not None and c.number not in numbers:
            continue
        if not c.applies(p):
            continue
        primes = (p,) if c.primes is not None else ()
        est = c.cost.get(p, c.cost.get(0, 1.0))
        if budget is not None and spent + est > budget:
            results.append(CheckResult(c.number, c.name, "skipped", f"estimated {est:g}s exceeds the budget",
                                       "budget", 0.0, primes))
            continue
        res = run_criterion(c, primes, cache)
        spent += res.seconds
        results.append(res)
    return VerificationReport(p, budget, results)
