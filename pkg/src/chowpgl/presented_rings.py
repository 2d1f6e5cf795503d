"""Normal forms for the presented rings of ``B(C_p x| T_GL)``, ``B(C_p x| T_PGL)``, ``BPGL_p``.

Each element is a pair ``(inv, tors)``: ``inv`` is an invariant polynomial on
the torus (the image of the splitting) and ``tors`` is an F_p-combination of
torsion monomials.  Products follow

    (u, T)(u', T') = (u u', eps(u) T' + eps(u') T + T T')

where ``eps`` is the reduction of an invariant to the polynomial ring over
F_p that acts on the torsion monomials:

* cyclic models: ``eps(u)`` in ``F_p[sigma_p]``, read from the coefficients
  of the monomials ``(x1...xp)^r``; torsion monomials are ``xi^i sigma_p^j``
  with ``i >= 1``;
* BPGL: ``eps(w)`` in ``F_p[delta]``, obtained from the restriction to
  ``mu_p`` (``delta -> -eta^(p^2-p)``); torsion monomials are
  ``delta^i rho^j`` with ``j >= 1``.

Degrees are Chow weights throughout; cohomological degrees are derived.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from . import cycmu
from .additive import AbelianGroupDesc
from .groups import GroupKind, GroupSpec, compose, cycle_perm, identity
from .lattice_invariants import (discriminant_sigma, get_space, invariant_rank, monomial_orbits,
                                 orbit_sum, restrict_pgl_to_mu, sigma_derivation, sl_reduce)
from .linalg import IntegrityError, rank_mod_p, rank_q
from .polyring import GF, ZZ, Poly, from_sigma_basis, permute_variables, sigma_vars, to_sigma_basis, x_vars

Tors = Dict[Tuple[int, int], int]

MODEL_DEGREE_LIMIT = 60


def _clean(t: Tors, p: int) -> Tors:
    return {k: c % p for k, c in t.items() if c % p}


def _tors_mul(a: Tors, b: Tors, p: int) -> Tors:
    out: Tors = {}
    for (i, j), c in a.items():
        for (k, l), d in b.items():
            key = (i + k, j + l)
            out[key] = (out.get(key, 0) + c * d) % p
    return _clean(out, p)


def _tors_add(a: Tors, b: Tors, p: int) -> Tors:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + c
    return _clean(out, p)


def _tors_json(t: Tors):
    return [{"i": i, "j": j, "coeff": c} for (i, j), c in sorted(t.items())]


def _tors_from_json(items) -> Tors:
    return {(d["i"], d["j"]): int(d["coeff"]) for d in items}


# ---------------------------------------------------------------------------------
# cyclic models


@dataclass(frozen=True)
class CycGLElement:
    """``(inv, tors)``; ``tors`` maps ``(i, j)`` to the coefficient of ``xi^i sigma_p^j``.

    With ``quotient=True`` the element lives in the model for ``C_p x| T_PGL``:
    ``inv`` is then a representative in ``x1..x_{p-1}`` modulo ``sigma1``.
    """

    p: int
    inv: Poly
    tors: Tors = field(default_factory=dict)
    quotient: bool = False

    def __add__(self, other):
        _same(self, other)
        return CycGLElement(self.p, self.inv + other.inv, _tors_add(self.tors, other.tors, self.p), self.quotient)

    def __neg__(self):
        return CycGLElement(self.p, -self.inv, _clean({k: -c for k, c in self.tors.items()}, self.p), self.quotient)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return cycgl_multiply(self, other)

    def scale(self, k: int):
        return CycGLElement(self.p, self.inv.scale(k), _clean({a: c * k for a, c in self.tors.items()}, self.p),
                            self.quotient)

    def __eq__(self, other):
        if not isinstance(other, CycGLElement):
            return NotImplemented
        return (self.p, self.quotient) == (other.p, other.quotient) and self.inv == other.inv \
            and _clean(self.tors, self.p) == _clean(other.tors, other.p)

    def __hash__(self):
        return hash((self.p, self.quotient, self.inv, tuple(sorted(self.tors.items()))))

    def is_zero(self) -> bool:
        return self.inv.is_zero() and not _clean(self.tors, self.p)

    def to_json(self):
        return {"p": self.p, "model": "cycpgl" if self.quotient else "cycgl", "inv": self.inv.to_json(),
                "tors": _tors_json(self.tors)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["p"], Poly.from_json(obj["inv"]), _clean(_tors_from_json(obj["tors"]), obj["p"]),
                   obj.get("model") == "cycpgl")

    def __str__(self):
        t = " + ".join(f"{c}*xi^{i}*sp^{j}" for (i, j), c in sorted(self.tors.items()))
        return f"[{self.inv}]" + (f" + ({t})" if t else "")


def _same(a, b):
    if a.p != b.p:
        raise ValueError(f"elements over p={a.p} and p={b.p}")
    if getattr(a, "quotient", False) != getattr(b, "quotient", False):
        raise ValueError("elements from different models")


class CyclicModel:
    """``CH*(B(C_p x| T_GL))``, or with ``pgl=True`` ``CH*(B(C_p x| T_PGL))``.

    The PGL model is the GL model modulo the image of ``sigma1``; invariant
    polynomials are kept as representatives with ``xp = -(x1 + ... + x_{p-1})``.
    """

    def __init__(self, p: int, pgl: bool = False):
        self.p = p
        self.pgl = pgl
        self.variables = x_vars(p - 1) if pgl else x_vars(p)
        self.cycle = cycle_perm(p)

    # construction
    def normalize(self, f: Poly) -> Poly:
        if self.pgl:
            return sl_reduce(f.with_variables(x_vars(p=self.p)) if set(f.variables) <= set(x_vars(self.p)) else f,
                             self.p).with_variables(self.variables)
        return f.with_variables(self.variables)

    def element(self, inv: Optional[Poly] = None, tors: Optional[Tors] = None, check: bool = True) -> CycGLElement:
        inv = self.normalize(inv) if inv is not None else Poly.zero(self.variables)
        if check and not self.is_invariant(inv):
            raise ValueError("inv is not fixed by the cycle")
        tors = _clean(dict(tors or {}), self.p)
        for (i, j) in tors:
            if i < 1 or j < 0:
                raise ValueError(f"torsion monomial xi^{i} sigma_p^{j} is not in normal form")
        return CycGLElement(self.p, inv, tors, self.pgl)

    def one(self):
        return self.element(Poly.constant(1, self.variables))

    def xi(self, k: int = 1):
        return self.element(tors={(k, 0): 1})

    def sigma(self, k: int):
        from .polyring import elementary_symmetric
        return self.element(elementary_symmetric(k, self.p))

    def is_invariant(self, f: Poly) -> bool:
        g = self._lift(f)
        h = permute_variables(g, self.cycle)
        if self.pgl:
            return sl_reduce(h, self.p) == sl_reduce(g, self.p)
        return h == g

    def _lift(self, f: Poly) -> Poly:
        return f.with_variables(x_vars(self.p)) if set(f.variables) <= set(x_vars(self.p)) else f

    # eps
    def epsilon(self, u: Poly) -> Dict[int, int]:
        """``eps(u)`` as ``{r: coefficient of sigma_p^r}`` over F_p."""
        p = self.p
        out: Dict[int, int] = {}
        if not self.pgl:
            u = u.with_variables(x_vars(p))
            for e, c in u.items():
                r = e[0]
                if all(k == r for k in e) and c % p:
                    out[r] = (out.get(r, 0) + c) % p
            return {r: c for r, c in out.items() if c}
        # modulo sigma1 use the evaluation at (1, ..., 1), a point of sigma1 = 0 over F_p
        u = u.with_variables(self.variables)
        for d, part in u.graded_components().items():
            val = sum(part.terms.values()) % p
            if d % p:
                if val:
                    raise IntegrityError(f"degree-{d} invariant reduces to a nonzero constant mod p")
                continue
            if val:
                out[d // p] = val
        return out

    def _eps_tors(self, u: Poly) -> Tors:
        return {(0, r): c for r, c in self.epsilon(u).items()}

    # operations
    def multiply(self, a: CycGLElement, b: CycGLElement) -> CycGLElement:
        _same(a, b)
        p = self.p
        inv = self.normalize(a.inv * b.inv)
        tors = _tors_add(_tors_mul(self._eps_tors(a.inv), b.tors, p), _tors_mul(self._eps_tors(b.inv), a.tors, p), p)
        tors = _tors_add(tors, _tors_mul(a.tors, b.tors, p), p)
        return CycGLElement(p, inv, tors, self.pgl)

    def transfer(self, f: Poly) -> CycGLElement:
        """Transfer from the torus: ``(sum over the cycle of s.f, 0)``."""
        g = self._lift(f)
        acc = Poly.zero(g.variables)
        s = identity(self.p)
        for _ in range(self.p):
            acc = acc + permute_variables(g, s)
            s = compose(self.cycle, s)
        return self.element(acc, check=False)

    def restrict_to_cycmu(self, a: CycGLElement) -> Poly:
        """Restriction to ``CH*(B(C_p x mu_p))`` (positive degrees over F_p)."""
        p = self.p
        x = cycmu.xi(p)
        h = cycmu.eta(p) ** p - cycmu.eta(p) * x ** (p - 1)
        out = Poly.zero(cycmu.VARS, GF(p))
        for r, c in self.epsilon(a.inv).items():
            out = out + (h ** r).scale(c)
        for (i, j), c in a.tors.items():
            out = out + (x ** i * h ** j).scale(c)
        return out

    def restrict_to_mu(self, a: CycGLElement) -> Poly:
        """Restriction to ``CH*(B mu_p) = Z[eta]/(p eta)``: ``sigma_p -> eta^p``, ``xi -> 0``."""
        p = self.p
        eta = Poly.var("eta", ("eta",), GF(p))
        out = Poly.zero(("eta",), GF(p))
        for r, c in self.epsilon(a.inv).items():
            out = out + (eta ** (p * r)).scale(c)
        return out

    def restrict_to_torus(self, a: CycGLElement) -> Poly:
        return a.inv

    # normal-form basis and injectivity
    def inv_basis(self, d: int) -> List[Poly]:
        orbs = monomial_orbits(d, (self.cycle,), self.p)
        if not self.pgl:
            return [orbit_sum(o, self.p) for o in orbs]
        space = get_space(self.p, "SL", GroupSpec(GroupKind.CYCLIC, self.p))
        return space.basis(d)

    def tors_basis(self, d: int) -> List[Tuple[int, int]]:
        return [(i, (d - i) // self.p) for i in range(1, d + 1) if (d - i) % self.p == 0]

    def injectivity_check(self, d: int, limit: int = MODEL_DEGREE_LIMIT) -> bool:
        """Exact check that restriction to the torus and to ``C_p x mu_p`` is injective in degree d."""
        if d > limit:
            raise ValueError(f"degree {d} exceeds the configured limit {limit}")
        p = self.p
        inv = self.inv_basis(d)
        monos = sorted({e for f in inv for e in f.terms})
        rows = [[f.terms.get(e, 0) for e in monos] for f in inv]
        if inv and rank_q(rows) != len(inv):
            return False
        tb = self.tors_basis(d)
        if not tb:
            return True
        imgs = [self.restrict_to_cycmu(self.element(tors={k: 1})) for k in tb]
        mat = [[g.coefficient((i, d - i)) for i in range(d + 1)] for g in imgs]
        return rank_mod_p(mat, p) == len(tb)


@lru_cache(maxsize=None)
def cycgl_model(p: int) -> CyclicModel:
    return CyclicModel(p, pgl=False)


@lru_cache(maxsize=None)
def cycpgl_model(p: int) -> CyclicModel:
    return CyclicModel(p, pgl=True)


def _model_of(a: CycGLElement) -> CyclicModel:
    return cycpgl_model(a.p) if a.quotient else cycgl_model(a.p)


def cycgl_multiply(a: CycGLElement, b: CycGLElement) -> CycGLElement:
    return _model_of(a).multiply(a, b)


def cycgl_transfer(f: Poly, p: Optional[int] = None) -> CycGLElement:
    if p is None:
        p = len([v for v in f.variables if v.startswith("x")])
    return cycgl_model(p).transfer(f)


def cycgl_restrict_to_cycmu(a: CycGLElement) -> Poly:
    return _model_of(a).restrict_to_cycmu(a)


def cycgl_injectivity_check(p: int, d: int) -> bool:
    return cycgl_model(p).injectivity_check(d)


# ---------------------------------------------------------------------------------
# BPGL


@lru_cache(maxsize=None)
def _adjoint_total_torus(p: int) -> Dict[int, Poly]:
    xs = Poly.gens(x_vars(p))
    total = Poly.constant(1, x_vars(p))
    for i in range(p):
        for j in range(p):
            if i != j:
                total = total * (Poly.constant(1, x_vars(p)) + xs[i] - xs[j])
    return total.graded_components()


def adjoint_total_chern_on_torus(p: int, i: int) -> Poly:
    """Degree-i part of ``prod_{i != j}(1 + x_i - x_j)``, the torus restriction of ``c_i(sl_p)``."""
    if not 1 <= i <= p * p - p:
        raise ValueError(f"i must be in [1, {p * p - p}]")
    return _adjoint_total_torus(p).get(i, Poly.zero(x_vars(p)))


@dataclass(frozen=True)
class BPGLElement:
    """``(inv, tors)`` with ``inv`` in the sigma-basis and ``tors`` mapping ``(i, j)`` to the coefficient of ``delta^i rho^j``."""

    p: int
    inv: Poly
    tors: Tors = field(default_factory=dict)

    @classmethod
    def make(cls, p: int, inv: Optional[Poly] = None, tors: Optional[Tors] = None, check: bool = True):
        if inv is None:
            inv = Poly.zero(sigma_vars(p))
        elif any(v.startswith("x") for v in inv.used_variables()):
            inv = to_sigma_basis(inv, p)
        inv = inv.with_variables(sigma_vars(p))
        if check and inv and sigma_derivation(inv, p):
            raise ValueError("inv is not translation invariant")
        tors = _clean(dict(tors or {}), p)
        for (i, j) in tors:
            if i < 0 or j < 1:
                raise ValueError(f"delta^{i} rho^{j} is not a torsion monomial")
        return cls(p, inv, tors)

    @classmethod
    def one(cls, p):
        return cls.make(p, Poly.constant(1, sigma_vars(p)))

    @classmethod
    def rho(cls, p, k: int = 1):
        return cls.make(p, tors={(0, k): 1})

    @classmethod
    def delta(cls, p):
        return cls.make(p, discriminant_sigma(p))

    def __add__(self, other):
        _same(self, other)
        return BPGLElement(self.p, self.inv + other.inv, _tors_add(self.tors, other.tors, self.p))

    def __neg__(self):
        return BPGLElement(self.p, -self.inv, _clean({k: -c for k, c in self.tors.items()}, self.p))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return bpgl_multiply(self, other)

    def scale(self, k: int):
        return BPGLElement(self.p, self.inv.scale(k), _clean({a: c * k for a, c in self.tors.items()}, self.p))

    def __pow__(self, n: int):
        out = BPGLElement.one(self.p)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, BPGLElement):
            return NotImplemented
        return self.p == other.p and self.inv == other.inv and _clean(self.tors, self.p) == _clean(other.tors, other.p)

    def __hash__(self):
        return hash((self.p, self.inv, tuple(sorted(self.tors.items()))))

    def is_zero(self) -> bool:
        return self.inv.is_zero() and not _clean(self.tors, self.p)

    def x_form(self) -> Poly:
        return from_sigma_basis(self.inv, self.p)

    def to_json(self):
        return {"p": self.p, "inv": self.inv.to_json(), "tors": _tors_json(self.tors), "beta": []}

    @classmethod
    def from_json(cls, obj):
        return cls.make(obj["p"], Poly.from_json(obj["inv"]), _tors_from_json(obj.get("tors", [])))

    def __str__(self):
        t = " + ".join(f"{c}*delta^{i}*rho^{j}" for (i, j), c in sorted(self.tors.items()))
        return f"[{self.inv}]" + (f" + ({t})" if t else "")


def torsion_degree(p: int, i: int, j: int) -> int:
    return (p * p - p) * i + (p + 1) * j


def bpgl_epsilon(w: Poly, p: int) -> Dict[int, int]:
    """``eps(w)`` as ``{i: coefficient of delta^i}`` over F_p."""
    img = restrict_pgl_to_mu(w.with_variables(sigma_vars(p)), p, check=False)
    m = p * p - p
    out: Dict[int, int] = {}
    for (k,), b in img.items():
        if k % m:
            raise IntegrityError(f"restriction to mu_p has a term eta^{k} outside F_p[eta^{m}]")
        i = k // m
        c = (b * (-1) ** i) % p
        if c:
            out[i] = c
    return out


def _eps_tors_bpgl(w: Poly, p: int) -> Tors:
    return {(i, 0): c for i, c in bpgl_epsilon(w, p).items()}


def bpgl_multiply(a: BPGLElement, b: BPGLElement) -> BPGLElement:
    _same(a, b)
    p = a.p
    inv = a.inv * b.inv
    tors = _tors_add(_tors_mul(_eps_tors_bpgl(a.inv, p), b.tors, p), _tors_mul(_eps_tors_bpgl(b.inv, p), a.tors, p), p)
    tors = _tors_add(tors, _tors_mul(a.tors, b.tors, p), p)
    return BPGLElement(p, inv, tors)


@dataclass(frozen=True)
class RestrictionImage:
    torus_part: Poly
    cycmu_part: object  # F_p[xi, eta] polynomial, or HCycmuElement for cohomology

    def to_json(self):
        cm = self.cycmu_part.to_json()
        return {"torus_part": self.torus_part.to_json(), "cycmu_part": cm}


def _qr_image(p: int, t: Tors) -> Poly:
    q, r = cycmu.dickson_q(p), cycmu.dickson_r(p)
    out = Poly.zero(cycmu.VARS, GF(p))
    for (i, j), c in t.items():
        out = out + ((-q) ** i * r ** j).scale(c)
    return out


def bpgl_restrict(a: BPGLElement) -> RestrictionImage:
    """Images in ``CH*(T_PGL)`` (sigma-form) and in ``CH*(B(C_p x mu_p))`` (positive degrees over F_p)."""
    p = a.p
    q = cycmu.dickson_q(p)
    inv_img = Poly.zero(cycmu.VARS, GF(p))
    for i, c in bpgl_epsilon(a.inv, p).items():
        # eps(w) = sum b_i (-1)^i delta^i and delta -> -q
        inv_img = inv_img + (q ** i).scale(c * (-1) ** i)
    return RestrictionImage(a.inv, inv_img + _qr_image(p, a.tors))


def bpgl_chern_class(p: int, i: int) -> BPGLElement:
    """``c_i(sl_p)``: torus restriction in the free slot, ``rho^(p-1)`` in degree ``p^2 - 1``."""
    if i < 1:
        raise ValueError("Chern class index must be positive")
    if i == p * p - 1:
        return BPGLElement.rho(p, p - 1)
    if i > p * p - p:
        return BPGLElement.make(p)
    return BPGLElement.make(p, to_sigma_basis(adjoint_total_chern_on_torus(p, i), p))


# ---------------------------------------------------------------------------------
# H*(BPGL_p)


@dataclass(frozen=True)
class HBPGLElement:
    """``even + sum c delta^i rho^j beta``; ``odd`` maps ``(i, j)``, ``j >= 0``, to coefficients."""

    even: BPGLElement
    odd: Tors = field(default_factory=dict)

    @property
    def p(self):
        return self.even.p

    @classmethod
    def make(cls, p: int, even: Optional[BPGLElement] = None, odd: Optional[Tors] = None):
        even = even if even is not None else BPGLElement.make(p)
        odd = _clean(dict(odd or {}), p)
        for (i, j) in odd:
            if i < 0 or j < 0:
                raise ValueError("negative exponent in an odd monomial")
        return cls(even, odd)

    @classmethod
    def beta(cls, p):
        return cls.make(p, odd={(0, 0): 1})

    @classmethod
    def from_even(cls, e: BPGLElement):
        return cls(e, {})

    def __add__(self, other):
        return HBPGLElement(self.even + other.even, _tors_add(self.odd, other.odd, self.p))

    def __neg__(self):
        return HBPGLElement(-self.even, _clean({k: -c for k, c in self.odd.items()}, self.p))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return hbpgl_multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, HBPGLElement):
            return NotImplemented
        return self.even == other.even and _clean(self.odd, self.p) == _clean(other.odd, other.p)

    def __hash__(self):
        return hash((self.even, tuple(sorted(self.odd.items()))))

    def is_zero(self):
        return self.even.is_zero() and not self.odd

    def degrees(self) -> List[int]:
        """Cohomological degrees of the homogeneous pieces present."""
        p = self.p
        w = sigma_weight_map(p)
        ds = {2 * k for k in self.even.inv.graded_components(w)}
        ds |= {2 * torsion_degree(p, i, j) for (i, j) in self.even.tors}
        ds |= {2 * torsion_degree(p, i, j) + 3 for (i, j) in self.odd}
        return sorted(ds)

    def to_json(self):
        out = self.even.to_json()
        out["beta"] = _tors_json(self.odd)
        return out

    @classmethod
    def from_json(cls, obj):
        return cls.make(obj["p"], BPGLElement.from_json(obj), _tors_from_json(obj.get("beta", [])))

    def __str__(self):
        o = " + ".join(f"{c}*delta^{i}*rho^{j}*beta" for (i, j), c in sorted(self.odd.items()))
        return str(self.even) + (f" + ({o})" if o else "")


def sigma_weight_map(p):
    return {f"sigma{k}": k for k in range(1, p + 1)}


def hbpgl_multiply(a: HBPGLElement, b: HBPGLElement) -> HBPGLElement:
    if a.p != b.p:
        raise ValueError("elements over different primes")
    p = a.p
    even = bpgl_multiply(a.even, b.even)

    def act(e: BPGLElement, odd: Tors) -> Tors:
        return _tors_add(_tors_mul(_eps_tors_bpgl(e.inv, p), odd, p), _tors_mul(e.tors, odd, p), p)

    return HBPGLElement(even, _tors_add(act(a.even, b.odd), act(b.even, a.odd), p))


def hbpgl_restrict(a: HBPGLElement) -> RestrictionImage:
    """Images in ``CH*(T_PGL)`` and in ``H*(B(C_p x mu_p))`` with ``beta -> s``."""
    p = a.p
    ev = bpgl_restrict(a.even)
    const = a.even.inv.constant_term()
    # the F_p image already holds const mod p; keep only the integer copy
    even = ev.cycmu_part - Poly.constant(ev.cycmu_part.constant_term(), cycmu.VARS, GF(p))
    h = cycmu.HCycmuElement.make(p, const, even, _qr_image(p, {(i, j): c for (i, j), c in a.odd.items()}))
    return RestrictionImage(ev.torus_part, h)


# ---------------------------------------------------------------------------------
# additive structure read off the model


def _torsion_rank(p: int, monos: List[Tuple[int, int]], d: int) -> int:
    imgs = [_qr_image(p, {m: 1}) for m in monos]
    mat = [[g.coefficient((i, d - i)) for i in range(d + 1)] for g in imgs]
    return rank_mod_p(mat, p) if mat else 0


def graded_group_from_model(p: int, m: int, which: str = "chow", limit: int = MODEL_DEGREE_LIMIT) -> AbelianGroupDesc:
    """Count the normal-form basis in degree m.

    ``which`` is ``chow`` (m a Chow degree), ``cohomology-even`` or
    ``cohomology-odd`` (m the topological degree).  Torsion multiplicities are
    F_p-ranks of the images of the torsion monomials in ``C_p x mu_p``, so
    independence is verified rather than assumed.
    """
    which = which.lower().replace("_", "-")
    if which in ("cohomology-even", "cohomology-odd", "cohomology"):
        if m % 2 == 0:
            if which == "cohomology-odd":
                return AbelianGroupDesc(0)
            return graded_group_from_model(p, m // 2, "chow", limit)
        if which == "cohomology-even":
            return AbelianGroupDesc(0)
        if m < 3:
            return AbelianGroupDesc(0)
        w = (m - 3) // 2
        if w > limit:
            raise ValueError(f"degree exceeds the configured limit {limit}")
        monos = [(i, j) for i in range(w // (p * p - p) + 1) for j in range(w // (p + 1) + 1)
                 if torsion_degree(p, i, j) == w]
        return AbelianGroupDesc(0, (p,) * _torsion_rank(p, monos, w))
    if which != "chow":
        raise ValueError(f"unknown grading {which!r}")
    if m > limit:
        raise ValueError(f"degree {m} exceeds the configured limit {limit}")
    rank = invariant_rank(p, "PGL", "symmetric", m)
    monos = [(i, j) for i in range(m // (p * p - p) + 1) for j in range(1, m // (p + 1) + 1)
             if torsion_degree(p, i, j) == m]
    return AbelianGroupDesc(rank, (p,) * _torsion_rank(p, monos, m))
