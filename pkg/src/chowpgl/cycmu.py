"""The rings of ``B(C_p x mu_p)``.

Chow ring ``Z[xi, eta]/(p xi, p eta)``: positive-degree elements are
polynomials over F_p in ``xi, eta`` (both of degree 1).  Cohomology adds an
odd generator ``s`` of cohomological degree 3 with ``s^2 = 0`` and ``p s = 0``;
``xi`` and ``eta`` then sit in cohomological degree 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional

from .linalg import nullspace_mod_p, rank_mod_p
from .polyring import GF, ZZ, Poly, is_prime

VARS = ("xi", "eta")
SL2_DEGREE_LIMIT = 200

FpBivar = Poly


def _check(p):
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def xi(p: int) -> Poly:
    return Poly.var("xi", VARS, GF(p))


def eta(p: int) -> Poly:
    return Poly.var("eta", VARS, GF(p))


def bivar(f: Poly, p: int) -> Poly:
    """Coerce to the canonical ``F_p[xi, eta]`` form."""
    g = f if f.domain == GF(p) else f.reduce_mod(p)
    return g.with_variables(VARS)


@lru_cache(maxsize=None)
def dickson_q(p: int) -> Poly:
    _check(p)
    x, y = xi(p), eta(p)
    return y ** (p * p - p) + x ** (p - 1) * (x ** (p - 1) - y ** (p - 1)) ** (p - 1)


def dickson_q_alt(p: int) -> Poly:
    """The second closed form ``xi^(p^2-p) + eta^(p-1) (xi^(p-1) - eta^(p-1))^(p-1)``."""
    _check(p)
    x, y = xi(p), eta(p)
    return x ** (p * p - p) + y ** (p - 1) * (x ** (p - 1) - y ** (p - 1)) ** (p - 1)


@lru_cache(maxsize=None)
def dickson_r(p: int) -> Poly:
    _check(p)
    x, y = xi(p), eta(p)
    return x * y * (x ** (p - 1) - y ** (p - 1))


def chern_orbit_product(p: int, homogenize: bool = False) -> Poly:
    """``prod (1 + i xi + j eta)`` over ``F_p^2``, or ``prod (t + i xi + j eta)`` over ``F_p^2 - 0``.

    The result is checked against ``1 - q + r^(p-1)`` (resp. ``t^(p^2-1) - q t^(p-1) + r^(p-1)``).
    """
    _check(p)
    names = VARS + ("t",) if homogenize else VARS
    F = GF(p)
    x, y = Poly.var("xi", names, F), Poly.var("eta", names, F)
    base = Poly.var("t", names, F) if homogenize else Poly.constant(1, names, F)
    out = Poly.constant(1, names, F)
    for i in range(p):
        for j in range(p):
            if homogenize and i == j == 0:
                continue
            out = out * (base + x * i + y * j)
    q, r = dickson_q(p).with_variables(names), dickson_r(p).with_variables(names)
    if homogenize:
        t = Poly.var("t", names, F)
        closed = t ** (p * p - 1) - q * t ** (p - 1) + r ** (p - 1)
    else:
        closed = Poly.constant(1, names, F) - q + r ** (p - 1)
    if out != closed:
        raise ArithmeticError("orbit product disagrees with its closed form")
    return out


@lru_cache(maxsize=None)
def _adjoint_total(p: int) -> Poly:
    F = GF(p)
    x, y = xi(p), eta(p)
    out = Poly.constant(1, VARS, F)
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            if i == j == p:
                continue
            out = out * (Poly.constant(1, VARS, F) + x * i + y * j)
    return out


def adjoint_chern_restriction(p: int, i: int) -> Poly:
    """Degree-i part of ``prod_{(a,b) != (p,p)} (1 + a xi + b eta)``: ``c_i`` of the adjoint representation."""
    _check(p)
    if i < 1:
        raise ValueError("Chern class index must be positive")
    return _adjoint_total(p).homogeneous_component(i)


@dataclass(frozen=True)
class Sl2Matrix:
    """``[[a, b], [c, d]]`` over F_p, acting by ``xi -> a xi + b eta``, ``eta -> c xi + d eta``."""

    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.p)

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    def is_special(self) -> bool:
        return self.det == 1

    def __matmul__(self, other: "Sl2Matrix") -> "Sl2Matrix":
        # substituting by self, then by other, is substitution by other @ self as matrices
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        return Sl2Matrix(a, b, c, d, self.p)

    def act(self, f: Poly) -> Poly:
        p = self.p
        f = bivar(f, p)
        x, y = xi(p), eta(p)
        return f.substitute({"xi": x * self.a + y * self.b, "eta": x * self.c + y * self.d})


def sl2_generators(p: int) -> List[Sl2Matrix]:
    """The unipotent ``[[1,1],[0,1]]`` and the rotation ``[[0,-1],[1,0]]``."""
    return [Sl2Matrix(1, 1, 0, 1, p), Sl2Matrix(0, -1, 1, 0, p)]


def sl2_invariant_dimension(p: int, d: int) -> int:
    """``#{(a, b) >= 0 : a (p^2 - p) + b (p + 1) = d}``."""
    m = p * p - p
    return sum(1 for a in range(d // m + 1) if (d - a * m) % (p + 1) == 0)


def sl2_invariant_basis(p: int, d: int, limit: Optional[int] = None) -> List[Poly]:
    """F_p-basis of the degree-d polynomials fixed by both standard generators."""
    _check(p)
    if d > (SL2_DEGREE_LIMIT if limit is None else limit):
        raise ValueError(f"degree {d} exceeds the configured limit")
    if d < 0:
        return []
    monos = [(i, d - i) for i in range(d + 1)]
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for g in sl2_generators(p):
        # matrix of (g - 1) on the monomial basis, one row per output monomial
        M = [[0] * len(monos) for _ in monos]
        for k, m in enumerate(monos):
            img = g.act(Poly({m: 1}, VARS, GF(p)))
            for e, c in img.items():
                M[index[e]][k] += c
            M[k][k] -= 1
        rows.extend(M)
    kern = nullspace_mod_p(rows, len(monos), p)
    return [Poly({m: c for m, c in zip(monos, v) if c % p}, VARS, GF(p)) for v in kern]


def qr_monomials(p: int, d: int) -> List[Poly]:
    """The products ``q^a r^b`` of degree d."""
    m = p * p - p
    out = []
    for a in range(d // m + 1):
        rest = d - a * m
        if rest % (p + 1) == 0:
            out.append(dickson_q(p) ** a * dickson_r(p) ** (rest // (p + 1)))
    return out


def coefficient_rows(polys: List[Poly], d: int) -> List[List[int]]:
    return [[f.coefficient((i, d - i)) for i in range(d + 1)] for f in polys]


def same_span(p: int, d: int, a: List[Poly], b: List[Poly]) -> bool:
    ra, rb = coefficient_rows(a, d), coefficient_rows(b, d)
    return rank_mod_p(ra, p) == rank_mod_p(rb, p) == rank_mod_p(ra + rb, p) if (ra or rb) else True


# ---------------------------------------------------------------------------------
# cohomology


@dataclass(frozen=True)
class HCycmuElement:
    """``c + even + odd * s`` with ``c`` in Z and ``even``, ``odd`` in ``F_p[xi, eta]`` (``even`` without constant term)."""

    p: int
    const: int
    even: Poly
    odd: Poly

    @classmethod
    def make(cls, p: int, const: int = 0, even: Optional[Poly] = None, odd: Optional[Poly] = None):
        F = GF(p)
        e = bivar(even, p) if even is not None else Poly.zero(VARS, F)
        c0 = e.constant_term()
        if c0:
            # a constant given inside the F_p part is only defined mod p
            const = const + c0
            e = e - Poly.constant(c0, VARS, F)
        o = bivar(odd, p) if odd is not None else Poly.zero(VARS, F)
        return cls(p, const, e, o)

    @classmethod
    def s(cls, p: int) -> "HCycmuElement":
        return cls.make(p, odd=Poly.constant(1, VARS, GF(p)))

    @classmethod
    def one(cls, p: int) -> "HCycmuElement":
        return cls.make(p, 1)

    def __add__(self, other):
        return HCycmuElement(self.p, self.const + other.const, self.even + other.even, self.odd + other.odd)

    def __neg__(self):
        return HCycmuElement(self.p, -self.const, -self.even, -self.odd)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return h_ring_multiply(self, other)

    def is_zero(self) -> bool:
        return self.const == 0 and self.even.is_zero() and self.odd.is_zero()

    def components(self):
        """Homogeneous pieces keyed by cohomological degree."""
        out = {}
        if self.const:
            out[0] = HCycmuElement.make(self.p, self.const)
        for k, part in self.even.graded_components().items():
            out[2 * k] = HCycmuElement.make(self.p, even=part)
        for k, part in self.odd.graded_components().items():
            deg = 2 * k + 3
            prev = out.get(deg)
            piece = HCycmuElement.make(self.p, odd=part)
            out[deg] = piece if prev is None else prev + piece
        return out

    def __str__(self):
        parts = []
        if self.const:
            parts.append(str(self.const))
        if not self.even.is_zero():
            parts.append(str(self.even))
        if not self.odd.is_zero():
            parts.append(f"({self.odd})*s")
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"p": self.p, "const": self.const, "even": self.even.to_json(), "odd": self.odd.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls.make(obj["p"], obj["const"], Poly.from_json(obj["even"]), Poly.from_json(obj["odd"]))


def h_ring_multiply(a: HCycmuElement, b: HCycmuElement) -> HCycmuElement:
    if a.p != b.p:
        raise ValueError("elements over different primes")
    p = a.p
    ca, cb = a.const, b.const
    even = a.even * b.even + a.even.scale(cb) + b.even.scale(ca)
    odd = a.even * b.odd + b.even * a.odd + a.odd.scale(cb) + b.odd.scale(ca)
    return HCycmuElement(p, ca * cb, even, odd)
