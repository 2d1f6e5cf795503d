"""Sparse exact multivariate polynomials over Z and F_p.

A :class:`Poly` is an immutable mapping from exponent vectors to nonzero
coefficients, together with an ordered tuple of variable names and a
coefficient domain.  Integer coefficients are Python ints, so nothing ever
overflows.  Over a prime field the stored coefficients are the canonical
representatives in ``[0, p-1]``.

The symmetric-function helpers at the bottom of the module work with the
torus variables ``x1..xp`` and the elementary symmetric variables
``sigma1..sigmap``.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

Exponents = Tuple[int, ...]


class DomainMismatch(ValueError):
    """Raised when polynomials over different coefficient domains meet."""


class NotSymmetricError(ValueError):
    """Raised by :func:`to_sigma_basis` on a non-symmetric input."""

    def __init__(self, transposition: Tuple[int, int]):
        i, j = transposition
        super().__init__(f"polynomial is not fixed by the transposition (x{i} x{j})")
        self.transposition = transposition


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CoeffDomain:
    """``modulus=None`` is the integers, otherwise the prime field F_modulus."""

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None:
            p = self.modulus
            if p < 3 or not is_prime(p):
                raise ValueError(f"prime field modulus must be an odd prime, got {p}")

    @property
    def is_integers(self) -> bool:
        return self.modulus is None

    def normalize(self, c: int) -> int:
        return c if self.modulus is None else c % self.modulus

    def __str__(self):
        return "ZZ" if self.modulus is None else f"GF({self.modulus})"

    def to_json(self):
        return "ZZ" if self.modulus is None else {"prime": self.modulus}

    @classmethod
    def from_json(cls, obj) -> "CoeffDomain":
        if obj in (None, "ZZ", "Z", "Integers"):
            return ZZ
        if isinstance(obj, dict):
            return cls(int(obj["prime"]))
        if isinstance(obj, str) and obj.startswith("GF(") and obj.endswith(")"):
            return cls(int(obj[3:-1]))
        return cls(int(obj))


ZZ = CoeffDomain()


def GF(p: int) -> CoeffDomain:
    return CoeffDomain(p)


def _union_variables(a: Sequence[str], b: Sequence[str]) -> Tuple[str, ...]:
    if tuple(a) == tuple(b):
        return tuple(a)
    seen = list(a)
    for v in b:
        if v not in seen:
            seen.append(v)
    return tuple(seen)


class Poly:
    """An exact multivariate polynomial.

    Construct through :meth:`from_dict`, :meth:`var`, :meth:`constant`, or the
    arithmetic operators.  Mixing polynomials with different variable tuples
    is allowed; the result lives on the union of the variables.  Mixing
    domains raises :class:`DomainMismatch`.
    """

    __slots__ = ("domain", "variables", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, int], variables: Sequence[str],
                 domain: CoeffDomain = ZZ, *, _clean: bool = False):
        self.domain = domain
        self.variables = tuple(variables)
        if _clean:
            self._terms = dict(terms)
        else:
            n = len(self.variables)
            out: Dict[Exponents, int] = {}
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent vector {e} does not match {n} variables")
                if any(k < 0 for k in e):
                    raise ValueError(f"negative exponent in {e}")
                c = domain.normalize(int(c))
                if c:
                    out[tuple(e)] = c
            self._terms = out
        self._hash = None

    # construction -----------------------------------------------------------------
    @classmethod
    def from_dict(cls, terms, variables, domain=ZZ):
        return cls(terms, variables, domain)

    @classmethod
    def zero(cls, variables=(), domain=ZZ):
        return cls({}, variables, domain, _clean=True)

    @classmethod
    def constant(cls, c: int, variables=(), domain=ZZ):
        return cls({(0,) * len(variables): c}, variables, domain)

    @classmethod
    def var(cls, name: str, variables: Optional[Sequence[str]] = None, domain=ZZ):
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            variables = variables + (name,)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls({tuple(e): 1}, variables, domain, _clean=True)

    @classmethod
    def gens(cls, names: Sequence[str], domain=ZZ):
        return tuple(cls.var(n, names, domain) for n in names)

    # basic accessors ----------------------------------------------------------------
    @property
    def terms(self) -> Dict[Exponents, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, monomial) -> int:
        """Coefficient of a monomial given as ``{name: exponent}`` or as an exponent tuple."""
        if isinstance(monomial, tuple):
            return self._terms.get(monomial, 0)
        e = [0] * len(self.variables)
        for v, k in monomial.items():
            if k == 0:
                continue
            if v not in self.variables:
                return 0
            e[self.variables.index(v)] = k
        return self._terms.get(tuple(e), 0)

    def constant_term(self) -> int:
        return self._terms.get((0,) * len(self.variables), 0)

    def degree(self, weights: Optional[Mapping[str, int]] = None) -> int:
        """Total degree, or weighted degree if ``weights`` maps names to weights.
        The zero polynomial has degree -1."""
        if not self._terms:
            return -1
        w = self._weights(weights)
        return max(sum(a * b for a, b in zip(e, w)) for e in self._terms)

    def _weights(self, weights):
        if weights is None:
            return (1,) * len(self.variables)
        return tuple(weights.get(v, 0) if isinstance(weights, Mapping) else weights(v)
                     for v in self.variables)

    def homogeneous_component(self, d: int, weights=None) -> "Poly":
        w = self._weights(weights)
        return Poly({e: c for e, c in self._terms.items()
                     if sum(a * b for a, b in zip(e, w)) == d},
                    self.variables, self.domain, _clean=True)

    def graded_components(self, weights=None) -> Dict[int, "Poly"]:
        w = self._weights(weights)
        parts: Dict[int, Dict[Exponents, int]] = {}
        for e, c in self._terms.items():
            parts.setdefault(sum(a * b for a, b in zip(e, w)), {})[e] = c
        return {d: Poly(t, self.variables, self.domain, _clean=True)
                for d, t in sorted(parts.items())}

    def is_homogeneous(self, weights=None) -> bool:
        return len(self.graded_components(weights)) <= 1

    def used_variables(self) -> Tuple[str, ...]:
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return tuple(v for i, v in enumerate(self.variables) if i in used)

    # variable bookkeeping ------------------------------------------------------------
    def with_variables(self, variables: Sequence[str]) -> "Poly":
        """Re-express on a new variable tuple; every used variable must be present."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = []
        for i, v in enumerate(self.variables):
            if v in variables:
                pos.append(variables.index(v))
            else:
                pos.append(None)
        n = len(variables)
        out = {}
        for e, c in self._terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.variables[i]} is used but not in {variables}")
                    new[pos[i]] = k
            out[tuple(new)] = c
        return Poly(out, variables, self.domain, _clean=True)

    def _coerce(self, other) -> Tuple["Poly", "Poly"]:
        if isinstance(other, int):
            other = Poly.constant(other, self.variables, self.domain)
        if not isinstance(other, Poly):
            return NotImplemented, NotImplemented
        if other.domain != self.domain:
            raise DomainMismatch(f"cannot combine polynomials over {self.domain} and {other.domain}")
        if other.variables == self.variables:
            return self, other
        vs = _union_variables(self.variables, other.variables)
        return self.with_variables(vs), other.with_variables(vs)

    # arithmetic ---------------------------------------------------------------------
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        out = dict(a._terms)
        norm = a.domain.normalize
        for e, c in b._terms.items():
            s = norm(out.get(e, 0) + c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(out, a.variables, a.domain, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        norm = self.domain.normalize
        return Poly({e: norm(-c) for e, c in self._terms.items()},
                    self.variables, self.domain, _clean=True)

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k: int) -> "Poly":
        k = self.domain.normalize(k)
        if k == 0:
            return Poly.zero(self.variables, self.domain)
        norm = self.domain.normalize
        out = {}
        for e, c in self._terms.items():
            v = norm(c * k)
            if v:
                out[e] = v
        return Poly(out, self.variables, self.domain, _clean=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        if len(a._terms) < len(b._terms):
            a, b = b, a
        out: Dict[Exponents, int] = {}
        get = out.get
        for eb, cb in b._terms.items():
            for ea, ca in a._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        m = a.domain.modulus
        if m is None:
            clean = {e: c for e, c in out.items() if c}
        else:
            clean = {}
            for e, c in out.items():
                c %= m
                if c:
                    clean[e] = c
        return Poly(clean, a.variables, a.domain, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.constant(1, self.variables, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, k: int) -> "Poly":
        """Divide every integer coefficient by ``k``; raise if not exact."""
        if not self.domain.is_integers:
            raise DomainMismatch("exact_div is only defined over the integers")
        out = {}
        for e, c in self._terms.items():
            q, r = divmod(c, k)
            if r:
                raise ValueError(f"coefficient {c} is not divisible by {k}")
            out[e] = q
        return Poly(out, self.variables, self.domain, _clean=True)

    def content(self) -> int:
        from math import gcd
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    # equality -----------------------------------------------------------------------
    def _canonical(self):
        names = self.variables
        return frozenset(
            (tuple((names[i], k) for i, k in sorted(enumerate(e), key=lambda t: names[t[0]]) if k), c)
            for e, c in self._terms.items())

    def __eq__(self, other):
        if isinstance(other, int):
            return self == Poly.constant(other, self.variables, self.domain)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.domain != other.domain:
            return False
        if self.variables == other.variables:
            return self._terms == other._terms
        return self._canonical() == other._canonical()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.domain, self._canonical()))
        return self._hash

    # change of domain ---------------------------------------------------------------
    def reduce_mod(self, p: int) -> "Poly":
        dom = GF(p)
        return Poly({e: c for e, c in self._terms.items()}, self.variables, dom)

    def lift(self) -> "Poly":
        """Integer polynomial with the canonical representatives as coefficients."""
        return Poly(dict(self._terms), self.variables, ZZ, _clean=True)

    # substitution -------------------------------------------------------------------
    def substitute(self, assignment: Mapping[str, "Poly"]) -> "Poly":
        return substitute(self, assignment)

    def derivative(self, name: str) -> "Poly":
        if name not in self.variables:
            return Poly.zero(self.variables, self.domain)
        i = self.variables.index(name)
        out = {}
        norm = self.domain.normalize
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                v = norm(c * e[i])
                if v:
                    ne = tuple(ne)
                    out[ne] = norm(out.get(ne, 0) + v)
        return Poly({e: c for e, c in out.items() if c}, self.variables, self.domain, _clean=True)

    def evaluate_monomialwise(self, values: Sequence[int]) -> int:
        total = 0
        for e, c in self._terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t *= v ** k
            total += t
        return self.domain.normalize(total)

    # printing -----------------------------------------------------------------------
    def sorted_terms(self):
        """Terms ordered by total degree descending, then lex descending."""
        return sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))

    def to_text(self, signed: bool = False) -> str:
        if not self._terms:
            return "0"
        m = self.domain.modulus
        pieces = []
        for e, c in self.sorted_terms():
            if signed and m is not None and c > m // 2:
                c -= m
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_text(signed=True)

    def __repr__(self):
        return f"Poly({self.to_text()!r}, {self.variables!r}, {self.domain})"

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "variables": list(self.variables),
            "terms": [{"exponents": {v: k for v, k in zip(self.variables, e) if k},
                       "coeff": str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj, variables=None, domain=None) -> "Poly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if isinstance(obj, list):
            terms = obj
        else:
            terms = obj["terms"]
            if variables is None:
                variables = obj.get("variables")
            if domain is None:
                domain = CoeffDomain.from_json(obj.get("domain", "ZZ"))
        domain = domain or ZZ
        if variables is None:
            names = []
            for t in terms:
                for v in t["exponents"]:
                    if v not in names:
                        names.append(v)
            variables = names
        variables = tuple(variables)
        out = {}
        for t in terms:
            e = [0] * len(variables)
            for v, k in t["exponents"].items():
                e[variables.index(v)] = int(k)
            e = tuple(e)
            out[e] = out.get(e, 0) + int(t["coeff"])
        return cls(out, variables, domain)

    @classmethod
    def from_text(cls, text: str, variables: Sequence[str], domain: CoeffDomain = ZZ) -> "Poly":
        """Parse the output of :meth:`to_text` (``3*x1^2*x2 - x3`` style)."""
        variables = tuple(variables)
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls.zero(variables, domain)
        if s[0] not in "+-":
            s = "+" + s
        out: Dict[Exponents, int] = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            coeff = 1
            e = [0] * len(variables)
            for factor in body.split("*"):
                if factor.isdigit():
                    coeff *= int(factor)
                    continue
                name, _, k = factor.partition("^")
                if name not in variables:
                    raise ValueError(f"unknown variable {name!r}")
                e[variables.index(name)] += int(k) if k else 1
            if sign == "-":
                coeff = -coeff
            e = tuple(e)
            out[e] = out.get(e, 0) + coeff
        return cls(out, variables, domain)


# ----------------------------------------------------------------------------------
# operations on polynomials


def substitute(f: Poly, assignment: Mapping[str, Poly]) -> Poly:
    """Simultaneously replace variables of ``f`` by polynomials.

    Unassigned variables are kept.  All assigned polynomials must share the
    domain of ``f``.
    """
    for v, g in assignment.items():
        if isinstance(g, Poly) and g.domain != f.domain:
            raise DomainMismatch(f"substituting {g.domain} polynomial for {v} into {f.domain} polynomial")
    images = []
    keep = [v for v in f.variables if v not in assignment]
    target_vars = tuple(keep)
    for g in assignment.values():
        if isinstance(g, Poly):
            target_vars = _union_variables(target_vars, g.variables)
    for v in f.variables:
        if v in assignment:
            g = assignment[v]
            if isinstance(g, int):
                g = Poly.constant(g, target_vars, f.domain)
            images.append(g.with_variables(target_vars))
        else:
            images.append(Poly.var(v, target_vars, f.domain))
    powers = [dict() for _ in images]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            if k == 0:
                cache[k] = Poly.constant(1, target_vars, f.domain)
            elif k == 1:
                cache[k] = images[i]
            else:
                cache[k] = power(i, k // 2) * power(i, k - k // 2)
        return cache[k]

    acc: Dict[Exponents, int] = {}
    for e, c in f.items():
        term = Poly.constant(c, target_vars, f.domain)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        for te, tc in term.items():
            acc[te] = acc.get(te, 0) + tc
    return Poly(acc, target_vars, f.domain)


def x_vars(p: int) -> Tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, p + 1))


def sigma_vars(p: int) -> Tuple[str, ...]:
    return tuple(f"sigma{i}" for i in range(1, p + 1))


def sigma_weights(p: int) -> Dict[str, int]:
    return {f"sigma{i}": i for i in range(1, p + 1)}


def permute_variables(f: Poly, g: Sequence[int], names: Optional[Sequence[str]] = None) -> Poly:
    """Apply the permutation ``g`` (0-based images, ``x_{i+1} -> x_{g[i]+1}``).

    ``names`` defaults to ``x1..xn`` with ``n = len(g)``; every torus variable
    occurring in ``f`` must be among them.
    """
    n = len(g)
    if sorted(g) != list(range(n)):
        raise ValueError(f"{tuple(g)} is not a permutation of {n} points")
    names = tuple(names) if names is not None else x_vars(n)
    torus = [v for v in f.variables if re.fullmatch(r"x\d+", v)]
    extra = [v for v in torus if v not in names]
    if extra:
        raise ValueError(f"permutation of size {n} cannot act on variables {extra}")
    vs = _union_variables(f.variables, names)
    h = f.with_variables(vs)
    idx = [vs.index(v) for v in names]
    target = list(range(len(vs)))
    for i in range(n):
        target[idx[i]] = idx[g[i]]
    out = {}
    for e, c in h.items():
        ne = [0] * len(vs)
        for i, k in enumerate(e):
            ne[target[i]] = k
        out[tuple(ne)] = c
    result = Poly(out, vs, f.domain, _clean=True)
    if set(names) <= set(f.variables):
        result = result.with_variables(f.variables)
    return result


def elementary_symmetric(k: int, p: int, domain: CoeffDomain = ZZ) -> Poly:
    if k < 0 or k > p:
        raise ValueError(f"sigma_{k} does not exist in {p} variables")
    terms = {}
    for S in itertools.combinations(range(p), k):
        e = [0] * p
        for i in S:
            e[i] = 1
        terms[tuple(e)] = 1
    return Poly(terms, x_vars(p), domain)


@lru_cache(maxsize=None)
def _sigma_monomial_x(p: int, exps: Exponents, modulus: Optional[int]) -> Poly:
    dom = CoeffDomain(modulus) if modulus else ZZ
    if sum(exps) == 0:
        return Poly.constant(1, x_vars(p), dom)
    # peel one factor off the largest index present
    k = max(i for i, e in enumerate(exps) if e)
    rest = list(exps)
    rest[k] -= 1
    return _sigma_monomial_x(p, tuple(rest), modulus) * elementary_symmetric(k + 1, p, dom)


def sigma_monomial_to_x(p: int, exps: Sequence[int], domain: CoeffDomain = ZZ) -> Poly:
    """Expand ``sigma1^e1 ... sigmap^ep`` in the x-variables (memoized)."""
    return _sigma_monomial_x(p, tuple(exps), domain.modulus)


def from_sigma_basis(g: Poly, p: int) -> Poly:
    """Substitute ``sigma_k -> elementary_symmetric(k)``."""
    g = g.with_variables(sigma_vars(p))
    acc: Dict[Exponents, int] = {}
    for e, c in g.items():
        for xe, xc in sigma_monomial_to_x(p, e, g.domain).items():
            acc[xe] = acc.get(xe, 0) + c * xc
    return Poly(acc, x_vars(p), g.domain)


def check_symmetric(f: Poly, p: int) -> Optional[Tuple[int, int]]:
    """Return a violating transposition (1-based) or ``None``."""
    for i in range(p - 1):
        g = list(range(p))
        g[i], g[i + 1] = g[i + 1], g[i]
        if permute_variables(f, g) != f:
            return (i + 1, i + 2)
    return None


def to_sigma_basis(f: Poly, p: Optional[int] = None) -> Poly:
    """Write a symmetric polynomial in ``x1..xp`` as a polynomial in ``sigma1..sigmap``.

    Uses leading-term elimination in lex order.  Raises
    :class:`NotSymmetricError` naming an adjacent transposition that moves ``f``.
    """
    if p is None:
        p = len(x_vars_in(f)) or 1
    f = f.with_variables(x_vars(p))
    bad = check_symmetric(f, p)
    if bad is not None:
        raise NotSymmetricError(bad)
    out: Dict[Exponents, int] = {}
    rem = dict(f.items())
    norm = f.domain.normalize
    while rem:
        lead = max(rem)
        c = rem[lead]
        exps = tuple(lead[i] - (lead[i + 1] if i + 1 < p else 0) for i in range(p))
        if any(k < 0 for k in exps):
            raise NotSymmetricError((1, 2))
        out[exps] = c
        for e, v in sigma_monomial_to_x(p, exps, f.domain).items():
            s = norm(rem.get(e, 0) - c * v)
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return Poly(out, sigma_vars(p), f.domain)


def x_vars_in(f: Poly) -> Tuple[str, ...]:
    xs = [v for v in f.variables if re.fullmatch(r"x\d+", v)]
    if not xs:
        return ()
    n = max(int(v[1:]) for v in xs)
    return x_vars(n)


def reduce_mod_sigma1(f: Poly) -> Poly:
    """Image in ``Z[sigma1..sigmap]/(sigma1)``: drop every term containing sigma1."""
    if "sigma1" not in f.variables:
        return f
    i = f.variables.index("sigma1")
    return Poly({e: c for e, c in f.items() if e[i] == 0}, f.variables, f.domain, _clean=True)


def parse_poly(text: str, variables: Sequence[str], domain: CoeffDomain = ZZ) -> Poly:
    """Parse a polynomial written with ``+ - * ^`` and parentheses (evaluating products)."""
    gens = {v: Poly.var(v, variables, domain) for v in variables}
    tokens = re.findall(r"\d+|[A-Za-z_][A-Za-z_0-9]*|[-+*^()]", text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    def expr():
        if peek() in ("+", "-"):
            sign = take()
            val = term()
            val = -val if sign == "-" else val
        else:
            val = term()
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while peek() == "*":
            take()
            val = val * factor()
        return val

    def factor():
        base = atom()
        if peek() == "^":
            take()
            base = base ** int(take())
        return base

    def atom():
        tok = take()
        if tok == "(":
            v = expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses")
            return v
        if tok.isdigit():
            return Poly.constant(int(tok), variables, domain)
        if tok in gens:
            return gens[tok]
        raise ValueError(f"unknown token {tok!r}")

    value = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input near {tokens[pos]!r}")
    return value
