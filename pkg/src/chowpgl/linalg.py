"""Exact linear algebra over Z and F_p on lists of Python ints.

Integer routines work with lattices given by generating row vectors:
echelon bases by gcd insertion, saturated kernels, coordinates with respect to
an echelon basis and Smith normal form with a tracked left transform.  The
F_p routines are plain Gauss-Jordan elimination.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

Vector = List[int]


class IntegrityError(ArithmeticError):
    """A vector that must lie in a lattice does not."""


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _lead(v: Sequence[int]) -> int:
    for i, c in enumerate(v):
        if c:
            return i
    return -1


class EchelonLattice:
    """A Z-lattice kept as an echelon basis keyed by pivot column.

    ``insert`` adds a generator; ``basis`` returns the row-style Hermite normal
    form (positive pivots, entries above each pivot reduced into ``[0, pivot)``).
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: Dict[int, Vector] = {}

    def insert(self, v: Sequence[int]) -> bool:
        """Add ``v``; return True if the rank grew."""
        v = list(v)
        rows = self.rows
        while True:
            c = _lead(v)
            if c < 0:
                return False
            b = rows.get(c)
            if b is None:
                if v[c] < 0:
                    v = [-x for x in v]
                rows[c] = self._reduce(v, c)
                return True
            bc, vc = b[c], v[c]
            if vc % bc == 0:
                q = vc // bc
                v = [x - q * y for x, y in zip(v, b)]
                continue
            g, s, t = xgcd(bc, vc)
            new_b = [s * y + t * x for x, y in zip(v, b)]
            v = [(bc // g) * x - (vc // g) * y for x, y in zip(v, b)]
            rows[c] = self._reduce(new_b, c)

    def _reduce(self, v: Vector, c: int) -> Vector:
        # size-reduce entries right of the pivot against later pivot rows
        for k in sorted(self.rows):
            if k <= c:
                continue
            b = self.rows[k]
            q = v[k] // b[k]
            if q:
                v = [x - q * y for x, y in zip(v, b)]
        return v

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def basis(self) -> List[Vector]:
        piv = self.pivots()
        rows = [list(self.rows[c]) for c in piv]
        # ascending pivots: reducing by row i only touches columns >= piv[i]
        for i in range(len(rows)):
            ci = piv[i]
            for j in range(i):
                q = rows[j][ci] // rows[i][ci]
                if q:
                    rows[j] = [a - q * b for a, b in zip(rows[j], rows[i])]
        for c, r in zip(piv, rows):
            self.rows[c] = r
        return rows

    def contains(self, v: Sequence[int]) -> bool:
        try:
            self.coordinates(v)
        except IntegrityError:
            return False
        return True

    def coordinates(self, v: Sequence[int]) -> Vector:
        """Coordinates of ``v`` in :meth:`basis` order; raise if ``v`` is not in the lattice."""
        basis = self.basis()
        piv = self.pivots()
        v = list(v)
        out = []
        for c, b in zip(piv, basis):
            q, r = divmod(v[c], b[c])
            if r:
                raise IntegrityError("vector is not in the lattice")
            out.append(q)
            if q:
                v = [x - q * y for x, y in zip(v, b)]
        if any(v):
            raise IntegrityError("vector is not in the lattice")
        return out


def hnf(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> List[Vector]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    lat = EchelonLattice(ncols)
    for r in rows:
        lat.insert(r)
    return lat.basis()


def rank_q(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix."""
    if not rows:
        return 0
    lat = EchelonLattice(len(rows[0]))
    for r in rows:
        lat.insert(r)
    return lat.rank


def integer_kernel(columns: Sequence[Sequence[int]], nrows: int) -> List[Vector]:
    """Basis of ``{y in Z^n : sum_j y_j * columns[j] = 0}`` (saturated), in HNF.

    ``columns`` are the ``n`` column vectors of length ``nrows`` of the matrix.
    """
    n = len(columns)
    lat = EchelonLattice(nrows + n)
    for j, col in enumerate(columns):
        if len(col) != nrows:
            raise ValueError("column length mismatch")
        e = [0] * n
        e[j] = 1
        lat.insert(list(col) + e)
    kern = [r[nrows:] for c, r in sorted(lat.rows.items()) if c >= nrows]
    return hnf(kern, n) if kern else []


def smith_with_left_inverse(columns: Sequence[Sequence[int]], r: int) -> Tuple[List[int], List[Vector]]:
    """Smith normal form of the ``r x N`` matrix with the given columns.

    Returns ``(diag, W)`` where ``diag`` has length ``r`` (invariant factors
    ``d_1 | d_2 | ...``, zero-padded) and ``W`` is an ``r x r`` unimodular
    matrix whose columns ``w_1..w_r`` form a basis of ``Z^r`` such that the
    column lattice equals ``span(d_i w_i)``.  ``W`` is given as a list of
    columns.
    """
    lat = EchelonLattice(r)
    for col in columns:
        lat.insert(col)
    gens = lat.basis()
    # work on M = r x k with the reduced generators as columns
    k = len(gens)
    M = [[gens[j][i] for j in range(k)] for i in range(r)]
    W = [[1 if i == j else 0 for i in range(r)] for j in range(r)]  # columns

    def row_add(i, j, q):  # row_i += q * row_j
        if q == 0:
            return
        M[i] = [a + q * b for a, b in zip(M[i], M[j])]
        # W <- W * E^{-1}: column_j -= q * column_i
        W[j] = [a - q * b for a, b in zip(W[j], W[i])]

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        W[i], W[j] = W[j], W[i]

    def row_neg(i):
        M[i] = [-a for a in M[i]]
        W[i] = [-a for a in W[i]]

    def row_gcd(i, j, c):
        """Replace rows i, j so that M[i][c] = gcd and M[j][c] = 0."""
        a, b = M[i][c], M[j][c]
        g, s, t = xgcd(a, b)
        ag, bg = a // g, b // g
        ri, rj = M[i], M[j]
        M[i] = [s * x + t * y for x, y in zip(ri, rj)]
        M[j] = [-bg * x + ag * y for x, y in zip(ri, rj)]
        wi, wj = W[i], W[j]
        W[i] = [ag * x + bg * y for x, y in zip(wi, wj)]
        W[j] = [-t * x + s * y for x, y in zip(wi, wj)]

    def col_swap(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    def col_add(i, j, q):  # col_i += q * col_j
        if q == 0:
            return
        for row in M:
            row[i] += q * row[j]

    def col_gcd(i, j, rr):
        a, b = M[rr][i], M[rr][j]
        g, s, t = xgcd(a, b)
        ag, bg = a // g, b // g
        for row in M:
            x, y = row[i], row[j]
            row[i] = s * x + t * y
            row[j] = -bg * x + ag * y

    diag = []
    t = 0
    while t < min(r, k):
        # choose a nonzero pivot of minimal absolute value in the submatrix
        best = None
        for i in range(t, r):
            for j in range(t, k):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        while True:
            changed = False
            for i in range(t + 1, r):
                if M[i][t]:
                    if M[i][t] % M[t][t] == 0:
                        row_add(i, t, -(M[i][t] // M[t][t]))
                    else:
                        row_gcd(t, i, t)
                        changed = True
            for j in range(t + 1, k):
                if M[t][j]:
                    if M[t][j] % M[t][t] == 0:
                        col_add(j, t, -(M[t][j] // M[t][t]))
                    else:
                        col_gcd(t, j, t)
                        changed = True
            if changed:
                continue
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, k):
                    if M[i][j] % M[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if M[t][t] < 0:
            row_neg(t)
        diag.append(M[t][t])
        t += 1
    diag += [0] * (r - len(diag))
    return diag, W


def minimal_generator_count(columns: Sequence[Sequence[int]], r: int) -> int:
    """Minimal number of generators of ``Z^r / span(columns)``."""
    diag, _ = smith_with_left_inverse(columns, r)
    return sum(1 for d in diag if d != 1)


# ---------------------------------------------------------------------------------
# F_p


def rref_mod_p(rows: Sequence[Sequence[int]], p: int) -> Tuple[List[Vector], List[int]]:
    A = [[x % p for x in r] for r in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    piv = []
    r = 0
    for c in range(n):
        if r == m:
            break
        k = next((i for i in range(r, m) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [(x * inv) % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        piv.append(c)
        r += 1
    return A[:r], piv


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref_mod_p(rows, p)[1])


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> List[Vector]:
    """Basis of ``{x : A x = 0}`` over F_p for the matrix with the given rows."""
    R, piv = rref_mod_p(rows, p) if rows else ([], [])
    free = [j for j in range(ncols) if j not in piv]
    out = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, c in zip(R, piv):
            x[c] = (-row[f]) % p
        out.append(x)
    return out
