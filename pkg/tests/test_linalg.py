"""Integer and F_p linear algebra against sympy."""

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from chowpgl.linalg import (EchelonLattice, IntegrityError, hnf, integer_kernel, minimal_generator_count,
                            nullspace_mod_p, rank_mod_p, rank_q, smith_with_left_inverse, xgcd)


def matrices(max_rows=6, max_cols=6, bound=30):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=1, max_size=max_rows))


def sympy_invariants(rows):
    S = smith_normal_form(sp.Matrix(rows), domain=sp.ZZ)
    return sorted(abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0)


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6))
def test_xgcd(a, b):
    g, s, t = xgcd(a, b)
    assert g == sp.gcd(a, b) and s * a + t * b == g


@given(matrices())
def test_hnf_spans_same_lattice(rows):
    n = len(rows[0])
    B = hnf(rows, n)
    lat = EchelonLattice(n)
    for r in B:
        lat.insert(r)
    for r in rows:
        assert lat.contains(r)
    back = EchelonLattice(n)
    for r in rows:
        back.insert(r)
    for b in B:
        assert back.contains(b)
    assert len(B) == sp.Matrix(rows).rank()


@given(matrices())
def test_hnf_is_reduced(rows):
    B = hnf(rows, len(rows[0]))
    piv = [next(i for i, c in enumerate(r) if c) for r in B]
    assert piv == sorted(piv)
    for i, (c, r) in enumerate(zip(piv, B)):
        assert r[c] > 0
        for other in B[:i]:
            assert 0 <= other[c] < r[c]
    assert hnf(B, len(rows[0])) == B


@given(matrices())
def test_smith_matches_sympy(rows):
    n = len(rows[0])
    diag, W = smith_with_left_inverse(rows, n)
    assert sorted(d for d in diag if d) == sympy_invariants(rows)
    for a, b in zip(diag, diag[1:]):
        if b:
            assert b % a == 0
    # W is unimodular and span(d_i w_i) is the column lattice
    assert abs(sp.Matrix(W).det()) == 1
    scaled = [[d * x for x in w] for d, w in zip(diag, W) if d]
    assert hnf(scaled, n) == hnf(rows, n)


@given(matrices())
def test_kernel_is_saturated(rows):
    nrows = len(rows[0])
    K = integer_kernel(rows, nrows)
    M = sp.Matrix(rows).T
    assert len(K) == len(rows) - M.rank()
    for k in K:
        assert list(M * sp.Matrix(k)) == [0] * nrows
    if K:
        assert sympy_invariants(K) == [1] * len(K)


def test_coordinates_and_integrity():
    lat = EchelonLattice(2)
    lat.insert([2, 0])
    lat.insert([0, 3])
    assert lat.coordinates([4, 6]) == [2, 2]
    with pytest.raises(IntegrityError):
        lat.coordinates([1, 0])
    assert not lat.contains([0, 1])


def test_minimal_generator_count():
    # Z^2 / <(2, 0), (0, 2)> needs two generators; Z^2 / <(1, 0)> needs one
    assert minimal_generator_count([[2, 0], [0, 2]], 2) == 2
    assert minimal_generator_count([[1, 0]], 2) == 1
    assert minimal_generator_count([[1, 1], [0, 1]], 2) == 0
    assert minimal_generator_count([], 3) == 3


@given(matrices(bound=10), st.sampled_from([2, 3, 5, 7]))
def test_mod_p_rank_and_nullspace(rows, p):
    n = len(rows[0])
    M = sp.Matrix(rows)
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF as sGF
    dm = DomainMatrix.from_Matrix(M).convert_to(sGF(p))
    assert rank_mod_p(rows, p) == dm.rank()
    N = nullspace_mod_p(rows, n, p)
    assert len(N) == n - dm.rank()
    for v in N:
        assert all(sum(a * b for a, b in zip(r, v)) % p == 0 for r in rows)


def test_rank_q():
    assert rank_q([[1, 2], [2, 4]]) == 1
    assert rank_q([]) == 0
