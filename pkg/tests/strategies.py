"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from chowpgl.polyring import ZZ, GF, Poly, x_vars


def polys(n=3, max_deg=3, max_terms=5, bound=20, domain=ZZ, names=None):
    names = tuple(names) if names is not None else x_vars(n)
    mono = st.tuples(*[st.integers(0, max_deg) for _ in names])
    return st.dictionaries(mono, st.integers(-bound, bound), max_size=max_terms).map(
        lambda d: Poly(d, names, domain))


def perms(n):
    return st.permutations(list(range(n))).map(tuple)
