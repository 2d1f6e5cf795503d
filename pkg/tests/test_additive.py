import threading
from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chowpgl.additive import (AbelianGroupDesc, PartitionCounter, chow_group_descriptor, cohomology_group_descriptor,
                              count_pi, count_r, count_s, count_s_prime)


def enumerate_partitions(m, lo, hi):
    """Partitions of m into parts in [lo, hi], by brute recursion."""
    if m == 0:
        return 1
    return sum(enumerate_partitions(m - k, lo, k) for k in range(lo, min(hi, m) + 1))


def enumerate_lin(m, p, j_min):
    a, b = p * p - p, p + 1
    return sum(1 for i in range(m + 1) for j in range(j_min, m + 1) if a * i + b * j == m)


def test_examples():
    assert count_pi(0, 7) == 1
    assert count_pi(4, 3) == 4
    assert all(count_pi(m, 1) == 1 for m in range(30))
    assert count_r(4, 3) == 1
    assert count_s(4, 3) == 1
    assert count_s_prime(0, 5) == 1 and count_s(0, 5) == 0


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_r_against_enumeration(p):
    for m in range(40):
        assert count_r(m, p) == enumerate_partitions(m, 2, p)
        assert count_pi(m, p) == enumerate_partitions(m, 1, p)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_r_is_a_pi_difference(p):
    for m in range(1, 201):
        assert count_r(m, p) == count_pi(m, p) - count_pi(m - 1, p)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_s_against_enumeration(p):
    for m in range(120):
        assert count_s(m, p) == enumerate_lin(m, p, 1)
        assert count_s_prime(m, p) == enumerate_lin(m, p, 0)
        assert count_s_prime(m, p) - count_s(m, p) == (m % (p * p - p) == 0)


def test_descriptors():
    assert str(chow_group_descriptor(4, 3)) == "Z + Z/3"
    assert chow_group_descriptor(4, 3) == AbelianGroupDesc(1, (3,))
    for p in (3, 5, 7):
        assert cohomology_group_descriptor(3, p) == AbelianGroupDesc(0, (p,))
        assert cohomology_group_descriptor(1, p).is_zero()


@given(st.integers(0, 300), st.sampled_from([3, 5, 7]))
def test_even_cohomology_is_chow(m, p):
    assert cohomology_group_descriptor(2 * m, p) == chow_group_descriptor(m, p)


def test_group_desc():
    g = AbelianGroupDesc(2, (3, 3, 9))
    assert str(g) == "Z^2 + (Z/3)^2 + Z/9"
    assert g.order_of_torsion() == 81
    assert AbelianGroupDesc.from_json(g.to_json()) == g
    assert str(AbelianGroupDesc(0)) == "0"
    with pytest.raises(ValueError):
        AbelianGroupDesc(-1)


def test_negative_degree():
    with pytest.raises(ValueError):
        count_r(-1, 3)
    with pytest.raises(ValueError):
        chow_group_descriptor(-2, 3)


def test_counter_is_thread_safe():
    c = PartitionCounter(7)
    ms = list(range(400, 0, -3))
    with ThreadPoolExecutor(8) as ex:
        got = list(ex.map(c.r, ms))
    fresh = PartitionCounter(7)
    assert got == [fresh.r(m) for m in ms]
