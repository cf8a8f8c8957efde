from fractions import Fraction
from math import comb

import pytest

from umbral.combinatorics import (
    bell_number,
    bell_triangle,
    bernoulli_number,
    complete_bell,
    enumerate_partitions,
    exponential_poly,
    partial_bell,
    partition_count,
    stirling,
    weighted_partition_sum,
)
from umbral.errors import TooLarge
from umbral.poly import ONE, Poly
from umbral.prng import Stream

x = Poly.var("x")


def test_stirling_second_against_enumeration():
    # S(4,2) = number of 2-block set partitions of a 4-set
    two_block = sum(w.count for w in enumerate_partitions(4) if w.num_blocks == 2)
    assert stirling("second", 4, 2) == two_block == 7
    for n in range(9):
        for k in range(n + 1):
            by_enum = sum(w.count for w in enumerate_partitions(n)
                          if w.num_blocks == k)
            assert stirling("second", n, k) == by_enum


def test_stirling_diagonal_and_bounds():
    for n in range(8):
        assert stirling("second", n, n) == 1
        assert stirling("first_signed", n, n) == 1
    with pytest.raises(IndexError):
        stirling("second", 3, 4)
    with pytest.raises(IndexError):
        stirling("second", -1, 0)
    with pytest.raises(ValueError):
        stirling("third", 3, 1)


def test_stirling_first_by_falling_factorial_expansion():
    # (x)_n = sum_k s(n,k) x^k, by direct multiplication
    for n in range(1, 8):
        ff = ONE
        for j in range(n):
            ff = ff * (x - j)
        expansion = sum((x ** k) * stirling("first_signed", n, k)
                        for k in range(n + 1))
        assert ff == expansion
    assert stirling("first_signed", 3, 1) == 2


def test_stirling_kinds_are_inverse_triangles():
    for i in range(11):
        for m in range(11):
            total = sum(stirling("first_signed", i, j) * stirling("second", j, m)
                        for j in range(min(i, 10) + 1) if j <= i and m <= j)
            assert total == (1 if i == m else 0)


def test_bell_numbers():
    assert bell_number(0) == 1
    assert bell_number(5) == 52
    for n in range(13):
        assert bell_number(n) == sum(stirling("second", n, k) for k in range(n + 1))


def test_partial_bell_basics():
    a = [Poly.var(f"a{i}") for i in range(1, 9)]
    for n in range(1, 8):
        assert partial_bell(n, 1, a) == a[n - 1]
        assert partial_bell(n, n, a) == a[0] ** n
    assert partial_bell(3, 2, a) == 3 * a[0] * a[1]
    with pytest.raises(IndexError):
        partial_bell(3, 0, a)
    with pytest.raises(IndexError):
        partial_bell(3, 2, a[:1])


def test_partial_bell_matches_partition_oracle():
    stream = Stream(7)
    for n in range(1, 11):
        a = [Poly.const(stream.rational()) for _ in range(n)]
        for k in range(1, n + 1):
            assert partial_bell(n, k, a) == weighted_partition_sum(n, k, a)


def test_complete_bell():
    ones = [ONE] * 12
    for n in range(13):
        assert complete_bell(n, ones) == bell_number(n)
    a = [Poly.var(f"a{i}") for i in range(1, 4)]
    assert complete_bell(1, a) == a[0]
    # recursion: Y_{n+1} = sum C(n,k) a_{n-k+1} Y_k
    stream = Stream(11)
    vals = [Poly.const(stream.rational()) for _ in range(11)]
    ys = [complete_bell(n, vals) for n in range(11)]
    for n in range(10):
        rhs = sum((vals[n - k] * ys[k]) * comb(n, k) for k in range(n + 1))
        assert ys[n + 1] == rhs


def test_exponential_polynomials():
    assert exponential_poly(2) == x + x ** 2
    for n in range(13):
        assert exponential_poly(n).subs({"x": 1}) == bell_number(n)
    # recursion: Phi_{n+1}(x) = x sum C(n,k) Phi_k(x)
    for n in range(11):
        rhs = x * sum(exponential_poly(k) * comb(n, k) for k in range(n + 1))
        assert exponential_poly(n + 1) == rhs


def test_bernoulli_numbers():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    for n in range(3, 13, 2):
        assert bernoulli_number(n) == 0
    # defining recursion: sum_{j<n} C(n,j) B_j = 0 for n >= 2
    for n in range(2, 14):
        assert sum(comb(n, j) * bernoulli_number(j) for j in range(n)) == 0


def test_enumerate_partitions_shapes():
    tally = {w.block_sizes: w.count for w in enumerate_partitions(3)}
    assert tally == {(3,): 1, (2, 1): 3, (1, 1, 1): 1}
    assert partition_count(5) == 52
    assert enumerate_partitions(0)[0].block_sizes == ()
    with pytest.raises(TooLarge):
        enumerate_partitions(13)


def test_bell_triangle_shape():
    tri = bell_triangle([ONE] * 6, 6)
    assert tri[0][0] == 1
    for n in range(1, 7):
        assert tri[n][0] == 0
        assert tri[n][n] == 1
        for k in range(1, n + 1):
            assert tri[n][k] == stirling("second", n, k)
