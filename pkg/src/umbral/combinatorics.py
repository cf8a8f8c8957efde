"""Exact combinatorial kernels: Stirling numbers, Bell numbers, partial and
complete Bell polynomials, exponential polynomials, Bernoulli numbers, and a
brute-force set-partition enumerator used as the independent oracle.

Partial Bell polynomials are computed through the generating-function route
(coefficient of [f(t)-1]^k / k! with f assembled from the arguments as an
EGF); the enumerator provides the definitional weighted-partition sum to
check against.  Memoization uses ``lru_cache``, which is safe under
concurrent readers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import TooLarge
from .poly import ONE, ZERO, Poly
from .series import Series, factorial

ENUMERATION_CAP = 12


# -- Stirling numbers ---------------------------------------------------------


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def _stirling1_signed(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return _stirling1_signed(n - 1, k - 1) - (n - 1) * _stirling1_signed(n - 1, k)


def stirling(kind: str, n: int, k: int) -> int:
    """Stirling number of the given kind ('second' or 'first_signed')."""
    if n < 0 or k < 0 or k > n:
        raise IndexError(f"stirling({kind}, {n}, {k}) outside 0 <= k <= n")
    if kind == "second":
        return _stirling2(n, k)
    if kind == "first_signed":
        return _stirling1_signed(n, k)
    raise ValueError(f"unknown Stirling kind: {kind!r}")


# -- Bell numbers --------------------------------------------------------------


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    """n-th Bell number via B_{n+1} = sum_k C(n,k) B_k."""
    if n < 0:
        raise IndexError("bell_number needs n >= 0")
    if n == 0:
        return 1
    m = n - 1
    return sum(comb(m, k) * bell_number(k) for k in range(m + 1))


# -- Bell polynomials -----------------------------------------------------------


def _coerced(a) -> tuple:
    return tuple(Poly.coerce(v) for v in a)


@lru_cache(maxsize=None)
def _bell_triangle_cached(a: tuple, max_n: int) -> tuple:
    """Rows B[n][k] for 0 <= k <= n <= max_n from a = (a_1, a_2, ...).

    Row n is a tuple of length n+1; B[0][0] = 1 and B[n][0] = 0 for n >= 1.
    """
    padded = list(a[:max_n]) + [ZERO] * (max_n - len(a))
    h = Series(max_n, [ZERO] + [padded[j - 1] / factorial(j) for j in range(1, max_n + 1)])
    rows = [[ZERO] * (n + 1) for n in range(max_n + 1)]
    rows[0][0] = ONE
    h_pow = Series.one(max_n)
    for k in range(1, max_n + 1):
        h_pow = h_pow * h
        inv_kfact = Fraction(1, factorial(k))
        for n in range(k, max_n + 1):
            rows[n][k] = h_pow.coeffs[n] * (factorial(n) * inv_kfact)
    return tuple(tuple(r) for r in rows)


def bell_triangle(a, max_n: int) -> tuple:
    """All partial Bell polynomial values B_{n,k}(a_1,..) up to n = max_n."""
    return _bell_triangle_cached(_coerced(a), max_n)


def partial_bell(n: int, k: int, a) -> Poly:
    """B_{n,k}(a_1,...,a_{n-k+1}); a lists a_1 first."""
    if not (1 <= k <= n):
        raise IndexError(f"partial_bell needs 1 <= k <= n, got n={n}, k={k}")
    if len(a) < n - k + 1:
        raise IndexError(f"partial_bell(n={n}, k={k}) needs {n - k + 1} arguments")
    return bell_triangle(_coerced(a)[: n - k + 1], n)[n][k]


def complete_bell(n: int, a) -> Poly:
    """Y_n(a_1,...,a_n) = sum_{k=1..n} B_{n,k}; Y_0 = 1."""
    if n < 0:
        raise IndexError("complete_bell needs n >= 0")
    if n == 0:
        return ONE
    if len(a) < n:
        raise IndexError(f"complete_bell({n}) needs {n} arguments")
    row = bell_triangle(_coerced(a)[:n], n)[n]
    total = ZERO
    for k in range(1, n + 1):
        total = total + row[k]
    return total


@lru_cache(maxsize=None)
def exponential_poly(n: int) -> Poly:
    """The n-th exponential polynomial: sum_k S(n,k) x^k."""
    if n < 0:
        raise IndexError("exponential_poly needs n >= 0")
    x = Poly.var("x")
    total = Poly.const(1) if n == 0 else ZERO
    for k in range(1, n + 1):
        total = total + (x ** k) * _stirling2(n, k)
    return total


# -- Bernoulli numbers ------------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_egf(order: int) -> Series:
    # reciprocal of (e^t - 1)/t, whose coefficients are 1/(k+1)!
    base = Series(order, [Fraction(1, factorial(k + 1)) for k in range(order + 1)])
    return base.pow_int(-1)


def bernoulli_number(n: int) -> Fraction:
    """n-th Bernoulli number, read off as the n-th EGF moment of t/(e^t - 1)."""
    if n < 0:
        raise IndexError("bernoulli_number needs n >= 0")
    return _bernoulli_egf(n).egf_moment(n).constant()


# -- set-partition enumeration ------------------------------------------------------


@dataclass(frozen=True)
class PartitionWeight:
    """A block-size multiset (sorted descending) with its multiplicity among
    all set partitions of an n-set."""

    block_sizes: tuple
    count: int

    @property
    def num_blocks(self) -> int:
        return len(self.block_sizes)


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple:
    """Enumerate every set partition of an n-set, tallied by block sizes.

    Walks the block-joining tree (each element either joins an existing
    block or opens a new one), so the leaf count per size-multiset is the
    literal number of set partitions with that shape.
    """
    if n < 0:
        raise IndexError("enumerate_partitions needs n >= 0")
    if n > ENUMERATION_CAP:
        raise TooLarge(f"enumeration capped at n = {ENUMERATION_CAP}")
    if n == 0:
        return (PartitionWeight((), 1),)
    tally: dict = {}
    sizes: list = []

    def walk(i: int):
        if i == n:
            key = tuple(sorted(sizes, reverse=True))
            tally[key] = tally.get(key, 0) + 1
            return
        for j in range(len(sizes)):
            sizes[j] += 1
            walk(i + 1)
            sizes[j] -= 1
        sizes.append(1)
        walk(i + 1)
        sizes.pop()

    walk(0)
    return tuple(PartitionWeight(k, c) for k, c in sorted(tally.items(), reverse=True))


def partition_count(n: int) -> int:
    """Total number of set partitions of an n-set, by enumeration."""
    return sum(w.count for w in enumerate_partitions(n))


def weighted_partition_sum(n: int, k: int, a) -> Poly:
    """Definitional oracle for B_{n,k}: sum over k-block partitions of the
    product of a_{block size} over blocks."""
    av = _coerced(a)
    total = ZERO
    for w in enumerate_partitions(n):
        if w.num_blocks != k:
            continue
        prod = Poly.const(w.count)
        for s in w.block_sizes:
            prod = prod * av[s - 1]
        total = total + prod
    return total
