"""Truncated power series with exact polynomial coefficients.

A ``Series`` of order N stores ordinary coefficients c_0..c_N of
sum_k c_k t^k.  The exponential point of view enters only at the moment
boundary: the k-th EGF moment is k! * c_k (``egf_moment`` /
``from_moments``).  All arithmetic is exact and truncation-stable; binary
operations demand equal orders rather than silently re-truncating.

Terminology used throughout: a series is *unital* when c_0 = 1 and *delta*
when c_0 = 0.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import (
    DomainError,
    NegativePowerOfDeltaSeries,
    NotInvertible,
    OrderExceeded,
    OrderMismatch,
)
from .poly import ONE, ZERO, Poly


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return 1 if n <= 1 else n * factorial(n - 1)


class Series:
    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        if order < 0:
            raise ValueError("order must be nonnegative")
        coeffs = tuple(Poly.coerce(c) for c in coeffs)
        if len(coeffs) != order + 1:
            raise ValueError(f"need exactly {order + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def make(coeffs, order: int) -> "Series":
        """Series with the given leading coefficients, zero-padded to order."""
        coeffs = [Poly.coerce(c) for c in coeffs]
        if len(coeffs) > order + 1:
            raise ValueError("more coefficients than the order admits")
        coeffs += [ZERO] * (order + 1 - len(coeffs))
        return Series(order, coeffs)

    @staticmethod
    def zero(order: int) -> "Series":
        return Series.make([], order)

    @staticmethod
    def one(order: int) -> "Series":
        return Series.make([ONE], order)

    @staticmethod
    def t(order: int) -> "Series":
        return Series.make([ZERO, ONE], order)

    @staticmethod
    def exp_t(order: int) -> "Series":
        """The exponential series: c_k = 1/k!."""
        return Series(order, [Fraction(1, factorial(k)) for k in range(order + 1)])

    @staticmethod
    def expm1_t(order: int) -> "Series":
        """e^t - 1, the canonical delta series with unit linear term."""
        return Series.exp_t(order) - Series.one(order)

    @staticmethod
    def from_moments(moments) -> "Series":
        """Series whose k-th EGF moment is moments[k]; order = len - 1."""
        return Series(len(moments) - 1,
                      [Poly.coerce(m) / factorial(k) for k, m in enumerate(moments)])

    # -- predicates ------------------------------------------------------------

    def is_unital(self) -> bool:
        return self.coeffs[0] == ONE

    def is_delta(self) -> bool:
        return not self.coeffs[0]

    def _same_order(self, other: "Series"):
        if self.order != other.order:
            raise OrderMismatch(f"orders differ: {self.order} != {other.order}")

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        self._same_order(other)
        return Series(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        self._same_order(other)
        return Series(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Series(self.order, [-a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        self._same_order(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = ZERO
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return Series(n, out)

    def scalar_mul(self, c) -> "Series":
        c = Poly.coerce(c)
        return Series(self.order, [c * a for a in self.coeffs])

    def pow_int(self, n: int) -> "Series":
        """Integer power; negative exponents require a unital series."""
        if n < 0:
            if not self.is_unital():
                raise NegativePowerOfDeltaSeries(
                    "negative power needs constant term 1")
            return self._reciprocal().pow_int(-n)
        result = Series.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _reciprocal(self) -> "Series":
        # c_0 = 1, so b_n = -sum_{j=1..n} a_j b_{n-j} needs no division
        a = self.coeffs
        b = [ONE]
        for n in range(1, self.order + 1):
            acc = ZERO
            for j in range(1, n + 1):
                if a[j] and b[n - j]:
                    acc = acc + a[j] * b[n - j]
            b.append(-acc)
        return Series(self.order, b)

    # -- exp / log -------------------------------------------------------------

    def exp(self) -> "Series":
        """exp of a delta series, via n*g_n = sum j*h_j*g_{n-j}."""
        if not self.is_delta():
            raise DomainError("exp requires constant term 0")
        h = self.coeffs
        g = [ONE]
        for n in range(1, self.order + 1):
            acc = ZERO
            for j in range(1, n + 1):
                if h[j] and g[n - j]:
                    acc = acc + h[j] * g[n - j] * j
            g.append(acc / n)
        return Series(self.order, g)

    def log(self) -> "Series":
        """log of a unital series; inverse of :meth:`exp` up to truncation."""
        if not self.is_unital():
            raise DomainError("log requires constant term 1")
        f = self.coeffs
        l = [ZERO]
        for n in range(1, self.order + 1):
            acc = f[n] * n
            for j in range(1, n):
                if l[j] and f[n - j]:
                    acc = acc - l[j] * f[n - j] * j
            l.append(acc / n)
        return Series(self.order, l)

    # -- composition and reversion ------------------------------------------------

    def compose(self, inner: "Series") -> "Series":
        """self(inner(t)) for a delta inner series, exactly truncated."""
        self._same_order(inner)
        if not inner.is_delta():
            raise DomainError("composition requires a delta inner series")
        result = Series.make([self.coeffs[0]], self.order)
        h_pow = Series.one(self.order)
        for k in range(1, self.order + 1):
            h_pow = h_pow * inner
            c = self.coeffs[k]
            if c:
                result = result + h_pow.scalar_mul(c)
        return result

    def revert(self) -> "Series":
        """Compositional inverse of a delta series with invertible c_1.

        Triangular coefficient solving: with w known up to t^{k-1}, the t^k
        coefficient of self(w(t)) is linear in w_k with leading factor c_1,
        so each w_k is determined by one division.
        """
        if not self.is_delta():
            raise DomainError("reversion requires a delta series")
        if self.order < 1:
            raise NotInvertible("no linear coefficient at order 0")
        c1 = self.coeffs[1]
        if not c1 or not c1.is_constant():
            raise NotInvertible("linear coefficient has no reciprocal")
        c1 = c1.constant()
        n = self.order
        if n == 0:
            return Series.zero(0)
        w = [ZERO, ONE / c1] + [ZERO] * (n - 1)
        for k in range(2, n + 1):
            composite = self.compose(Series(n, w))
            w[k] = -composite.coeffs[k] / c1
        return Series(n, w)

    # -- calculus helpers ------------------------------------------------------

    def derivative(self) -> "Series":
        """Formal d/dt; the order drops by one."""
        if self.order == 0:
            return Series.zero(0)
        return Series(self.order - 1,
                      [self.coeffs[k] * k for k in range(1, self.order + 1)])

    def mul_t(self) -> "Series":
        """Multiply by t at fixed order (the top coefficient falls off)."""
        return Series(self.order, (ZERO,) + self.coeffs[:-1])

    def div_t(self) -> "Series":
        """Divide a delta series by t; the order drops by one."""
        if not self.is_delta():
            raise DomainError("division by t requires a delta series")
        if self.order == 0:
            return Series.zero(0)
        return Series(self.order - 1, self.coeffs[1:])

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise OrderExceeded(f"cannot extend order {self.order} to {order}")
        return Series(order, self.coeffs[: order + 1])

    # -- moments ----------------------------------------------------------------

    def egf_moment(self, k: int) -> Poly:
        """k! * c_k, the k-th moment under the EGF reading."""
        if k < 0 or k > self.order:
            raise OrderExceeded(f"moment {k} outside order {self.order}")
        return self.coeffs[k] * factorial(k)

    def moments(self) -> list:
        return [self.egf_moment(k) for k in range(self.order + 1)]

    # -- comparison and rendering -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __str__(self):
        parts = [str(c) if k == 0 else f"({c})*t^{k}"
                 for k, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Series(order={self.order}, {self})"

    # -- JSON -----------------------------------------------------------------------

    def to_json(self):
        return {"order": self.order, "coeffs": [c.to_json() for c in self.coeffs]}

    @staticmethod
    def from_json(data) -> "Series":
        return Series(data["order"], [Poly.from_json(c) for c in data["coeffs"]])
