"""Constructors for auxiliary umbrae.

Every constructor here materializes a *fresh* atom: moments come from the
closed combinatorial form and the generating function from independent
series arithmetic, and registration verifies the two against each other
coefficient by coefficient.  Materializing severs correlation with the
source umbrae on purpose -- recursions that mix a constructed umbra with a
clone of its source rely on exactly that.

Point-multiple moments use the falling-factorial/Bell-polynomial expansion

    E[(L.a)^k] = sum_{i<=k} L_i * B_{k,i}(a_1, a_2, ...)

where L_i is (n)_i for an integer multiplier, the falling-factorial
polynomial for an indeterminate one, and E[(b)_i] (expanded through signed
Stirling numbers) for an umbral one.  The same formula with a negative
integer is the binomial series of [f(t)]^{-n}, so inverse point multiples
need no separate code path.
"""

from __future__ import annotations

from fractions import Fraction

from .combinatorics import bell_number, bell_triangle, stirling
from .core import Atom, Workspace
from .errors import (
    NonUnitLinearMoment,
    OrderExceeded,
    UndeclaredIndeterminate,
    ZeroMomentReciprocal,
)
from .poly import ONE, ZERO, Poly
from .series import Series


# -- falling factorials ------------------------------------------------------


def falling_factorial(value, i: int):
    """(value)_i = value (value-1) ... (value-i+1); works for integers,
    rationals and Poly arguments."""
    if isinstance(value, Poly):
        out = ONE
        for j in range(i):
            out = out * (value - j)
        return out
    out = Fraction(1)
    for j in range(i):
        out *= value - j
    return out


def falling_factorial_moment(beta: Atom, i: int) -> Poly:
    """E[(beta)_i] via the signed-Stirling expansion of the falling
    factorial.  The Bell scalar umbra short-circuits to 1."""
    if beta.tag == "bell":
        return ONE
    total = ZERO
    for j in range(i + 1):
        s = stirling("first_signed", i, j)
        if s:
            total = total + beta.moments[j] * s
    return total


def _scale_arg(ws: Workspace, scale):
    """Normalize a scale argument (int, Fraction, indeterminate name, Poly)
    to a Poly, checking indeterminate declarations."""
    if isinstance(scale, str):
        return ws.var(scale)
    p = Poly.coerce(scale)
    for v in p.variables():
        if v not in ws.indeterminates:
            raise UndeclaredIndeterminate(f"indeterminate {v!r} not declared")
    return p


def _scale_name(scale) -> str:
    s = str(scale)
    return s if s.isalnum() else f"({s})"


def _wrap_name(name: str) -> str:
    """Parenthesize atom names that would not reparse as a single base."""
    if any(ch in name for ch in " +-*^"):
        return f"({name})"
    return name


# -- point product -------------------------------------------------------------


def dot(ws: Workspace, left, alpha: Atom) -> Atom:
    """The point multiple left.alpha.

    ``left`` may be an integer (negative means the inverse multiple), an
    indeterminate name or Poly, or an umbra.  Moments follow the
    falling-factorial Bell expansion; the generating function is f^n,
    exp(p*log f) or g(log f) respectively.
    """
    n = ws.order
    f = alpha.egf
    tri = bell_triangle(alpha.moments[1:], n)
    if isinstance(left, Atom):
        weights = [falling_factorial_moment(left, i) for i in range(n + 1)]
        egf = left.egf.compose(f.log())
        name = f"{_wrap_name(left.name)}.{_wrap_name(alpha.name)}"
    elif isinstance(left, int):
        weights = [Poly.const(falling_factorial(left, i)) for i in range(n + 1)]
        egf = f.pow_int(left)
        name = f"{left}.{_wrap_name(alpha.name)}"
    else:
        p = _scale_arg(ws, left)
        weights = [falling_factorial(p, i) for i in range(n + 1)]
        egf = f.log().scalar_mul(p).exp()
        name = f"{_scale_name(p)}.{_wrap_name(alpha.name)}"
    moments = []
    for k in range(n + 1):
        acc = ZERO
        for i in range(k + 1):
            w, b = weights[i], tri[k][i]
            if w and b:
                acc = acc + w * b
        moments.append(acc)
    return ws._register(name, moments, egf)


# -- point power ----------------------------------------------------------------


def point_power(ws: Workspace, alpha: Atom, n: int) -> Atom:
    """The umbra whose k-th moment is a_k^n (componentwise moment power)."""
    if n >= 0:
        moments = [m ** n for m in alpha.moments]
    else:
        moments = []
        for k, m in enumerate(alpha.moments):
            if not m or not m.is_constant():
                raise ZeroMomentReciprocal(
                    f"moment {k} of {alpha.name} has no reciprocal")
            moments.append(Poly.const(Fraction(1) / m.constant()) ** (-n))
    return ws._register(f"{_wrap_name(alpha.name)}^.{n}", moments,
                        Series.from_moments(moments))


# -- inverse ----------------------------------------------------------------------


def inverse_umbra(ws: Workspace, alpha: Atom) -> Atom:
    """The additive inverse: alpha + inverse(alpha) is similar to the
    augmentation, so the generating function is 1/f."""
    egf = alpha.egf.pow_int(-1)
    return ws._register(f"inv({alpha.name})", egf.moments(), egf)


# -- Bell umbrae ---------------------------------------------------------------------


def bell_umbra(ws: Workspace, scale=None) -> Atom:
    """The Bell scalar umbra (moments = Bell numbers, all falling-factorial
    moments 1), or its scaled polynomial form with moments sum_k S(n,k) c^k
    and generating function exp(c (e^t - 1))."""
    n = ws.order
    expm1 = Series.expm1_t(n)
    if scale is None:
        moments = [Poly.const(bell_number(k)) for k in range(n + 1)]
        return ws._register("bell", moments, expm1.exp(), tag="bell")
    c = _scale_arg(ws, scale)
    moments = []
    for k in range(n + 1):
        acc = ZERO
        for i in range(k + 1):
            s = stirling("second", k, i)
            if s:
                acc = acc + (c ** i) * s
        moments.append(acc)
    egf = expm1.scalar_mul(c).exp()
    return ws._register(f"bell({c})", moments, egf)


def partition_umbra(ws: Workspace, alpha: Atom, scale=None) -> Atom:
    """The partition umbra of alpha: moments are the complete Bell
    (partition) polynomials of alpha's moments and the generating function
    is exp(f - 1); the scaled form weights B_{n,k} by c^k under
    exp(c (f - 1))."""
    n = ws.order
    tri = bell_triangle(alpha.moments[1:], n)
    fm1 = alpha.egf - Series.one(n)
    if scale is None:
        weights = [ONE] * (n + 1)
        egf = fm1.exp()
        name = f"part({alpha.name})"
    else:
        c = _scale_arg(ws, scale)
        weights = [c ** i for i in range(n + 1)]
        egf = fm1.scalar_mul(c).exp()
        name = f"{_scale_name(c)}.part({alpha.name})"
    moments = []
    for k in range(n + 1):
        acc = ZERO
        for i in range(k + 1):
            w, b = weights[i], tri[k][i]
            if w and b:
                acc = acc + w * b
        moments.append(acc)
    return ws._register(name, moments, egf)


def composition_umbra(ws: Workspace, gamma: Atom, alpha: Atom) -> Atom:
    """The composition umbra of gamma and alpha: moments
    sum_k g_k B_{n,k}(a), generating function g(f - 1)."""
    n = ws.order
    tri = bell_triangle(alpha.moments[1:], n)
    moments = []
    for k in range(n + 1):
        acc = ZERO
        for i in range(k + 1):
            g, b = gamma.moments[i], tri[k][i]
            if g and b:
                acc = acc + g * b
        moments.append(acc)
    egf = gamma.egf.compose(alpha.egf - Series.one(n))
    return ws._register(f"comp({gamma.name},{alpha.name})", moments, egf)


# -- the shifted-moment umbra -----------------------------------------------------------


def alpha_bar(ws: Workspace, alpha: Atom) -> Atom:
    """The umbra encoding (f(t) - 1)/(a_1 t): its n-th moment is
    a_{n+1} / (a_1 (n+1)).

    The top moment would need a moment of alpha beyond the truncation
    order; it is fixed to zero by convention and nothing at order <= N
    consumes it (the generating-function identity f - 1 = a_1 t e^{bar t}
    only reads coefficients 0..N-1 of the result).
    """
    a1 = alpha.moments[1]
    if not a1 or not a1.is_constant():
        raise NonUnitLinearMoment(
            f"first moment of {alpha.name} has no reciprocal")
    inv_a1 = Fraction(1) / a1.constant()
    n = ws.order
    moments = [ONE]
    for k in range(1, n + 1):
        if k < n:
            moments.append(alpha.moments[k + 1] * (inv_a1 * Fraction(1, k + 1)))
        else:
            moments.append(ZERO)
    return ws._register(f"bar({alpha.name})", moments, Series.from_moments(moments))


# -- exponential umbral polynomials ------------------------------------------------------


def exponential_umbral_moment(alpha: Atom, n: int) -> Poly:
    """sum_k S(n,k) a_k: the n-th moment of the randomized-Poisson umbra
    built on alpha."""
    if n >= len(alpha.moments):
        raise OrderExceeded(f"moment {n} beyond order {len(alpha.moments) - 1}")
    total = ZERO
    for k in range(n + 1):
        s = stirling("second", n, k)
        if s:
            total = total + alpha.moments[k] * s
    return total


# -- scalar multiple --------------------------------------------------------------------


def scale_atom(ws: Workspace, c, alpha: Atom) -> Atom:
    """The umbra c*alpha with moments c^k a_k (the substitution t -> ct in
    the generating function)."""
    c = Poly.coerce(c)
    moments = []
    coeffs = []
    power = ONE
    for k in range(ws.order + 1):
        moments.append(power * alpha.moments[k])
        coeffs.append(power * alpha.egf.coeffs[k])
        power = power * c
    return ws._register(f"({c})*{alpha.name}", moments, Series(ws.order, coeffs))
