"""Compositional inversion of umbrae, two independent ways.

``revert_umbral`` builds the inverse umbra from the closed moment formula

    gamma_k = E[(-k.bar)^{k-1}] / a_1^k     (k >= 1)

where bar is the shifted-moment umbra of alpha (:func:`umbral.ops.alpha_bar`)
and the expectation is read off the reciprocal power of bar's generating
function.  ``revert_oracle`` ignores all of that and solves g(f(t)-1) = 1+t
coefficient by coefficient through series reversion.  ``cross_check`` runs
both, compares exactly, and also verifies the bookkeeping identities behind
the moment formula: the partial-Bell expansion and the Abel-style expansion
of the composition umbra's powers, whose moments must come out
(1, 1, 0, ..., 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .combinatorics import bell_triangle
from .core import Atom, IntPower, Product, Sum, Workspace
from .errors import NonUnitLinearMoment
from .ops import alpha_bar, composition_umbra, dot, falling_factorial
from .poly import ONE, Poly
from .series import Series


def _a1_reciprocal(alpha: Atom) -> Fraction:
    a1 = alpha.moments[1]
    if not a1 or not a1.is_constant():
        raise NonUnitLinearMoment(
            f"first moment of {alpha.name} has no reciprocal")
    return Fraction(1) / a1.constant()


def dot_moment(ws: Workspace, bar: Atom, mult: int, m: int) -> Poly:
    """E[(mult.bar)^m] via the generating-function route: m! times the t^m
    coefficient of [gf(bar)]^mult (mult may be negative)."""
    return bar.egf.pow_int(mult).egf_moment(m)


def dot_moment_formula(ws: Workspace, bar: Atom, mult: int, m: int) -> Poly:
    """The same moment through the falling-factorial Bell expansion; used
    as the in-module cross-check of the generating-function route."""
    tri = bell_triangle(bar.moments[1:], m)
    total = Poly.const(0)
    for i in range(m + 1):
        w = falling_factorial(mult, i)
        if w and tri[m][i]:
            total = total + tri[m][i] * w
    return total


def revert_umbral(ws: Workspace, alpha: Atom) -> Atom:
    """The inverse umbra gamma of alpha, from the closed moment formula.

    Its generating function g satisfies g(f(t)-1) = 1 + t up to the
    workspace order, i.e. the composition umbra of (gamma, alpha) has
    moment sequence (1, 1, 0, 0, ...).
    """
    inv_a1 = _a1_reciprocal(alpha)
    bar = alpha_bar(ws, alpha)
    moments = [ONE]
    scale = inv_a1
    for k in range(1, ws.order + 1):
        moments.append(dot_moment(ws, bar, -k, k - 1) * scale)
        scale *= inv_a1
    return ws._register(f"lag({alpha.name})", moments, Series.from_moments(moments))


def revert_oracle(ws: Workspace, alpha: Atom) -> Atom:
    """The same umbra by brute series reversion of f - 1 (no moment
    formula involved)."""
    _a1_reciprocal(alpha)
    g = Series.one(ws.order) + (alpha.egf - Series.one(ws.order)).revert()
    return ws._register(f"lagrev({alpha.name})", g.moments(), g)


@dataclass
class InversionReport:
    """Outcome of the two-route inversion of one umbra."""

    order: int
    gamma_moments_umbral: list
    gamma_moments_oracle: list
    agree: bool
    chi_moments: list = field(default_factory=list)
    chi_ok: bool = True
    partial_bell_expansion_ok: bool = True
    abel_expansion_ok: bool = True

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "gamma_moments_umbral": [m.to_json() for m in self.gamma_moments_umbral],
            "gamma_moments_oracle": [m.to_json() for m in self.gamma_moments_oracle],
            "agree": self.agree,
            "chi_moments": [m.to_json() for m in self.chi_moments],
            "chi_ok": self.chi_ok,
            "partial_bell_expansion_ok": self.partial_bell_expansion_ok,
            "abel_expansion_ok": self.abel_expansion_ok,
        }


def cross_check(ws: Workspace, alpha: Atom, order: int = None) -> InversionReport:
    """Invert alpha both ways and verify the proof-side expansions.

    Checks, for n up to ``order``:

    * the two gamma moment sequences agree exactly;
    * chi = comp(gamma, alpha) has moments (1, 1, 0, ..., 0);
    * E[chi^n] equals the partial-Bell expansion
      sum_k C(n,k) a_1^k g_k E[(-k.bar)^{n-k}];
    * E[chi^n] equals the Abel-style expansion
      sum_k C(n,k) E[chi (chi - k.bar)^{k-1}] E[(k.bar')^{n-k}].
    """
    if order is None:
        order = ws.order
    if order > ws.order:
        raise ValueError("order exceeds the workspace truncation")
    gamma = revert_umbral(ws, alpha)
    oracle = revert_oracle(ws, alpha)
    gm = list(gamma.moments[: order + 1])
    om = list(oracle.moments[: order + 1])
    agree = gm == om

    chi = composition_umbra(ws, gamma, alpha)
    chi_m = list(chi.moments[: order + 1])
    expected = [ONE] * min(2, order + 1) + [Poly.const(0)] * max(0, order - 1)
    chi_ok = chi_m == expected

    bar = alpha_bar(ws, alpha)
    a1 = alpha.moments[1].constant()
    pb_ok = True
    abel_ok = True
    for n in range(order + 1):
        # partial-Bell expansion of chi^n (the positive multiple k.bar,
        # matching the B_{n,k} identity the expansion comes from)
        total = Poly.const(0)
        for k in range(n + 1):
            term = (Poly.const(comb(n, k) * a1 ** k)
                    * gamma.moments[k]
                    * dot_moment(ws, bar, k, n - k))
            total = total + term
        if total != chi_m[n]:
            pb_ok = False
        # Abel-style expansion of chi^n (k = 0 term is E[eps-shift] = 0 for
        # n >= 1 and 1 for n = 0)
        total = Poly.const(1 if n == 0 else 0)
        for k in range(1, n + 1):
            w = dot(ws, -k, bar)       # the inverse point multiple of k.bar
            v = dot(ws, k, bar)        # a fresh k.bar, uncorrelated with w
            first = ws.eval(Product((chi.ref(), IntPower(Sum((chi.ref(), w.ref())), k - 1))))
            second = v.moments[n - k]
            total = total + comb(n, k) * first * second
        if total != chi_m[n]:
            abel_ok = False

    return InversionReport(
        order=order,
        gamma_moments_umbral=gm,
        gamma_moments_oracle=om,
        agree=agree,
        chi_moments=chi_m,
        chi_ok=chi_ok,
        partial_bell_expansion_ok=pb_ok,
        abel_expansion_ok=abel_ok,
    )
