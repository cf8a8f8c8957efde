"""Umbra workspace and the linear evaluation functional.

An :class:`Atom` is a named symbol carrying a finite moment sequence
m_0..m_N (each a :class:`~umbral.poly.Poly`, m_0 = 1) together with its
generating function as a :class:`~umbral.series.Series`; the two are kept
coherent (k! * c_k = m_k) by every registration path.

Evaluation follows the two defining rules exactly:

* powers of expressions are expanded into a normal form (a polynomial in
  atom symbols) *before* moments are substituted;
* within a monomial, powers of distinct atoms evaluate independently and
  multiply, while powers of one atom merge first.

Distinct atoms are therefore uncorrelated by construction, and similarity
(equal moment sequences) is decidable only up to the truncation order.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import count

from .errors import (
    BadZerothMoment,
    CoherenceError,
    OrderExceeded,
    UndeclaredIndeterminate,
)
from .poly import ONE, ZERO, Poly
from .series import Series, factorial

DEFAULT_ORDER = 12


# -- expression trees ----------------------------------------------------------


class Expr:
    __slots__ = ()

    def __add__(self, other):
        return Sum((self, as_expr(other)))

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return ScalarMul(Poly.coerce(other), self)
        return Product((self, as_expr(other)))

    def __rmul__(self, other):
        if isinstance(other, (Atom, Expr)):
            return Product((as_expr(other), self))
        return ScalarMul(Poly.coerce(other), self)

    def __pow__(self, p: int):
        return IntPower(self, p)


class AtomRef(Expr):
    __slots__ = ("atom",)

    def __init__(self, atom: "Atom"):
        object.__setattr__(self, "atom", atom)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def __eq__(self, other):
        return isinstance(other, AtomRef) and other.atom.uid == self.atom.uid

    def __hash__(self):
        return hash(("ref", self.atom.uid))

    def __repr__(self):
        return self.atom.name


class Sum(Expr):
    __slots__ = ("parts",)

    def __init__(self, parts):
        object.__setattr__(self, "parts", tuple(as_expr(p) for p in parts))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def __eq__(self, other):
        return isinstance(other, Sum) and other.parts == self.parts

    def __hash__(self):
        return hash(("sum", self.parts))

    def __repr__(self):
        return "(" + " + ".join(map(repr, self.parts)) + ")"


class Product(Expr):
    """Product of sub-expressions; the empty product is the constant 1."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        object.__setattr__(self, "parts", tuple(as_expr(p) for p in parts))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def __eq__(self, other):
        return isinstance(other, Product) and other.parts == self.parts

    def __hash__(self):
        return hash(("prod", self.parts))

    def __repr__(self):
        return "(" + " * ".join(map(repr, self.parts)) + ")" if self.parts else "1"


class ScalarMul(Expr):
    __slots__ = ("coeff", "child")

    def __init__(self, coeff, child):
        object.__setattr__(self, "coeff", Poly.coerce(coeff))
        object.__setattr__(self, "child", as_expr(child))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def __eq__(self, other):
        return (isinstance(other, ScalarMul)
                and other.coeff == self.coeff and other.child == self.child)

    def __hash__(self):
        return hash(("smul", self.coeff, self.child))

    def __repr__(self):
        return f"({self.coeff})*{self.child!r}"


class IntPower(Expr):
    __slots__ = ("child", "power")

    def __init__(self, child, power: int):
        if power < 0:
            raise ValueError("expression powers must be nonnegative")
        object.__setattr__(self, "child", as_expr(child))
        object.__setattr__(self, "power", power)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def __eq__(self, other):
        return (isinstance(other, IntPower)
                and other.child == self.child and other.power == self.power)

    def __hash__(self):
        return hash(("pow", self.child, self.power))

    def __repr__(self):
        return f"{self.child!r}^{self.power}"


def as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, Atom):
        return AtomRef(x)
    raise TypeError(f"not an umbral expression: {x!r}")


#: the multiplicative unit as an expression
ONE_EXPR = Product(())


# -- atoms -----------------------------------------------------------------------


class Atom:
    """A registered umbra: unique symbol, moments, generating function."""

    __slots__ = ("uid", "name", "moments", "egf", "tag")

    def __init__(self, uid: int, name: str, moments, egf: Series, tag: str = ""):
        object.__setattr__(self, "uid", uid)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "moments", tuple(moments))
        object.__setattr__(self, "egf", egf)
        object.__setattr__(self, "tag", tag)

    def __setattr__(self, *a):
        raise AttributeError("Atom is immutable")

    def ref(self) -> AtomRef:
        return AtomRef(self)

    def __add__(self, other):
        return AtomRef(self) + other

    def __radd__(self, other):
        return as_expr(other) + AtomRef(self)

    def __mul__(self, other):
        return AtomRef(self) * other

    def __rmul__(self, other):
        return AtomRef(self).__rmul__(other)

    def __pow__(self, p: int):
        return IntPower(AtomRef(self), p)

    def __repr__(self):
        return f"<umbra {self.name}#{self.uid}>"


# -- normal forms ------------------------------------------------------------------

# A normal form maps a monomial in atom symbols -- a sorted tuple of
# (uid, power) pairs -- to its Poly coefficient.


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    powers = dict(m1)
    for uid, p in m2:
        powers[uid] = powers.get(uid, 0) + p
    return tuple(sorted(powers.items()))


def _nf_add(a, b):
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, ZERO) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _nf_mul(a, b):
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = _mono_mul(m1, m2)
            s = out.get(m, ZERO) + c1 * c2
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def _nf_pow(a, n: int):
    result = {(): ONE}
    base = a
    while n:
        if n & 1:
            result = _nf_mul(result, base)
        n >>= 1
        if n:
            base = _nf_mul(base, base)
    return result


def _expand(e: Expr) -> dict:
    if isinstance(e, AtomRef):
        return {((e.atom.uid, 1),): ONE}
    if isinstance(e, Sum):
        out: dict = {}
        for p in e.parts:
            out = _nf_add(out, _expand(p))
        return out
    if isinstance(e, Product):
        out = {(): ONE}
        for p in e.parts:
            out = _nf_mul(out, _expand(p))
        return out
    if isinstance(e, ScalarMul):
        if not e.coeff:
            return {}
        return {m: e.coeff * c for m, c in _expand(e.child).items()}
    if isinstance(e, IntPower):
        return _nf_pow(_expand(e.child), e.power)
    raise TypeError(f"unknown expression node: {e!r}")


# -- workspace ------------------------------------------------------------------------


class Workspace:
    """Registry of atoms plus the evaluation functional at one truncation
    order.  Single-writer during registration; evaluation is pure."""

    def __init__(self, order: int = DEFAULT_ORDER, indeterminates=("x", "y")):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.order = order
        self.indeterminates = tuple(indeterminates)
        self._uids = count(1)
        self._atoms: dict = {}
        self._by_name: dict = {}
        self._defined: list = []  # user-defined names, for serialization
        n = order + 1
        self.eps = self._register(
            "eps", [ONE] + [ZERO] * (n - 1), Series.one(order), tag="eps")
        self.u = self._register(
            "u", [ONE] * n, Series.exp_t(order), tag="u")
        self._by_name["eps"] = self.eps
        self._by_name["u"] = self.u

    # -- registration ---------------------------------------------------------

    def _register(self, name: str, moments, egf: Series, tag: str = "") -> Atom:
        moments = tuple(Poly.coerce(m) for m in moments)
        if len(moments) != self.order + 1:
            raise ValueError(
                f"need {self.order + 1} moments at order {self.order}, got {len(moments)}")
        if egf.order != self.order:
            raise ValueError("generating function order disagrees with workspace")
        for k, m in enumerate(moments):
            if egf.coeffs[k] * factorial(k) != m:
                raise CoherenceError(
                    f"atom {name!r}: moment {k} = {m} but k![t^k]gf = "
                    f"{egf.coeffs[k] * factorial(k)}")
        atom = Atom(next(self._uids), name, moments, egf, tag)
        self._atoms[atom.uid] = atom
        return atom

    def define(self, name: str, moments) -> Atom:
        """Register a named umbra from its moment sequence (m_0 must be 1)."""
        moments = [Poly.coerce(m) for m in moments]
        if not moments or moments[0] != ONE:
            raise BadZerothMoment("an umbra's zeroth moment must be 1")
        atom = self._register(name, moments, Series.from_moments(moments))
        self._by_name[name] = atom
        if name not in self._defined:
            self._defined.append(name)
        return atom

    def clone(self, atom: Atom) -> Atom:
        """A fresh atom with the same moments, uncorrelated with the source."""
        return self._register(atom.name + "'", atom.moments, atom.egf, atom.tag)

    def atom_of(self, expr, name: str = None) -> Atom:
        """Materialize an expression as a fresh atom (its own symbol, with
        the expression's moments); correlation with the inputs is severed."""
        expr = as_expr(expr)
        moments = [self.eval(expr, k) for k in range(self.order + 1)]
        return self._register(name or f"<{expr!r}>", moments,
                              Series.from_moments(moments))

    def lookup(self, name: str):
        return self._by_name.get(name)

    def var(self, name: str) -> Poly:
        """A declared indeterminate as a Poly."""
        if name not in self.indeterminates:
            raise UndeclaredIndeterminate(f"indeterminate {name!r} not declared")
        return Poly.var(name)

    # -- evaluation --------------------------------------------------------------

    def _apply(self, nf: dict) -> Poly:
        total = ZERO
        for mono, coeff in nf.items():
            val = coeff
            for uid, p in mono:
                if p > self.order:
                    raise OrderExceeded(
                        f"moment {p} of {self._atoms[uid].name} exceeds order {self.order}")
                val = val * self._atoms[uid].moments[p]
                if not val:
                    break
            total = total + val
        return total

    def eval(self, expr, k: int = 1) -> Poly:
        """E[expr^k] as a Poly over the declared indeterminates."""
        if k < 0 or k > self.order:
            raise OrderExceeded(f"power {k} outside order {self.order}")
        nf = _expand(as_expr(expr))
        return self._apply(_nf_pow(nf, k))

    def moments_of(self, expr) -> list:
        nf = _expand(as_expr(expr))
        out = []
        acc = {(): ONE}
        for k in range(self.order + 1):
            if k:
                acc = _nf_mul(acc, nf)
            out.append(self._apply(acc))
        return out

    def gf_of(self, expr) -> Series:
        """The generating function: sum_k E[expr^k] t^k / k!."""
        return Series.from_moments(self.moments_of(expr))

    def similar(self, a, b) -> bool:
        """Equal moments for every power up to the truncation order.

        Similarity is decidable only up to that order; a True result means
        "similar up to order N"."""
        return self.moments_of(a) == self.moments_of(b)

    # -- serialization --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "indeterminates": list(self.indeterminates),
            "umbrae": {
                name: [m.to_json() for m in self._by_name[name].moments]
                for name in self._defined
            },
        }

    @staticmethod
    def from_json(data) -> "Workspace":
        ws = Workspace(order=data.get("order", DEFAULT_ORDER),
                       indeterminates=tuple(data.get("indeterminates", ("x", "y"))))
        for name, moments in data.get("umbrae", {}).items():
            parsed = [Poly.from_json(m) for m in moments]
            if len(parsed) < ws.order + 1:
                parsed += [ZERO] * (ws.order + 1 - len(parsed))
            ws.define(name, parsed[: ws.order + 1])
        return ws
