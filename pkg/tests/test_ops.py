from fractions import Fraction

import pytest

from umbral.combinatorics import (
    bell_number,
    complete_bell,
    exponential_poly,
    stirling,
)
from umbral.core import Workspace
from umbral.errors import (
    NonUnitLinearMoment,
    UndeclaredIndeterminate,
    ZeroMomentReciprocal,
)
from umbral.ops import (
    alpha_bar,
    bell_umbra,
    composition_umbra,
    dot,
    exponential_umbral_moment,
    falling_factorial_moment,
    inverse_umbra,
    partition_umbra,
    point_power,
    scale_atom,
)
from umbral.poly import ONE, ZERO, Poly
from umbral.prng import Stream
from umbral.series import Series, factorial


def fresh(order=8, indets=("x", "y")):
    return Workspace(order=order, indeterminates=indets)


def random_umbra(ws, stream, name, nonzero_first=False):
    moments = [ONE]
    for k in range(1, ws.order + 1):
        if k == 1 and nonzero_first:
            moments.append(Poly.const(stream.nonzero_rational()))
        else:
            moments.append(Poly.const(stream.rational()))
    return ws.define(name, moments)


def assert_coherent(atom):
    for k, m in enumerate(atom.moments):
        assert atom.egf.coeffs[k] * factorial(k) == m


# -- dot -------------------------------------------------------------------------


def test_dot_integer_on_unity():
    ws = fresh()
    d = dot(ws, 3, ws.u)
    assert [m.constant() for m in d.moments] == [3 ** k for k in range(9)]
    assert_coherent(d)


def test_dot_zero_is_augmentation():
    ws = fresh()
    s = Stream(1)
    a = random_umbra(ws, s, "a")
    assert ws.similar(dot(ws, 0, a), ws.eps)


def test_dot_bell_on_unity_gives_bell_numbers():
    ws = fresh()
    d = dot(ws, bell_umbra(ws), ws.u)
    assert [m.constant() for m in d.moments] == \
        [bell_number(k) for k in range(ws.order + 1)]


def test_dot_indeterminate_requires_declaration():
    ws = fresh(indets=("x",))
    with pytest.raises(UndeclaredIndeterminate):
        dot(ws, "z", ws.u)
    with pytest.raises(UndeclaredIndeterminate):
        dot(ws, Poly.var("z") + 1, ws.u)
    assert dot(ws, "x", ws.u).moments[4] == Poly.var("x") ** 4


def test_dot_umbra_via_series_vs_moment_expansion():
    # generating-function route (compose) against the falling-factorial
    # series expansion: sum_i E[(b)_i] (f-1)^i / i!
    ws = fresh()
    s = Stream(2)
    a = random_umbra(ws, s, "a")
    b = random_umbra(ws, s, "b")
    d = dot(ws, b, a)
    assert_coherent(d)
    fm1 = a.egf - Series.one(ws.order)
    total = Series.zero(ws.order)
    h_pow = Series.one(ws.order)
    for i in range(ws.order + 1):
        if i:
            h_pow = h_pow * fm1
        total = total + h_pow.scalar_mul(
            falling_factorial_moment(b, i) / factorial(i))
    assert d.egf == total


def test_falling_factorial_moment_bell_shortcut_matches_expansion():
    ws = fresh()
    beta = bell_umbra(ws)
    for i in range(ws.order + 1):
        by_stirling = sum(
            (beta.moments[j] * stirling("first_signed", i, j) for j in range(i + 1)),
            ZERO)
        assert falling_factorial_moment(beta, i) == ONE == by_stirling


# -- point power ----------------------------------------------------------------------


def test_point_power_moments():
    ws = fresh()
    beta = bell_umbra(ws)
    sq = point_power(ws, beta, 2)
    assert sq.moments[3].constant() == 25
    assert ws.similar(point_power(ws, beta, 0), ws.u)
    assert_coherent(sq)


def test_point_power_negative_requires_invertible_moments():
    ws = fresh(order=4)
    a = ws.define("a", [ONE, ONE, ZERO, ONE, ONE])
    with pytest.raises(ZeroMomentReciprocal):
        point_power(ws, a, -1)
    b = ws.define("b", [ONE, Poly.var("x"), ONE, ONE, ONE])
    with pytest.raises(ZeroMomentReciprocal):
        point_power(ws, b, -2)
    c = ws.define("c", [ONE, Poly.const(2), Poly.const(3), ONE, ONE])
    rec = point_power(ws, c, -1)
    assert rec.moments[1] == Fraction(1, 2) and rec.moments[2] == Fraction(1, 3)


# -- inverse -------------------------------------------------------------------------------


def test_inverse_umbra():
    ws = fresh()
    assert ws.similar(inverse_umbra(ws, ws.eps), ws.eps)
    iu = inverse_umbra(ws, ws.u)
    assert [m.constant() for m in iu.moments] == [(-1) ** k for k in range(9)]
    s = Stream(4)
    a = random_umbra(ws, s, "a")
    assert ws.similar(a + inverse_umbra(ws, a), ws.eps)
    n = 3
    assert ws.similar(dot(ws, n, a) + dot(ws, -n, a), ws.eps)


# -- Bell umbrae ------------------------------------------------------------------------------


def test_bell_scalar_umbra():
    ws = fresh(order=12)
    beta = bell_umbra(ws)
    assert ws.eval(beta, 3) == 5
    assert [m.constant() for m in beta.moments] == \
        [bell_number(k) for k in range(13)]
    for n in range(13):
        assert falling_factorial_moment(beta, n) == ONE
    assert_coherent(beta)


def test_bell_polynomial_umbra():
    ws = fresh()
    xb = bell_umbra(ws, "x")
    for n in range(ws.order + 1):
        assert xb.moments[n] == exponential_poly(n)
    at_one = [m.subs({"x": 1}) for m in xb.moments]
    assert at_one == [Poly.const(bell_number(n)) for n in range(ws.order + 1)]
    nb = bell_umbra(ws, 3)
    assert nb.moments[2] == exponential_poly(2).subs({"x": 3})
    with pytest.raises(UndeclaredIndeterminate):
        bell_umbra(ws, "q")


# -- partition and composition umbrae -----------------------------------------------------------


def test_partition_umbra_of_unity_is_bell():
    ws = fresh()
    assert ws.similar(partition_umbra(ws, ws.u), bell_umbra(ws))


def test_partition_umbra_moments_are_partition_polynomials():
    ws = fresh()
    s = Stream(6)
    a = random_umbra(ws, s, "a")
    psi = partition_umbra(ws, a)
    for n in range(ws.order + 1):
        assert psi.moments[n] == complete_bell(n, a.moments[1:]) if n else ONE
    assert_coherent(psi)


def test_scaled_partition_umbra():
    ws = fresh()
    s = Stream(8)
    a = random_umbra(ws, s, "a")
    xpsi = partition_umbra(ws, a, "x")
    assert xpsi.egf == (a.egf - Series.one(ws.order)).scalar_mul(
        Poly.var("x")).exp()
    assert_coherent(xpsi)


def test_composition_umbra():
    ws = fresh()
    chi = composition_umbra(ws, ws.u, ws.u)
    assert [m.constant() for m in chi.moments[:6]] == [1, 1, 2, 5, 15, 52]
    s = Stream(10)
    g = random_umbra(ws, s, "g")
    # comp(g, u) is the randomized-Poisson umbra g.bell
    assert ws.similar(composition_umbra(ws, g, ws.u),
                      dot(ws, g, bell_umbra(ws)))
    # associativity route: g.(bell.a) ~ (g.bell).a
    a = random_umbra(ws, s, "a")
    lhs = dot(ws, g, dot(ws, bell_umbra(ws), a))
    rhs = dot(ws, dot(ws, g, bell_umbra(ws)), a)
    assert ws.similar(lhs, rhs)
    assert ws.similar(composition_umbra(ws, g, a), lhs)


# -- alpha_bar ------------------------------------------------------------------------------------


def test_alpha_bar_of_unity():
    ws = fresh()
    bar = alpha_bar(ws, ws.u)
    assert [bar.moments[n] for n in range(1, ws.order)] == \
        [Poly.const(Fraction(1, n + 1)) for n in range(1, ws.order)]


def test_alpha_bar_tree_function():
    # f - 1 = t e^{-t} has bar similar to the inverse of the unity umbra
    ws = fresh(indets=())
    f = Series.one(ws.order) + Series(
        ws.order, [Fraction((-1) ** k, factorial(k))
                   for k in range(ws.order + 1)]).mul_t()
    tree = ws._register("tree", f.moments(), f)
    bar = alpha_bar(ws, tree)
    neg_u = inverse_umbra(ws, ws.u)
    assert bar.moments[1: ws.order] == neg_u.moments[1: ws.order]


def test_alpha_bar_series_identity():
    # f(t) - 1 = a_1 t gf(bar) coefficientwise
    ws = fresh()
    s = Stream(12)
    a = random_umbra(ws, s, "a", nonzero_first=True)
    bar = alpha_bar(ws, a)
    a1 = a.moments[1]
    assert a.egf - Series.one(ws.order) == bar.egf.mul_t().scalar_mul(a1)


def test_alpha_bar_requires_unit_linear_moment():
    ws = fresh()
    zero_a1 = ws.define("z1", [ONE, ZERO] + [ONE] * (ws.order - 1))
    with pytest.raises(NonUnitLinearMoment):
        alpha_bar(ws, zero_a1)
    poly_a1 = ws.define("p1", [ONE, Poly.var("x")] + [ONE] * (ws.order - 1))
    with pytest.raises(NonUnitLinearMoment):
        alpha_bar(ws, poly_a1)


# -- exponential umbral moments -------------------------------------------------------------------


def test_exponential_umbral_moments():
    ws = fresh()
    for n in range(ws.order + 1):
        assert exponential_umbral_moment(ws.u, n) == bell_number(n)
        assert exponential_umbral_moment(ws.eps, n) == (1 if n == 0 else 0)
    s = Stream(14)
    a = random_umbra(ws, s, "a")
    ab = dot(ws, a, bell_umbra(ws))
    for n in range(ws.order + 1):
        assert exponential_umbral_moment(a, n) == ab.moments[n]


# -- scale ------------------------------------------------------------------------------------------


def test_scale_atom():
    ws = fresh()
    s = Stream(16)
    a = random_umbra(ws, s, "a")
    c = Fraction(-2, 3)
    sa = scale_atom(ws, c, a)
    for k in range(ws.order + 1):
        assert sa.moments[k] == c ** k * a.moments[k]
    assert_coherent(sa)


def test_augmentation_through_constructors():
    # the zero-value umbra is absorbing for every construction built on it
    ws = fresh()
    assert ws.similar(dot(ws, 3, ws.eps), ws.eps)
    assert ws.similar(partition_umbra(ws, ws.eps), ws.eps)
    assert ws.similar(composition_umbra(ws, ws.eps, ws.u), ws.eps)
    assert ws.similar(point_power(ws, ws.eps, 2), ws.eps)
    s = Stream(20)
    a = random_umbra(ws, s, "a")
    # gamma = eps collapses the composition to the augmentation
    assert ws.similar(composition_umbra(ws, ws.eps, a), ws.eps)


def test_unit_scale_bell_is_bell():
    ws = fresh()
    assert ws.similar(bell_umbra(ws, 1), bell_umbra(ws))


# -- coherence across constructors -------------------------------------------------------------------


def test_every_constructor_produces_coherent_atoms():
    ws = fresh()
    s = Stream(18)
    a = random_umbra(ws, s, "a", nonzero_first=True)
    b = random_umbra(ws, s, "b")
    for atom in (
        dot(ws, 2, a), dot(ws, -1, a), dot(ws, "x", a), dot(ws, b, a),
        point_power(ws, a, 3), inverse_umbra(ws, a), bell_umbra(ws),
        bell_umbra(ws, "y"), partition_umbra(ws, a),
        partition_umbra(ws, a, "x"), composition_umbra(ws, b, a),
        alpha_bar(ws, a), scale_atom(ws, Fraction(1, 2), a),
    ):
        assert_coherent(atom)
