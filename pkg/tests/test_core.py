from fractions import Fraction
from math import comb

import pytest

from umbral.core import Product, ScalarMul, Sum, Workspace
from umbral.errors import BadZerothMoment, CoherenceError, OrderExceeded
from umbral.poly import ONE, Poly
from umbral.prng import Stream
from umbral.series import Series


def fresh(order=8, indets=("x", "y")):
    return Workspace(order=order, indeterminates=indets)


def random_umbra(ws, stream, name):
    return ws.define(name, [ONE] + [Poly.const(stream.rational())
                                    for _ in range(ws.order)])


def test_builtin_axioms():
    ws = fresh()
    for n in range(ws.order + 1):
        assert ws.eval(ws.u, n) == 1
        assert ws.eval(ws.eps, n) == (1 if n == 0 else 0)
    assert ws.gf_of(ws.eps) == Series.one(ws.order)
    assert ws.gf_of(ws.u) == Series.exp_t(ws.order)


def test_define_validates_zeroth_moment():
    ws = fresh()
    with pytest.raises(BadZerothMoment):
        ws.define("bad", [Poly.const(2)] + [ONE] * ws.order)
    all_ones = ws.define("ones", [ONE] * (ws.order + 1))
    assert ws.similar(all_ones, ws.u)
    delta = ws.define("delta", [ONE] + [Poly()] * ws.order)
    assert ws.similar(delta, ws.eps)


def test_deterministic_value_umbra():
    # moments x^k represent the constant value x
    ws = fresh()
    xv = Poly.var("x")
    det = ws.define("detx", [xv ** k for k in range(ws.order + 1)])
    assert det.egf.coeffs[3] == xv ** 3 / 6
    assert ws.eval(det ** 2, 1) == xv ** 2


def test_clone_similarity_and_uncorrelation():
    ws = fresh()
    s = Stream(3)
    a = random_umbra(ws, s, "a")
    a2 = ws.clone(a)
    assert ws.similar(a, a2)
    assert ws.eval(a * a2, 1) == a.moments[1] ** 2
    assert ws.eval(a ** 2, 1) == a.moments[2]
    assert ws.similar(ws.clone(ws.u), ws.u)


def test_eval_binomial_convolution():
    ws = fresh()
    s = Stream(5)
    a = random_umbra(ws, s, "a")
    a2 = ws.clone(a)
    for n in range(ws.order + 1):
        expected = sum(comb(n, i) * a.moments[i] * a.moments[n - i]
                       for i in range(n + 1))
        assert ws.eval(a + a2, n) == expected


def test_uncorrelation_in_products():
    ws = fresh()
    s = Stream(9)
    a = random_umbra(ws, s, "a")
    g = random_umbra(ws, s, "g")
    assert ws.eval((a ** 2) * (g ** 3), 1) == a.moments[2] * g.moments[3]


def test_gf_of_sum_factorizes_over_disjoint_supports():
    ws = fresh()
    s = Stream(13)
    a = random_umbra(ws, s, "a")
    g = random_umbra(ws, s, "g")
    assert ws.gf_of(a + g) == a.egf * g.egf
    e1 = Sum((a.ref(), a.ref()))     # correlated: same atom twice
    assert ws.gf_of(e1) != a.egf * a.egf or a.moments[1] == 0


def test_linearity():
    ws = fresh()
    s = Stream(17)
    a = random_umbra(ws, s, "a")
    g = random_umbra(ws, s, "g")
    c = Poly.var("x") + 2
    lhs = ws.eval(Sum((ScalarMul(c, a.ref()), g.ref())), 1)
    assert lhs == c * a.moments[1] + g.moments[1]


def test_scalar_multiples_scale_moments_geometrically():
    ws = fresh()
    s = Stream(19)
    a = random_umbra(ws, s, "a")
    c = Fraction(3, 2)
    for k in range(ws.order + 1):
        assert ws.eval(ScalarMul(Poly.const(c), a.ref()), k) == \
            c ** k * a.moments[k]


def test_similarity_is_order_bounded():
    ws = fresh(order=4)
    m = [ONE, ONE, ONE, ONE, Poly.const(7)]
    odd = ws.define("odd", m)
    assert not ws.similar(odd, ws.u)
    trunc = ws.define("trunc", m[:4] + [ONE])
    assert ws.similar(trunc, ws.u)


def test_power_expansion_before_substitution():
    # E[(a + a')^2] = 2 a_1^2 + 2 a_2 must not collapse to 4 a_2
    ws = fresh()
    a = ws.define("a", [ONE, Poly.const(2)] + [Poly()] * (ws.order - 1))
    a2 = ws.clone(a)
    assert ws.eval(a + a2, 2) == 2 * Fraction(4) + 0  # 2 a1^2, a2 = 0


def test_order_exceeded():
    ws = fresh(order=4)
    a = ws.define("a", [ONE] * 5)
    with pytest.raises(OrderExceeded):
        ws.eval(a, 5)
    with pytest.raises(OrderExceeded):
        ws.eval(a ** 3, 2)
    assert ws.eval(a ** 2, 2) == 1


def test_empty_product_is_unit():
    ws = fresh()
    assert ws.eval(Product(()), 0) == 1
    assert ws.eval(Product(()), 3) == 1


def test_clone_independence_of_labels():
    # results depend only on which leaves share an atom, not on which
    # particular clones play the roles
    ws = fresh()
    s = Stream(101)
    a = random_umbra(ws, s, "a")
    c1, c2, c3 = ws.clone(a), ws.clone(a), ws.clone(a)
    assert ws.eval(c1 * c1 ** 2, 1) == a.moments[3]
    assert ws.eval(c3 * c3 ** 2, 1) == a.moments[3]
    assert ws.eval(c1 * c2 ** 2, 1) == a.moments[1] * a.moments[2]
    assert ws.eval(c2 * c3 ** 2, 1) == a.moments[1] * a.moments[2]
    assert ws.eval(Sum((c1.ref(), c2.ref())), 4) == \
        ws.eval(Sum((c3.ref(), a.ref())), 4)


def test_register_rejects_incoherent_atoms():
    ws = fresh(order=2)
    with pytest.raises(CoherenceError):
        ws._register("broken", [ONE, ONE, ONE], Series.one(2))


def test_workspace_json_round_trip():
    ws = fresh(order=5)
    s = Stream(23)
    random_umbra(ws, s, "a")
    ws.define("b", [ONE, Poly.var("x")] + [Poly()] * 4)
    data = ws.to_json()
    restored = Workspace.from_json(data)
    assert restored.order == 5
    assert restored.indeterminates == ("x", "y")
    for name in ("a", "b"):
        assert restored.lookup(name).moments == ws.lookup(name).moments
    # shorter moment lists pad with zeros
    data["umbrae"]["c"] = ["1", "2"]
    ws2 = Workspace.from_json(data)
    assert ws2.lookup("c").moments[2] == 0


def test_atom_of_materializes_and_severs():
    ws = fresh()
    s = Stream(29)
    a = random_umbra(ws, s, "a")
    g = random_umbra(ws, s, "g")
    both = ws.atom_of(a + g, "a+g")
    for k in range(ws.order + 1):
        assert both.moments[k] == ws.eval(a + g, k)
    # severed: multiplying by a behaves as an uncorrelated product
    assert ws.eval(both * a, 1) == both.moments[1] * a.moments[1]
