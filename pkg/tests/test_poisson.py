from fractions import Fraction

import numpy as np
import pytest

from umbral.combinatorics import bell_number
from umbral.errors import InvalidDistribution
from umbral.poisson import (
    CompoundModel,
    DiscreteDist,
    PoissonModel,
    RandomizedCompoundModel,
    RandomizedModel,
    compare,
    empirical_rows,
    exact_moments,
    sample,
)

HALF = Fraction(1, 2)


def test_discrete_dist_validation():
    with pytest.raises(InvalidDistribution):
        DiscreteDist((1, 2), (HALF, HALF, HALF))
    with pytest.raises(InvalidDistribution):
        DiscreteDist((1, 2), (HALF, Fraction(1, 3)))
    with pytest.raises(InvalidDistribution):
        DiscreteDist((1,), (Fraction(0),))
    with pytest.raises(InvalidDistribution):
        RandomizedModel(DiscreteDist((-1, 2), (HALF, HALF)))
    with pytest.raises(InvalidDistribution):
        PoissonModel(0)
    d = DiscreteDist((HALF, 2), (Fraction(2, 3), Fraction(1, 3)))
    assert d.moment(2) == Fraction(2, 3) * Fraction(1, 4) + Fraction(1, 3) * 4


def test_exact_predictions():
    assert [int(v) for v in exact_moments(PoissonModel(1), 6)] == \
        [1, 1, 2, 5, 15, 52, 203]
    assert exact_moments(PoissonModel(2), 2)[2] == 6
    degenerate = CompoundModel(1, DiscreteDist.point_mass(1))
    assert exact_moments(degenerate, 5) == exact_moments(PoissonModel(1), 5)
    rz = RandomizedModel(DiscreteDist.point_mass(2))
    assert exact_moments(rz, 5) == exact_moments(PoissonModel(2), 5)
    rc = RandomizedCompoundModel(DiscreteDist.point_mass(1),
                                 DiscreteDist.point_mass(1))
    assert exact_moments(rc, 5) == exact_moments(PoissonModel(1), 5)


def test_sampling_is_deterministic_and_seed_sensitive():
    m = PoissonModel(1)
    a = sample(m, 3000, 42)
    b = sample(m, 3000, 42)
    assert np.array_equal(a, b)
    c = sample(m, 3000, 43)
    assert not np.array_equal(a, c)
    # prefix stability across chunk boundaries
    long = sample(m, (1 << 16) + 500, 42)
    assert np.array_equal(long[:3000], a)


def test_degenerate_reductions_distributionally():
    n, seed = 40000, 5
    pois = sample(PoissonModel(1), n, seed)
    comp = sample(CompoundModel(1, DiscreteDist.point_mass(1)), n, seed)
    # same counts, jumps of size one: identical streams consume identically
    assert np.array_equal(pois, comp)
    rz = sample(RandomizedModel(DiscreteDist.point_mass(Fraction(3, 2))), n, seed)
    direct = sample(PoissonModel(Fraction(3, 2)), n, seed)
    assert abs(rz.mean() - direct.mean()) < 0.05


def test_compare_rows_and_pass():
    comp = compare(PoissonModel(1), 100000, 11, max_order=4)
    assert comp.passed
    assert [r["exact"] for r in comp.rows] == ["1", "2", "5", "15"]
    assert comp.rows[2]["order"] == 3
    doc = comp.to_json()
    assert doc["pass"] and doc["n_samples"] == 100000
    with pytest.raises(ValueError):
        compare(PoissonModel(1), 100, 1, max_order=7)


def test_compare_detects_wrong_predictions():
    comp = compare(PoissonModel(2), 100000, 13, max_order=3)
    wrong = exact_moments(PoissonModel(1), 3)
    rows = empirical_rows(sample(PoissonModel(2), 100000, 13), wrong, 3)
    assert any(abs(r["z"]) > 8 for r in rows)
    assert comp.passed


def test_convolution_property():
    # independent poisson(1) + poisson(3/2) samples behave like poisson(5/2)
    n = 200000
    merged = sample(PoissonModel(1), n, 17) + sample(PoissonModel(Fraction(3, 2)),
                                                     n, 18)
    rows = empirical_rows(merged, exact_moments(PoissonModel(Fraction(5, 2)), 4), 4)
    assert all(abs(r["z"]) <= 8 for r in rows)


def test_point_mass_jump_zero_counts():
    # zero-count samples contribute empty jump sums
    vals = sample(CompoundModel(Fraction(1, 4), DiscreteDist.point_mass(2)),
                  20000, 23)
    assert (vals == 0).any()
    assert set(np.unique(vals)).issubset({float(2 * k) for k in range(30)})


def test_bell_number_predictions_for_unit_poisson():
    assert [int(v) for v in exact_moments(PoissonModel(1), 6)] == \
        [bell_number(k) for k in range(7)]
