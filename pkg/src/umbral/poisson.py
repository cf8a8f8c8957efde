"""Seeded Monte Carlo verification of the probabilistic moment formulas.

Four sampling models, each with exact rational moment predictions from the
combinatorial kernels:

* ``poisson(lam)``            -- predictions sum_j S(k,j) lam^j
  (Bell numbers when lam = 1);
* ``compound(lam, jumps)``    -- N ~ Poisson(lam) i.i.d.-jump sums,
  predictions sum_j lam^j B_{k,j}(jump moments);
* ``randomized(param)``       -- Poisson with random parameter X,
  predictions sum_j S(k,j) E[X^j];
* ``randomized_compound(param, jumps)`` -- jump sums driven by the
  randomized count, predictions sum_j E[X^j] B_{k,j}(jump moments).

Randomness: SplitMix64 only (see :mod:`umbral.prng`).  Sampling is chunked;
chunk c of a run seeded with s gets its own seed ``Stream(s).at(c)`` and
draws from the three substreams ``Stream(chunk_seed).derive(t)`` for t = 1
(parameter / count draws), 2 (randomized Poisson counts), 3 (jump draws),
each consumed in sample order within the chunk.  Poisson draws use
sequential inversion: the CDF table is built by the
p_{k+1} = p_k * lam/(k+1) recurrence and a uniform is inverted against it.
Everything downstream is a pure function of (model, n, seed), whatever the
thread count or chunk schedule.

Jump and parameter distributions are restricted to finite rational support
so every predicted moment is a finite exact sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combinatorics import bell_triangle, stirling
from .errors import InvalidDistribution
from .poly import Poly
from .prng import GOLDEN, MASK, Stream

CHUNK = 1 << 16
Z_TOLERANCE = 8.0
MAX_ORDER_CAP = 6

_U64 = np.uint64


def _uniform_block(seed: int, count: int) -> np.ndarray:
    """The first ``count`` uniforms of the SplitMix64 stream ``seed``."""
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = _U64(seed & MASK) + idx * _U64(GOLDEN)
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    z = z ^ (z >> _U64(31))
    return (z >> _U64(11)).astype(np.float64) * 2.0 ** -53


# -- distributions ----------------------------------------------------------------


@dataclass(frozen=True)
class DiscreteDist:
    """Finite discrete distribution with exact rational support and weights."""

    values: tuple
    probs: tuple

    def __post_init__(self):
        values = tuple(Fraction(v) for v in self.values)
        probs = tuple(Fraction(p) for p in self.probs)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "probs", probs)
        if not values or len(values) != len(probs):
            raise InvalidDistribution("support and weights must align")
        if any(p <= 0 for p in probs):
            raise InvalidDistribution("weights must be positive")
        if sum(probs) != 1:
            raise InvalidDistribution(f"weights sum to {sum(probs)}, not 1")

    @staticmethod
    def point_mass(value) -> "DiscreteDist":
        return DiscreteDist((Fraction(value),), (Fraction(1),))

    def require_nonnegative(self, what: str):
        if any(v < 0 for v in self.values):
            raise InvalidDistribution(f"{what} values must be nonnegative")

    def moment(self, j: int) -> Fraction:
        return sum(p * v ** j for v, p in zip(self.values, self.probs))

    def cdf_array(self) -> np.ndarray:
        return np.cumsum(np.array([float(p) for p in self.probs]))

    def value_array(self) -> np.ndarray:
        return np.array([float(v) for v in self.values])

    def spec(self) -> str:
        return ",".join(f"{v}:{p}" for v, p in zip(self.values, self.probs))


# -- models ------------------------------------------------------------------------


@dataclass(frozen=True)
class PoissonModel:
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam <= 0:
            raise InvalidDistribution("Poisson rate must be positive")

    def describe(self) -> str:
        return f"poisson({self.lam})"


@dataclass(frozen=True)
class CompoundModel:
    lam: Fraction
    jumps: DiscreteDist

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam <= 0:
            raise InvalidDistribution("Poisson rate must be positive")

    def describe(self) -> str:
        return f"compound({self.lam}; jumps {self.jumps.spec()})"


@dataclass(frozen=True)
class RandomizedModel:
    param: DiscreteDist

    def __post_init__(self):
        self.param.require_nonnegative("parameter")

    def describe(self) -> str:
        return f"randomized(param {self.param.spec()})"


@dataclass(frozen=True)
class RandomizedCompoundModel:
    param: DiscreteDist
    jumps: DiscreteDist

    def __post_init__(self):
        self.param.require_nonnegative("parameter")

    def describe(self) -> str:
        return (f"randomized_compound(param {self.param.spec()}; "
                f"jumps {self.jumps.spec()})")


Model = (PoissonModel, CompoundModel, RandomizedModel, RandomizedCompoundModel)


# -- exact predictions -----------------------------------------------------------------


def exact_moments(model, max_order: int) -> list:
    """Exact rational moments E[X^k] for k = 0..max_order."""
    out = [Fraction(1)]
    if isinstance(model, PoissonModel):
        for k in range(1, max_order + 1):
            out.append(sum(stirling("second", k, j) * model.lam ** j
                           for j in range(k + 1)))
    elif isinstance(model, RandomizedModel):
        for k in range(1, max_order + 1):
            out.append(sum(stirling("second", k, j) * model.param.moment(j)
                           for j in range(k + 1)))
    elif isinstance(model, (CompoundModel, RandomizedCompoundModel)):
        jm = [Poly.const(model.jumps.moment(j)) for j in range(1, max_order + 1)]
        tri = bell_triangle(jm, max_order)
        if isinstance(model, CompoundModel):
            weights = [model.lam ** j for j in range(max_order + 1)]
        else:
            weights = [model.param.moment(j) for j in range(max_order + 1)]
        for k in range(1, max_order + 1):
            acc = Fraction(0)
            for j in range(k + 1):
                b = tri[k][j]
                if b:
                    acc += weights[j] * b.constant()
            out.append(acc)
    else:
        raise TypeError(f"unknown model: {model!r}")
    return out


# -- sampling ---------------------------------------------------------------------------


def _poisson_cdf(lam: float) -> np.ndarray:
    """CDF table for sequential inversion, built by the mass recurrence."""
    if lam == 0.0:
        return np.array([1.0])
    p = math.exp(-lam)
    cdf = [p]
    k = 0
    while cdf[-1] < 1.0 - 1e-15 and k < 2048:
        k += 1
        p *= lam / k
        cdf.append(cdf[-1] + p)
    return np.array(cdf)


def _invert_poisson(cdf: np.ndarray, u: np.ndarray) -> np.ndarray:
    return np.searchsorted(cdf, u, side="right").astype(np.int64)


def _segment_sums(jump_values: np.ndarray, counts: np.ndarray) -> np.ndarray:
    csum = np.concatenate(([0.0], np.cumsum(jump_values)))
    ends = np.cumsum(counts)
    return csum[ends] - csum[ends - counts]


def _sample_chunk(model, chunk_seed: int, count: int) -> np.ndarray:
    s = Stream(chunk_seed)
    u_main = _uniform_block(s.derive(1).seed, count)
    if isinstance(model, PoissonModel):
        return _invert_poisson(_poisson_cdf(float(model.lam)), u_main).astype(np.float64)
    if isinstance(model, CompoundModel):
        counts = _invert_poisson(_poisson_cdf(float(model.lam)), u_main)
        total = int(counts.sum())
        u_jump = _uniform_block(s.derive(3).seed, total)
        jv = model.jumps.value_array()[
            np.minimum(np.searchsorted(model.jumps.cdf_array(), u_jump, side="right"),
                       len(model.jumps.values) - 1)]
        return _segment_sums(jv, counts)
    if isinstance(model, (RandomizedModel, RandomizedCompoundModel)):
        pidx = np.minimum(
            np.searchsorted(model.param.cdf_array(), u_main, side="right"),
            len(model.param.values) - 1)
        u_count = _uniform_block(s.derive(2).seed, count)
        counts = np.zeros(count, dtype=np.int64)
        for i, v in enumerate(model.param.values):
            mask = pidx == i
            if mask.any():
                counts[mask] = _invert_poisson(_poisson_cdf(float(v)), u_count[mask])
        if isinstance(model, RandomizedModel):
            return counts.astype(np.float64)
        total = int(counts.sum())
        u_jump = _uniform_block(s.derive(3).seed, total)
        jv = model.jumps.value_array()[
            np.minimum(np.searchsorted(model.jumps.cdf_array(), u_jump, side="right"),
                       len(model.jumps.values) - 1)]
        return _segment_sums(jv, counts)
    raise TypeError(f"unknown model: {model!r}")


def sample(model, n: int, seed: int) -> np.ndarray:
    """n i.i.d. draws from the model, as float64; deterministic in
    (model, n, seed)."""
    if n < 1:
        raise ValueError("need at least one sample")
    master = Stream(seed)
    chunks = []
    for c in range((n + CHUNK - 1) // CHUNK):
        size = min(CHUNK, n - c * CHUNK)
        chunks.append(_sample_chunk(model, master.at(c), size))
    return np.concatenate(chunks)


# -- moment comparison --------------------------------------------------------------------


@dataclass
class MomentComparison:
    """Exact predictions vs empirical moments with z-scores."""

    model: str
    n_samples: int
    seed: int
    max_order: int
    rows: list
    tolerance: float = Z_TOLERANCE

    @property
    def passed(self) -> bool:
        return all(abs(r["z"]) <= self.tolerance for r in self.rows)

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "max_order": self.max_order,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "rows": self.rows,
        }


def empirical_rows(values: np.ndarray, exact: list, max_order: int) -> list:
    """Comparison rows for a sample against exact rational predictions."""
    n = len(values)
    rows = []
    for k in range(1, max_order + 1):
        powers = values ** k
        emp = float(powers.mean())
        var = float(powers.var(ddof=1)) if n > 1 else 0.0
        se = math.sqrt(var / n) if var > 0 else 0.0
        pred = float(exact[k])
        if se == 0.0:
            z = 0.0 if emp == pred else math.inf
        else:
            z = (emp - pred) / se
        rows.append({
            "order": k,
            "exact": str(exact[k]),
            "exact_float": pred,
            "empirical": emp,
            "stderr": se,
            "z": z,
        })
    return rows


def compare(model, n: int, seed: int, max_order: int = 4) -> MomentComparison:
    """Sample the model and set empirical moments against the exact umbral
    predictions, one row per order."""
    if max_order > MAX_ORDER_CAP:
        raise ValueError(f"max_order capped at {MAX_ORDER_CAP}")
    values = sample(model, n, seed)
    exact = exact_moments(model, max_order)
    rows = empirical_rows(values, exact, max_order)
    return MomentComparison(
        model=model.describe(),
        n_samples=n,
        seed=seed,
        max_order=max_order,
        rows=rows,
    )
