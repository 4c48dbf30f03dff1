"""Domain types shared by the optimiser, the benchmark registry and the harness.

Every run owns one :class:`RngStream` and one :class:`EvaluationBudget`; nothing
here touches global random state, so independent runs can execute in separate
processes and still reproduce bit-for-bit.
"""

from dataclasses import dataclass
import math

import numpy as np

from .exceptions import BudgetExhausted, DimensionMismatch
from .validation import check_bounds, check_seed


class Bounds:
    """Axis-aligned box with optional per-dimension lattice spacing.

    A dimension with ``granularity[j] > 0`` only admits the values
    ``lower[j] + k * granularity[j]`` (k a non-negative integer), clamped to the box.
    """

    __slots__ = ("lower", "upper", "granularity", "_lattice")

    def __init__(self, lower, upper, granularity=None):
        self.lower, self.upper, self.granularity = check_bounds(lower, upper, granularity)
        self._lattice = bool(np.any(self.granularity > 0))

    @property
    def dimension(self):
        return self.lower.shape[0]

    @property
    def width(self):
        return self.upper - self.lower

    def fix_coordinate(self, j, value):
        """Snap and clamp a single coordinate; the hot path of candidate generation."""
        lo = self.lower[j]
        hi = self.upper[j]
        if self._lattice:
            g = self.granularity[j]
            if g > 0:
                value = lo + round((value - lo) / g) * g
        if value < lo:
            return float(lo)
        if value > hi:
            return float(hi)
        return float(value)

    def sample(self, rng):
        """Uniform draw ``lower + U[0,1) * (upper - lower)``, snapped to the lattice."""
        x = self.lower + rng.random(self.dimension) * self.width
        if self._lattice:
            x = snap_to_granularity(x, self)
        return x

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def __repr__(self):
        return f"Bounds(lower={self.lower.tolist()}, upper={self.upper.tolist()})"


def snap_to_granularity(position, bounds):
    """Round lattice dimensions to the nearest admissible point, then clamp to the box."""
    x = np.array(position, dtype=float)
    if x.shape != bounds.lower.shape:
        raise DimensionMismatch(
            f"position has shape {x.shape}, bounds have dimension {bounds.dimension}"
        )
    g = bounds.granularity
    mask = g > 0
    if np.any(mask):
        steps = np.round((x[mask] - bounds.lower[mask]) / g[mask])
        x[mask] = bounds.lower[mask] + steps * g[mask]
    return np.clip(x, bounds.lower, bounds.upper)


class RngStream:
    """Seeded PCG64 stream; the only source of randomness inside a run."""

    def __init__(self, seed=None):
        self.seed = check_seed(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self, lo=0.0, hi=1.0):
        """Scalar draw in ``[lo, hi)``."""
        return lo + (hi - lo) * self._gen.random()

    def random(self, size=None):
        return self._gen.random(size)

    def integers(self, n):
        """Integer in ``[0, n)``."""
        return int(self._gen.integers(n))

    def state(self):
        return self._gen.bit_generator.state


@dataclass
class EvaluationBudget:
    max: int
    used: int = 0

    def __post_init__(self):
        if self.max < 1:
            raise ValueError(f"budget max must be positive, got {self.max}")

    @property
    def remaining(self):
        return self.max - self.used

    @property
    def exhausted(self):
        return self.used >= self.max

    def consume(self):
        if self.used >= self.max:
            raise BudgetExhausted(f"evaluation budget of {self.max} exhausted")
        self.used += 1


@dataclass
class FoodSource:
    position: np.ndarray
    objective: float
    fitness: float
    trials: int = 0

    def copy(self):
        return FoodSource(self.position.copy(), self.objective, self.fitness, self.trials)


def evaluate(problem, position, budget):
    """Charge one evaluation to ``budget`` and return the (penalised) objective.

    NaN results are mapped to ``+inf`` so greedy comparisons stay well-defined.
    """
    if len(position) != problem.dimension:
        raise DimensionMismatch(
            f"{problem.name} expects {problem.dimension} coordinates, got {len(position)}"
        )
    budget.consume()
    value = float(problem(position))
    if math.isnan(value):
        return math.inf
    return value
