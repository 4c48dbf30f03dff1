"""Benchmark registry: twelve unconstrained test functions and two engineering designs.

Objectives take a 1-d float array and return a float. They are pure, so a
problem can be shipped to worker processes and evaluated concurrently.

External data
-------------
* Kowalik uses the standard 11-point data set (a_i, b_i = 1/u_i) of Ali,
  Khompatraporn and Zabinsky (2005).
* Meyer-Roth uses the standard 5-point (t_i, v_i, y_i) data set from the same source.
* The shifted Rosenbrock offset ``o`` is drawn once from a fixed-seed stream
  (:data:`ROSENBROCK_SHIFT_SEED`) and frozen.

Formulation notes
-----------------
* Shubert is the usual product form ``prod_k sum_i i*cos((i+1)*x_k + i)``; its
  18 global minima have value -186.7309. The point (7.0835, 4.8580) that is
  sometimes quoted for it is not a minimiser (f = 47.84 there); the registry
  records (-7.0835, 4.8580).
* Compression spring: x1 is the integer coil count, x2 the mean coil diameter,
  x3 the wire diameter (granularity 0.001). The spring rate is
  ``K = 11.5e6 * x3**4 / (8 * x1 * x2**3)``.
* Pressure vessel: the optimum value 7197.729 is attained near
  (1.125, 0.625, 58.29, 43.69), not at (1.125, 0.625, 55.8592, 57.7315), where
  the cost evaluates to 7359.1976.
* McCormick is a two-variable function.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import io
import math

import numpy as np

from .core import Bounds
from .exceptions import DimensionMismatch, UnknownProblem
from .validation import check_position

PENALTY_WEIGHT = 1e6
ROSENBROCK_SHIFT_SEED = 2005
ROSENBROCK_BIAS = 390.0
OPTIMUM_CHECK_TOL = 1e-3

_KOWALIK_A = np.array(
    [0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246]
)
_KOWALIK_B = 1.0 / np.array([0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0])

_MEYER_T = np.array([1.0, 2.0, 1.0, 2.0, 0.1])
_MEYER_V = np.array([1.0, 1.0, 2.0, 2.0, 0.0])
_MEYER_Y = np.array([0.126, 0.219, 0.076, 0.126, 0.186])

_SHUBERT_I = np.arange(1.0, 6.0)


@dataclass(frozen=True)
class PenaltyPolicy:
    """Static additive quadratic penalty: ``f(x) + weight * sum(max(0, g_k(x))**2)``."""

    penalty_weight: float = PENALTY_WEIGHT
    mode: str = "static-additive"

    def __post_init__(self):
        if not self.penalty_weight > 0:
            raise ValueError("penalty_weight must be positive")
        if self.mode != "static-additive":
            raise ValueError(f"unsupported penalty mode {self.mode!r}")

    def violation(self, constraints, x):
        total = 0.0
        for g in constraints:
            v = g(x)
            if v > 0:
                total += v * v
        return total

    def apply(self, value, constraints, x):
        if not constraints:
            return value
        return value + self.penalty_weight * self.violation(constraints, x)


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    name: str
    key: str
    dimension: int
    bounds: Bounds
    objective: object
    optimum_value: float
    acceptable_error: float
    constraints: tuple = ()
    penalty: PenaltyPolicy = field(default_factory=PenaltyPolicy)
    optimizer: tuple = None
    description: str = ""

    def __post_init__(self):
        if self.bounds.dimension != self.dimension:
            raise ValueError(f"{self.name}: bounds dimension != {self.dimension}")
        if not self.acceptable_error > 0:
            raise ValueError(f"{self.name}: acceptable_error must be positive")

    def raw(self, x):
        return float(self.objective(x))

    def violation(self, x):
        return self.penalty.violation(self.constraints, x)

    def __call__(self, x):
        value = float(self.objective(x))
        if self.constraints:
            value = self.penalty.apply(value, self.constraints, x)
        return value

    def error(self, value):
        return abs(value - self.optimum_value)


# -- unconstrained objectives ------------------------------------------------

def zakharov(x):
    x = np.asarray(x, dtype=float)
    s = np.dot(np.arange(1, x.size + 1), x) / 2.0
    return float(np.dot(x, x) + s**2 + s**4)


def salomon(x):
    x = np.asarray(x, dtype=float)
    r = math.sqrt(float(np.dot(x, x)))
    return 1.0 - math.cos(2.0 * math.pi * r) + 0.1 * r


def colville(x):
    x1, x2, x3, x4 = (float(v) for v in x)
    return (
        100.0 * (x2 - x1 * x1) ** 2
        + (1.0 - x1) ** 2
        + 90.0 * (x4 - x3 * x3) ** 2
        + (1.0 - x3) ** 2
        + 10.1 * ((x2 - 1.0) ** 2 + (x4 - 1.0) ** 2)
        + 19.8 * (x2 - 1.0) * (x4 - 1.0)
    )


_BRANIN = (1.0, 5.1 / (4.0 * math.pi**2), 5.0 / math.pi, 6.0, 10.0, 1.0 / (8.0 * math.pi))


def branin(x):
    a, b, c, d, e, f = _BRANIN
    x1, x2 = float(x[0]), float(x[1])
    return a * (x2 - b * x1 * x1 + c * x1 - d) ** 2 + e * (1.0 - f) * math.cos(x1) + e


def kowalik(x):
    x = np.asarray(x, dtype=float)
    b = _KOWALIK_B
    with np.errstate(divide="ignore", invalid="ignore"):
        model = x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3])
    return float(np.sum((_KOWALIK_A - model) ** 2))


def shifted_rosenbrock(x, o):
    """Rosenbrock on ``z = x - o + 1`` plus a bias of 390; minimum 390 at ``x = o``."""
    x = np.asarray(x, dtype=float)
    o = np.asarray(o, dtype=float)
    if x.shape != o.shape:
        raise DimensionMismatch(f"x has shape {x.shape}, shift has shape {o.shape}")
    z = x - o + 1.0
    return float(np.sum(100.0 * (z[:-1] ** 2 - z[1:]) ** 2 + (z[:-1] - 1.0) ** 2) + ROSENBROCK_BIAS)


class ShiftedRosenbrock:
    """Picklable callable binding :func:`shifted_rosenbrock` to a frozen shift."""

    def __init__(self, shift):
        self.shift = np.asarray(shift, dtype=float)

    def __call__(self, x):
        return shifted_rosenbrock(x, self.shift)


def rosenbrock_shift(dimension=10, seed=ROSENBROCK_SHIFT_SEED):
    return np.random.default_rng(seed).uniform(-80.0, 80.0, dimension)


def six_hump_camel(x):
    x1, x2 = float(x[0]), float(x[1])
    return (4.0 - 2.1 * x1**2 + x1**4 / 3.0) * x1**2 + x1 * x2 + (-4.0 + 4.0 * x2**2) * x2**2


def easom(x):
    x1, x2 = float(x[0]), float(x[1])
    return -math.cos(x1) * math.cos(x2) * math.exp(-((x1 - math.pi) ** 2) - (x2 - math.pi) ** 2)


def hosaki(x):
    x1, x2 = float(x[0]), float(x[1])
    poly = 1.0 - 8.0 * x1 + 7.0 * x1**2 - 7.0 / 3.0 * x1**3 + 0.25 * x1**4
    return poly * x2**2 * math.exp(-x2)


def mccormick(x):
    x1, x2 = float(x[0]), float(x[1])
    return math.sin(x1 + x2) + (x1 - x2) ** 2 - 1.5 * x1 + 2.5 * x2 + 1.0


def meyer_roth(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        model = x[0] * x[2] * _MEYER_T / (1.0 + x[0] * _MEYER_T + x[1] * _MEYER_V)
    return float(np.sum((model - _MEYER_Y) ** 2))


def shubert(x):
    i = _SHUBERT_I
    s1 = float(np.dot(i, np.cos((i + 1.0) * float(x[0]) + i)))
    s2 = float(np.dot(i, np.cos((i + 1.0) * float(x[1]) + i)))
    return s1 * s2


# -- compression spring ------------------------------------------------------

SPRING_F_MAX = 1000.0
SPRING_S = 189000.0
SPRING_L_MAX = 14.0
SPRING_SIGMA_PM = 6.0
SPRING_F_P = 300.0


def _spring_rate(x):
    coils, coil_d, wire_d = float(x[0]), float(x[1]), float(x[2])
    return 11.5e6 * wire_d**4 / (8.0 * coils * coil_d**3)


def spring_weight(x):
    coils, coil_d, wire_d = float(x[0]), float(x[1]), float(x[2])
    return math.pi**2 * coil_d * wire_d**2 * (coils + 2.0) / 4.0


def spring_shear(x):
    coil_d, wire_d = float(x[1]), float(x[2])
    cf = 1.0 + 0.75 * wire_d / (coil_d - wire_d) + 0.615 * wire_d / coil_d
    return 8.0 * cf * SPRING_F_MAX * coil_d / (math.pi * wire_d**3) - SPRING_S


def spring_free_length(x):
    free_length = SPRING_F_MAX / _spring_rate(x) + 1.05 * (float(x[0]) + 2.0) * float(x[2])
    return free_length - SPRING_L_MAX


def spring_preload_deflection(x):
    return SPRING_F_P / _spring_rate(x) - SPRING_SIGMA_PM


def spring_working_deflection(x):
    k = _spring_rate(x)
    return SPRING_F_P / k - (SPRING_F_MAX - SPRING_F_P) / k


SPRING_CONSTRAINTS = (spring_shear, spring_free_length, spring_preload_deflection, spring_working_deflection)


def compression_spring(x, penalty=PenaltyPolicy()):
    """Spring weight plus the quadratic penalty for the four design constraints."""
    x = _check_len(x, 3, "compression_spring")
    return penalty.apply(spring_weight(x), SPRING_CONSTRAINTS, x)


# -- pressure vessel -----------------------------------------------------------

def vessel_cost(x):
    x1, x2, x3, x4 = (float(v) for v in x)
    return 0.6224 * x1 * x3 * x4 + 1.7781 * x2 * x3**2 + 3.1611 * x1**2 * x4 + 19.84 * x1**2 * x3


def vessel_shell_thickness(x):
    return 0.0193 * float(x[2]) - float(x[0])


def vessel_head_thickness(x):
    return 0.00954 * float(x[2]) - float(x[1])


def vessel_volume(x):
    r, length = float(x[2]), float(x[3])
    return 750.0 * 1728.0 - math.pi * r**2 * (length + 4.0 / 3.0 * r)


VESSEL_CONSTRAINTS = (vessel_shell_thickness, vessel_head_thickness, vessel_volume)


def pressure_vessel(x, penalty=PenaltyPolicy()):
    x = _check_len(x, 4, "pressure_vessel")
    return penalty.apply(vessel_cost(x), VESSEL_CONSTRAINTS, x)


def _check_len(x, n, name):
    try:
        return check_position(x, n)
    except DimensionMismatch as exc:
        raise DimensionMismatch(f"{name}: {exc}") from None


# -- registry ------------------------------------------------------------------

def _box(lo, hi, d):
    return Bounds(np.full(d, lo), np.full(d, hi))


def _build():
    shift = rosenbrock_shift()
    return (
        ProblemSpec("zakharov", "f1", 30, _box(-5.12, 5.12, 30), zakharov, 0.0, 1e-2,
                    optimizer=None, description="f(0) = 0"),
        ProblemSpec("salomon", "f2", 30, _box(-100.0, 100.0, 30), salomon, 0.0, 1e-1,
                    description="f(0) = 0"),
        ProblemSpec("colville", "f3", 4, _box(-10.0, 10.0, 4), colville, 0.0, 1e-5,
                    description="f(1) = 0"),
        ProblemSpec("branin", "f4", 2, Bounds([-5.0, 0.0], [10.0, 15.0]), branin, 0.3979, 1e-5,
                    optimizer=(-math.pi, 12.275)),
        ProblemSpec("kowalik", "f5", 4, _box(-5.0, 5.0, 4), kowalik, 3.07e-4, 1e-5,
                    optimizer=(0.1928, 0.1908, 0.1231, 0.1357)),
        ProblemSpec("shifted_rosenbrock", "f6", 10, _box(-100.0, 100.0, 10), ShiftedRosenbrock(shift),
                    ROSENBROCK_BIAS, 1e-1, description="f(o) = 390"),
        ProblemSpec("six_hump_camel", "f7", 2, _box(-5.0, 5.0, 2), six_hump_camel, -1.0316, 1e-5,
                    optimizer=(-0.0898, 0.7126)),
        ProblemSpec("easom", "f8", 2, _box(-10.0, 10.0, 2), easom, -1.0, 1e-13,
                    optimizer=(math.pi, math.pi)),
        ProblemSpec("hosaki", "f9", 2, Bounds([0.0, 0.0], [5.0, 6.0]), hosaki, -2.3458, 1e-6,
                    description="minimiser (4, 2), value -2.345812"),
        ProblemSpec("mccormick", "f10", 2, Bounds([-1.5, -3.0], [4.0, 3.0]), mccormick, -1.9133, 1e-4,
                    optimizer=(-0.547, -1.547)),
        ProblemSpec("meyer_roth", "f11", 3, _box(-20.0, 20.0, 3), meyer_roth, 0.4e-4, 1e-3,
                    description="f(3.13, 15.16, 0.78) = 0.4E-04"),
        ProblemSpec("shubert", "f12", 2, _box(-10.0, 10.0, 2), shubert, -186.7309, 1e-5,
                    optimizer=(-7.0835, 4.8580)),
        ProblemSpec("compression_spring", "f13", 3,
                    Bounds([1.0, 0.6, 0.207], [70.0, 3.0, 0.5], granularity=[1.0, 0.0, 0.001]),
                    spring_weight, 2.6254, 1e-4, constraints=SPRING_CONSTRAINTS,
                    optimizer=(7.0, 1.386599591, 0.292)),
        ProblemSpec("pressure_vessel", "f14", 4, Bounds([1.125, 0.625, 1e-8, 1e-8], [12.5, 12.5, 240.0, 240.0]),
                    vessel_cost, 7197.729, 1e-5, constraints=VESSEL_CONSTRAINTS),
    )


def verify_optimum(problem, tol=OPTIMUM_CHECK_TOL):
    """Return ``(value, ok)`` for the recorded optimiser; ``None`` if there is none."""
    if problem.optimizer is None:
        return None
    value = problem(np.asarray(problem.optimizer, dtype=float))
    return value, abs(value - problem.optimum_value) <= tol


@lru_cache(maxsize=1)
def _registry():
    problems = _build()
    for p in problems:
        check = verify_optimum(p)
        if check is not None and not check[1]:
            raise RuntimeError(f"{p.name}: f(optimizer) = {check[0]!r} != {p.optimum_value}")
    return problems


def registry():
    """All fourteen problems, ordered f1..f14."""
    return list(_registry())


def get_problem(name):
    """Look a problem up by name (``"branin"``) or key (``"f4"``), case-insensitively."""
    key = str(name).strip().lower().replace("-", "_")
    for p in _registry():
        if key in (p.name, p.key):
            return p
    raise UnknownProblem(f"unknown problem {name!r}")


def _fmt_bounds(bounds):
    lo, hi = bounds.lower, bounds.upper
    if np.all(lo == lo[0]) and np.all(hi == hi[0]):
        return f"[{lo[0]:g},{hi[0]:g}]^{bounds.dimension}"
    return " x ".join(f"[{a:g},{b:g}]" for a, b in zip(lo, hi))


CATALOGUE_COLUMNS = ("key", "name", "dimension", "bounds", "optimum", "acceptable_error")


def catalogue(problems=None):
    """Tab-separated problem table, one header line then one row per problem.

    ``bounds`` is ``[lo,hi]^D`` for a uniform box, else per-dimension
    ``[lo,hi]`` intervals joined by `` x ``.
    """
    if problems is None:
        problems = registry()
    out = io.StringIO()
    out.write("\t".join(CATALOGUE_COLUMNS) + "\n")
    for p in problems:
        row = (p.key, p.name, str(p.dimension), _fmt_bounds(p.bounds),
               repr(float(p.optimum_value)), f"{p.acceptable_error:.1E}")
        out.write("\t".join(row) + "\n")
    return out.getvalue()


def as_problem(problem, bounds=None, optimum_value=None, acceptable_error=1e-6):
    """Coerce a registry name, a :class:`ProblemSpec`, or a plain callable into a ProblemSpec.

    A callable needs ``bounds`` (a :class:`Bounds` or a ``(lower, upper)`` pair).
    Without ``optimum_value`` the target can never be met, so the run spends
    its whole budget.
    """
    if isinstance(problem, ProblemSpec):
        return problem
    if isinstance(problem, str):
        return get_problem(problem)
    if not callable(problem):
        raise TypeError(f"expected a problem name, ProblemSpec or callable, got {type(problem).__name__}")
    if bounds is None:
        raise ValueError("bounds are required when optimising a plain callable")
    if not isinstance(bounds, Bounds):
        lower, upper = bounds
        bounds = Bounds(lower, upper)
    return ProblemSpec(
        name=getattr(problem, "__name__", "objective"),
        key="custom",
        dimension=bounds.dimension,
        bounds=bounds,
        objective=problem,
        optimum_value=-math.inf if optimum_value is None else float(optimum_value),
        acceptable_error=acceptable_error,
    )
