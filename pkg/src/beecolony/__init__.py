"""Artificial bee colony optimisers (ABC, MeABC, IoABC), benchmark problems and an experiment harness."""

from .benchmarks import ProblemSpec, as_problem, get_problem, registry
from .colony import RunResult, VariantConfig, run
from .core import Bounds, EvaluationBudget, FoodSource, RngStream, evaluate, snap_to_granularity
from .estimator import BeeColonyOptimizer
from .exceptions import (
    BudgetExhausted,
    DegenerateFitness,
    DimensionMismatch,
    MissingVariant,
    UnknownProblem,
    UnknownVariant,
)
from .harness import ExperimentPlan, RunStatistics, compare, execute

__version__ = "0.1.0"

__all__ = [
    "BeeColonyOptimizer", "Bounds", "BudgetExhausted", "DegenerateFitness", "DimensionMismatch",
    "EvaluationBudget", "ExperimentPlan", "FoodSource", "MissingVariant", "ProblemSpec",
    "RngStream", "RunResult", "RunStatistics", "UnknownProblem", "UnknownVariant",
    "VariantConfig", "as_problem", "compare", "evaluate", "execute", "get_problem",
    "registry", "run", "snap_to_granularity",
]
