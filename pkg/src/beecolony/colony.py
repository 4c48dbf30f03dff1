"""Phase-structured bee colony engine with three variants.

``abc``
    Employed and onlooker bees both use the neighbour rule
    ``v_j = x_ij + phi * (x_ij - x_kj)`` with ``phi ~ U[-1, 1]``, ``k != i``.
``meabc``
    Same phases, but the step gains a pull towards the best-so-far solution,
    ``+ psi * (best_j - x_ij)`` with ``psi ~ U[0, C]``.
``ioabc``
    Randomised fitness transform, blended selection probabilities, and an
    onlooker phase that runs a golden-section-style contraction over the step
    coefficient interval ``[a, b] = [-1.2, 1.2]``.

A cycle is employed -> (probabilities) -> onlooker -> scout; the best-so-far
copy is refreshed after every accepted candidate.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .core import EvaluationBudget, FoodSource, RngStream, evaluate
from .exceptions import BudgetExhausted, DegenerateFitness
from .validation import VARIANTS, check_scalar, check_variant

OBJECTIVE_FLOOR = 1e-12
FITNESS_CAP = 1e12
DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class VariantConfig:
    variant: str = "ioabc"
    colony_size: int = 60
    limit: int = 1500
    meabc_c: float = 1.5
    gss_a: float = -1.2
    gss_b: float = 1.2
    gss_phi_range: tuple = (0.55, 0.65)
    gss_max_iters: int = 20
    gss_tolerance: float = 1e-2
    fitness_mode: str = None  # "printed" | "classic"; None picks per variant

    def __post_init__(self):
        object.__setattr__(self, "variant", check_variant(self.variant))
        check_scalar(self.colony_size, "colony_size", int, min_val=4)
        if self.colony_size % 2:
            raise ValueError(f"colony_size must be even, got {self.colony_size}")
        check_scalar(self.limit, "limit", int, min_val=1)
        check_scalar(self.gss_max_iters, "gss_max_iters", int, min_val=1)
        if not self.meabc_c > 0:
            raise ValueError("meabc_c must be positive")
        if not self.gss_a < self.gss_b:
            raise ValueError("gss_a must be below gss_b")
        lo, hi = self.gss_phi_range
        if not 0 < lo <= hi < 1:
            raise ValueError("gss_phi_range must lie inside (0, 1)")
        object.__setattr__(self, "gss_phi_range", (float(lo), float(hi)))
        if not self.gss_tolerance > 0:
            raise ValueError("gss_tolerance must be positive")
        mode = self.fitness_mode
        if mode is None:
            mode = "printed" if self.variant == "ioabc" else "classic"
        if mode not in ("printed", "classic"):
            raise ValueError(f"fitness_mode must be 'printed' or 'classic', got {mode!r}")
        object.__setattr__(self, "fitness_mode", mode)

    @property
    def n_sources(self):
        """Employed bees = onlooker bees = food sources = colony_size / 2."""
        return self.colony_size // 2


@dataclass
class ColonyState:
    sources: list
    best: FoodSource
    budget: EvaluationBudget
    rng: RngStream
    cycles: int = 0
    target: tuple = None  # (optimum_value, tolerance); phases stop early once met
    reached: bool = False

    def offer_best(self, source):
        """Record ``source`` as best-so-far if it improves on it."""
        if source.objective < self.best.objective:
            self.best = source.copy()
            if self.target is not None:
                optimum, tol = self.target
                self.reached = abs(self.best.objective - optimum) <= tol

    @property
    def halted(self):
        return self.reached or self.budget.exhausted

    def objectives(self):
        return np.array([s.objective for s in self.sources])

    def fitness(self):
        return np.array([s.fitness for s in self.sources])


@dataclass
class RunResult:
    problem: str
    variant: str
    seed: int
    success: bool
    best_objective: float
    error: float
    evaluations: int
    cycles: int
    best_position: np.ndarray = field(repr=False, default=None)
    trajectory: list = field(repr=False, default=None)

    RECORD_FIELDS = ("problem", "variant", "seed", "success", "best_objective", "error",
                     "evaluations", "cycles")

    def to_record(self):
        return {k: getattr(self, k) for k in self.RECORD_FIELDS}


# -- fitness and selection -----------------------------------------------------

def classic_fitness(objective):
    if objective >= 0:
        return 1.0 / (1.0 + objective)
    return 1.0 + abs(objective)


def fitness_transform(objective, rng, mode="printed"):
    """Map an objective value to a positive fitness.

    ``printed`` draws ``phi ~ U[0, 1]`` and blends ``1/(2f + 1)`` with
    ``1 + |1/f|``; the weights swap for negative ``f``. ``|f|`` and ``|2f + 1|``
    are floored at 1e-12 and the result is capped at 1e12. ``classic`` is the
    deterministic ``1/(1+f)`` / ``1+|f|`` rule and draws nothing.
    """
    if mode == "classic":
        return classic_fitness(objective)
    phi = rng.uniform(0.0, 1.0)
    if math.isinf(objective):
        first, second = 0.0, 1.0
    else:
        first = 1.0 / max(abs(2.0 * objective + 1.0), OBJECTIVE_FLOOR)
        second = 1.0 + 1.0 / max(abs(objective), OBJECTIVE_FLOOR)
    if objective >= 0:
        value = phi * first + (1.0 - phi) * second
    else:
        value = (1.0 - phi) * first + phi * second
    return min(value, FITNESS_CAP)


def selection_probabilities(fitness, variant, rng=None):
    """Selection distribution over food sources.

    ``abc``/``meabc``: ``fit_i / sum(fit)``. ``ioabc``: one ``phi ~ U[0,1]`` per
    call, ``raw_i = phi * fit_i / max(fit) + (1 - phi) * fit_i / sum(fit)``,
    then ``raw / sum(raw)``.
    """
    fit = np.asarray(fitness, dtype=float)
    total = fit.sum()
    if not (np.isfinite(total) and total > 0):
        raise DegenerateFitness(f"fitness values sum to {total}")
    share = fit / total
    if check_variant(variant) != "ioabc":
        return share
    phi = rng.uniform(0.0, 1.0)
    raw = phi * (fit / fit.max()) + (1.0 - phi) * share
    return raw / raw.sum()


def roulette(probabilities, rng):
    cumulative = np.cumsum(probabilities)
    r = rng.uniform(0.0, 1.0) * cumulative[-1]
    idx = int(np.searchsorted(cumulative, r, side="right"))
    return min(idx, len(cumulative) - 1)


# -- phases --------------------------------------------------------------------

def _make_source(position, objective, rng, config):
    return FoodSource(position, objective, fitness_transform(objective, rng, config.fitness_mode))


def initialize(problem, config, seed, max_evaluations=DEFAULT_BUDGET):
    """Scatter ``colony_size / 2`` sources uniformly over the box and evaluate each once."""
    rng = seed if isinstance(seed, RngStream) else RngStream(seed)
    budget = max_evaluations if isinstance(max_evaluations, EvaluationBudget) else EvaluationBudget(max_evaluations)
    if budget.remaining < config.n_sources:
        raise BudgetExhausted(
            f"budget of {budget.remaining} cannot cover {config.n_sources} initial evaluations"
        )
    sources = []
    for _ in range(config.n_sources):
        x = problem.bounds.sample(rng)
        sources.append(_make_source(x, evaluate(problem, x, budget), rng, config))
    best = min(sources, key=lambda s: s.objective).copy()
    return ColonyState(sources, best, budget, rng)


def _greedy(state, i, position, objective, config):
    """Replace source ``i`` if strictly better; otherwise count a failed trial."""
    src = state.sources[i]
    if objective < src.objective:
        src.position = position
        src.objective = objective
        src.fitness = fitness_transform(objective, state.rng, config.fitness_mode)
        src.trials = 0
        state.offer_best(src)
        return True
    src.trials += 1
    return False


def neighbour_candidate(state, problem, config, i):
    """Perturb one random coordinate of source ``i`` towards/away from a random peer ``k != i``."""
    rng = state.rng
    n = len(state.sources)
    k = rng.integers(n - 1)
    if k >= i:
        k += 1
    j = rng.integers(problem.dimension)
    phi = rng.uniform(-1.0, 1.0)
    xi = state.sources[i].position
    value = xi[j] + phi * (xi[j] - state.sources[k].position[j])
    if config.variant == "meabc":
        psi = rng.uniform(0.0, config.meabc_c)
        value += psi * (state.best.position[j] - xi[j])
    candidate = xi.copy()
    candidate[j] = problem.bounds.fix_coordinate(j, value)
    return candidate


def _neighbour_step(state, problem, config, i):
    candidate = neighbour_candidate(state, problem, config, i)
    _greedy(state, i, candidate, evaluate(problem, candidate, state.budget), config)


def employed_phase(state, problem, config):
    try:
        for i in range(len(state.sources)):
            if state.reached:
                break
            _neighbour_step(state, problem, config, i)
    except BudgetExhausted:
        pass
    return state


def onlooker_phase_abc(state, problem, config):
    """Roulette-assign ``n_sources`` onlookers, each applying one neighbour step."""
    probs = selection_probabilities(state.fitness(), config.variant, state.rng)
    try:
        for _ in range(len(state.sources)):
            if state.reached:
                break
            _neighbour_step(state, problem, config, roulette(probs, state.rng))
    except BudgetExhausted:
        pass
    return state


def gss_search(state, problem, config, i, widths=None):
    """Contract the step-coefficient interval around source ``i``.

    The search line is ``x_i + f * (x_ij - x_kj) * e_j`` for one random peer
    ``k`` (``k == i`` allowed) and coordinate ``j``, drawn once per call. Each
    iteration draws ``phi`` from ``gss_phi_range``, probes ``f1 = b - (b-a)*phi``
    and ``f2 = a + (b-a)*phi`` and keeps ``[a, f2]`` if the ``f1`` probe is
    better, else ``[f1, b]``. Stops when ``b - a < gss_tolerance``, after
    ``gss_max_iters`` iterations, or when the budget runs out.

    Returns ``(position, objective)`` of the best probe, or ``(None, inf)`` when
    nothing was evaluated. Interval widths after each iteration are appended
    to ``widths`` if given.
    """
    rng = state.rng
    n = len(state.sources)
    dim = problem.dimension
    fix = problem.bounds.fix_coordinate
    lo, hi = config.gss_phi_range
    a, b = config.gss_a, config.gss_b
    xi = state.sources[i].position
    k = min(int(rng.uniform() * n), n - 1)
    j = min(int(rng.uniform() * dim), dim - 1)
    step = xi[j] - state.sources[k].position[j]
    best_pos, best_obj = None, math.inf
    it = 0
    while b - a >= config.gss_tolerance and it < config.gss_max_iters:
        phi = rng.uniform(lo, hi)
        f1 = b - (b - a) * phi
        f2 = a + (b - a) * phi
        c1 = xi.copy()
        c1[j] = fix(j, xi[j] + step * f1)
        c2 = xi.copy()
        c2[j] = fix(j, xi[j] + step * f2)
        try:
            o1 = evaluate(problem, c1, state.budget)
            if o1 < best_obj:
                best_pos, best_obj = c1, o1
            o2 = evaluate(problem, c2, state.budget)
        except BudgetExhausted:
            break
        if o2 < best_obj:
            best_pos, best_obj = c2, o2
        if o1 < o2:
            b = f2
        else:
            a = f1
        it += 1
        if widths is not None:
            widths.append(b - a)
    return best_pos, best_obj


def onlooker_phase_gss(state, problem, config):
    probs = selection_probabilities(state.fitness(), config.variant, state.rng)
    for _ in range(len(state.sources)):
        if state.halted:
            break
        i = roulette(probs, state.rng)
        pos, obj = gss_search(state, problem, config, i)
        if pos is not None:
            _greedy(state, i, pos, obj, config)
    return state


def scout_phase(state, problem, config):
    """Re-seed the most-stalled source if its trial count has reached ``limit``.

    At most one source per cycle; ties go to the lowest index.
    """
    trials = [s.trials for s in state.sources]
    i = int(np.argmax(trials))
    if trials[i] < config.limit:
        return state
    x = problem.bounds.sample(state.rng)
    try:
        obj = evaluate(problem, x, state.budget)
    except BudgetExhausted:
        return state
    state.sources[i] = _make_source(x, obj, state.rng, config)
    state.offer_best(state.sources[i])
    return state


def onlooker_phase(state, problem, config):
    if config.variant == "ioabc":
        return onlooker_phase_gss(state, problem, config)
    return onlooker_phase_abc(state, problem, config)


def _memorize_best(state):
    state.offer_best(min(state.sources, key=lambda s: s.objective))


def run(problem, config=None, seed=0, target_error=None, max_evaluations=DEFAULT_BUDGET,
        record_trajectory=False):
    """Optimise ``problem`` until the best is within ``target_error`` of its optimum or the budget is spent.

    ``target_error`` defaults to ``problem.acceptable_error``. The target is
    checked whenever the best-so-far improves, so ``evaluations`` counts the
    calls spent up to the first acceptable solution.
    """
    if config is None:
        config = VariantConfig()
    if target_error is None:
        target_error = problem.acceptable_error
    rng = RngStream(seed)
    state = initialize(problem, config, rng, max_evaluations)
    state.target = (problem.optimum_value, target_error)
    state.reached = abs(state.best.objective - problem.optimum_value) <= target_error
    trajectory = [state.best.objective] if record_trajectory else None

    while not state.halted:
        for phase in (employed_phase, onlooker_phase, scout_phase):
            phase(state, problem, config)
            if state.halted:
                break
        _memorize_best(state)
        state.cycles += 1
        if trajectory is not None:
            trajectory.append(state.best.objective)

    err = abs(state.best.objective - problem.optimum_value)
    return RunResult(
        problem=problem.name,
        variant=config.variant,
        seed=rng.seed,
        success=bool(err <= target_error),
        best_objective=state.best.objective,
        error=err,
        evaluations=state.budget.used,
        cycles=state.cycles,
        best_position=state.best.position.copy(),
        trajectory=trajectory,
    )


__all__ = [
    "VARIANTS", "VariantConfig", "ColonyState", "RunResult", "classic_fitness",
    "fitness_transform", "selection_probabilities", "roulette", "initialize",
    "neighbour_candidate", "employed_phase", "onlooker_phase_abc", "gss_search",
    "onlooker_phase_gss", "onlooker_phase", "scout_phase", "run",
]
