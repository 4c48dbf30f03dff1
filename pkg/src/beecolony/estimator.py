"""Scikit-learn style front end for the colony engine."""

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .benchmarks import as_problem
from .colony import DEFAULT_BUDGET, VariantConfig, run
from .validation import check_scalar, check_seed


class BeeColonyOptimizer(BaseEstimator):
    """Minimise a box-bounded objective with ABC, MeABC or IoABC.

    Parameters mirror :class:`~beecolony.colony.VariantConfig` plus the run
    controls. ``fit`` accepts a registry name, a ``ProblemSpec`` or a callable
    together with ``bounds``.

    Attributes set by ``fit``: ``best_position_``, ``best_objective_``,
    ``n_evaluations_``, ``n_cycles_``, ``success_``, ``seed_``, ``result_``.

    Examples
    --------
    >>> opt = BeeColonyOptimizer(variant="ioabc", random_state=0).fit("branin")
    >>> round(opt.best_objective_, 3)
    0.398
    """

    def __init__(self, variant="ioabc", colony_size=60, limit=1500,
                 max_evaluations=DEFAULT_BUDGET, target_error=None, meabc_c=1.5,
                 gss_a=-1.2, gss_b=1.2, gss_phi_range=(0.55, 0.65), gss_max_iters=20,
                 gss_tolerance=1e-2, fitness_mode=None, random_state=None):
        self.variant = variant
        self.colony_size = colony_size
        self.limit = limit
        self.max_evaluations = max_evaluations
        self.target_error = target_error
        self.meabc_c = meabc_c
        self.gss_a = gss_a
        self.gss_b = gss_b
        self.gss_phi_range = gss_phi_range
        self.gss_max_iters = gss_max_iters
        self.gss_tolerance = gss_tolerance
        self.fitness_mode = fitness_mode
        self.random_state = random_state

    def _config(self):
        return VariantConfig(
            variant=self.variant, colony_size=self.colony_size, limit=self.limit,
            meabc_c=self.meabc_c, gss_a=self.gss_a, gss_b=self.gss_b,
            gss_phi_range=tuple(self.gss_phi_range), gss_max_iters=self.gss_max_iters,
            gss_tolerance=self.gss_tolerance, fitness_mode=self.fitness_mode,
        )

    def fit(self, problem, bounds=None, optimum_value=None):
        config = self._config()
        check_scalar(self.max_evaluations, "max_evaluations", int, min_val=config.n_sources)
        problem = as_problem(problem, bounds=bounds, optimum_value=optimum_value)
        self.problem_ = problem
        self.seed_ = check_seed(self.random_state)
        self.result_ = run(problem, config, seed=self.seed_, target_error=self.target_error,
                           max_evaluations=self.max_evaluations)
        self.best_position_ = self.result_.best_position
        self.best_objective_ = self.result_.best_objective
        self.n_evaluations_ = self.result_.evaluations
        self.n_cycles_ = self.result_.cycles
        self.success_ = self.result_.success
        return self

    def score(self):
        """Negated best objective, so that larger is better as scikit-learn expects."""
        check_is_fitted(self, "best_objective_")
        return -self.best_objective_
