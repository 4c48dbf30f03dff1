import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest
from scipy.stats import chisquare

from beecolony import colony as col
from beecolony.benchmarks import ProblemSpec, get_problem
from beecolony.core import Bounds, EvaluationBudget, FoodSource, RngStream
from beecolony.exceptions import BudgetExhausted, DegenerateFitness, UnknownVariant
from conftest import ScriptedRng


def make_state(positions, problem, rng, budget=1000, fitness=None):
    sources = []
    for n, x in enumerate(positions):
        x = np.array(x, dtype=float)
        obj = problem(x)
        fit = col.classic_fitness(obj) if fitness is None else fitness[n]
        sources.append(FoodSource(x, obj, fit))
    best = min(sources, key=lambda s: s.objective).copy()
    return col.ColonyState(sources, best, EvaluationBudget(budget), rng)


class TestConfig:
    def test_defaults(self):
        c = col.VariantConfig()
        assert (c.variant, c.colony_size, c.n_sources, c.limit) == ("ioabc", 60, 30, 1500)
        assert c.fitness_mode == "printed"
        assert col.VariantConfig("ABC").fitness_mode == "classic"

    @pytest.mark.parametrize("kwargs", [
        {"colony_size": 5}, {"colony_size": 2}, {"limit": 0}, {"meabc_c": 0.0},
        {"gss_a": 1.0, "gss_b": -1.0}, {"gss_phi_range": (0.0, 0.5)}, {"gss_tolerance": 0.0},
        {"fitness_mode": "other"},
    ])
    def test_rejects(self, kwargs):
        with pytest.raises((ValueError, TypeError)):
            col.VariantConfig(**kwargs)

    def test_unknown_variant(self):
        with pytest.raises(UnknownVariant):
            col.VariantConfig("pso")


class TestFitness:
    def test_forced_phi(self):
        assert col.fitness_transform(1.0, ScriptedRng([1.0]), "printed") == pytest.approx(1 / 3)
        assert col.fitness_transform(1.0, ScriptedRng([0.0]), "printed") == pytest.approx(2.0)

    def test_negative_objective_swaps_weights(self):
        # f = -1: 1/|2f+1| = 1, 1 + |1/f| = 2
        assert col.fitness_transform(-1.0, ScriptedRng([0.25]), "printed") == pytest.approx(0.75 * 1 + 0.25 * 2)

    def test_zero_objective_guard(self):
        phi = 0.5
        value = col.fitness_transform(0.0, ScriptedRng([phi]), "printed")
        assert value == pytest.approx(phi * 1 + (1 - phi) * (1 + 1e12))
        assert col.fitness_transform(0.0, ScriptedRng([0.0]), "printed") == col.FITNESS_CAP

    def test_pole_at_minus_half_is_finite(self):
        assert math.isfinite(col.fitness_transform(-0.5, ScriptedRng([0.3]), "printed"))

    def test_classic_draws_nothing(self):
        rng = ScriptedRng([])
        assert col.fitness_transform(3.0, rng, "classic") == 0.25
        assert col.fitness_transform(-3.0, rng, "classic") == 4.0
        assert rng.calls == 0

    @given(st.floats(-1e9, 1e9, allow_nan=False), st.floats(0, 1, exclude_max=True))
    def test_always_positive_finite(self, f, u):
        value = col.fitness_transform(f, ScriptedRng([u]), "printed")
        assert 0 < value <= col.FITNESS_CAP


class TestSelection:
    def test_equal(self):
        np.testing.assert_allclose(col.selection_probabilities([2.0] * 4, "abc"), [0.25] * 4)
        np.testing.assert_allclose(col.selection_probabilities([2.0] * 4, "ioabc", ScriptedRng([0.7])), [0.25] * 4)

    @pytest.mark.parametrize("phi", [0.0, 1.0])
    def test_two_sources(self, phi):
        p = col.selection_probabilities([3.0, 1.0], "ioabc", ScriptedRng([phi]))
        np.testing.assert_allclose(p, [0.75, 0.25])

    def test_blend_midpoint(self):
        p = col.selection_probabilities([3.0, 1.0, 1.0], "ioabc", ScriptedRng([0.5]))
        raw = 0.5 * np.array([1, 1 / 3, 1 / 3]) + 0.5 * np.array([0.6, 0.2, 0.2])
        np.testing.assert_allclose(p, raw / raw.sum())

    @settings(max_examples=100)
    @given(st.lists(st.floats(1e-6, 1e6), min_size=2, max_size=30), st.floats(1e-3, 1e3),
           st.floats(0, 1, exclude_max=True))
    def test_sums_to_one_and_scale_invariant(self, fit, scale, u):
        p = col.selection_probabilities(fit, "ioabc", ScriptedRng([u]))
        q = col.selection_probabilities(np.array(fit) * scale, "ioabc", ScriptedRng([u]))
        assert p.sum() == pytest.approx(1.0)
        assert np.all(p >= 0)
        np.testing.assert_allclose(p, q, rtol=1e-9)

    @pytest.mark.parametrize("fit", [[0.0, 0.0], [1.0, math.inf], [math.nan, 1.0]])
    def test_degenerate(self, fit):
        with pytest.raises(DegenerateFitness):
            col.selection_probabilities(fit, "abc")


class TestRoulette:
    def test_point_mass(self):
        for u in (0.0, 0.5, 0.999999):
            assert col.roulette([0.0, 1.0, 0.0], ScriptedRng([u])) == 1
            assert col.roulette([1.0, 0.0], ScriptedRng([u])) == 0

    def test_frequencies(self):
        p = np.array([0.1, 0.2, 0.3, 0.4])
        rng = RngStream(42)
        counts = np.bincount([col.roulette(p, rng) for _ in range(100_000)], minlength=4)
        assert chisquare(counts, p * 100_000).pvalue > 1e-3


class TestInitialize:
    def test_branin_counts(self):
        p = get_problem("branin")
        state = col.initialize(p, col.VariantConfig("abc"), 1)
        assert state.budget.used == 30 and len(state.sources) == 30
        assert all(p.bounds.contains(s.position) and s.trials == 0 for s in state.sources)
        assert state.best.objective == min(s.objective for s in state.sources)

    def test_deterministic(self):
        p = get_problem("kowalik")
        a = col.initialize(p, col.VariantConfig(), 9)
        b = col.initialize(p, col.VariantConfig(), 9)
        np.testing.assert_array_equal([s.position for s in a.sources], [s.position for s in b.sources])
        assert [s.fitness for s in a.sources] == [s.fitness for s in b.sources]

    def test_budget_too_small(self, sphere2):
        with pytest.raises(BudgetExhausted):
            col.initialize(sphere2, col.VariantConfig(colony_size=10), 0, 4)


class TestEmployed:
    def test_duplicates_only_accumulate_trials(self, sphere2):
        cfg = col.VariantConfig("abc", colony_size=8)
        state = make_state([[1.0, 1.0]] * 4, sphere2, RngStream(0))
        col.employed_phase(state, sphere2, cfg)
        assert [s.trials for s in state.sources] == [1, 1, 1, 1]
        assert state.budget.used == 4

    def test_candidate_by_hand(self, sphere2):
        cfg = col.VariantConfig("abc", colony_size=4)
        # k <- 0 (shifted past i=0 to 1), j <- int(0.6*2)=1, phi <- -1 + 2*0.75 = 0.5
        state = make_state([[1.0, 2.0], [3.0, -1.0]], sphere2, ScriptedRng([0.0, 0.6, 0.75]))
        cand = col.neighbour_candidate(state, sphere2, cfg, 0)
        np.testing.assert_allclose(cand, [1.0, 2.0 + 0.5 * (2.0 - -1.0)])

    def test_meabc_candidate_by_hand(self, sphere2):
        cfg = col.VariantConfig("meabc", colony_size=4)
        # i=1: k=0, j=0, phi=-0.5, psi=0.75; best is source 0 at (1, 2)
        state = make_state([[1.0, 2.0], [3.0, -1.0]], sphere2, ScriptedRng([0.0, 0.1, 0.25, 0.5]))
        cand = col.neighbour_candidate(state, sphere2, cfg, 1)
        expected = 3.0 - 0.5 * (3.0 - 1.0) + 0.75 * (1.0 - 3.0)
        np.testing.assert_allclose(cand, [expected, -1.0])

    def test_candidate_clamped(self, sphere2):
        cfg = col.VariantConfig("abc", colony_size=4)
        state = make_state([[4.9, 0.0], [-5.0, 0.0]], sphere2, ScriptedRng([0.0, 0.0, 0.999]))
        assert col.neighbour_candidate(state, sphere2, cfg, 0)[0] == 5.0

    def test_improvement_resets_trials(self, sphere2):
        cfg = col.VariantConfig("abc", colony_size=4)
        state = make_state([[1.0, 2.0], [1.0, 0.0]], sphere2, ScriptedRng([0.0, 0.6, 0.25, 0.9, 0.9, 0.5]))
        state.sources[0].trials = 7
        col.employed_phase(state, sphere2, cfg)
        # source 0: coordinate 1 moves 2 -> 2 - 0.5*2 = 1
        np.testing.assert_allclose(state.sources[0].position, [1.0, 1.0])
        assert state.sources[0].trials == 0
        assert state.sources[0].fitness == col.classic_fitness(2.0)

    def test_greedy_uses_objective_not_fitness(self, sphere2):
        cfg = col.VariantConfig("ioabc", colony_size=4)
        state = make_state([[1.0, 0.0], [2.0, 0.0]], sphere2, ScriptedRng([0.5]), fitness=[1.0, 1.0])
        assert not col._greedy(state, 0, np.array([1.0, 0.0]), 1.0, cfg)
        assert state.sources[0].trials == 1
        assert col._greedy(state, 0, np.array([0.5, 0.0]), 0.25, cfg)


def test_onlookers_follow_point_mass(sphere2):
    cfg = col.VariantConfig("abc", colony_size=6)
    state = make_state([[1.0, 1.0]] * 3, sphere2, RngStream(5), fitness=[1.0, 0.0, 0.0])
    col.onlooker_phase_abc(state, sphere2, cfg)
    assert [s.trials for s in state.sources] == [3, 0, 0]
    assert state.budget.used == 3


class TestGss:
    def one_step_config(self, **kw):
        return col.VariantConfig("ioabc", colony_size=4, gss_max_iters=1, **kw)

    def test_first_probes(self, sphere2):
        # k <- int(0.0*2)=0, j <- 0, phi <- 0.55 + 0.1*0.5 = 0.6
        state = make_state([[1.0, 0.0], [2.0, 0.0]], sphere2, ScriptedRng([0.0, 0.0, 0.5]))
        widths = []
        pos, obj = col.gss_search(state, sphere2, self.one_step_config(), 1, widths)
        # f1 = 1.2 - 2.4*0.6 = -0.24, f2 = +0.24, step = 2 - 1 = 1
        np.testing.assert_allclose(pos, [1.76, 0.0])
        assert obj == pytest.approx(1.76**2)
        assert widths == [pytest.approx(1.44)]
        assert state.budget.used == 2

    def test_zero_step_when_peer_is_self(self, sphere2):
        state = make_state([[1.0, 0.0], [2.0, 0.0]], sphere2, ScriptedRng([0.5, 0.0, 0.5]))
        pos, obj = col.gss_search(state, sphere2, self.one_step_config(), 1)
        np.testing.assert_array_equal(pos, [2.0, 0.0])
        assert not col._greedy(state, 1, pos, obj, self.one_step_config())

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32))
    def test_contraction_envelope(self, seed):
        cfg = col.VariantConfig("ioabc", colony_size=4)
        rng = RngStream(seed)
        state = make_state(rng.random((2, 2)) * 10 - 5, state_problem(), rng)
        widths = []
        col.gss_search(state, state_problem(), cfg, 0, widths)
        assert 10 <= len(widths) <= 13
        for t, w in enumerate(widths, start=1):
            assert 2.4 * 0.55**t - 1e-12 <= w <= 2.4 * 0.65**t + 1e-12
        assert widths[-1] < cfg.gss_tolerance and (len(widths) == 1 or widths[-2] >= cfg.gss_tolerance)

    def test_budget_cut(self, sphere2):
        cfg = col.VariantConfig("ioabc", colony_size=4)
        state = make_state([[1.0, 0.0], [2.0, 0.0]], sphere2, RngStream(1), budget=5)
        pos, _ = col.gss_search(state, sphere2, cfg, 0)
        assert state.budget.used == 5 and pos is not None


def state_problem():
    return ProblemSpec("s", "s", 2, Bounds([-5, -5], [5, 5]),
                       lambda x: float(np.sum(np.sin(3 * x) + x**2)), 0.0, 1e-8)


class TestScout:
    def test_noop_below_limit(self, sphere2):
        cfg = col.VariantConfig("abc", colony_size=4, limit=5)
        rng = ScriptedRng([])
        state = make_state([[1.0, 1.0], [2.0, 2.0]], sphere2, rng)
        state.sources[1].trials = 4
        col.scout_phase(state, sphere2, cfg)
        assert rng.calls == 0 and state.budget.used == 0

    def test_tie_goes_to_lowest_index(self, sphere2):
        cfg = col.VariantConfig("abc", colony_size=6, limit=5)
        state = make_state([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]], sphere2, ScriptedRng([0.5, 0.5]))
        state.sources[1].trials = state.sources[2].trials = 6
        col.scout_phase(state, sphere2, cfg)
        np.testing.assert_array_equal(state.sources[1].position, [0.0, 0.0])
        assert state.sources[1].trials == 0
        np.testing.assert_array_equal(state.sources[2].position, [3.0, 3.0])
        assert state.best.objective == 0.0

    def test_one_scout_per_cycle(self, sphere2):
        cfg = col.VariantConfig("abc", colony_size=4, limit=1)
        state = make_state([[1.0, 1.0], [2.0, 2.0]], sphere2, RngStream(0))
        for s in state.sources:
            s.trials = 3
        col.scout_phase(state, sphere2, cfg)
        assert [s.trials for s in state.sources] == [0, 3]
        assert sphere2.bounds.contains(state.sources[0].position)


class TestRun:
    def test_infinite_tolerance_stops_after_init(self, sphere2):
        res = col.run(sphere2, col.VariantConfig(colony_size=10), seed=0, target_error=math.inf)
        assert (res.evaluations, res.cycles, res.success) == (5, 0, True)

    def test_budget_equal_to_sources(self, sphere2):
        res = col.run(sphere2, col.VariantConfig(colony_size=10), seed=0, max_evaluations=5)
        assert (res.evaluations, res.cycles) == (5, 0)

    @pytest.mark.parametrize("variant", col.VARIANTS)
    def test_budget_is_exact(self, variant):
        calls = []

        def counted(x):
            calls.append(1)
            return float(np.sum(np.abs(x))) + 1.0

        p = ProblemSpec("c", "c", 3, Bounds([-1] * 3, [1] * 3), counted, 0.0, 1e-9)
        res = col.run(p, col.VariantConfig(variant, colony_size=10, limit=20), seed=3, max_evaluations=997)
        assert res.evaluations == 997 == len(calls)
        assert not res.success

    @pytest.mark.parametrize("variant", col.VARIANTS)
    def test_monotone_trajectory_and_invariants(self, variant):
        p = get_problem("six_hump_camel")
        res = col.run(p, col.VariantConfig(variant, colony_size=20, limit=30), seed=4,
                      max_evaluations=5000, target_error=0.0, record_trajectory=True)
        assert all(b <= a for a, b in zip(res.trajectory, res.trajectory[1:]))
        assert len(res.trajectory) == res.cycles + 1
        assert p.bounds.contains(res.best_position)
        assert p(res.best_position) == res.best_objective

    @pytest.mark.parametrize("variant", col.VARIANTS)
    def test_reproducible(self, variant):
        p = get_problem("branin")
        a = col.run(p, col.VariantConfig(variant), seed=11, max_evaluations=3000)
        b = col.run(p, col.VariantConfig(variant), seed=11, max_evaluations=3000)
        assert a.to_record() == b.to_record()
        np.testing.assert_array_equal(a.best_position, b.best_position)

    def test_solves_easy_problem(self):
        # the tabulated optimum is rounded to 4 digits, so ask for 1e-4 here
        res = col.run(get_problem("six_hump_camel"), seed=0, target_error=1e-4)
        assert res.success and res.evaluations < 200_000
        assert res.best_objective == pytest.approx(-1.0316, abs=1e-4)

    def test_lattice_respected(self):
        res = col.run(get_problem("compression_spring"), seed=0, max_evaluations=3000)
        x = res.best_position
        assert x[0] == round(x[0])
        assert round((x[2] - 0.207) * 1000, 6) == round((x[2] - 0.207) * 1000)
