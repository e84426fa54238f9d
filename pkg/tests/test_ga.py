import numpy as np
import pytest

from prefloop.complaints import ComplaintLedger, SpecificDiscontent, record
from prefloop.errors import PrefLoopError
from prefloop.fitness import FitnessContext, FitnessParams
from prefloop.ga import (
    GAConfig,
    Population,
    adapt_preferences,
    crossover,
    init_population,
    mutate,
    select,
    selection_probabilities,
)
from prefloop.planner import best_route, enumerate_routes
from prefloop.prefs import EPS_SUM, cos_sim, make_preference

from conftest import grid_search_best


def _valid(row):
    return row.min() >= 0.0 and row.max() <= 1.0 and abs(row.sum() - 1.0) <= EPS_SUM


# ---- initialization ----


def test_init_anchors_previous_preference(equal_prefs):
    rng = np.random.default_rng(0)
    pop = init_population(equal_prefs, GAConfig(population_size=2), rng)
    assert tuple(pop.matrix[0]) == equal_prefs.weights
    assert len(pop) == 2
    assert _valid(pop.matrix[1])


def test_init_deterministic_given_seed(equal_prefs):
    a = init_population(equal_prefs, GAConfig(), np.random.default_rng(123))
    b = init_population(equal_prefs, GAConfig(), np.random.default_rng(123))
    assert np.array_equal(a.matrix, b.matrix)


def test_uniform_simplex_sampler_is_unbiased(equal_prefs):
    # Monte-Carlo check: coordinate means of the flat Dirichlet are 1/3
    rng = np.random.default_rng(42)
    pop = init_population(equal_prefs, GAConfig(population_size=10_001), rng)
    means = pop.matrix[1:].mean(axis=0)
    assert np.all(np.abs(means - 1.0 / 3.0) < 0.02)


# ---- selection ----


def test_selection_probabilities_shift_by_minimum():
    probs = selection_probabilities(np.array([3.0, 2.0, 1.0]))
    assert probs == pytest.approx([2 / 3, 1 / 3, 0.0], abs=1e-12)
    probs = selection_probabilities(np.array([2.0, 1.0, 1.0]))
    assert probs == pytest.approx([1.0, 0.0, 0.0], abs=1e-12)


def test_selection_probabilities_degenerate_uniform():
    probs = selection_probabilities(np.array([5.0, 5.0, 5.0, 5.0]))
    assert probs == pytest.approx([0.25] * 4, abs=1e-12)


def test_select_draws_only_existing_individuals():
    rng = np.random.default_rng(11)
    matrix = rng.dirichlet(np.ones(3), size=8)
    pop = Population(matrix=matrix, fitnesses=rng.random(8))
    chosen = select(pop, rng)
    rows = {tuple(r) for r in matrix}
    assert all(tuple(r) in rows for r in chosen.matrix)
    assert len(chosen) == len(pop)


def test_select_requires_fitnesses():
    pop = Population(matrix=np.full((3, 3), 1 / 3))
    with pytest.raises(PrefLoopError):
        select(pop, np.random.default_rng(0))


def test_select_respects_probabilities_statistically():
    rng = np.random.default_rng(12)
    matrix = np.array([[1.0, 0, 0], [0, 1.0, 0], [0, 0, 1.0]])
    pop = Population(matrix=matrix, fitnesses=np.array([3.0, 2.0, 1.0]))
    counts = np.zeros(3)
    for _ in range(200):
        chosen = select(pop, rng)
        counts += chosen.matrix.sum(axis=0)
    freq = counts / counts.sum()
    assert freq == pytest.approx([2 / 3, 1 / 3, 0.0], abs=0.03)


# ---- crossover ----


def test_crossover_full_cut_swaps_parents():
    p1 = make_preference([0.5, 0.3, 0.2])
    p2 = make_preference([0.2, 0.3, 0.5])
    c1, c2 = crossover(p1, p2, k=3)
    assert c1.weights == p2.weights
    assert c2.weights == p1.weights


def test_crossover_revert_restores_parents():
    p1 = make_preference([0.5, 0.3, 0.2])
    p2 = make_preference([0.2, 0.3, 0.5])
    # cut after the first gene makes the child sums 0.7 and 1.3
    c1, c2 = crossover(p1, p2, k=1, repair="revert")
    assert c1.weights == p1.weights
    assert c2.weights == p2.weights


def test_crossover_normalize_rescales_children():
    p1 = make_preference([0.5, 0.3, 0.2])
    p2 = make_preference([0.2, 0.3, 0.5])
    c1, c2 = crossover(p1, p2, k=1, repair="normalize")
    expected1 = tuple(x / 0.7 for x in (0.2, 0.3, 0.2))
    expected2 = tuple(x / 1.3 for x in (0.5, 0.3, 0.5))
    assert c1.weights == pytest.approx(expected1, abs=1e-12)
    assert c2.weights == pytest.approx(expected2, abs=1e-12)
    assert abs(sum(c1.weights) - 1.0) <= EPS_SUM
    assert abs(sum(c2.weights) - 1.0) <= EPS_SUM


def test_crossover_rejects_bad_cut():
    p = make_preference([0.5, 0.3, 0.2])
    with pytest.raises(PrefLoopError):
        crossover(p, p, k=0)


# ---- mutation ----


def test_mutate_zero_step_is_identity():
    p = make_preference([0.4, 0.35, 0.25])
    assert mutate(p, 2, 0.0).weights == p.weights


def test_mutate_redistributes_step():
    p = make_preference([0.333, 0.333, 0.334])
    out = mutate(p, 1, 0.06)
    expected = (0.333 + 0.06, 0.333 - 0.03, 0.334 - 0.03)
    assert out.weights == pytest.approx(expected, abs=1e-12)


def test_mutate_trims_step_to_smallest_gap():
    p = make_preference([0.01, 0.495, 0.495])
    out = mutate(p, 2, 0.05)
    # raw update would push w1 negative; trimmed delta is min gap 0.01
    expected = (0.01 - 0.005, 0.495 + 0.01, 0.495 - 0.005)
    assert out.weights == pytest.approx(expected, abs=1e-12)


def test_mutate_negative_step_trims_symmetrically():
    p = make_preference([0.01, 0.495, 0.495])
    out = mutate(p, 1, -0.05)
    assert _valid(np.array(out.weights))


def test_mutate_rejects_oversized_step():
    p = make_preference([0.4, 0.35, 0.25])
    with pytest.raises(PrefLoopError):
        mutate(p, 1, 0.2, delta_max=0.1)


# ---- full adaptation ----


def _bumpiness_ctx(scenario1, equal_prefs, route_index=2):
    route = enumerate_routes(scenario1)[route_index]
    ledger = record(ComplaintLedger(), SpecificDiscontent(route=route, attr=1), scenario1)
    return FitnessContext(graph=scenario1, ledger=ledger, p_prev=equal_prefs)


def test_no_complaint_fixpoint(scenario1, equal_prefs):
    ctx = FitnessContext(graph=scenario1, ledger=ComplaintLedger(), p_prev=equal_prefs)
    winner, report = adapt_preferences(ctx, GAConfig(seed=5))
    assert cos_sim(winner, equal_prefs) >= 0.999
    assert report.generations >= 1


def test_adaptation_bit_reproducible(scenario1, equal_prefs):
    ctx = _bumpiness_ctx(scenario1, equal_prefs)
    w1, r1 = adapt_preferences(ctx, GAConfig(seed=77))
    w2, r2 = adapt_preferences(ctx, GAConfig(seed=77))
    assert w1.weights == w2.weights
    assert r1.best_fitness_trace == r2.best_fitness_trace


def test_adaptation_raises_complained_attribute(scenario1, equal_prefs):
    ctx = _bumpiness_ctx(scenario1, equal_prefs)
    winner, _ = adapt_preferences(ctx, GAConfig(seed=6))
    assert winner.weight(1) > 0.334
    states = ctx.ledger.complained_states
    assert not states.intersection(best_route(scenario1, winner).edge_ids)


def test_adaptation_avoids_marked_route(scenario1):
    # complain about the rough route while efficiency-dominant: the winner
    # must route around the marked edges even though that costs efficiency
    p_prev = make_preference([0.05, 0.9, 0.05])
    route1 = enumerate_routes(scenario1)[0]
    assert best_route(scenario1, p_prev).index == 0
    ledger = record(ComplaintLedger(), SpecificDiscontent(route=route1, attr=1), scenario1)
    ctx = FitnessContext(graph=scenario1, ledger=ledger, p_prev=p_prev)
    winner, report = adapt_preferences(ctx, GAConfig(seed=13))
    assert not ledger.complained_states.intersection(best_route(scenario1, winner).edge_ids)
    assert report.winner_components["f2"] == 0.0


def test_elitism_makes_trace_monotone(scenario1, equal_prefs):
    ctx = _bumpiness_ctx(scenario1, equal_prefs)
    _, report = adapt_preferences(ctx, GAConfig(seed=21, elitism=True))
    trace = report.best_fitness_trace
    assert all(trace[i] <= trace[i + 1] + 1e-15 for i in range(len(trace) - 1))


def test_every_generation_stays_on_simplex(scenario1, equal_prefs):
    # spot check via the winner and a fresh run with tiny population
    ctx = _bumpiness_ctx(scenario1, equal_prefs)
    for seed in range(5):
        winner, _ = adapt_preferences(ctx, GAConfig(seed=seed, population_size=8, max_generations=40))
        assert _valid(np.array(winner.weights))


def test_ga_tracks_grid_oracle(scenario1, equal_prefs):
    ctx = _bumpiness_ctx(scenario1, equal_prefs)
    winner, report = adapt_preferences(ctx, GAConfig(seed=3))
    _, oracle_fitness = grid_search_best(ctx, step=0.01)
    assert report.winner_components["fitness"] >= oracle_fitness - 0.01


def test_config_validation():
    with pytest.raises(PrefLoopError):
        GAConfig(population_size=1)
    with pytest.raises(PrefLoopError):
        GAConfig(crossover_rate=1.5)
    with pytest.raises(PrefLoopError):
        GAConfig(delta_max=0.0)
    with pytest.raises(PrefLoopError):
        GAConfig(crossover_repair="clamp")
