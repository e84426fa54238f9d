"""Shared fixtures and independent oracles for the test suite."""

import json

import numpy as np
import pytest

from prefloop.bundled import get_map
from prefloop.fitness import FitnessContext, fitness
from prefloop.mapmodel import load_map
from prefloop.prefs import PreferenceVector, make_preference


@pytest.fixture(scope="session")
def scenario1():
    return get_map("scenario1")


@pytest.fixture(scope="session")
def scenario_maps():
    return [get_map(n) for n in ("scenario1", "scenario2", "scenario3")]


@pytest.fixture
def equal_prefs():
    return make_preference([0.333, 0.333, 0.334])


def simplex_grid(step: float = 0.01):
    """All points of the n=3 probability simplex lattice with the given step."""
    n = round(1.0 / step)
    points = []
    for i in range(n + 1):
        for j in range(n + 1 - i):
            points.append((i * step, j * step, (n - i - j) * step))
    return points


def grid_search_best(ctx: FitnessContext, step: float = 0.01):
    """Exhaustive fitness maximization over the simplex grid (GA oracle)."""
    best_p, best_f = None, -np.inf
    for point in simplex_grid(step):
        p = PreferenceVector(point)
        f = fitness(p, ctx)
        if f > best_f:
            best_p, best_f = p, f
    return best_p, best_f


def build_map(name, chains, start="start", goal="goal", prefix="t"):
    """Parallel-chain map builder for tests.

    chains: list of routes; each route is a list of
    (length, surface, greenery, noisy) edge specs.
    """
    nodes = [{"id": start, "x": 0.0, "y": 0.0}, {"id": goal, "x": 10.0, "y": 0.0}]
    edges = []
    for ri, chain in enumerate(chains):
        letter = chr(ord("a") + ri)
        prev = start
        for ei, (length, surface, greenery, noisy) in enumerate(chain):
            last = ei == len(chain) - 1
            nxt = goal if last else f"{letter}{ei + 1}"
            if not last:
                nodes.append({"id": nxt, "x": 1.0 + ei, "y": float(ri)})
            edges.append(
                {
                    "id": f"{prefix}{letter}{ei}",
                    "from": prev,
                    "to": nxt,
                    "length": length,
                    "surface": surface,
                    "greenery": greenery,
                    "noisy": noisy,
                }
            )
            prev = nxt
    doc = {"name": name, "nodes": nodes, "edges": edges, "start": start, "goal": goal}
    return load_map(json.dumps(doc))


def random_equal_length_map(rng: np.random.Generator, prefix="Q"):
    """Random parallel-chain map where every start->goal route has the same
    total length.

    Equal lengths keep the efficiency utility constant across routes, the
    regime where the disutility-cost planner provably agrees with the
    exhaustive argmax (the per-route efficiency normalization cannot split
    them). Disjoint chains also rule out weaving paths of other lengths.
    """
    total = int(rng.integers(3, 7))
    n_chains = int(rng.integers(2, 6))
    surfaces = ("rough_stone", "fine_stone", "smooth")
    greens = ("none", "bushes", "trees")
    chains = []
    interior_budget = 10  # at most 12 nodes including start/goal
    for _ in range(n_chains):
        n_edges = int(rng.integers(1, min(4, total, interior_budget + 2) + 1))
        interior_budget -= n_edges - 1
        cuts = sorted(rng.choice(range(1, total), size=n_edges - 1, replace=False)) if n_edges > 1 else []
        lengths = np.diff([0, *cuts, total])
        chains.append(
            [
                (
                    int(length),
                    surfaces[int(rng.integers(0, 3))],
                    greens[int(rng.integers(0, 3))],
                    bool(rng.integers(0, 2)),
                )
                for length in lengths
            ]
        )
        if interior_budget <= 0:
            break
    return build_map(f"equal-{prefix}", chains, prefix=prefix)
