import json

import pytest

from prefloop.errors import PrefLoopError
from prefloop.mapmodel import (
    Edge,
    edge_utility,
    load_map,
    route_utilities,
    route_utility,
)
from prefloop.planner import enumerate_routes
from prefloop.prefs import make_preference

from conftest import build_map


def _edge(surface="smooth", greenery="trees", noisy=False):
    return Edge(id="e", from_node="a", to_node="b", length=1, surface=surface, greenery=greenery, noisy=noisy)


def test_bundled_scenario1_has_four_routes(scenario1):
    assert len(enumerate_routes(scenario1)) == 4


def test_load_map_rejects_missing_goal(scenario1):
    doc = {
        "name": "broken",
        "nodes": [{"id": "s", "x": 0, "y": 0}],
        "edges": [{"id": "e", "from": "s", "to": "g", "length": 1,
                   "surface": "smooth", "greenery": "none", "noisy": False}],
        "start": "s",
        "goal": "g",
    }
    with pytest.raises(PrefLoopError) as exc:
        load_map(json.dumps(doc))
    assert exc.value.code == "SCHEMA_VIOLATION"


def test_load_map_rejects_duplicate_edge_ids():
    doc = {
        "name": "dup",
        "nodes": [{"id": "s", "x": 0, "y": 0}, {"id": "g", "x": 1, "y": 0}],
        "edges": [
            {"id": "e", "from": "s", "to": "g", "length": 1, "surface": "smooth", "greenery": "none", "noisy": False},
            {"id": "e", "from": "s", "to": "g", "length": 2, "surface": "smooth", "greenery": "none", "noisy": False},
        ],
        "start": "s",
        "goal": "g",
    }
    with pytest.raises(PrefLoopError) as exc:
        load_map(json.dumps(doc))
    assert exc.value.code == "SCHEMA_VIOLATION"


def test_load_map_rejects_invalid_json():
    with pytest.raises(PrefLoopError) as exc:
        load_map("{not json")
    assert exc.value.code == "PARSE_ERROR"


def test_load_map_rejects_disconnected():
    doc = {
        "name": "split",
        "nodes": [{"id": "s", "x": 0, "y": 0}, {"id": "m", "x": 1, "y": 0}, {"id": "g", "x": 2, "y": 0}],
        "edges": [{"id": "e", "from": "s", "to": "m", "length": 1,
                   "surface": "smooth", "greenery": "none", "noisy": False}],
        "start": "s",
        "goal": "g",
    }
    with pytest.raises(PrefLoopError) as exc:
        load_map(json.dumps(doc))
    assert exc.value.code == "DISCONNECTED_MAP"


def test_edge_utility_surface_table():
    assert edge_utility(_edge(surface="smooth"), 1) == 1.0
    assert edge_utility(_edge(surface="fine_stone"), 1) == 0.6
    assert edge_utility(_edge(surface="rough_stone"), 1) == 0.2


def test_edge_utility_aesthetics():
    assert edge_utility(_edge(greenery="trees", noisy=False), 3) == 1.0
    # 0.3 base minus 0.3 noise deduction clamps at zero
    assert edge_utility(_edge(greenery="none", noisy=True), 3) == 0.0
    assert edge_utility(_edge(greenery="bushes", noisy=True), 3) == pytest.approx(0.3)


def test_edge_utility_rejects_efficiency():
    with pytest.raises(PrefLoopError) as exc:
        edge_utility(_edge(), 2)
    assert exc.value.code == "EFFICIENCY_IS_ROUTE_LEVEL"


def test_route_efficiency_ratios():
    graph = build_map(
        "two",
        [
            [(2, "smooth", "trees", False)],
            [(4, "rough_stone", "none", True)],
        ],
    )
    short, long_ = enumerate_routes(graph)
    assert short.utilities.value(2) == 1.0
    assert long_.utilities.value(2) == 0.5


def test_perfect_route_scores_one_everywhere():
    graph = build_map("perfect", [[(3, "smooth", "trees", False), (2, "smooth", "trees", False)]])
    (route,) = enumerate_routes(graph)
    assert route.utilities.u == (1.0, 1.0, 1.0)
    for p in ([1, 0, 0], [0, 1, 0], [0.2, 0.3, 0.5]):
        assert route_utility(graph, route, make_preference(p)) == pytest.approx(1.0, abs=1e-12)


def test_route_utilities_subdivision_invariant():
    whole = build_map("w", [[(4, "fine_stone", "bushes", True)]])
    split = build_map("s", [[(1, "fine_stone", "bushes", True), (3, "fine_stone", "bushes", True)]])
    (r1,) = enumerate_routes(whole)
    (r2,) = enumerate_routes(split)
    assert r1.utilities.u == pytest.approx(r2.utilities.u, abs=1e-12)


def test_route_utilities_rejects_invalid_route(scenario1):
    with pytest.raises(PrefLoopError) as exc:
        route_utilities(scenario1, ("m1r1a", "m1r3b"))
    assert exc.value.code == "INVALID_ROUTE"


def test_route3_wins_at_equal_weights(scenario1, equal_prefs):
    routes = enumerate_routes(scenario1)
    scores = [route_utility(scenario1, r, equal_prefs) for r in routes]
    assert scores.index(max(scores)) == 2  # Route 3


def test_route_utility_is_linear_in_preferences(scenario1):
    import numpy as np

    rng = np.random.default_rng(4)
    route = enumerate_routes(scenario1)[2]
    for _ in range(50):
        p = rng.dirichlet(np.ones(3))
        q = rng.dirichlet(np.ones(3))
        alpha = float(rng.random())
        mix = make_preference(alpha * p + (1 - alpha) * q)
        lhs = route_utility(scenario1, route, mix)
        rhs = alpha * route_utility(scenario1, route, make_preference(p)) + (
            1 - alpha
        ) * route_utility(scenario1, route, make_preference(q))
        assert lhs == pytest.approx(rhs, abs=1e-12)
        assert 0.0 <= lhs <= 1.0


def test_vertex_projection_returns_single_utility(scenario1):
    route = enumerate_routes(scenario1)[1]
    p = make_preference([0, 1, 0])
    assert route_utility(scenario1, route, p) == pytest.approx(route.utilities.value(2), abs=1e-12)
