"""Synthetic passenger with hidden ground-truth preferences.

Stands in for study participants: reacts to a recommended route with one of
the study's feedback options and rates routes on a 1..5 scale, all
deterministically from the hidden preference vector.
"""

from dataclasses import dataclass
from math import floor

import numpy as np

from .errors import PrefLoopError
from .mapmodel import MapGraph
from .planner import RouteOption, best_route, enumerate_routes
from .prefs import PreferenceVector, make_preference

PROFILES = ("uniform", "road_condition", "efficiency", "aesthetic_appeal")

_ATTR_OPTION = {1: "excessive_bumpiness", 2: "excessive_distance", 3: "excessive_noise"}


@dataclass(frozen=True)
class SimulatedUser:
    true_prefs: PreferenceVector
    # minimum regret (in utility under the hidden preference) before complaining
    complaint_margin: float = 0.03
    # how clearly the worst attribute must dominate before a specific complaint
    dominance_margin: float = 0.15


def sample_true_preferences(rng: np.random.Generator, profile: str = "uniform") -> PreferenceVector:
    """Draw a hidden preference: uniform on the simplex, or conditioned on one
    attribute carrying the maximum weight (uniform sample with the max swapped
    into that slot, which preserves uniformity by exchangeability)."""
    if profile not in PROFILES:
        raise PrefLoopError("UNKNOWN_OPTION", f"unknown user profile {profile!r}")
    w = rng.dirichlet(np.ones(3))
    if profile != "uniform":
        target = PROFILES.index(profile) - 1
        top = int(np.argmax(w))
        w[target], w[top] = w[top], w[target]
    return make_preference(w)


def react(user: SimulatedUser, graph: MapGraph, recommended: RouteOption) -> str:
    """Feedback option for a recommended route.

    No complaint when the recommendation is within complaint_margin of the
    user's own best route. Otherwise the per-attribute utility deficits
    (weighted by the hidden preference) decide: a clearly dominant deficit
    names the specific option, anything muddier is general dislike.
    """
    p_star = user.true_prefs
    ideal = best_route(graph, p_star)
    regret = ideal.utility(p_star) - recommended.utility(p_star)
    if regret <= user.complaint_margin:
        return "none"
    deficits = [
        w * (ui - ur)
        for w, ui, ur in zip(p_star.weights, ideal.utilities.u, recommended.utilities.u)
    ]
    order = sorted(range(len(deficits)), key=lambda i: -deficits[i])
    top, runner_up = deficits[order[0]], deficits[order[1]]
    if top - runner_up >= user.dominance_margin * top:
        return _ATTR_OPTION[order[0] + 1]
    return "dislike_road"


def rate_route(user: SimulatedUser, graph: MapGraph, route: RouteOption) -> int:
    """Likert rating 1..5 from the route's rank under the hidden preference.

    q is the rank-normalized utility among the map's routes (best 1, worst 0,
    ties share the higher rank); the rating is 1 + floor(4q), clamped.
    """
    routes = enumerate_routes(graph)
    if len(routes) == 1:
        return 5
    scores = [r.utility(user.true_prefs) for r in routes]
    own = route.utility(user.true_prefs)
    rank_top = sum(1 for s in scores if s > own)  # 0 for the best
    q = (len(routes) - 1 - rank_top) / (len(routes) - 1)
    return max(1, min(5, 1 + floor(4.0 * q)))
