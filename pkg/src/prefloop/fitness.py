"""Complaint-encoded fitness over candidate preference vectors.

f(p) = lambda1*f1 + lambda2*f2 + lambda3*f3, maximized by the adaptation
engine. f1 rewards staying close to the previous preference (cosine
similarity), f2 applies a large penalty when the best route under p crosses
complained-about states, and f3 encodes the implicit constraint of the most
recent complaint (constant, fuzzy ramp, ordering, or ideal-value cases).

With the defaults (all lambdas 1, rho1 = -100, rho2 = -1) the state-avoidance
penalty dominates: f1 lies in [0, 1] and |rho1| > lambda1 + lambda3*|rho2|,
so any state-avoiding candidate outranks any violating one.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .complaints import (
    ComplaintLedger,
    GeneralDiscontent,
    GeneralPreferenceDiscontent,
    SpecificDiscontent,
    SpecificPreferenceDiscontent,
)
from .errors import PrefLoopError
from .mapmodel import MapGraph
from .planner import RouteOption, enumerate_routes
from .prefs import PreferenceVector, cos_sim

# Equality tolerance for the ideal-weight complaint case.
EPS_OPT = 0.02

# f3 complaint encodings used by the batch kernels.
KIND_NONE = 0
KIND_SPECIFIC = 1
KIND_PREF_ORDER = 2
KIND_PREF_VALUE = 3


@dataclass(frozen=True)
class FitnessParams:
    lambda1: float = 1.0
    lambda2: float = 1.0
    lambda3: float = 1.0
    rho1: float = -100.0
    rho2: float = -1.0
    phi: float = 0.15

    def __post_init__(self):
        if min(self.lambda1, self.lambda2, self.lambda3) <= 0.0:
            raise PrefLoopError("SCHEMA_VIOLATION", "lambda coefficients must be positive")
        # rho1 must dominate rho2; both strictly negative
        if not (self.rho1 <= 10.0 * self.rho2 < 0.0):
            raise PrefLoopError("SCHEMA_VIOLATION", "penalties must satisfy rho1 <= 10*rho2 < 0")
        if not 0.0 < self.phi < 0.5:
            raise PrefLoopError("SCHEMA_VIOLATION", "transition width phi must lie in (0, 0.5)")


@dataclass(frozen=True)
class FitnessContext:
    """Immutable binding of map, complaint history, previous preference and params.

    Derived arrays (route utility matrix, complained-route mask, complaint
    encoding) are cached so candidate evaluation is a few dot products.
    """

    graph: MapGraph
    ledger: ComplaintLedger
    p_prev: PreferenceVector
    params: FitnessParams = field(default_factory=FitnessParams)

    @cached_property
    def routes(self) -> tuple[RouteOption, ...]:
        return enumerate_routes(self.graph)

    @cached_property
    def route_matrix(self) -> np.ndarray:
        """(R, n) per-route utility vectors in enumeration order."""
        m = np.array([r.utilities.u for r in self.routes], dtype=np.float64)
        m.setflags(write=False)
        return m

    @cached_property
    def complained_mask(self) -> np.ndarray:
        """(R,) flag per route: does it cross any complained-about state?"""
        states = self.ledger.complained_states
        m = np.array([bool(states.intersection(r.edge_ids)) for r in self.routes], dtype=np.uint8)
        m.setflags(write=False)
        return m

    @cached_property
    def prev_array(self) -> np.ndarray:
        a = self.p_prev.array
        a.setflags(write=False)
        return a

    @cached_property
    def prev_norm(self) -> float:
        return math.sqrt(float(np.dot(self.prev_array, self.prev_array)))

    @cached_property
    def complaint_encoding(self) -> tuple[int, int, int, float, float, float]:
        """(kind, i0, i1, w_prev, b, w_opt) for the latest complaint, 0-based ids."""
        c = self.ledger.latest
        if c is None or isinstance(c, GeneralDiscontent):
            return (KIND_NONE, 0, 0, 0.0, 0.0, 0.0)
        if isinstance(c, SpecificDiscontent):
            w_prev = self.p_prev.weight(c.attr)
            b = min(self.params.phi, 1.0 - w_prev)
            return (KIND_SPECIFIC, c.attr - 1, 0, w_prev, b, 0.0)
        if isinstance(c, GeneralPreferenceDiscontent):
            return (KIND_PREF_ORDER, c.id1 - 1, c.id2 - 1, 0.0, 0.0, 0.0)
        assert isinstance(c, SpecificPreferenceDiscontent)
        return (KIND_PREF_VALUE, c.id - 1, 0, 0.0, 0.0, c.w_opt)


def f1(p: PreferenceVector, ctx: FitnessContext) -> float:
    """Preference-divergence term: cosine similarity to the previous preference.

    The sign is positive so that maximizing fitness minimizes divergence,
    consistent with the negative penalty terms.
    """
    return cos_sim(p, ctx.p_prev)


def f2(p: PreferenceVector, ctx: FitnessContext) -> float:
    """State-avoidance term: rho1 if the best route under p crosses a
    complained-about state, else 0."""
    best = 0
    best_u = -1.0
    weights = p.weights
    for i, route in enumerate(ctx.routes):
        u = sum(w * v for w, v in zip(weights, route.utilities.u))
        if u > best_u:
            best, best_u = i, u
    return ctx.params.rho1 if ctx.complained_mask[best] else 0.0


def _ramp(w_id: float, w_prev: float, b: float, rho2: float) -> float:
    # Fuzzy transition from full penalty (at and below the previous weight)
    # to none (above w_prev + b). Zero width collapses to a step at 1.
    if b == 0.0:
        return 0.0 if w_id >= w_prev else rho2
    if w_id <= w_prev:
        return rho2
    if w_id <= w_prev + b:
        return rho2 * ((w_prev - w_id) / b + 1.0)
    return 0.0


def f3(p: PreferenceVector, ctx: FitnessContext) -> float:
    """Implicit-constraint term for the most recent complaint (0 if none)."""
    c = ctx.ledger.latest
    params = ctx.params
    if c is None or isinstance(c, GeneralDiscontent):
        return 0.0
    if isinstance(c, SpecificDiscontent):
        w_prev = ctx.p_prev.weight(c.attr)
        b = min(params.phi, 1.0 - w_prev)
        return _ramp(p.weight(c.attr), w_prev, b, params.rho2)
    if isinstance(c, GeneralPreferenceDiscontent):
        return params.rho2 if p.weight(c.id1) < p.weight(c.id2) else 0.0
    assert isinstance(c, SpecificPreferenceDiscontent)
    return 0.0 if abs(p.weight(c.id) - c.w_opt) <= EPS_OPT else params.rho2


def fitness(p: PreferenceVector, ctx: FitnessContext) -> float:
    """Total fitness lambda1*f1 + lambda2*f2 + lambda3*f3. Higher is better."""
    params = ctx.params
    return params.lambda1 * f1(p, ctx) + params.lambda2 * f2(p, ctx) + params.lambda3 * f3(p, ctx)


def fitness_components(p: PreferenceVector, ctx: FitnessContext) -> dict[str, float]:
    """Breakdown of the three terms and the weighted total, for reports."""
    v1, v2, v3 = f1(p, ctx), f2(p, ctx), f3(p, ctx)
    params = ctx.params
    return {
        "f1": v1,
        "f2": v2,
        "f3": v3,
        "fitness": params.lambda1 * v1 + params.lambda2 * v2 + params.lambda3 * v3,
    }
