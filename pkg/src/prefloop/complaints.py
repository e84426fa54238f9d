"""Complaint categories and the accumulated set of complained-about states.

Four categories: general discontent with a route, specific discontent tied
to one attribute, and two preference-level categories (attribute ordering,
ideal weight). Study-style feedback options map onto the first two; the
preference categories are reachable through the API and CLI only.
"""

from dataclasses import dataclass, field, replace
from typing import Union

from .errors import PrefLoopError
from .mapmodel import MapGraph, edge_utility
from .planner import RouteOption, enumerate_routes
from .prefs import AESTHETIC_APPEAL, EFFICIENCY, ROAD_CONDITION

NO_COMPLAINT = "none"
STUDY_OPTIONS = (
    "dislike_road",
    "excessive_noise",
    "excessive_bumpiness",
    "excessive_distance",
    NO_COMPLAINT,
)

# study option -> 1-based attribute id
_OPTION_ATTR = {
    "excessive_bumpiness": ROAD_CONDITION,
    "excessive_distance": EFFICIENCY,
    "excessive_noise": AESTHETIC_APPEAL,
}

# utility threshold below which an edge counts as an offender for an attribute
OFFENDER_THRESHOLD = 0.5


@dataclass(frozen=True)
class GeneralDiscontent:
    route: RouteOption


@dataclass(frozen=True)
class SpecificDiscontent:
    route: RouteOption
    attr: int  # 1-based attribute id


@dataclass(frozen=True)
class GeneralPreferenceDiscontent:
    id1: int  # should outrank id2
    id2: int

    def __post_init__(self):
        if self.id1 == self.id2:
            raise PrefLoopError("SCHEMA_VIOLATION", "preference-order complaint needs two distinct attributes")


@dataclass(frozen=True)
class SpecificPreferenceDiscontent:
    id: int
    w_opt: float

    def __post_init__(self):
        if not 0.0 <= self.w_opt <= 1.0:
            raise PrefLoopError("SCHEMA_VIOLATION", f"target weight {self.w_opt} outside [0, 1]")


Complaint = Union[
    GeneralDiscontent,
    SpecificDiscontent,
    GeneralPreferenceDiscontent,
    SpecificPreferenceDiscontent,
]


@dataclass(frozen=True)
class ComplaintLedger:
    """Ordered complaint history plus the accumulated complained-state set.

    Value-semantic: ``record`` returns a new ledger. The most recent
    complaint drives the implicit-constraint penalty; the state set keeps
    growing across a whole session.
    """

    complaints: tuple[Complaint, ...] = ()
    complained_states: frozenset[str] = field(default_factory=frozenset)

    @property
    def latest(self) -> Complaint | None:
        return self.complaints[-1] if self.complaints else None


def option_to_complaint(option: str, route: RouteOption) -> Complaint | None:
    """Map a study feedback option onto a complaint about the given route."""
    if option in (NO_COMPLAINT, "no_complaint"):
        return None
    if option == "dislike_road":
        return GeneralDiscontent(route=route)
    attr = _OPTION_ATTR.get(option)
    if attr is None:
        raise PrefLoopError("UNKNOWN_OPTION", f"unknown complaint option {option!r}")
    return SpecificDiscontent(route=route, attr=attr)


def _shared_edges(graph: MapGraph) -> frozenset[str]:
    routes = enumerate_routes(graph)
    shared = set(routes[0].edge_ids)
    for r in routes[1:]:
        shared &= set(r.edge_ids)
    return frozenset(shared)


def _offending_states(complaint: Complaint, graph: MapGraph) -> frozenset[str]:
    # Whole-route complaints (and distance complaints, which have no
    # edge-level utility) mark every edge of the route except those shared by
    # all start->goal routes, so avoidance stays feasible. Attribute
    # complaints mark only the offending edges (utility below threshold).
    if isinstance(complaint, GeneralDiscontent) or (
        isinstance(complaint, SpecificDiscontent) and complaint.attr == EFFICIENCY
    ):
        return frozenset(complaint.route.edge_ids) - _shared_edges(graph)
    if isinstance(complaint, SpecificDiscontent):
        return frozenset(
            eid
            for eid in complaint.route.edge_ids
            if edge_utility(graph.edge_by_id[eid], complaint.attr) < OFFENDER_THRESHOLD
        )
    return frozenset()


def record(ledger: ComplaintLedger, complaint: Complaint, graph: MapGraph) -> ComplaintLedger:
    """Append a complaint and extend the complained-state set for its map."""
    states = ledger.complained_states | _offending_states(complaint, graph)
    return replace(ledger, complaints=ledger.complaints + (complaint,), complained_states=states)
