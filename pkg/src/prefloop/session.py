"""Session state machine for the recommend -> complain -> adapt loop.

One engine instance drives a single participant (simulated or human) through
an ordered map sequence. The simulation harness and the HTTP service both
run on this engine, so the two flows produce identical traces for identical
inputs.
"""

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .complaints import Complaint, ComplaintLedger, record
from .errors import PrefLoopError
from .fitness import FitnessContext, FitnessParams
from .ga import AdaptationReport, GAConfig, adapt_preferences
from .mapmodel import MapGraph
from .planner import RouteOption, best_route, enumerate_routes
from .prefs import PreferenceVector, cos_sim


@dataclass(frozen=True)
class MapRecord:
    """What one map contributed to a session."""

    map_index: int
    map_name: str
    recommended_index: int
    complaint_option: str
    ratings: tuple[int, ...]  # by route enumeration index; 0 = unrated
    recommended_rank: int
    recommended_score_norm: float
    adaptation: AdaptationReport | None


@dataclass
class SessionTrace:
    user_id: str
    map_records: list[MapRecord] = field(default_factory=list)
    checkpoints: list[PreferenceVector] = field(default_factory=list)
    reference: PreferenceVector | None = None


def normalize_scores(scores: list[float]) -> list[float]:
    """Min-max normalize to [0, 1]; a constant list maps to all 0.5."""
    if not scores:
        raise PrefLoopError("EMPTY_INPUT", "cannot normalize an empty score list")
    lo, hi = min(scores), max(scores)
    if hi == lo:
        return [0.5] * len(scores)
    return [(s - lo) / (hi - lo) for s in scores]


def similarity_trajectory(trace: SessionTrace, reference: PreferenceVector) -> list[float]:
    """Cosine similarity of every stored checkpoint to a reference preference."""
    return [cos_sim(chk, reference) for chk in trace.checkpoints]


def _rank_by_rating(ratings: tuple[int, ...], index: int) -> int:
    # ties share the better rank
    return 1 + sum(1 for r in ratings if r > ratings[index])


def derive_ga_seed(base_seed: int, *path: int) -> int:
    """Stable per-adaptation seed from a base seed and position indices."""
    state = np.random.SeedSequence([base_seed, *path]).generate_state(1, dtype=np.uint64)
    return int(state[0])


class SessionEngine:
    """Drives one participant through the per-map task sequence.

    Per map: expose the recommendation, accept any number of route ratings,
    then exactly one complaint message (possibly "none"), which adapts the
    preference when a complaint was filed and advances to the next map.
    """

    def __init__(
        self,
        maps: list[MapGraph],
        initial_prefs: PreferenceVector,
        params: FitnessParams | None = None,
        ga: GAConfig | None = None,
        seed: int = 0,
        user_id: str = "user",
    ):
        if not maps:
            raise PrefLoopError("SCHEMA_VIOLATION", "a session needs at least one map")
        self.maps = list(maps)
        self.params = params or FitnessParams()
        self.ga = ga or GAConfig()
        self.seed = seed
        self.prefs = initial_prefs
        self.ledger = ComplaintLedger()
        self.map_index = 0
        self.trace = SessionTrace(user_id=user_id, checkpoints=[initial_prefs])
        self._ratings: dict[int, int] = {}
        self._recommended: RouteOption | None = None

    @property
    def finished(self) -> bool:
        return self.map_index >= len(self.maps)

    @property
    def current_map(self) -> MapGraph:
        if self.finished:
            raise PrefLoopError("OUT_OF_ORDER_MESSAGE", "session already finished")
        return self.maps[self.map_index]

    def current_recommendation(self) -> RouteOption:
        if self._recommended is None:
            self._recommended = best_route(self.current_map, self.prefs)
        return self._recommended

    def add_rating(self, route_index: int, likert: int) -> None:
        if self.finished:
            raise PrefLoopError("OUT_OF_ORDER_MESSAGE", "cannot rate after the session ended")
        routes = enumerate_routes(self.current_map)
        if not 0 <= route_index < len(routes):
            raise PrefLoopError("SCHEMA_VIOLATION", f"no route {route_index} on this map")
        if not isinstance(likert, int) or not 1 <= likert <= 5:
            raise PrefLoopError("SCHEMA_VIOLATION", "rating must be an integer in 1..5")
        self._ratings[route_index] = likert

    def submit_complaint(
        self, complaint: Complaint | None, option_label: str
    ) -> tuple[RouteOption | None, PreferenceVector, AdaptationReport | None]:
        """File the map's complaint, adapt if needed, advance to the next map.

        Returns (next recommendation or None when the session ends, the new
        preference checkpoint, the adaptation report when a GA run happened).
        """
        if self.finished:
            raise PrefLoopError("OUT_OF_ORDER_MESSAGE", "session already finished")
        graph = self.current_map
        recommended = self.current_recommendation()

        report: AdaptationReport | None = None
        if complaint is not None:
            self.ledger = record(self.ledger, complaint, graph)
            ctx = FitnessContext(graph=graph, ledger=self.ledger, p_prev=self.prefs, params=self.params)
            ga_cfg = dataclasses.replace(self.ga, seed=derive_ga_seed(self.seed, self.map_index))
            self.prefs, report = adapt_preferences(ctx, ga_cfg)

        routes = enumerate_routes(graph)
        ratings = tuple(self._ratings.get(i, 0) for i in range(len(routes)))
        rec_idx = recommended.index
        if any(ratings):
            rank = _rank_by_rating(ratings, rec_idx)
            score_norm = normalize_scores(list(ratings))[rec_idx]
        else:
            rank = 0
            score_norm = 0.0
        self.trace.map_records.append(
            MapRecord(
                map_index=self.map_index,
                map_name=graph.name,
                recommended_index=rec_idx,
                complaint_option=option_label,
                ratings=ratings,
                recommended_rank=rank,
                recommended_score_norm=score_norm,
                adaptation=report,
            )
        )
        self.trace.checkpoints.append(self.prefs)

        self.map_index += 1
        self._ratings = {}
        self._recommended = None
        next_rec = None if self.finished else self.current_recommendation()
        return next_rec, self.prefs, report
