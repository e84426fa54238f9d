"""Complaint-driven preference adaptation for multi-attribute route choice."""

from .errors import PrefLoopError
from .prefs import PreferenceVector, cos_sim, make_preference, normalize_weights
from .mapmodel import MapGraph, load_map, route_utilities, route_utility
from .planner import RouteOption, best_route, best_route_by_cost, enumerate_routes, rank_routes
from .complaints import ComplaintLedger, option_to_complaint, record
from .fitness import FitnessContext, FitnessParams, f1, f2, f3, fitness
from .ga import AdaptationReport, GAConfig, adapt_preferences
from .usersim import SimulatedUser, rate_route, react, sample_true_preferences
from .session import SessionEngine, SessionTrace, normalize_scores, similarity_trajectory
from .experiment import CohortReport, ExperimentConfig, export_report, run_cohort, run_session

__version__ = "0.1.0"

__all__ = [
    "PrefLoopError",
    "PreferenceVector",
    "cos_sim",
    "make_preference",
    "normalize_weights",
    "MapGraph",
    "load_map",
    "route_utilities",
    "route_utility",
    "RouteOption",
    "best_route",
    "best_route_by_cost",
    "enumerate_routes",
    "rank_routes",
    "ComplaintLedger",
    "option_to_complaint",
    "record",
    "FitnessContext",
    "FitnessParams",
    "f1",
    "f2",
    "f3",
    "fitness",
    "GAConfig",
    "AdaptationReport",
    "adapt_preferences",
    "SimulatedUser",
    "react",
    "rate_route",
    "sample_true_preferences",
    "SessionEngine",
    "SessionTrace",
    "normalize_scores",
    "similarity_trajectory",
    "CohortReport",
    "ExperimentConfig",
    "export_report",
    "run_cohort",
    "run_session",
    "__version__",
]
