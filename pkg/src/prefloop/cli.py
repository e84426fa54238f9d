"""Command-line entry points.

Subcommands:
  plan      rank a map's routes for a preference vector
  adapt     run one complaint-driven adaptation and print the result
  simulate  run a simulated cohort and write JSON/CSV reports
  serve     start the HTTP session service
"""

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .bundled import get_map
from .complaints import ComplaintLedger, STUDY_OPTIONS, option_to_complaint, record
from .errors import PrefLoopError
from .experiment import ExperimentConfig, export_report, run_cohort_from_config
from .fitness import FitnessContext, FitnessParams
from .ga import GAConfig, adapt_preferences
from .planner import best_route, rank_routes
from .prefs import make_preference


def _parse_prefs(text: str):
    try:
        weights = [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise PrefLoopError("SUM_NOT_ONE", f"cannot parse weights {text!r}") from exc
    return make_preference(weights)


def _cmd_plan(args) -> int:
    graph = get_map(args.map)
    prefs = _parse_prefs(args.prefs)
    print(f"{graph.name}: routes ranked for {prefs}")
    for route, utility in rank_routes(graph, prefs):
        u = ", ".join(f"{x:.4f}" for x in route.utilities.u)
        print(f"  route {route.index + 1}: U={utility:.4f}  (u: {u})  via {'-'.join(route.node_ids)}")
    return 0


def _cmd_adapt(args) -> int:
    graph = get_map(args.map)
    prefs = _parse_prefs(args.prefs)
    recommended = best_route(graph, prefs)
    complaint = option_to_complaint(args.complaint, recommended)
    if complaint is None:
        print("no complaint; preferences unchanged:", prefs)
        return 0
    ledger = record(ComplaintLedger(), complaint, graph)
    ctx = FitnessContext(
        graph=graph, ledger=ledger, p_prev=prefs, params=FitnessParams(**json.loads(args.fitness))
    )
    winner, report = adapt_preferences(ctx, GAConfig(seed=args.seed))
    print(f"recommended route {recommended.index + 1}; complaint: {args.complaint}")
    print(f"adapted preferences: {winner}")
    print(f"generations: {report.generations}  backend: {report.backend}")
    comp = report.winner_components
    print(
        "fitness {:.6f}  (divergence {:.6f}, avoidance {:.1f}, constraint {:.4f})".format(
            comp["fitness"], comp["f1"], comp["f2"], comp["f3"]
        )
    )
    print(f"new best route: {best_route(graph, winner).index + 1}")
    return 0


def _cmd_simulate(args) -> int:
    if args.config:
        cfg = ExperimentConfig.from_json(Path(args.config).read_text())
    else:
        cfg = ExperimentConfig()
    report = run_cohort_from_config(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    export_report(report, "json", out / "report.json")
    export_report(report, "csv", out / "report.csv")
    med = [round(c["median"], 4) for c in report.checkpoint_similarity]
    print(f"cohort of {report.n_users} users, seed {report.seed}")
    print(f"  similarity medians per checkpoint: {med}")
    print(f"  complaints per map: {report.complaints_per_map}")
    print(f"  reports written to {out}/report.json and {out}/report.csv")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    console = args.console
    if console is None and Path("frontend/dist/index.html").exists():
        console = "frontend/dist"
    app = create_app(console_dir=console)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prefloop", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="rank routes for a preference vector")
    p.add_argument("map", help="map name or path (e.g. scenario1.map.json)")
    p.add_argument("--prefs", required=True, help="comma-separated weights, e.g. 0.333,0.333,0.334")
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("adapt", help="adapt preferences from one complaint")
    p.add_argument("map")
    p.add_argument("--prefs", required=True)
    p.add_argument("--complaint", required=True, choices=[o for o in STUDY_OPTIONS if o != "none"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fitness", default="{}", help="JSON overrides for fitness parameters")
    p.set_defaults(func=_cmd_adapt)

    p = sub.add_parser("simulate", help="run a simulated cohort and write reports")
    p.add_argument("--config", help="experiment config JSON (defaults bundled)")
    p.add_argument("--out", default="reports", help="output directory")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("serve", help="start the HTTP session service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--maps", help="directory of map JSON files (overrides bundled)")
    p.add_argument("--console", help="built web console directory to serve at / (auto-detects frontend/dist)")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "maps", None):
        import os

        os.environ["PREFLOOP_MAPS_DIR"] = args.maps
    try:
        return args.func(args)
    except PrefLoopError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
