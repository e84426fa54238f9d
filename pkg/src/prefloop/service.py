"""HTTP session service exposing the recommend -> complain -> adapt loop.

In-memory sessions only: this is a desk-scale study tool. Adaptation runs
synchronously inside the complaint request and the response carries the full
adaptation report for the console's chart. Requests to one session are
serialized; a second in-flight request gets 409 CONFLICT.
"""

import threading
import uuid
from typing import Any

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from .bundled import available_maps, get_map
from .complaints import (
    GeneralPreferenceDiscontent,
    SpecificPreferenceDiscontent,
    STUDY_OPTIONS,
    option_to_complaint,
)
from .errors import PrefLoopError
from .fitness import FitnessParams
from .ga import GAConfig
from .mapmodel import MapGraph
from .planner import RouteOption, enumerate_routes
from .prefs import PreferenceVector, make_preference
from .session import SessionEngine

_STATUS = {
    "SESSION_NOT_FOUND": 404,
    "OUT_OF_ORDER_MESSAGE": 409,
    "CONFLICT": 409,
    "UNKNOWN_OPTION": 422,
    "SCHEMA_VIOLATION": 422,
    "PARSE_ERROR": 400,
}


def _error(code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=_STATUS.get(code, 400), content={"code": code, "message": message})


def _route_payload(route: RouteOption) -> dict:
    return {
        "route_id": route.index,
        "node_ids": list(route.node_ids),
        "edge_ids": list(route.edge_ids),
        "utilities": list(route.utilities.u),
        "length": route.length,
    }


def _recommendation_payload(engine: SessionEngine) -> dict | None:
    if engine.finished:
        return None
    route = engine.current_recommendation()
    payload = _route_payload(route)
    payload["score"] = route.utility(engine.prefs)
    payload["map_index"] = engine.map_index
    payload["map_name"] = engine.current_map.name
    return payload


def _map_payload(graph: MapGraph) -> dict:
    return {
        "name": graph.name,
        "start": graph.start,
        "goal": graph.goal,
        "nodes": [{"id": n.id, "x": n.x, "y": n.y} for n in graph.nodes],
        "edges": [
            {
                "id": e.id,
                "from": e.from_node,
                "to": e.to_node,
                "length": e.length,
                "surface": e.surface,
                "greenery": e.greenery,
                "noisy": e.noisy,
            }
            for e in graph.edges
        ],
    }


class _Store:
    def __init__(self):
        self._sessions: dict[str, SessionEngine] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._mutex = threading.Lock()

    def put(self, engine: SessionEngine) -> str:
        sid = uuid.uuid4().hex[:12]
        with self._mutex:
            self._sessions[sid] = engine
            self._locks[sid] = threading.Lock()
        return sid

    def get(self, sid: str) -> tuple[SessionEngine, threading.Lock]:
        with self._mutex:
            if sid not in self._sessions:
                raise PrefLoopError("SESSION_NOT_FOUND", f"no session {sid!r}")
            return self._sessions[sid], self._locks[sid]


def _parse_complaint(body: dict, engine: SessionEngine):
    """Returns (complaint or None, option label)."""
    if "kind" in body:
        kind = body["kind"]
        if kind == "preference_order":
            c = GeneralPreferenceDiscontent(id1=int(body["id1"]), id2=int(body["id2"]))
            return c, kind
        if kind == "preference_value":
            c = SpecificPreferenceDiscontent(id=int(body["id"]), w_opt=float(body["w_opt"]))
            return c, kind
        raise PrefLoopError("UNKNOWN_OPTION", f"unknown complaint kind {kind!r}")
    option = body.get("option")
    if option not in STUDY_OPTIONS and option != "no_complaint":
        raise PrefLoopError("UNKNOWN_OPTION", f"complaint option must be one of {STUDY_OPTIONS}")
    return option_to_complaint(option, engine.current_recommendation()), option


def create_app(map_names: list[str] | None = None, console_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="prefloop session service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = _Store()
    app.state.store = store
    default_maps = map_names or available_maps()

    @app.exception_handler(PrefLoopError)
    async def _handle(request: Request, exc: PrefLoopError):
        return _error(exc.code, str(exc))

    @app.get("/maps")
    def list_maps():
        out = []
        for name in default_maps:
            graph = get_map(name)
            out.append(
                {
                    "name": name,
                    "title": graph.name,
                    "nodes": len(graph.nodes),
                    "edges": len(graph.edges),
                    "routes": len(enumerate_routes(graph)),
                }
            )
        return out

    @app.post("/sessions", status_code=201)
    def create_session(body: dict[str, Any] | None = None):
        body = body or {}
        config = body.get("config", {})
        names = config.get("maps", default_maps)
        maps = [get_map(n) for n in names]
        prefs = make_preference(config.get("initial_prefs", (0.333, 0.333, 0.334)))
        params = FitnessParams(**config.get("fitness", {}))
        ga = GAConfig(**config.get("ga", {}))
        engine = SessionEngine(
            maps, prefs, params=params, ga=ga, seed=int(config.get("seed", 0)), user_id="session"
        )
        sid = store.put(engine)
        return {"id": sid, "recommendation": _recommendation_payload(engine)}

    @app.get("/sessions/{sid}")
    def session_state(sid: str):
        engine, _ = store.get(sid)
        return {
            "id": sid,
            "map_index": engine.map_index,
            "n_maps": len(engine.maps),
            "finished": engine.finished,
            "preference": list(engine.prefs.weights),
            "checkpoints": [list(p.weights) for p in engine.trace.checkpoints],
            "complaints": [r.complaint_option for r in engine.trace.map_records],
            "recommendation": _recommendation_payload(engine),
        }

    @app.get("/sessions/{sid}/routes")
    def session_routes(sid: str):
        engine, _ = store.get(sid)
        graph = engine.current_map  # raises OUT_OF_ORDER_MESSAGE when finished
        return {
            "map": _map_payload(graph),
            "map_index": engine.map_index,
            "routes": [_route_payload(r) for r in enumerate_routes(graph)],
            "recommended_route_id": engine.current_recommendation().index,
        }

    @app.post("/sessions/{sid}/complaint")
    def session_complaint(sid: str, body: dict[str, Any]):
        engine, lock = store.get(sid)
        if not lock.acquire(blocking=False):
            raise PrefLoopError("CONFLICT", "another request is mutating this session")
        try:
            complaint, label = _parse_complaint(body, engine)
            next_rec, checkpoint, report = engine.submit_complaint(complaint, label)
            return {
                "recommendation": None if next_rec is None else _recommendation_payload(engine),
                "checkpoint": list(checkpoint.weights),
                "adaptation": None if report is None else report.to_dict(),
                "finished": engine.finished,
            }
        finally:
            lock.release()

    @app.post("/sessions/{sid}/rating", status_code=204)
    def session_rating(sid: str, body: dict[str, Any]):
        engine, lock = store.get(sid)
        if not lock.acquire(blocking=False):
            raise PrefLoopError("CONFLICT", "another request is mutating this session")
        try:
            if "route_id" not in body or "likert" not in body:
                raise PrefLoopError("SCHEMA_VIOLATION", "rating needs route_id and likert")
            engine.add_rating(int(body["route_id"]), body["likert"])
            return Response(status_code=204)
        finally:
            lock.release()

    if console_dir:
        from fastapi.staticfiles import StaticFiles

        # mounted last, so API routes keep precedence
        app.mount("/", StaticFiles(directory=console_dir, html=True), name="console")

    return app
