"""Attribute-annotated road networks and per-route utility computation.

Map documents are JSON (schema in ``load_map``). Roads are undirected: an
edge may be traversed in either direction. Road-condition and aesthetic
utilities live on edges; efficiency is a route-level quantity derived from
segment counts, so ``edge_utility`` rejects it.
"""

import heapq
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import PrefLoopError
from .prefs import AESTHETIC_APPEAL, EFFICIENCY, ROAD_CONDITION, PreferenceVector

SURFACES = ("rough_stone", "fine_stone", "smooth")
GREENERY = ("none", "bushes", "trees")

# Fixed utility tables. Monotone with the qualitative route descriptions:
# rougher surfaces are less comfortable, greener and quieter stretches are
# more appealing. Values are bounded in [0, 1] by construction.
SURFACE_UTILITY = {"rough_stone": 0.2, "fine_stone": 0.6, "smooth": 1.0}
GREENERY_UTILITY = {"none": 0.3, "bushes": 0.6, "trees": 1.0}
NOISE_PENALTY = 0.3


@dataclass(frozen=True)
class Node:
    id: str
    x: float
    y: float


@dataclass(frozen=True)
class Edge:
    id: str
    from_node: str
    to_node: str
    length: int  # segments, >= 1
    surface: str
    greenery: str
    noisy: bool

    def other(self, node_id: str) -> str:
        return self.to_node if node_id == self.from_node else self.from_node


@dataclass(frozen=True)
class AttributeUtilities:
    """Per-attribute utilities of a route, indexed by 1-based attribute id."""

    u: tuple[float, ...]

    def value(self, attr_id: int) -> float:
        return self.u[attr_id - 1]


@dataclass(frozen=True)
class MapGraph:
    name: str
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    start: str
    goal: str

    @cached_property
    def node_ids(self) -> frozenset[str]:
        return frozenset(n.id for n in self.nodes)

    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def adjacency(self) -> dict[str, tuple[tuple[str, str], ...]]:
        """node id -> tuple of (neighbor node id, edge id), sorted for determinism."""
        adj: dict[str, list[tuple[str, str]]] = {n.id: [] for n in self.nodes}
        for e in self.edges:
            adj[e.from_node].append((e.to_node, e.id))
            adj[e.to_node].append((e.from_node, e.id))
        return {k: tuple(sorted(v)) for k, v in adj.items()}

    @cached_property
    def shortest_length(self) -> int:
        """Shortest start->goal distance in segments (Dijkstra over edge lengths)."""
        dist = {self.start: 0}
        heap = [(0, self.start)]
        seen: set[str] = set()
        while heap:
            d, node = heapq.heappop(heap)
            if node in seen:
                continue
            seen.add(node)
            if node == self.goal:
                return d
            for neighbor, edge_id in self.adjacency[node]:
                if neighbor in seen:
                    continue
                nd = d + self.edge_by_id[edge_id].length
                if nd < dist.get(neighbor, nd + 1):
                    dist[neighbor] = nd
                    heapq.heappush(heap, (nd, neighbor))
        raise PrefLoopError("DISCONNECTED_MAP", f"no path {self.start} -> {self.goal} in {self.name}")


def _schema_error(msg: str) -> PrefLoopError:
    return PrefLoopError("SCHEMA_VIOLATION", msg)


def load_map(document: str) -> MapGraph:
    """Parse and validate a map JSON document.

    Schema::

        { "name": str,
          "nodes": [{"id": str, "x": num, "y": num}],
          "edges": [{"id": str, "from": str, "to": str, "length": int,
                     "surface": "rough_stone"|"fine_stone"|"smooth",
                     "greenery": "none"|"bushes"|"trees", "noisy": bool}],
          "start": str, "goal": str }

    Duplicate ids, dangling endpoints, self-loops and unreachable goals are
    rejected (SCHEMA_VIOLATION / DISCONNECTED_MAP).
    """
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise PrefLoopError("PARSE_ERROR", f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise _schema_error("map document must be a JSON object")
    for key in ("name", "nodes", "edges", "start", "goal"):
        if key not in doc:
            raise _schema_error(f"missing key {key!r}")

    nodes = []
    seen_nodes: set[str] = set()
    if not isinstance(doc["nodes"], list) or not doc["nodes"]:
        raise _schema_error("nodes must be a non-empty list")
    for item in doc["nodes"]:
        try:
            node = Node(id=str(item["id"]), x=float(item["x"]), y=float(item["y"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise _schema_error(f"bad node entry {item!r}") from exc
        if node.id in seen_nodes:
            raise _schema_error(f"duplicate node id {node.id!r}")
        seen_nodes.add(node.id)
        nodes.append(node)

    edges = []
    seen_edges: set[str] = set()
    if not isinstance(doc["edges"], list) or not doc["edges"]:
        raise _schema_error("edges must be a non-empty list")
    for item in doc["edges"]:
        try:
            edge = Edge(
                id=str(item["id"]),
                from_node=str(item["from"]),
                to_node=str(item["to"]),
                length=item["length"],
                surface=str(item["surface"]),
                greenery=str(item["greenery"]),
                noisy=bool(item["noisy"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise _schema_error(f"bad edge entry {item!r}") from exc
        if edge.id in seen_edges:
            raise _schema_error(f"duplicate edge id {edge.id!r}")
        if not isinstance(edge.length, int) or edge.length < 1:
            raise _schema_error(f"edge {edge.id!r} length must be an integer >= 1")
        if edge.surface not in SURFACES:
            raise _schema_error(f"edge {edge.id!r} has unknown surface {edge.surface!r}")
        if edge.greenery not in GREENERY:
            raise _schema_error(f"edge {edge.id!r} has unknown greenery {edge.greenery!r}")
        if edge.from_node not in seen_nodes or edge.to_node not in seen_nodes:
            raise _schema_error(f"edge {edge.id!r} references a missing node")
        if edge.from_node == edge.to_node:
            raise _schema_error(f"edge {edge.id!r} is a self-loop")
        seen_edges.add(edge.id)
        edges.append(edge)

    start, goal = str(doc["start"]), str(doc["goal"])
    if start not in seen_nodes:
        raise _schema_error(f"start node {start!r} does not exist")
    if goal not in seen_nodes:
        raise _schema_error(f"goal node {goal!r} does not exist")
    if start == goal:
        raise _schema_error("start and goal must differ")

    graph = MapGraph(name=str(doc["name"]), nodes=tuple(nodes), edges=tuple(edges), start=start, goal=goal)
    graph.shortest_length  # raises DISCONNECTED_MAP if goal unreachable
    return graph


def edge_utility(edge: Edge, attr_id: int) -> float:
    """Utility of a single edge for an edge-level attribute.

    Road condition comes from the surface table; aesthetic appeal is the
    greenery base minus a noise deduction, clamped to [0, 1].
    """
    if attr_id == ROAD_CONDITION:
        return SURFACE_UTILITY[edge.surface]
    if attr_id == AESTHETIC_APPEAL:
        base = GREENERY_UTILITY[edge.greenery]
        if edge.noisy:
            base -= NOISE_PENALTY
        return min(1.0, max(0.0, base))
    if attr_id == EFFICIENCY:
        raise PrefLoopError("EFFICIENCY_IS_ROUTE_LEVEL", "efficiency is computed per route, not per edge")
    raise PrefLoopError("UNKNOWN_ATTRIBUTE", f"no edge utility for attribute {attr_id}")


def _edge_ids_of(route) -> Sequence[str]:
    return getattr(route, "edge_ids", route)


def resolve_route_nodes(graph: MapGraph, edge_ids: Sequence[str]) -> tuple[str, ...]:
    """Walk edge ids from start to goal, returning the node sequence.

    Raises INVALID_ROUTE unless the edges form a simple start->goal path.
    """
    if not edge_ids:
        raise PrefLoopError("INVALID_ROUTE", "route has no edges")
    current = graph.start
    visited = [current]
    for eid in edge_ids:
        edge = graph.edge_by_id.get(eid)
        if edge is None:
            raise PrefLoopError("INVALID_ROUTE", f"unknown edge id {eid!r}")
        if current not in (edge.from_node, edge.to_node):
            raise PrefLoopError("INVALID_ROUTE", f"edge {eid!r} not incident to {current!r}")
        current = edge.other(current)
        if current in visited:
            raise PrefLoopError("INVALID_ROUTE", f"route revisits node {current!r}")
        visited.append(current)
    if current != graph.goal:
        raise PrefLoopError("INVALID_ROUTE", f"route ends at {current!r}, not the goal")
    return tuple(visited)


def route_utilities(graph: MapGraph, route) -> AttributeUtilities:
    """Per-attribute utilities of a route.

    Road condition and aesthetics are length-weighted means of edge
    utilities (insensitive to edge subdivision); efficiency is the ratio of
    the map's shortest start->goal length to this route's length.
    """
    edge_ids = _edge_ids_of(route)
    resolve_route_nodes(graph, edge_ids)
    edges = [graph.edge_by_id[eid] for eid in edge_ids]
    total = sum(e.length for e in edges)
    u_road = sum(edge_utility(e, ROAD_CONDITION) * e.length for e in edges) / total
    u_aes = sum(edge_utility(e, AESTHETIC_APPEAL) * e.length for e in edges) / total
    u_eff = graph.shortest_length / total
    return AttributeUtilities(u=(u_road, u_eff, u_aes))


def route_utility(graph: MapGraph, route, p: PreferenceVector) -> float:
    """Aggregate utility of a route under preference p: sum of w_i * u_i."""
    cached = getattr(route, "utilities", None)
    utils = cached if cached is not None else route_utilities(graph, route)
    return float(sum(w * u for w, u in zip(p.weights, utils.u)))
