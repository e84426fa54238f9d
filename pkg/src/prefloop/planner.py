"""Route enumeration and optimal-route selection for a preference vector.

The primary planner enumerates all simple start->goal paths once per map
(study-scale maps have a handful) and reduces best-route queries to a
dot-product argmax over cached per-route utility vectors. A secondary
shortest-path planner over per-edge disutility costs is provided for larger
maps; the exhaustive planner is authoritative where they disagree.
"""

import heapq
from dataclasses import dataclass
from functools import lru_cache

from .errors import PrefLoopError
from .mapmodel import AttributeUtilities, MapGraph, edge_utility, route_utilities
from .prefs import AESTHETIC_APPEAL, EFFICIENCY, ROAD_CONDITION, PreferenceVector

MAX_ROUTES_DEFAULT = 10_000


@dataclass(frozen=True)
class RouteOption:
    """A simple start->goal path with cached per-attribute utilities."""

    index: int
    node_ids: tuple[str, ...]
    edge_ids: tuple[str, ...]
    utilities: AttributeUtilities
    length: int

    def utility(self, p: PreferenceVector) -> float:
        return float(sum(w * u for w, u in zip(p.weights, self.utilities.u)))


@lru_cache(maxsize=64)
def _enumerate(graph: MapGraph, max_routes: int) -> tuple[RouteOption, ...]:
    paths: list[tuple[tuple[str, ...], tuple[str, ...]]] = []

    def dfs(node: str, nodes: list[str], edges: list[str]):
        if node == graph.goal:
            if len(paths) >= max_routes:
                raise PrefLoopError(
                    "ROUTE_EXPLOSION",
                    f"map {graph.name!r} has more than {max_routes} simple routes",
                )
            paths.append((tuple(nodes), tuple(edges)))
            return
        for neighbor, edge_id in graph.adjacency[node]:
            if neighbor in nodes:
                continue
            nodes.append(neighbor)
            edges.append(edge_id)
            dfs(neighbor, nodes, edges)
            nodes.pop()
            edges.pop()

    dfs(graph.start, [graph.start], [])
    routes = []
    for idx, (nodes, edges) in enumerate(paths):
        utils = route_utilities(graph, edges)
        length = sum(graph.edge_by_id[eid].length for eid in edges)
        routes.append(RouteOption(index=idx, node_ids=nodes, edge_ids=edges, utilities=utils, length=length))
    return tuple(routes)


def enumerate_routes(graph: MapGraph, max_routes: int = MAX_ROUTES_DEFAULT) -> tuple[RouteOption, ...]:
    """All simple start->goal routes, lexicographic by (node sequence, edge ids).

    Sorted adjacency makes the DFS emit paths in that order deterministically.
    Raises ROUTE_EXPLOSION if the map has more than max_routes routes.
    """
    if max_routes < 1:
        raise PrefLoopError("ROUTE_EXPLOSION", "max_routes must be >= 1")
    return _enumerate(graph, max_routes)


def rank_routes(graph: MapGraph, p: PreferenceVector) -> list[tuple[RouteOption, float]]:
    """Routes with aggregate utilities, best first; ties keep enumeration order."""
    routes = enumerate_routes(graph)
    scored = [(r, r.utility(p)) for r in routes]
    scored.sort(key=lambda pair: -pair[1])  # stable: equal utilities keep index order
    return scored


def best_route(graph: MapGraph, p: PreferenceVector) -> RouteOption:
    """Argmax of aggregate utility; ties broken by lowest enumeration index."""
    best = None
    best_u = -1.0
    for route in enumerate_routes(graph):
        u = route.utility(p)
        if u > best_u:
            best, best_u = route, u
    assert best is not None
    return best


def best_route_by_cost(graph: MapGraph, p: PreferenceVector) -> RouteOption:
    """Shortest-path planner over per-edge disutility costs.

    Edge cost is length * (w1*(1-u1) + w3*(1-u3) + w2); the efficiency weight
    rides on raw length since efficiency has no edge-level utility. Costs are
    nonnegative, so plain Dijkstra applies and returns a simple path.
    """
    w1 = p.weight(ROAD_CONDITION)
    w2 = p.weight(EFFICIENCY)
    w3 = p.weight(AESTHETIC_APPEAL)

    def cost(edge_id: str) -> float:
        e = graph.edge_by_id[edge_id]
        return e.length * (
            w1 * (1.0 - edge_utility(e, ROAD_CONDITION))
            + w3 * (1.0 - edge_utility(e, AESTHETIC_APPEAL))
            + w2
        )

    counter = 0
    dist: dict[str, float] = {graph.start: 0.0}
    parent: dict[str, tuple[str, str]] = {}
    heap: list[tuple[float, int, str]] = [(0.0, counter, graph.start)]
    seen: set[str] = set()
    while heap:
        d, _, node = heapq.heappop(heap)
        if node in seen:
            continue
        seen.add(node)
        if node == graph.goal:
            break
        for neighbor, edge_id in graph.adjacency[node]:
            if neighbor in seen:
                continue
            nd = d + cost(edge_id)
            if neighbor not in dist or nd < dist[neighbor]:
                dist[neighbor] = nd
                parent[neighbor] = (node, edge_id)
                counter += 1
                heapq.heappush(heap, (nd, counter, neighbor))
    if graph.goal not in seen:
        raise PrefLoopError("DISCONNECTED_MAP", f"no path to goal in {graph.name!r}")

    edge_ids: list[str] = []
    node_ids: list[str] = [graph.goal]
    node = graph.goal
    while node != graph.start:
        prev, eid = parent[node]
        edge_ids.append(eid)
        node_ids.append(prev)
        node = prev
    edge_ids.reverse()
    node_ids.reverse()
    utils = route_utilities(graph, edge_ids)
    length = sum(graph.edge_by_id[eid].length for eid in edge_ids)
    return RouteOption(
        index=-1, node_ids=tuple(node_ids), edge_ids=tuple(edge_ids), utilities=utils, length=length
    )
