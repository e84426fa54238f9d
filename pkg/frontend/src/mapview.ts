import type { MapEdge, MapNode, RoutesResponse } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

// visual encoding: greenery -> stroke color, surface -> dash pattern,
// noise -> a small marker at the edge midpoint
const GREENERY_COLOR: Record<MapEdge["greenery"], string> = {
    none: "#b89a6a",
    bushes: "#7cab5d",
    trees: "#2f7d3a",
};

const SURFACE_DASH: Record<MapEdge["surface"], string> = {
    smooth: "",
    fine_stone: "7 4",
    rough_stone: "2 5",
};

function el(tag: string, attrs: Record<string, string>): SVGElement {
    const node = document.createElementNS(SVG_NS, tag);
    for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
    return node;
}

export function renderMap(container: HTMLElement, payload: RoutesResponse): void {
    container.replaceChildren();
    const { map, routes, recommended_route_id } = payload;
    const nodeById = new Map<string, MapNode>(map.nodes.map((n) => [n.id, n]));

    const xs = map.nodes.map((n) => n.x);
    const ys = map.nodes.map((n) => n.y);
    const pad = 1.2;
    const view = `${Math.min(...xs) - pad} ${Math.min(...ys) - pad} ${
        Math.max(...xs) - Math.min(...xs) + 2 * pad
    } ${Math.max(...ys) - Math.min(...ys) + 2 * pad}`;

    const svg = el("svg", { viewBox: view, class: "map-svg", preserveAspectRatio: "xMidYMid meet" });
    svg.setAttribute("data-map-name", map.name);

    const recommended = routes.find((r) => r.route_id === recommended_route_id);
    const highlighted = new Set(recommended ? recommended.edge_ids : []);

    // highlight underlay first so route edges draw on top of it
    for (const edge of map.edges) {
        if (!highlighted.has(edge.id)) continue;
        const a = nodeById.get(edge.from)!;
        const b = nodeById.get(edge.to)!;
        svg.appendChild(
            el("line", {
                x1: String(a.x), y1: String(a.y), x2: String(b.x), y2: String(b.y),
                class: "edge-highlight",
                stroke: "#ffb300", "stroke-width": "0.55", "stroke-linecap": "round", opacity: "0.6",
            }),
        );
    }

    for (const edge of map.edges) {
        const a = nodeById.get(edge.from)!;
        const b = nodeById.get(edge.to)!;
        const line = el("line", {
            x1: String(a.x), y1: String(a.y), x2: String(b.x), y2: String(b.y),
            stroke: GREENERY_COLOR[edge.greenery],
            "stroke-width": "0.22",
            "stroke-linecap": "round",
            class: "edge",
        });
        line.setAttribute("data-edge-id", edge.id);
        line.setAttribute("data-surface", edge.surface);
        if (SURFACE_DASH[edge.surface]) {
            line.setAttribute("stroke-dasharray", SURFACE_DASH[edge.surface].split(" ").map((d) => String(Number(d) / 10)).join(" "));
        }
        svg.appendChild(line);
        if (edge.noisy) {
            const mx = (a.x + b.x) / 2;
            const my = (a.y + b.y) / 2;
            const marker = el("text", {
                x: String(mx), y: String(my - 0.25),
                class: "noise-marker", "font-size": "0.5", "text-anchor": "middle", fill: "#c0392b",
            });
            marker.textContent = "~";
            svg.appendChild(marker);
        }
    }

    for (const node of map.nodes) {
        const isEndpoint = node.id === map.start || node.id === map.goal;
        svg.appendChild(
            el("circle", {
                cx: String(node.x), cy: String(node.y),
                r: isEndpoint ? "0.3" : "0.14",
                fill: isEndpoint ? "#1a1a1a" : "#555",
                class: "map-node",
            }),
        );
        if (isEndpoint) {
            const label = el("text", {
                x: String(node.x), y: String(node.y - 0.45),
                "font-size": "0.55", "text-anchor": "middle", class: "node-label",
            });
            label.textContent = node.id === map.start ? "start" : "goal";
            svg.appendChild(label);
        }
    }
    container.appendChild(svg);
}
