import { ATTRIBUTE_NAMES } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SERIES_COLORS = ["#c77d2e", "#3969b1", "#3c9a5f"];

const WIDTH = 320;
const HEIGHT = 180;
const MARGIN = { left: 34, right: 10, top: 12, bottom: 22 };

function el(tag: string, attrs: Record<string, string>): SVGElement {
    const node = document.createElementNS(SVG_NS, tag);
    for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
    return node;
}

/** Three-series line chart of the preference weights over checkpoints.
 *  Every point carries the exact service value in data attributes; text
 *  labels are rounded for display only. */
export function renderChart(container: HTMLElement, checkpoints: number[][]): void {
    container.replaceChildren();
    if (!checkpoints.length) return;
    const svg = el("svg", {
        viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
        class: "pref-chart",
        "data-checkpoints": String(checkpoints.length),
    });

    const innerW = WIDTH - MARGIN.left - MARGIN.right;
    const innerH = HEIGHT - MARGIN.top - MARGIN.bottom;
    const xAt = (k: number) =>
        MARGIN.left + (checkpoints.length === 1 ? innerW / 2 : (k / (checkpoints.length - 1)) * innerW);
    const yAt = (w: number) => MARGIN.top + (1 - w) * innerH;

    for (const gridValue of [0, 0.25, 0.5, 0.75, 1]) {
        svg.appendChild(
            el("line", {
                x1: String(MARGIN.left), x2: String(WIDTH - MARGIN.right),
                y1: String(yAt(gridValue)), y2: String(yAt(gridValue)),
                stroke: "#ddd", "stroke-width": "1",
            }),
        );
        const tick = el("text", {
            x: String(MARGIN.left - 6), y: String(yAt(gridValue) + 3),
            "font-size": "9", "text-anchor": "end", fill: "#777",
        });
        tick.textContent = gridValue.toFixed(2);
        svg.appendChild(tick);
    }

    for (let attr = 0; attr < 3; attr++) {
        const points = checkpoints.map((chk, k) => `${xAt(k)},${yAt(chk[attr])}`).join(" ");
        svg.appendChild(
            el("polyline", {
                points,
                fill: "none",
                stroke: SERIES_COLORS[attr],
                "stroke-width": "2",
                class: `series series-${attr}`,
            }),
        );
        checkpoints.forEach((chk, k) => {
            const dot = el("circle", {
                cx: String(xAt(k)), cy: String(yAt(chk[attr])), r: "3",
                fill: SERIES_COLORS[attr],
                class: "chart-point",
            });
            dot.setAttribute("data-attr", String(attr));
            dot.setAttribute("data-checkpoint", String(k));
            dot.setAttribute("data-value", String(chk[attr]));
            svg.appendChild(dot);
        });
    }

    checkpoints.forEach((_, k) => {
        const label = el("text", {
            x: String(xAt(k)), y: String(HEIGHT - 6),
            "font-size": "9", "text-anchor": "middle", fill: "#777",
        });
        label.textContent = `p${k}`;
        svg.appendChild(label);
    });

    container.appendChild(svg);

    const legend = document.createElement("div");
    legend.className = "chart-legend";
    ATTRIBUTE_NAMES.forEach((name, attr) => {
        const item = document.createElement("span");
        item.className = "legend-item";
        item.innerHTML = `<span class="swatch" style="background:${SERIES_COLORS[attr]}"></span>${name}`;
        legend.appendChild(item);
    });
    container.appendChild(legend);
}
