import { SessionApi, type FetchFn } from "./api.js";
import { renderChart } from "./chart.js";
import { renderMap } from "./mapview.js";
import { SessionStore, type SessionView } from "./state.js";
import { ATTRIBUTE_NAMES, COMPLAINT_OPTIONS } from "./types.js";

function h<K extends keyof HTMLElementTagNameMap>(
    tag: K,
    className?: string,
    text?: string,
): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    if (className) node.className = className;
    if (text) node.textContent = text;
    return node;
}

function renderRouteList(container: HTMLElement, view: SessionView, store: SessionStore): void {
    container.replaceChildren();
    if (!view.routes) return;
    const { routes, recommended_route_id } = view.routes;
    for (const route of routes) {
        const row = h("div", "route-row");
        row.setAttribute("data-route-id", String(route.route_id));
        const title = h(
            "span",
            route.route_id === recommended_route_id ? "route-name recommended" : "route-name",
            `Route ${route.route_id + 1}`,
        );
        if (route.route_id === recommended_route_id) {
            title.textContent += " ★ recommended";
        }
        row.appendChild(title);
        row.appendChild(h("span", "route-meta", `${route.length} segments via ${route.node_ids.join(" → ")}`));

        const stars = h("span", "stars");
        const current = view.ratings[route.route_id] ?? 0;
        for (let likert = 1; likert <= 5; likert++) {
            const star = h("button", likert <= current ? "star filled" : "star", "★");
            star.setAttribute("data-likert", String(likert));
            star.title = `rate ${likert}/5`;
            star.addEventListener("click", () => void store.rateRoute(route.route_id, likert));
            stars.appendChild(star);
        }
        row.appendChild(stars);
        container.appendChild(row);
    }
}

function renderStatus(container: HTMLElement, view: SessionView): void {
    container.replaceChildren();
    if (view.routes && view.phase !== "finished") {
        container.appendChild(
            h("span", "map-title", `Map ${view.routes.map_index + 1}: ${view.routes.map.name}`),
        );
    }
    if (view.phase === "finished") {
        container.appendChild(h("span", "map-title", "Session complete, thanks for riding along"));
    }
    if (view.lastAdaptation) {
        const a = view.lastAdaptation;
        container.appendChild(
            h(
                "span",
                "adaptation-info",
                `last adaptation: ${a.generations} generations, fitness ${a.winner_components.fitness.toFixed(4)}`,
            ),
        );
    }
    const checkpoint = view.checkpoints[view.checkpoints.length - 1];
    if (checkpoint) {
        const pretty = checkpoint.map((w, i) => `${ATTRIBUTE_NAMES[i]} ${w.toFixed(3)}`).join(" | ");
        const line = h("span", "current-prefs", `current preference: ${pretty}`);
        line.setAttribute("data-preference", JSON.stringify(checkpoint));
        container.appendChild(line);
    }
}

export interface App {
    store: SessionStore;
    root: HTMLElement;
}

export function initApp(root: HTMLElement, baseUrl: string, fetchFn?: FetchFn): App {
    const api = new SessionApi(baseUrl, fetchFn);
    const store = new SessionStore(api);

    root.replaceChildren();
    root.className = "console-root";
    const banner = h("div", "banner hidden");
    const status = h("div", "status");
    const mapBox = h("div", "map-box");
    const routeList = h("div", "route-list");
    const complaintBox = h("div", "complaint-box");
    const chartBox = h("div", "chart-box");

    const heading = h("h1", "title", "Route preference console");
    root.append(heading, banner, status, mapBox, routeList, complaintBox, chartBox);

    const buttons: HTMLButtonElement[] = [];
    complaintBox.appendChild(h("div", "prompt", "How was the recommended route?"));
    for (const { option, label } of COMPLAINT_OPTIONS) {
        const button = h("button", "complaint-button", label);
        button.setAttribute("data-option", option);
        button.addEventListener("click", () => void store.submitComplaint(option));
        buttons.push(button);
        complaintBox.appendChild(button);
    }

    store.subscribe((view) => {
        banner.classList.toggle("hidden", view.phase !== "error");
        if (view.phase === "error") {
            banner.replaceChildren();
            banner.appendChild(h("span", "banner-text", `Service error: ${view.error ?? "unknown"}`));
            const retry = h("button", "retry-button", "Retry");
            retry.addEventListener("click", () => void store.start());
            banner.appendChild(retry);
        }
        const active = view.phase === "awaiting_feedback";
        for (const button of buttons) button.disabled = !active;
        renderStatus(status, view);
        if (view.routes) renderMap(mapBox, view.routes);
        renderRouteList(routeList, view, store);
        renderChart(chartBox, view.checkpoints);
    });

    void store.start();
    return { store, root };
}

declare global {
    interface Window {
        prefloopApp?: App;
    }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
    window.prefloopApp = initApp(document.getElementById("app")!, "");
}
