// Payload shapes of the session service. The console never derives these
// numbers itself; everything displayed comes from one of these responses.

export interface MapNode {
    id: string;
    x: number;
    y: number;
}

export interface MapEdge {
    id: string;
    from: string;
    to: string;
    length: number;
    surface: "rough_stone" | "fine_stone" | "smooth";
    greenery: "none" | "bushes" | "trees";
    noisy: boolean;
}

export interface MapPayload {
    name: string;
    start: string;
    goal: string;
    nodes: MapNode[];
    edges: MapEdge[];
}

export interface RoutePayload {
    route_id: number;
    node_ids: string[];
    edge_ids: string[];
    utilities: number[];
    length: number;
}

export interface RoutesResponse {
    map: MapPayload;
    map_index: number;
    routes: RoutePayload[];
    recommended_route_id: number;
}

export interface Recommendation extends RoutePayload {
    score: number;
    map_index: number;
    map_name: string;
}

export interface SessionCreated {
    id: string;
    recommendation: Recommendation | null;
}

export interface AdaptationReport {
    generations: number;
    best_fitness_trace: number[];
    winner_components: { f1: number; f2: number; f3: number; fitness: number };
    seed: number;
    backend: string;
}

export interface ComplaintResponse {
    recommendation: Recommendation | null;
    checkpoint: number[];
    adaptation: AdaptationReport | null;
    finished: boolean;
}

export type ComplaintOption =
    | "dislike_road"
    | "excessive_noise"
    | "excessive_bumpiness"
    | "excessive_distance"
    | "none";

// Exactly the five feedback options offered to study participants.
export const COMPLAINT_OPTIONS: { option: ComplaintOption; label: string }[] = [
    { option: "dislike_road", label: "I don't like this road" },
    { option: "excessive_noise", label: "Excessive noise" },
    { option: "excessive_bumpiness", label: "Excessive bumpiness" },
    { option: "excessive_distance", label: "Excessive distance" },
    { option: "none", label: "No complaints" },
];

export const ATTRIBUTE_NAMES = ["Road condition", "Efficiency", "Aesthetic appeal"];
