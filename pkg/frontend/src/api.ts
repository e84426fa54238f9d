import type { ComplaintOption, ComplaintResponse, RoutesResponse, SessionCreated } from "./types.js";

export class ApiError extends Error {
    constructor(
        public status: number,
        public code: string,
        message: string,
    ) {
        super(message);
    }
}

export type FetchFn = typeof fetch;

async function request<T>(fetchFn: FetchFn, url: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
        response = await fetchFn(url, init);
    } catch (err) {
        throw new ApiError(0, "NETWORK", `service unreachable: ${String(err)}`);
    }
    if (response.status === 204) return undefined as T;
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
        throw new ApiError(response.status, body.code ?? "ERROR", body.message ?? response.statusText);
    }
    return body as T;
}

export class SessionApi {
    constructor(
        private baseUrl: string,
        private fetchFn: FetchFn = (...args) => globalThis.fetch(...args),
    ) {}

    createSession(config: Record<string, unknown> = {}): Promise<SessionCreated> {
        return request(this.fetchFn, `${this.baseUrl}/sessions`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ config }),
        });
    }

    getRoutes(sessionId: string): Promise<RoutesResponse> {
        return request(this.fetchFn, `${this.baseUrl}/sessions/${sessionId}/routes`);
    }

    postComplaint(sessionId: string, option: ComplaintOption): Promise<ComplaintResponse> {
        return request(this.fetchFn, `${this.baseUrl}/sessions/${sessionId}/complaint`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ option }),
        });
    }

    postRating(sessionId: string, routeId: number, likert: number): Promise<void> {
        return request(this.fetchFn, `${this.baseUrl}/sessions/${sessionId}/rating`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ route_id: routeId, likert }),
        });
    }
}
