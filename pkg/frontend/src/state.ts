import { ApiError, SessionApi } from "./api.js";
import type { ComplaintOption, ComplaintResponse, RoutesResponse } from "./types.js";

export type Phase = "idle" | "starting" | "awaiting_feedback" | "submitting" | "finished" | "error";

// The console is a thin client: this state holds service payloads verbatim
// (checkpoints, utilities, reports) and never computes preference math.
export interface SessionView {
    phase: Phase;
    sessionId: string | null;
    routes: RoutesResponse | null;
    checkpoints: number[][];
    complaints: ComplaintOption[];
    ratings: Record<number, number>;
    lastAdaptation: ComplaintResponse["adaptation"];
    error: string | null;
}

const INITIAL_CHECKPOINT = [0.333, 0.333, 0.334];

export class SessionStore {
    view: SessionView = {
        phase: "idle",
        sessionId: null,
        routes: null,
        checkpoints: [],
        complaints: [],
        ratings: {},
        lastAdaptation: null,
        error: null,
    };

    private listeners: Array<(view: SessionView) => void> = [];

    constructor(private api: SessionApi) {}

    subscribe(listener: (view: SessionView) => void): void {
        this.listeners.push(listener);
    }

    private emit(): void {
        for (const listener of this.listeners) listener(this.view);
    }

    private fail(err: unknown): void {
        const message = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
        this.view = { ...this.view, phase: "error", error: message };
        this.emit();
    }

    async start(): Promise<void> {
        if (this.view.phase === "starting") return;
        this.view = {
            phase: "starting",
            sessionId: null,
            routes: null,
            checkpoints: [],
            complaints: [],
            ratings: {},
            lastAdaptation: null,
            error: null,
        };
        this.emit();
        try {
            const created = await this.api.createSession();
            const routes = await this.api.getRoutes(created.id);
            this.view = {
                ...this.view,
                phase: "awaiting_feedback",
                sessionId: created.id,
                routes,
                checkpoints: [INITIAL_CHECKPOINT],
            };
            this.emit();
        } catch (err) {
            this.fail(err);
        }
    }

    async submitComplaint(option: ComplaintOption): Promise<void> {
        // ignoring clicks outside the feedback phase suppresses double submits
        if (this.view.phase !== "awaiting_feedback" || !this.view.sessionId) return;
        const sessionId = this.view.sessionId;
        this.view = { ...this.view, phase: "submitting" };
        this.emit();
        try {
            const result = await this.api.postComplaint(sessionId, option);
            const checkpoints = [...this.view.checkpoints, result.checkpoint];
            const complaints = [...this.view.complaints, option];
            if (result.finished) {
                this.view = {
                    ...this.view,
                    phase: "finished",
                    checkpoints,
                    complaints,
                    lastAdaptation: result.adaptation,
                };
            } else {
                const routes = await this.api.getRoutes(sessionId);
                this.view = {
                    ...this.view,
                    phase: "awaiting_feedback",
                    routes,
                    checkpoints,
                    complaints,
                    ratings: {},
                    lastAdaptation: result.adaptation,
                };
            }
            this.emit();
        } catch (err) {
            if (err instanceof ApiError && err.code === "OUT_OF_ORDER_MESSAGE") {
                this.view = { ...this.view, phase: "finished" };
                this.emit();
                return;
            }
            this.fail(err);
        }
    }

    async rateRoute(routeId: number, likert: number): Promise<void> {
        if (!Number.isInteger(likert) || likert < 1 || likert > 5) {
            throw new RangeError(`likert rating must be an integer in 1..5, got ${likert}`);
        }
        if (this.view.phase !== "awaiting_feedback" || !this.view.sessionId) return;
        try {
            await this.api.postRating(this.view.sessionId, routeId, likert);
            // last write wins, mirroring the service
            this.view = { ...this.view, ratings: { ...this.view.ratings, [routeId]: likert } };
            this.emit();
        } catch (err) {
            this.fail(err);
        }
    }
}
