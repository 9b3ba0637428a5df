import { EnginePayload, FeedbackForm, PaintingCard, SessionStatus } from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, readonly kind: string, message: string) {
    super(message);
  }
}

type Fetch = (input: string, init?: RequestInit) => Promise<Response>;

export class StudyApi {
  constructor(private readonly base = "", private readonly fetchFn: Fetch = (i, o) => fetch(i, o)) {}

  private async call<T>(path: string, body?: unknown): Promise<T> {
    const init: RequestInit = body === undefined
      ? { method: "GET" }
      : { method: "POST", headers: { "Content-Type": "application/json" }, body: JSON.stringify(body) };
    let res: Response;
    try {
      res = await this.fetchFn(this.base + path, init);
    } catch (e) {
      throw new ApiError(0, "network", `network error: ${(e as Error).message}`);
    }
    const json = await res.json().catch(() => ({}));
    if (!res.ok) throw new ApiError(res.status, json.kind ?? "unknown", json.error ?? res.statusText);
    return json as T;
  }

  createSession(age: string, gender: string, visitingStyle: string) {
    return this.call<SessionStatus & { r: number }>("/sessions", { age, gender, visiting_style: visitingStyle });
  }
  status(token: string) {
    return this.call<SessionStatus>(`/sessions/${token}`);
  }
  elicitation(token: string) {
    return this.call<{ paintings: PaintingCard[] }>(`/sessions/${token}/elicitation`).then((r) => r.paintings);
  }
  submitRatings(token: string, ratings: Record<string, number>) {
    return this.call<unknown>(`/sessions/${token}/ratings`, { ratings });
  }
  recommendations(token: string, index: number) {
    return this.call<EnginePayload>(`/sessions/${token}/recommendations/${index}`);
  }
  submitFeedback(token: string, engineId: string, form: FeedbackForm) {
    return this.call<{ complete: boolean }>(`/sessions/${token}/feedback`, { engine_id: engineId, ...form });
  }
}
