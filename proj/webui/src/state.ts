import { FeedbackForm, QUESTIONS } from "./types.js";

export const ENGINE_STEPS = 5;

export type Step = "welcome" | "elicitation" | `engine_${number}` | "done";

export interface UiSessionState {
  token: string | null;
  step: Step;
  ratings: Record<string, number>;
}

export const initialState = (): UiSessionState => ({ token: null, step: "welcome", ratings: {} });

/// Position of a step in the study; transitions may only increase it.
export function stepOrder(step: Step): number {
  if (step === "welcome") return 0;
  if (step === "elicitation") return 1;
  if (step === "done") return 2 + ENGINE_STEPS;
  const i = Number(step.slice("engine_".length));
  if (!Number.isInteger(i) || i < 0 || i >= ENGINE_STEPS) throw new Error(`unknown step ${step}`);
  return 2 + i;
}

export function advance(state: UiSessionState, next: Step): UiSessionState {
  if (stepOrder(next) <= stepOrder(state.step)) {
    throw new Error(`cannot move from ${state.step} back to ${next}`);
  }
  return { ...state, step: next };
}

export function rate(state: UiSessionState, paintingId: string, rating: number): UiSessionState {
  if (state.step !== "elicitation") throw new Error("ratings are only collected during elicitation");
  if (!Number.isInteger(rating) || rating < 1 || rating > 5) throw new Error("rating must be 1..5");
  return { ...state, ratings: { ...state.ratings, [paintingId]: rating } };
}

export function elicitationComplete(state: UiSessionState, shownIds: readonly string[]): boolean {
  return shownIds.length > 0 && shownIds.every((id) => state.ratings[id] !== undefined);
}

/// The buffer is cleared once the ratings have been sent.
export function ratingsSubmitted(state: UiSessionState): UiSessionState {
  return { ...advance(state, "engine_0"), ratings: {} };
}

export function feedbackComplete(form: FeedbackForm): boolean {
  return QUESTIONS.every((q) => Number.isInteger(form[q]) && form[q]! >= 1 && form[q]! <= 5);
}

export function afterFeedback(state: UiSessionState): UiSessionState {
  const order = stepOrder(state.step);
  if (order < 2 || order >= 2 + ENGINE_STEPS) throw new Error("no engine step in progress");
  const i = order - 2;
  return advance(state, i + 1 === ENGINE_STEPS ? "done" : `engine_${i + 1}`);
}

/// Maps the server's session step onto the screen to show after a refresh.
export function stepFromServer(serverStep: string): Step {
  if (serverStep === "elicitation" || serverStep === "ratings") return "elicitation";
  if (serverStep === "done") return "done";
  const m = /^(engine|feedback)_(\d+)$/.exec(serverStep);
  if (!m) throw new Error(`unknown server step ${serverStep}`);
  return `engine_${Number(m[2])}`;
}

export function engineIndex(step: Step): number {
  const order = stepOrder(step);
  if (order < 2 || order >= 2 + ENGINE_STEPS) throw new Error(`${step} is not an engine step`);
  return order - 2;
}

/// The session token lives in the URL fragment so a refresh keeps it.
export function tokenFromHash(hash: string): string | null {
  const m = /(?:^#|&)session=([0-9a-f]+)/.exec(hash);
  return m ? m[1] : null;
}

export const hashForToken = (token: string): string => `#session=${token}`;
