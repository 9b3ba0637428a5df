import { StudyApi } from "./api.js";
import { renderDone, renderElicitation, renderEngineStep, renderError, renderModal, renderWelcome } from "./render.js";
import * as S from "./state.js";
import { EnginePayload, FeedbackForm, PaintingCard, QUESTIONS } from "./types.js";

const api = new StudyApi();
const root = document.getElementById("app")!;
let state = S.initialState();
let shown: PaintingCard[] = [];
let payload: EnginePayload | null = null;
let form: FeedbackForm = {};

async function guarded(action: () => Promise<void>): Promise<void> {
  try {
    await action();
  } catch (e) {
    root.insertAdjacentHTML("afterbegin", renderError((e as Error).message));
    root.querySelector("[data-retry]")?.addEventListener("click", () => void guarded(action).then(draw));
  }
}

async function load(): Promise<void> {
  if (state.step === "elicitation") shown = await api.elicitation(state.token!);
  if (state.step.startsWith("engine_")) {
    payload = await api.recommendations(state.token!, S.engineIndex(state.step));
    form = {};
  }
}

function draw(): void {
  if (state.step === "welcome") root.innerHTML = renderWelcome();
  else if (state.step === "elicitation") root.innerHTML = renderElicitation(shown, state.ratings);
  else if (state.step === "done") root.innerHTML = renderDone();
  else if (payload) root.innerHTML = renderEngineStep(payload, form, S.ENGINE_STEPS);
}

root.addEventListener("change", (ev) => {
  const input = ev.target as HTMLInputElement;
  if (input.type !== "radio") return;
  const value = Number(input.value);
  if (state.step === "elicitation") state = S.rate(state, input.name.slice("rating-".length), value);
  else if ((QUESTIONS as readonly string[]).includes(input.name)) form = { ...form, [input.name]: value };
  draw();
});

root.addEventListener("click", (ev) => {
  const el = ev.target as HTMLElement;
  if (el.dataset.enlarge) root.insertAdjacentHTML("beforeend", renderModal(el.dataset.enlarge));
  else if (el.closest("[data-close]")) el.closest("[data-close]")!.remove();
});

root.addEventListener("submit", (ev) => {
  ev.preventDefault();
  const target = ev.target as HTMLFormElement;
  void guarded(async () => {
    if (target.id === "welcome") {
      const data = new FormData(target);
      const created = await api.createSession(String(data.get("age")), String(data.get("gender")), String(data.get("visiting_style")));
      state = S.advance({ ...state, token: created.session_id }, "elicitation");
      location.hash = S.hashForToken(created.session_id);
    } else if (target.id === "elicitation" && S.elicitationComplete(state, shown.map((p) => p.id))) {
      await api.submitRatings(state.token!, state.ratings);
      state = S.ratingsSubmitted(state);
    } else if (target.id === "feedback" && payload && S.feedbackComplete(form)) {
      await api.submitFeedback(state.token!, payload.engine_id, form);
      state = S.afterFeedback(state);
    } else {
      return;
    }
    await load();
    draw();
  });
});

void guarded(async () => {
  const token = S.tokenFromHash(location.hash);
  if (token) {
    const status = await api.status(token);
    state = { token, step: S.stepFromServer(status.step), ratings: {} };
    await load();
  }
  draw();
});
