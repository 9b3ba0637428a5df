import { EnginePayload, FeedbackForm, PaintingCard, QUESTIONS, VISITING_STYLES } from "./types.js";

const PROMPTS: Record<(typeof QUESTIONS)[number], string> = {
  accuracy: "The recommended paintings match my interests.",
  diversity: "The recommended paintings are diverse.",
  novelty: "The recommendations include paintings I did not know.",
  serendipity: "The recommendations include pleasant surprises.",
};

export function escapeHtml(s: string): string {
  return s.replace(/[&<>"']/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;", "'": "&#39;" })[c]!);
}

function card(p: PaintingCard, controls: string): string {
  const src = escapeHtml(p.image_ref.startsWith("images/") ? p.image_ref : `images/${p.image_ref}`);
  return (
    `<figure class="card" data-id="${escapeHtml(p.id)}">` +
    `<img src="${src}" alt="${escapeHtml(p.title)}" data-enlarge="${src}" tabindex="0">` +
    `<figcaption>${escapeHtml(p.title)}<br><small>${escapeHtml(p.artist)} ${escapeHtml(p.date)}</small></figcaption>` +
    controls +
    `</figure>`
  );
}

function scale(name: string, value: number | undefined): string {
  let out = `<div class="scale" role="radiogroup">`;
  for (let v = 1; v <= 5; ++v) {
    const checked = value === v ? " checked" : "";
    out += `<label><input type="radio" name="${escapeHtml(name)}" value="${v}"${checked}>${v}</label>`;
  }
  return out + `</div>`;
}

export function renderWelcome(): string {
  const styles = VISITING_STYLES.map((s) => `<option value="${s}">${s}</option>`).join("");
  return (
    `<form id="welcome"><h1>Painting recommendations</h1>` +
    `<label>Age <input name="age" required></label>` +
    `<label>Gender <input name="gender"></label>` +
    `<label>Visiting style <select name="visiting_style">${styles}</select></label>` +
    `<button type="submit">Start</button></form>`
  );
}

export function renderElicitation(paintings: readonly PaintingCard[], ratings: Record<string, number>): string {
  const complete = paintings.length > 0 && paintings.every((p) => ratings[p.id] !== undefined);
  return (
    `<form id="elicitation"><h2>Rate each painting</h2><div class="grid">` +
    paintings.map((p) => card(p, scale(`rating-${p.id}`, ratings[p.id]))).join("") +
    `</div><button type="submit"${complete ? "" : " disabled"}>Continue</button></form>`
  );
}

/// The engine id travels with the payload for the feedback call but is
/// never part of the markup.
export function renderEngineStep(payload: EnginePayload, form: FeedbackForm, total: number): string {
  const complete = QUESTIONS.every((q) => form[q] !== undefined);
  const questions = QUESTIONS.map((q) => `<fieldset><legend>${PROMPTS[q]}</legend>${scale(q, form[q])}</fieldset>`).join("");
  return (
    `<form id="feedback"><h2>Recommendations ${payload.index + 1} of ${total}</h2><div class="grid">` +
    payload.paintings.map((p) => card(p, "")).join("") +
    `</div>${questions}<button type="submit"${complete ? "" : " disabled"}>Submit</button></form>`
  );
}

export function renderDone(): string {
  return `<section id="done"><h2>Thank you</h2><p>Your answers have been recorded.</p></section>`;
}

export function renderError(message: string): string {
  return `<div class="error" role="alert">${escapeHtml(message)} <button data-retry>Retry</button></div>`;
}

export function renderModal(src: string): string {
  return `<div class="modal" role="dialog" data-close><img src="${escapeHtml(src)}" alt=""></div>`;
}
