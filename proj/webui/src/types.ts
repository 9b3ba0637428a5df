export interface PaintingCard {
  id: string;
  title: string;
  artist: string;
  date: string;
  image_ref: string;
}

export interface EnginePayload {
  index: number;
  engine_id: string;
  paintings: PaintingCard[];
}

export interface SessionStatus {
  session_id: string;
  step: string;
  engine_count: number;
  served: number;
  feedback_count: number;
  complete: boolean;
}

export const QUESTIONS = ["accuracy", "diversity", "novelty", "serendipity"] as const;
export type Question = (typeof QUESTIONS)[number];
export type FeedbackForm = Partial<Record<Question, number>>;

export const VISITING_STYLES = ["ant", "fish", "grasshopper", "butterfly"] as const;
