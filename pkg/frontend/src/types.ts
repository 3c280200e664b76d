export const DIMENSIONS = [
  "favorability",
  "persistence",
  "confidence",
  "accessibility",
  "resistance",
  "buy",
  "recommend",
  "prohibit",
] as const;

export type Dimension = (typeof DIMENSIONS)[number];

export type Mode = "ica" | "independent";

export const MODES: readonly Mode[] = ["ica", "independent"];

export function isDimension(name: string): name is Dimension {
  return (DIMENSIONS as readonly string[]).includes(name);
}

export interface HistogramPayload {
  bin_edges: number[];
  counts: number[];
}

export interface DistributionsPayload {
  brand: string;
  mode: string;
  bins: number;
  users: number;
  distributions: Record<Dimension, HistogramPayload>;
}

export interface UserRowPayload {
  user_id: string;
  profile: Record<string, string>;
  scores: Record<Dimension, number>;
  n_relevant_tweets: number;
}

export interface UsersPayload {
  brand: string;
  mode: string;
  filters: string;
  total: number;
  users: UserRowPayload[];
}

export interface TweetPayload {
  timestamp: number;
  text: string;
}

export interface UserDetailPayload {
  user_id: string;
  brand: string;
  scores: Record<Dimension, number>;
  static_scores: Record<Dimension, number>;
  profile: Record<string, string>;
  relevant_tweets: TweetPayload[];
}

export interface HealthPayload {
  status: string;
  brands: string[];
}
