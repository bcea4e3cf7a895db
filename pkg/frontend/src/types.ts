// Shapes served by the backend. The UI renders these verbatim; it never
// aggregates anything itself.

export interface CatalogSample {
  id: number;
  name: string;
  fibre_category: string;
}

export interface AttemptView {
  index: number;
  new_description: string;
  predicted_id: number;
  judgment: "pending" | "correct" | "incorrect";
  validity: number | null;
  similarity: number | null;
}

export interface SessionView {
  session_id: string;
  target_id: number;
  reference_id: number;
  shown_reference_id: number;
  state: "awaiting_description" | "awaiting_judgment" | "won" | "lost";
  max_attempts: number;
  attempts: AttemptView[];
}

export interface DescribeResult {
  session_id: string;
  predicted_id: number;
  attempt_index: number;
  state: SessionView["state"];
}

export interface ScoreStats {
  mean: number;
  std: number | null;
  histogram: Record<string, number>;
  count: number;
}

export interface PerTextileRow {
  id: number;
  name: string;
  targeted: number;
  success_rate: number | null;
  mean_validity: number | null;
  mean_similarity: number | null;
}

export interface Report {
  total_tasks: number;
  wins: number;
  total_attempts: number;
  overall_success_rate: number;
  per_textile: PerTextileRow[];
  attempts: Record<string, number | null>;
  validity: ScoreStats | null;
  similarity: ScoreStats | null;
  confusion_ids: number[];
  confusion: number[][];
  metadata: Record<string, unknown>;
}

export interface MetricsPayload {
  total_tasks: number;
  report: Report | null;
}

export interface PlanPair {
  target_id: number;
  reference_id: number;
}
