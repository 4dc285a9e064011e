/** Wire types of the /v1 API, mirrored field-for-field. */

export type AssumptionSpec =
  | { type: "agnostic" }
  | { type: "mar" }
  | { type: "restriction_set"; gamma: { lo: number; hi: number } }
  | { type: "bounded_variation"; delta0: number; delta1: number };

export interface AuditOutcome {
  assumption: AssumptionSpec;
  feasible: boolean;
  lo?: number;
  hi?: number;
  width?: number;
  mmr_predictor?: number;
  max_regret?: number;
  error?: string;
}

export interface PollReport {
  poll_id: string;
  candidate: string;
  respondent_share: number;
  response_rate: number;
  as_of: string;
  mar_point: number | null;
  outcomes: AuditOutcome[];
}

export interface PollAuditResponse {
  schema_version: string;
  reports: PollReport[];
}

export interface SweepRow {
  delta0: number;
  delta1: number;
  lo: number | null;
  hi: number | null;
  width: number | null;
  mmr_predictor: number | null;
  max_regret: number | null;
  feasible: boolean;
}

export interface SweepResponse {
  schema_version: string;
  rows: SweepRow[];
}

export interface CriterionBlock {
  criterion: string;
  scores: number[];
  optimal_set: number[];
  chosen: number;
  chosen_label: string;
}

export interface TreatmentArmResult {
  label: string;
  share: number;
  assumption: AssumptionSpec;
  lo: number;
  hi: number;
  width: number;
}

export interface TreatmentResponse {
  schema_version: string;
  stratum_label: string;
  arms: TreatmentArmResult[];
  minimax_regret: CriterionBlock;
  maximin: CriterionBlock;
  dominance: { dominated: string; dominator: string }[];
}

export interface ApiError {
  code: string;
  message: string;
  detail?: unknown;
}

export interface ArmInput {
  label: string;
  share: number;
  observed_mean: number | null;
  assumption: AssumptionSpec;
}
