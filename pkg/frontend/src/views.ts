/** Pure view models: service responses in, render-ready structures out.
 *
 * Every number displayed by the explorer is carried through these builders
 * verbatim from the service response (String(value), full precision); the
 * only arithmetic here is pixel geometry for bars and curves. That keeps the
 * UI parity-testable: rendered text must parse back to the exact response
 * values.
 */

import type {
  PollAuditResponse,
  SweepResponse,
  TreatmentResponse,
} from "./types.js";

export interface Marker {
  valueText: string;
  pct: number;
}

export interface RegionView {
  kind: "region";
  loText: string;
  hiText: string;
  widthText: string;
  predictorText: string;
  maxRegretText: string;
  barLeftPct: number;
  barWidthPct: number;
  marMarker: Marker | null;
  predictorMarker: Marker;
}

export interface InfeasibleView {
  kind: "infeasible";
  message: string;
  retained: RegionView | null;
}

export interface ServiceErrorView {
  kind: "service-error";
  status: number;
  code: string;
  message: string;
  retained: RegionView | null;
}

export type RegionPanel = RegionView | InfeasibleView | ServiceErrorView;

const pct = (v: number): number => v * 100;

export function buildRegionView(
  response: PollAuditResponse,
  previous: RegionView | null,
): RegionView | InfeasibleView {
  const report = response.reports[0];
  const outcome = report.outcomes[0];
  if (!outcome.feasible) {
    return {
      kind: "infeasible",
      message: outcome.error ?? "assumption contradicts the data",
      retained: previous,
    };
  }
  const lo = outcome.lo!;
  const hi = outcome.hi!;
  const predictor = outcome.mmr_predictor!;
  return {
    kind: "region",
    loText: String(lo),
    hiText: String(hi),
    widthText: String(outcome.width!),
    predictorText: String(predictor),
    maxRegretText: String(outcome.max_regret!),
    barLeftPct: pct(lo),
    barWidthPct: pct(hi - lo),
    marMarker:
      report.mar_point === null
        ? null
        : { valueText: String(report.mar_point), pct: pct(report.mar_point) },
    predictorMarker: { valueText: String(predictor), pct: pct(predictor) },
  };
}

export interface SweepPoint {
  delta1: number;
  deltaText: string;
  feasible: boolean;
  widthText: string | null;
  regretText: string | null;
  hoverText: string;
  xPct: number;
  widthYPct: number | null;
  regretYPct: number | null;
}

export interface SweepView {
  kind: "sweep";
  points: SweepPoint[];
  widthPath: string;
  regretPath: string;
  truncatedAtIndex: number | null;
}

export function buildSweepView(response: SweepResponse): SweepView {
  const rows = response.rows;
  const maxDelta = Math.max(...rows.map((r) => Math.abs(r.delta1)), 1e-9);
  const points: SweepPoint[] = rows.map((row) => {
    const x = pct(Math.abs(row.delta1) / maxDelta);
    if (!row.feasible) {
      return {
        delta1: row.delta1,
        deltaText: String(row.delta1),
        feasible: false,
        widthText: null,
        regretText: null,
        hoverText: `delta [${row.delta0}, ${row.delta1}]: infeasible`,
        xPct: x,
        widthYPct: null,
        regretYPct: null,
      };
    }
    return {
      delta1: row.delta1,
      deltaText: String(row.delta1),
      feasible: true,
      widthText: String(row.width),
      regretText: String(row.max_regret),
      hoverText: `delta [${row.delta0}, ${row.delta1}]: region [${row.lo}, ${row.hi}]`,
      xPct: x,
      widthYPct: pct(row.width!),
      regretYPct: pct(row.max_regret! / 0.25),
    };
  });
  const firstInfeasible = points.findIndex((p) => !p.feasible);
  const feasible = firstInfeasible === -1 ? points : points.slice(0, firstInfeasible);
  const path = (y: (p: SweepPoint) => number | null): string =>
    feasible
      .filter((p) => y(p) !== null)
      .map((p) => `${p.xPct},${100 - (y(p) as number)}`)
      .join(" ");
  return {
    kind: "sweep",
    points,
    widthPath: path((p) => p.widthYPct),
    regretPath: path((p) => p.regretYPct),
    truncatedAtIndex: firstInfeasible === -1 ? null : firstInfeasible,
  };
}

export interface ArmRow {
  label: string;
  loText: string;
  hiText: string;
  widthText: string;
  mmrScoreText: string;
  maximinScoreText: string;
  barLeftPct: number;
  barWidthPct: number;
  mmrChosen: boolean;
  maximinChosen: boolean;
  inMmrOptimal: boolean;
  inMaximinOptimal: boolean;
  dominated: boolean;
}

export interface TreatmentView {
  kind: "treatment";
  rows: ArmRow[];
  mmrChosenLabel: string;
  maximinChosenLabel: string;
  criteriaDisagree: boolean;
}

export function buildTreatmentView(response: TreatmentResponse): TreatmentView {
  const dominated = new Set(response.dominance.map((d) => d.dominated));
  const rows = response.arms.map((arm, index) => ({
    label: arm.label,
    loText: String(arm.lo),
    hiText: String(arm.hi),
    widthText: String(arm.width),
    mmrScoreText: String(response.minimax_regret.scores[index]),
    maximinScoreText: String(response.maximin.scores[index]),
    barLeftPct: pct(arm.lo),
    barWidthPct: pct(arm.hi - arm.lo),
    mmrChosen: index === response.minimax_regret.chosen,
    maximinChosen: index === response.maximin.chosen,
    inMmrOptimal: response.minimax_regret.optimal_set.includes(index),
    inMaximinOptimal: response.maximin.optimal_set.includes(index),
    dominated: dominated.has(arm.label),
  }));
  return {
    kind: "treatment",
    rows,
    mmrChosenLabel: response.minimax_regret.chosen_label,
    maximinChosenLabel: response.maximin.chosen_label,
    criteriaDisagree:
      response.minimax_regret.chosen_label !== response.maximin.chosen_label,
  };
}
