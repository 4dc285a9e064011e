/** Explorer state: current inputs, last responses, pending indicator.
 *
 * Widget values are clamped here so the state can never hold an input the
 * service would reject on range grounds; infeasible assumption combinations
 * are still possible (that is the point) and come back as marked outcomes.
 */

import type { ArmInput, AssumptionSpec } from "./types.js";

export type AssumptionKind = "agnostic" | "mar" | "bounded_variation";

export interface ExplorerState {
  mean: number;
  rate: number;
  assumptionKind: AssumptionKind;
  delta0: number;
  delta1: number;
  symmetric: boolean;
  sweepMax: number;
  sweepSteps: number;
  arms: ArmInput[];
  pending: boolean;
}

export function clampUnit(value: number): number {
  if (Number.isNaN(value)) return 0;
  return Math.min(1, Math.max(0, value));
}

export function clampDelta(value: number): number {
  if (Number.isNaN(value)) return 0;
  return Math.min(1, Math.max(-1, value));
}

export function initialState(): ExplorerState {
  return {
    mean: 0.544,
    rate: 0.014,
    assumptionKind: "agnostic",
    delta0: -0.1,
    delta1: 0.1,
    symmetric: true,
    sweepMax: 0.5,
    sweepSteps: 11,
    arms: [
      {
        label: "a",
        share: 0.2,
        observed_mean: 0.6,
        assumption: { type: "restriction_set", gamma: { lo: 0.1, hi: 0.975 } },
      },
      {
        label: "b",
        share: 0.8,
        observed_mean: 0.45,
        assumption: { type: "restriction_set", gamma: { lo: 0.2, hi: 0.7 } },
      },
    ],
    pending: false,
  };
}

/** Set one endpoint of the delta band, keeping delta0 <= delta1. */
export function setDelta(
  state: ExplorerState,
  which: "delta0" | "delta1",
  value: number,
): void {
  const v = clampDelta(value);
  if (state.symmetric) {
    const magnitude = Math.abs(v);
    state.delta0 = -magnitude;
    state.delta1 = magnitude;
    return;
  }
  if (which === "delta0") {
    state.delta0 = Math.min(v, state.delta1);
  } else {
    state.delta1 = Math.max(v, state.delta0);
  }
}

export function currentAssumption(state: ExplorerState): AssumptionSpec {
  switch (state.assumptionKind) {
    case "agnostic":
      return { type: "agnostic" };
    case "mar":
      return { type: "mar" };
    case "bounded_variation":
      return {
        type: "bounded_variation",
        delta0: state.delta0,
        delta1: state.delta1,
      };
  }
}

/** Symmetric delta grid from 0 to sweepMax, inclusive. */
export function sweepPairs(state: ExplorerState): [number, number][] {
  const pairs: [number, number][] = [];
  const steps = Math.max(2, state.sweepSteps);
  for (let i = 0; i < steps; i++) {
    const d = (state.sweepMax * i) / (steps - 1);
    pairs.push([-d, d]);
  }
  return pairs;
}
