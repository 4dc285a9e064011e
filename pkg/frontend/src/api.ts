/** Thin client for the /v1 API plus the request-discipline helpers.
 *
 * All mathematics happens server-side; this module only moves JSON. The
 * explorer sends at most one debounced request per input burst and discards
 * out-of-order responses by sequence number (last write wins).
 */

import type {
  ApiError,
  ArmInput,
  AssumptionSpec,
  PollAuditResponse,
  SweepResponse,
  TreatmentResponse,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiError,
  ) {
    super(`${status}: ${body.message}`);
  }
}

/** Collapses input bursts: only the last operation within the window runs. */
export class Debouncer {
  private handle: ReturnType<typeof setTimeout> | undefined;

  constructor(readonly delayMs = 150) {}

  schedule(op: () => void): void {
    if (this.handle !== undefined) clearTimeout(this.handle);
    this.handle = setTimeout(() => {
      this.handle = undefined;
      op();
    }, this.delayMs);
  }
}

/** Monotone tickets; a response is rendered only if its ticket is newest. */
export class SequenceGate {
  private seq = 0;

  issue(): number {
    return ++this.seq;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.seq;
  }
}

async function post<T>(base: string, path: string, body: unknown): Promise<T> {
  const response = await fetch(base + path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  const payload = await response.json();
  if (!response.ok) {
    throw new ServiceError(response.status, payload as ApiError);
  }
  return payload as T;
}

export class ExplorerClient {
  constructor(readonly base = "") {}

  health(): Promise<{ status: string }> {
    return fetch(this.base + "/v1/health").then((r) => r.json());
  }

  auditPoll(
    share: number,
    rate: number,
    assumption: AssumptionSpec,
  ): Promise<PollAuditResponse> {
    return post(this.base, "/v1/poll-audit", {
      polls: [
        {
          poll_id: "explorer",
          candidate: "candidate",
          respondent_share: share,
          response_rate: rate,
          as_of: "",
        },
      ],
      assumptions: [assumption],
    });
  }

  sweep(
    mean: number,
    rate: number,
    deltas: [number, number][],
  ): Promise<SweepResponse> {
    return post(this.base, "/v1/sweep", { mean, rate, deltas });
  }

  treatment(stratumLabel: string, arms: ArmInput[]): Promise<TreatmentResponse> {
    return post(this.base, "/v1/treatment", {
      stratum_label: stratumLabel,
      arms,
    });
  }
}
