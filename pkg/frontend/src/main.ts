/** Wire the explorer: inputs -> debounced requests -> view models -> DOM. */

import { Debouncer, ExplorerClient, SequenceGate, ServiceError } from "./api.js";
import {
  clampUnit,
  currentAssumption,
  initialState,
  setDelta,
  sweepPairs,
  type ExplorerState,
} from "./state.js";
import { renderError, renderRegion, renderSweep, renderTreatment } from "./render.js";
import {
  buildRegionView,
  buildSweepView,
  buildTreatmentView,
  type RegionView,
} from "./views.js";

const client = new ExplorerClient(
  (window as unknown as { AMBIT_BASE?: string }).AMBIT_BASE ?? "http://127.0.0.1:8080",
);
const state: ExplorerState = initialState();

const regionGate = new SequenceGate();
const sweepGate = new SequenceGate();
const treatmentGate = new SequenceGate();
const debouncer = new Debouncer(150);

let lastRegion: RegionView | null = null;

const $ = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
};

function setPending(on: boolean): void {
  state.pending = on;
  $("pending").classList.toggle("on", on);
}

async function refreshRegionAndSweep(): Promise<void> {
  const regionTicket = regionGate.issue();
  const sweepTicket = sweepGate.issue();
  setPending(true);
  try {
    const audit = await client.auditPoll(
      state.mean,
      state.rate,
      currentAssumption(state),
    );
    if (regionGate.isCurrent(regionTicket)) {
      const view = buildRegionView(audit, lastRegion);
      if (view.kind === "region") lastRegion = view;
      renderRegion($("region-panel"), view);
    }
    const sweep = await client.sweep(state.mean, state.rate, sweepPairs(state));
    if (sweepGate.isCurrent(sweepTicket)) {
      renderSweep($("sweep-panel"), buildSweepView(sweep));
    }
  } catch (error) {
    if (!regionGate.isCurrent(regionTicket)) return;
    if (error instanceof ServiceError) {
      renderRegion($("region-panel"), {
        kind: "service-error",
        status: error.status,
        code: error.body.code,
        message: error.body.message,
        retained: lastRegion,
      });
    } else {
      renderError($("region-panel"), `request failed: ${error}`);
    }
  } finally {
    if (regionGate.isCurrent(regionTicket)) setPending(false);
  }
}

async function refreshTreatment(): Promise<void> {
  const ticket = treatmentGate.issue();
  try {
    const response = await client.treatment("explorer", state.arms);
    if (treatmentGate.isCurrent(ticket)) {
      renderTreatment($("treatment-panel"), buildTreatmentView(response));
    }
  } catch (error) {
    if (!treatmentGate.isCurrent(ticket)) return;
    const message =
      error instanceof ServiceError
        ? `service error ${error.status} (${error.body.code}): ${error.body.message}`
        : `request failed: ${error}`;
    renderError($("treatment-panel"), message);
  }
}

function scheduleRefresh(): void {
  debouncer.schedule(() => {
    void refreshRegionAndSweep();
  });
}

function bindSlider(id: string, onInput: (value: number) => void): void {
  const slider = $<HTMLInputElement>(id);
  const label = $(`${id}-value`);
  const apply = () => {
    const v = Number(slider.value);
    onInput(v);
    label.textContent = slider.value;
    scheduleRefresh();
  };
  slider.addEventListener("input", apply);
}

function bindArmEditor(): void {
  const editor = $<HTMLTextAreaElement>("arms-json");
  editor.value = JSON.stringify(state.arms, null, 2);
  $("arms-apply").addEventListener("click", () => {
    try {
      state.arms = JSON.parse(editor.value);
    } catch (error) {
      renderError($("treatment-panel"), `arm JSON does not parse: ${error}`);
      return;
    }
    void refreshTreatment();
  });
}

function init(): void {
  bindSlider("mean", (v) => {
    state.mean = clampUnit(v);
  });
  bindSlider("rate", (v) => {
    state.rate = clampUnit(v);
  });
  bindSlider("delta", (v) => {
    setDelta(state, "delta1", v);
  });
  $<HTMLSelectElement>("assumption").addEventListener("change", (event) => {
    state.assumptionKind = (event.target as HTMLSelectElement)
      .value as ExplorerState["assumptionKind"];
    $("delta-row").classList.toggle(
      "hidden",
      state.assumptionKind !== "bounded_variation",
    );
    scheduleRefresh();
  });
  bindArmEditor();
  void client
    .health()
    .then(() => {
      $("health").textContent = "service: ok";
    })
    .catch(() => {
      $("health").textContent = "service: unreachable";
    });
  void refreshRegionAndSweep();
  void refreshTreatment();
}

init();
