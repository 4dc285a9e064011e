/** DOM glue: apply view models to the document. */

import type {
  ArmRow,
  RegionPanel,
  RegionView,
  SweepView,
  TreatmentView,
} from "./views.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function regionBar(view: RegionView, stale: boolean): HTMLElement {
  const track = el("div", "bar-track" + (stale ? " stale" : ""));
  const fill = el("div", "bar-fill");
  fill.style.left = `${view.barLeftPct}%`;
  fill.style.width = `${Math.max(view.barWidthPct, 0.5)}%`;
  track.appendChild(fill);
  if (view.marMarker) {
    const mar = el("div", "marker mar");
    mar.style.left = `${view.marMarker.pct}%`;
    mar.title = `MAR point ${view.marMarker.valueText}`;
    track.appendChild(mar);
  }
  const mmr = el("div", "marker mmr");
  mmr.style.left = `${view.predictorMarker.pct}%`;
  mmr.title = `minimax-regret predictor ${view.predictorMarker.valueText}`;
  track.appendChild(mmr);
  return track;
}

export function renderRegion(container: HTMLElement, panel: RegionPanel): void {
  container.replaceChildren();
  if (panel.kind === "region") {
    container.appendChild(regionBar(panel, false));
    const stats = el("dl", "stats");
    const pairs: [string, string][] = [
      ["lo", panel.loText],
      ["hi", panel.hiText],
      ["width", panel.widthText],
      ["mmr predictor", panel.predictorText],
      ["max regret", panel.maxRegretText],
    ];
    if (panel.marMarker) pairs.push(["mar point", panel.marMarker.valueText]);
    for (const [k, v] of pairs) {
      stats.appendChild(el("dt", undefined, k));
      stats.appendChild(el("dd", "num", v));
    }
    container.appendChild(stats);
    return;
  }
  const banner = el(
    "div",
    "banner",
    panel.kind === "infeasible"
      ? `contradicts the data: ${panel.message}`
      : `service error ${panel.status} (${panel.code}): ${panel.message}`,
  );
  container.appendChild(banner);
  if (panel.retained) container.appendChild(regionBar(panel.retained, true));
}

export function renderSweep(container: HTMLElement, view: SweepView): void {
  container.replaceChildren();
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("viewBox", "0 0 100 100");
  svg.setAttribute("preserveAspectRatio", "none");
  svg.classList.add("sweep-plot");
  const mk = (points: string, cls: string) => {
    const line = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
    line.setAttribute("points", points);
    line.classList.add(cls);
    svg.appendChild(line);
  };
  mk(view.widthPath, "width-curve");
  mk(view.regretPath, "regret-curve");
  for (const point of view.points.filter((p) => p.feasible)) {
    const dot = document.createElementNS("http://www.w3.org/2000/svg", "circle");
    dot.setAttribute("cx", String(point.xPct));
    dot.setAttribute("cy", String(100 - (point.widthYPct as number)));
    dot.setAttribute("r", "1.4");
    const title = document.createElementNS("http://www.w3.org/2000/svg", "title");
    title.textContent = point.hoverText;
    dot.appendChild(title);
    svg.appendChild(dot);
  }
  if (view.truncatedAtIndex !== null) {
    const cut = view.points[view.truncatedAtIndex];
    const mark = document.createElementNS("http://www.w3.org/2000/svg", "line");
    mark.setAttribute("x1", String(cut.xPct));
    mark.setAttribute("x2", String(cut.xPct));
    mark.setAttribute("y1", "0");
    mark.setAttribute("y2", "100");
    mark.classList.add("truncation");
    svg.appendChild(mark);
  }
  container.appendChild(svg);
  const note = el(
    "p",
    "hint",
    view.truncatedAtIndex === null
      ? "width (teal) and max regret (orange) vs delta"
      : "curve truncated where the assumption contradicts the data",
  );
  container.appendChild(note);
}

function armRowElement(row: ArmRow): HTMLElement {
  const tr = el("tr", row.dominated ? "dominated" : undefined);
  const name = el("td", "num", row.label);
  if (row.mmrChosen) name.classList.add("mmr-pick");
  if (row.maximinChosen) name.classList.add("maximin-pick");
  tr.appendChild(name);
  const barCell = el("td", "bar-cell");
  const track = el("div", "bar-track small");
  const fill = el("div", "bar-fill");
  fill.style.left = `${row.barLeftPct}%`;
  fill.style.width = `${Math.max(row.barWidthPct, 0.5)}%`;
  track.appendChild(fill);
  barCell.appendChild(track);
  tr.appendChild(barCell);
  for (const text of [row.loText, row.hiText, row.mmrScoreText, row.maximinScoreText]) {
    tr.appendChild(el("td", "num", text));
  }
  const badges: string[] = [];
  if (row.mmrChosen) badges.push("MMR");
  if (row.maximinChosen) badges.push("maximin");
  if (row.dominated) badges.push("dominated");
  tr.appendChild(el("td", "badges", badges.join(" ")));
  return tr;
}

export function renderTreatment(container: HTMLElement, view: TreatmentView): void {
  container.replaceChildren();
  if (view.criteriaDisagree) {
    container.appendChild(
      el(
        "div",
        "flag",
        `criteria disagree: minimax regret picks ${view.mmrChosenLabel}, ` +
          `maximin picks ${view.maximinChosenLabel}`,
      ),
    );
  }
  const table = el("table", "arms");
  const head = el("tr");
  for (const h of ["arm", "region", "lo", "hi", "max regret", "worst case", ""]) {
    head.appendChild(el("th", undefined, h));
  }
  table.appendChild(head);
  for (const row of view.rows) table.appendChild(armRowElement(row));
  container.appendChild(table);
}

export function renderError(container: HTMLElement, message: string): void {
  container.replaceChildren(el("div", "banner", message));
}
