/** Browser wiring: DOM controls bound to the explorer session. */

import { ApiClient } from "./api.js";
import { ExplorerSession } from "./session.js";
import {
  curvePath,
  highlightRects,
  knotMarkers,
  viewportFor,
  violationMarkers,
} from "./plot.js";
import { ProblemDoc, ShapeMode } from "./types.js";

const SAMPLE_PROBLEM: ProblemDoc = {
  data: {
    knots: [0.0, 0.5, 2.2, 3.3],
    values: [124.0, 331.0, 379.0, 835.0],
    derivatives: null,
  },
  params: {
    alpha: [0.08, 0.06, 0.15],
    u: [0.1, 0.1, 0.1],
    v: [0.09, 15.0, 0.15],
    k: 1,
  },
};

const session = new ExplorerSession(new ApiClient(""));

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function fmt(x: number): string {
  return Number(x.toPrecision(6)).toString();
}

function renderControls(): void {
  const host = el<HTMLDivElement>("controls");
  host.innerHTML = "";
  session.state.controls.forEach((control, n) => {
    const group = document.createElement("fieldset");
    group.className = "control-group";
    const legend = document.createElement("legend");
    legend.textContent = `interval ${n + 1}`;
    group.appendChild(legend);
    if (control.badge) {
      const badge = document.createElement("div");
      badge.className = "badge";
      badge.textContent = control.badge;
      group.appendChild(badge);
    }
    for (const field of ["alpha", "u", "v"] as const) {
      const range =
        field === "alpha"
          ? control.alphaRange
          : field === "u"
            ? control.uRange
            : control.vRange;
      const row = document.createElement("label");
      row.className = "control-row";
      const name = document.createElement("span");
      name.textContent = field;
      const slider = document.createElement("input");
      slider.type = "range";
      slider.min = String(range.min);
      slider.max = String(range.max);
      slider.step = String((range.max - range.min) / 1000 || 1e-6);
      slider.value = String(control[field]);
      const value = document.createElement("output");
      value.textContent = fmt(control[field]);
      slider.addEventListener("input", () => {
        value.textContent = fmt(Number(slider.value));
        void session.onParameterChange(n, field, Number(slider.value));
      });
      row.append(name, slider, value);
      group.appendChild(row);
    }
    host.appendChild(group);
  });
}

function renderPlot(): void {
  const { curve, baseline, derivativeCurve, data, locality, report } = session.state;
  const svg = el<HTMLElement>("plot");
  const svgDeriv = el<HTMLElement>("plot-deriv");
  if (!curve || !data) {
    svg.innerHTML = "";
    svgDeriv.innerHTML = "";
    return;
  }
  const series = baseline ? [curve, baseline] : [curve];
  const vp = viewportFor(series);
  const pieces: string[] = [];
  if (locality && data.knots.length > 1) {
    for (const rect of highlightRects(data.knots, locality.highlighted, vp)) {
      pieces.push(
        `<rect x="${rect.x.toFixed(2)}" y="0" width="${rect.width.toFixed(2)}" ` +
          `height="${vp.height}" class="highlight"/>`,
      );
    }
  }
  if (baseline) {
    pieces.push(`<path d="${curvePath(baseline, vp)}" class="baseline"/>`);
  }
  pieces.push(`<path d="${curvePath(curve, vp)}" class="curve"/>`);
  for (const m of knotMarkers(data.knots, data.values, vp)) {
    pieces.push(
      `<circle cx="${m.cx.toFixed(2)}" cy="${m.cy.toFixed(2)}" r="4" class="knot"/>`,
    );
  }
  if (report && !report.verified) {
    for (const m of violationMarkers(report, curve, vp)) {
      pieces.push(
        `<circle cx="${m.cx.toFixed(2)}" cy="${m.cy.toFixed(2)}" r="3" class="violation"/>`,
      );
    }
  }
  svg.setAttribute("viewBox", `0 0 ${vp.width} ${vp.height}`);
  svg.innerHTML = pieces.join("");

  if (derivativeCurve) {
    const vpd = viewportFor([derivativeCurve], 800, 200);
    svgDeriv.setAttribute("viewBox", `0 0 ${vpd.width} ${vpd.height}`);
    svgDeriv.innerHTML = `<path d="${curvePath(derivativeCurve, vpd)}" class="curve-deriv"/>`;
  }
}

function renderStatus(): void {
  const status = el<HTMLDivElement>("status");
  const { error, modeError, locality, estimatedDerivatives } = session.state;
  const lines: string[] = [];
  if (error) lines.push(`<span class="error">${error}</span>`);
  if (modeError) lines.push(`<span class="error">${modeError}</span>`);
  if (estimatedDerivatives) {
    lines.push(`estimated derivatives: ${estimatedDerivatives.map(fmt).join(", ")}`);
  }
  if (locality && locality.changed) {
    const names = locality.highlighted.map((n) => n + 1).join(", ");
    lines.push(`change concentrated in subinterval ${names}`);
  }
  status.innerHTML = lines.join("<br>");
}

function render(): void {
  renderControls();
  renderPlot();
  renderStatus();
}

function wire(): void {
  session.onChange(render);
  el<HTMLTextAreaElement>("problem-input").value = JSON.stringify(
    SAMPLE_PROBLEM,
    null,
    2,
  );
  el<HTMLButtonElement>("load").addEventListener("click", () => {
    try {
      const doc = JSON.parse(el<HTMLTextAreaElement>("problem-input").value);
      void session.loadProblem(doc);
    } catch (err) {
      session.state.error = `invalid JSON: ${String(err)}`;
      renderStatus();
    }
  });
  for (const mode of ["free", "monotone", "convex"]) {
    el<HTMLInputElement>(`mode-${mode}`).addEventListener("change", () => {
      void session.toggleShapeMode(mode === "free" ? null : (mode as ShapeMode));
    });
  }
  el<HTMLButtonElement>("autoselect").addEventListener("click", () => {
    const mode = session.state.shapeMode;
    if (mode) void session.applyAutoselect(mode);
  });
}

wire();
