/** Pure SVG geometry helpers: paths, markers, and highlight regions. */

import { CurveSamplesPayload, ShapeReportPayload } from "./types.js";

export interface Viewport {
  width: number;
  height: number;
  xLo: number;
  xHi: number;
  yLo: number;
  yHi: number;
}

export function viewportFor(
  samples: CurveSamplesPayload[],
  width = 800,
  height = 420,
): Viewport {
  let xLo = Infinity;
  let xHi = -Infinity;
  let yLo = Infinity;
  let yHi = -Infinity;
  for (const s of samples) {
    for (const x of s.abscissae) {
      if (x < xLo) xLo = x;
      if (x > xHi) xHi = x;
    }
    for (const y of s.ordinates) {
      if (y < yLo) yLo = y;
      if (y > yHi) yHi = y;
    }
  }
  const xPad = 0.05 * (xHi - xLo || 1);
  const yPad = 0.05 * (yHi - yLo || 1);
  return {
    width,
    height,
    xLo: xLo - xPad,
    xHi: xHi + xPad,
    yLo: yLo - yPad,
    yHi: yHi + yPad,
  };
}

export function toScreenX(v: Viewport, x: number): number {
  return ((x - v.xLo) / (v.xHi - v.xLo)) * v.width;
}

export function toScreenY(v: Viewport, y: number): number {
  return v.height - ((y - v.yLo) / (v.yHi - v.yLo)) * v.height;
}

export function curvePath(samples: CurveSamplesPayload, v: Viewport): string {
  const parts: string[] = [];
  for (let i = 0; i < samples.abscissae.length; i++) {
    const cmd = i === 0 ? "M" : "L";
    parts.push(
      `${cmd}${toScreenX(v, samples.abscissae[i]!).toFixed(2)},` +
        `${toScreenY(v, samples.ordinates[i]!).toFixed(2)}`,
    );
  }
  return parts.join(" ");
}

export interface Marker {
  cx: number;
  cy: number;
}

export function knotMarkers(
  knots: number[],
  values: number[],
  v: Viewport,
): Marker[] {
  return knots.map((x, i) => ({
    cx: toScreenX(v, x),
    cy: toScreenY(v, values[i] ?? 0),
  }));
}

export interface HighlightRect {
  x: number;
  width: number;
}

/** Screen-space bands for highlighted subintervals. */
export function highlightRects(
  knots: number[],
  highlighted: number[],
  v: Viewport,
): HighlightRect[] {
  return highlighted.map((n) => {
    const x0 = toScreenX(v, knots[n]!);
    const x1 = toScreenX(v, knots[n + 1]!);
    return { x: x0, width: x1 - x0 };
  });
}

/** Violation positions from a shape report, projected onto the curve. */
export function violationMarkers(
  report: ShapeReportPayload,
  curve: CurveSamplesPayload,
  v: Viewport,
): Marker[] {
  return report.violations.map((viol) => {
    let best = 0;
    let bestDist = Infinity;
    for (let i = 0; i < curve.abscissae.length; i++) {
      const d = Math.abs(curve.abscissae[i]! - viol.abscissa);
      if (d < bestDist) {
        bestDist = d;
        best = i;
      }
    }
    return {
      cx: toScreenX(v, curve.abscissae[best]!),
      cy: toScreenY(v, curve.ordinates[best]!),
    };
  });
}
