/** Per-interval slider state: ranges, clamping, dirty tracking.
 *
 * Free mode ranges come from the interval geometry (|alpha_n| below the
 * contraction ratio a_n^k, v above the denominator-positivity floor -4u);
 * shape mode replaces them with the latest bounds response from the
 * service, backed off by the display margin so submitted values always
 * validate.
 */

import { BoundsPayload, ShapeMode } from "./types.js";

/** Strictness back-off applied to open interval endpoints. */
const OPEN_ENDPOINT_BACKOFF = 1 - 1e-9;

/** Back-off factor applied to shape-mode scaling caps for display/clamping. */
export const SHAPE_MARGIN = 0.9;

export interface SliderRange {
  min: number;
  max: number;
  logScale?: boolean;
}

export interface ParameterControl {
  interval: number; // 0-based
  alpha: number;
  u: number;
  v: number;
  alphaRange: SliderRange;
  uRange: SliderRange;
  vRange: SliderRange;
  dirty: boolean;
  /** Set in shape mode when the interval cannot support the shape. */
  badge: string | null;
}

export function contractionRatios(knots: number[], k: number): number[] {
  const width = knots[knots.length - 1]! - knots[0]!;
  const out: number[] = [];
  for (let n = 0; n + 1 < knots.length; n++) {
    out.push(Math.pow((knots[n + 1]! - knots[n]!) / width, k));
  }
  return out;
}

export function freeRanges(
  control: ParameterControl,
  knots: number[],
  k: number,
): void {
  const cap = contractionRatios(knots, k)[control.interval]! * OPEN_ENDPOINT_BACKOFF;
  control.alphaRange = { min: -cap, max: cap };
  control.uRange = { min: 1e-3, max: 1e3, logScale: true };
  control.vRange = { min: -4 * control.u * OPEN_ENDPOINT_BACKOFF, max: 1e3 };
  control.badge = null;
}

export function shapeRanges(
  control: ParameterControl,
  bounds: BoundsPayload,
  margin: number = SHAPE_MARGIN,
): void {
  const n = control.interval;
  const cap = bounds.alpha_max[n]!;
  const vMin = bounds.v_min[n] ?? null;
  control.alphaRange = { min: 0, max: cap * margin };
  control.uRange = { min: 1e-3, max: 1e3, logScale: true };
  if (vMin === null) {
    control.badge = bounds.degenerate[n]
      ? "degenerate interval: derivatives must take the forced values"
      : "no tension value certifies the shape at this scaling";
    control.vRange = { min: 0, max: 1e3 };
  } else {
    control.badge = null;
    control.vRange = { min: vMin, max: Math.max(1e3, vMin * 10) };
  }
}

export function clamp(value: number, range: SliderRange): number {
  return Math.min(range.max, Math.max(range.min, value));
}

export function buildControls(
  knots: number[],
  alpha: number[],
  u: number[],
  v: number[],
  k: number,
): ParameterControl[] {
  const controls: ParameterControl[] = [];
  for (let n = 0; n + 1 < knots.length; n++) {
    const control: ParameterControl = {
      interval: n,
      alpha: alpha[n] ?? 0,
      u: u[n] ?? 1,
      v: v[n] ?? 0,
      alphaRange: { min: 0, max: 0 },
      uRange: { min: 1e-3, max: 1e3, logScale: true },
      vRange: { min: 0, max: 1e3 },
      dirty: false,
      badge: null,
    };
    freeRanges(control, knots, k);
    controls.push(control);
  }
  return controls;
}

/** Apply a slider edit, clamping into the active range; returns the value used. */
export function applyEdit(
  control: ParameterControl,
  field: "alpha" | "u" | "v",
  value: number,
): number {
  const range =
    field === "alpha" ? control.alphaRange : field === "u" ? control.uRange : control.vRange;
  const used = clamp(value, range);
  if (control[field] !== used) {
    control[field] = used;
    control.dirty = true;
  }
  return used;
}

export type { ShapeMode };
