/** Curve diffing and the per-subinterval locality indicator.
 *
 * The interpolant is globally self-referential, so any parameter change
 * leaks a scaled echo into every subinterval; the indicator therefore
 * reports where the change concentrated.  Changes below the plot
 * tolerance (relative to the ordinate span) count as no change at all,
 * which keeps replotting idempotent, and a subinterval is highlighted
 * when it carries a significant fraction of the largest change.
 */

import { CurveSamplesPayload } from "./types.js";

/** Relative plot tolerance: changes below this are invisible. */
export const PLOT_TOLERANCE = 1e-6;

/** Fraction of the dominant change a subinterval must carry to highlight. */
export const DOMINANCE_FRACTION = 0.25;

export interface LocalityDiff {
  /** Max |change| per subinterval, relative to the previous ordinate span. */
  perInterval: number[];
  /** Largest relative change over the whole curve. */
  maxChange: number;
  /** True when the curves differ beyond the plot tolerance anywhere. */
  changed: boolean;
  /** 0-based subintervals highlighted by the indicator. */
  highlighted: number[];
}

export function diffCurves(
  previous: CurveSamplesPayload,
  next: CurveSamplesPayload,
  knots: number[],
  tolerance: number = PLOT_TOLERANCE,
): LocalityDiff {
  const nIntervals = knots.length - 1;
  const perInterval = new Array<number>(nIntervals).fill(0);
  const prevY = previous.ordinates;
  let lo = Infinity;
  let hi = -Infinity;
  for (const y of prevY) {
    if (y < lo) lo = y;
    if (y > hi) hi = y;
  }
  const span = hi > lo ? hi - lo : 1;

  if (previous.abscissae.length !== next.abscissae.length) {
    throw new Error("cannot diff curves sampled on different grids");
  }
  for (let i = 0; i < prevY.length; i++) {
    const x = previous.abscissae[i]!;
    const change = Math.abs(next.ordinates[i]! - prevY[i]!) / span;
    let n = intervalOf(x, knots);
    if (change > perInterval[n]!) perInterval[n] = change;
  }
  const maxChange = Math.max(...perInterval, 0);
  const changed = maxChange > tolerance;
  const cutoff = Math.max(tolerance, DOMINANCE_FRACTION * maxChange);
  const highlighted = changed
    ? perInterval.flatMap((c, n) => (c >= cutoff ? [n] : []))
    : [];
  return { perInterval, maxChange, changed, highlighted };
}

function intervalOf(x: number, knots: number[]): number {
  let n = knots.length - 2;
  for (let i = 0; i + 1 < knots.length; i++) {
    if (x < knots[i + 1]!) {
      n = i;
      break;
    }
  }
  return n;
}
