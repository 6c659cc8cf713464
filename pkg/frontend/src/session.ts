/** Explorer session: problem state, debounced evaluation, shape-mode clamping.
 *
 * The session owns no numerics: every curve, bound and report comes from
 * the HTTP API.  Slider edits are debounced; overlapping responses are
 * resolved last-write-wins by request sequence number.
 */

import { ApiClient } from "./api.js";
import {
  ParameterControl,
  applyEdit,
  buildControls,
  clamp,
  freeRanges,
  shapeRanges,
  SHAPE_MARGIN,
} from "./controls.js";
import { diffCurves, LocalityDiff, PLOT_TOLERANCE } from "./diff.js";
import {
  ApiError,
  BoundsPayload,
  CurveSamplesPayload,
  HermiteDataDoc,
  ParamsDoc,
  ProblemDoc,
  ShapeMode,
  ShapeReportPayload,
} from "./types.js";

export interface SessionOptions {
  depth?: number;
  debounceMs?: number;
  margin?: number;
  plotTolerance?: number;
}

export interface SessionState {
  data: HermiteDataDoc | null;
  k: number;
  controls: ParameterControl[];
  shapeMode: ShapeMode | null;
  modeError: string | null;
  bounds: BoundsPayload | null;
  baseline: CurveSamplesPayload | null;
  curve: CurveSamplesPayload | null;
  derivativeCurve: CurveSamplesPayload | null;
  estimatedDerivatives: number[] | null;
  report: ShapeReportPayload | null;
  locality: LocalityDiff | null;
  error: string | null;
}

export class ExplorerSession {
  readonly state: SessionState = {
    data: null,
    k: 1,
    controls: [],
    shapeMode: null,
    modeError: null,
    bounds: null,
    baseline: null,
    curve: null,
    derivativeCurve: null,
    estimatedDerivatives: null,
    report: null,
    locality: null,
    error: null,
  };

  private readonly depth: number;
  private readonly debounceMs: number;
  private readonly margin: number;
  private readonly plotTolerance: number;
  private seq = 0;
  private lastApplied = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private waiters: Array<() => void> = [];
  private listeners: Array<() => void> = [];

  constructor(
    readonly api: ApiClient,
    options: SessionOptions = {},
  ) {
    this.depth = options.depth ?? 6;
    this.debounceMs = options.debounceMs ?? 150;
    this.margin = options.margin ?? SHAPE_MARGIN;
    this.plotTolerance = options.plotTolerance ?? PLOT_TOLERANCE;
  }

  /** Subscribe to state changes (rendering hook). */
  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const fn of this.listeners) fn();
  }

  private get knots(): number[] {
    return this.state.data?.knots ?? [];
  }

  paramsDoc(): ParamsDoc {
    return {
      alpha: this.state.controls.map((c) => c.alpha),
      u: this.state.controls.map((c) => c.u),
      v: this.state.controls.map((c) => c.v),
      k: this.state.k,
    };
  }

  /** Parse a problem document, build controls, and plot the baseline. */
  async loadProblem(doc: ProblemDoc): Promise<void> {
    this.state.error = null;
    this.state.report = null;
    this.state.locality = null;
    this.state.shapeMode = null;
    this.state.modeError = null;
    this.state.bounds = null;
    try {
      const data = doc.data;
      if (!data || !Array.isArray(data.knots) || !Array.isArray(data.values)) {
        throw new Error("problem document needs data.knots and data.values");
      }
      const n = data.knots.length - 1;
      const k = doc.params?.k ?? 1;
      this.state.data = data;
      this.state.k = k;
      this.state.controls = buildControls(
        data.knots,
        doc.params?.alpha ?? new Array<number>(n).fill(0),
        doc.params?.u ?? new Array<number>(n).fill(1),
        doc.params?.v ?? new Array<number>(n).fill(0),
        k,
      );

      const zeros = new Array<number>(n).fill(0);
      const classical: ParamsDoc = { ...this.paramsDoc(), alpha: zeros };
      const [baseline, curve, derivativeCurve] = await Promise.all([
        this.api.evaluate(data, classical, { depth: this.depth, deriv: 0 }),
        this.api.evaluate(data, this.paramsDoc(), { depth: this.depth, deriv: 0 }),
        this.api.evaluate(data, this.paramsDoc(), { depth: this.depth, deriv: 1 }),
      ]);
      this.state.baseline = baseline;
      this.state.curve = curve;
      this.state.derivativeCurve = derivativeCurve;
      this.state.estimatedDerivatives = knotValues(derivativeCurve, data.knots);
      this.lastApplied = ++this.seq;
    } catch (err) {
      this.state.error = describe(err);
    }
    this.notify();
  }

  /**
   * Apply a slider edit (clamped into the active range) and schedule a
   * debounced re-evaluation; resolves after that evaluation lands.
   */
  onParameterChange(
    interval: number,
    field: "alpha" | "u" | "v",
    value: number,
  ): Promise<void> {
    const control = this.state.controls[interval];
    if (!control) return Promise.resolve();
    applyEdit(control, field, value);
    this.notify();
    return new Promise((resolve) => {
      this.waiters.push(resolve);
      if (this.timer !== null) clearTimeout(this.timer);
      this.timer = setTimeout(() => {
        this.timer = null;
        void this.refresh().finally(() => {
          const pending = this.waiters;
          this.waiters = [];
          for (const fn of pending) fn();
        });
      }, this.debounceMs);
    });
  }

  /** Enable shape mode (clamping controls into the admissible region) or disable it. */
  async toggleShapeMode(mode: ShapeMode | null): Promise<void> {
    this.state.modeError = null;
    if (mode === null) {
      this.state.shapeMode = null;
      this.state.bounds = null;
      for (const control of this.state.controls) {
        freeRanges(control, this.knots, this.state.k);
      }
      this.notify();
      return;
    }
    if (!this.state.data) return;
    try {
      const u = this.state.controls.map((c) => c.u);
      const bounds = await this.api.bounds(this.state.data, mode, u);
      this.state.shapeMode = mode;
      this.state.bounds = bounds;
      for (const control of this.state.controls) {
        shapeRanges(control, bounds, this.margin);
        control.alpha = clamp(control.alpha, control.alphaRange);
        control.v = clamp(control.v, control.vRange);
      }
      this.notify();
      await this.refresh();
    } catch (err) {
      this.state.modeError = describe(err);
      this.notify();
    }
  }

  /** Ask the service for parameters inside the region and adopt them. */
  async applyAutoselect(mode: ShapeMode): Promise<void> {
    if (!this.state.data) return;
    try {
      const u = this.state.controls.map((c) => c.u);
      const result = await this.api.autoselect(this.state.data, mode, this.margin, u);
      result.params.alpha.forEach((a, n) => {
        const control = this.state.controls[n];
        if (control) {
          control.alpha = a;
          control.v = result.params.v[n] ?? control.v;
          control.dirty = true;
        }
      });
      this.state.report = result.report;
      this.notify();
      await this.refresh();
    } catch (err) {
      this.state.error = describe(err);
      this.notify();
    }
  }

  /** Re-evaluate with the current controls; stale responses are dropped. */
  async refresh(): Promise<void> {
    if (!this.state.data) return;
    const seq = ++this.seq;
    try {
      if (this.state.shapeMode && this.state.bounds) {
        // refresh tension floors at the current scalings, then re-clamp
        const bounds = await this.api.bounds(
          this.state.data,
          this.state.shapeMode,
          this.state.controls.map((c) => c.u),
          this.state.controls.map((c) => c.alpha),
        );
        this.state.bounds = bounds;
        for (const control of this.state.controls) {
          shapeRanges(control, bounds, this.margin);
          control.alpha = clamp(control.alpha, control.alphaRange);
          control.v = clamp(control.v, control.vRange);
        }
      }
      const params = this.paramsDoc();
      const [curve, derivativeCurve] = await Promise.all([
        this.api.evaluate(this.state.data, params, { depth: this.depth, deriv: 0 }),
        this.api.evaluate(this.state.data, params, { depth: this.depth, deriv: 1 }),
      ]);
      if (seq < this.lastApplied) return; // a newer response already landed
      this.lastApplied = seq;
      if (this.state.curve) {
        this.state.locality = diffCurves(
          this.state.curve,
          curve,
          this.knots,
          this.plotTolerance,
        );
      }
      this.state.curve = curve;
      this.state.derivativeCurve = derivativeCurve;
      this.state.error = null;
      for (const control of this.state.controls) control.dirty = false;
    } catch (err) {
      this.state.error = describe(err);
    }
    this.notify();
  }
}

function knotValues(samples: CurveSamplesPayload, knots: number[]): number[] {
  return knots.map((x) => {
    const i = samples.abscissae.indexOf(x);
    return i >= 0 ? samples.ordinates[i]! : NaN;
  });
}

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    const where = err.payload.index !== undefined ? ` (index ${err.payload.index})` : "";
    return `${err.payload.type}: ${err.payload.error}${where}`;
  }
  return err instanceof Error ? err.message : String(err);
}
