/** Wire types for the fractalspline HTTP API. */

export interface HermiteDataDoc {
  knots: number[];
  values: number[];
  derivatives: number[] | null;
}

export interface ParamsDoc {
  alpha: number[];
  u: number[];
  v: number[];
  k: number;
}

export interface ProblemDoc {
  data: HermiteDataDoc;
  params?: ParamsDoc;
  mode?: ShapeMode;
  options?: EvaluateOptions;
}

export interface EvaluateOptions {
  depth?: number;
  deriv?: 0 | 1 | 2;
  method?: "recursion" | "picard";
}

export interface CurveSamplesPayload {
  abscissae: number[];
  ordinates: number[];
  derivative_order: number;
  generation: Record<string, unknown>;
  residual_stat: number;
  sides?: number[];
}

export interface BoundsPayload {
  mode: ShapeMode;
  alpha_max: number[];
  alpha_max_exclusive: boolean;
  v_min: (number | null)[];
  v_min_alpha: number[];
  degenerate: boolean[];
  degenerate_feasible: boolean[];
  shape_u: number[];
}

export interface ShapeViolationPayload {
  abscissa: number;
  quantity: string;
  value: number;
}

export interface ShapeReportPayload {
  verified: boolean;
  mode: ShapeMode;
  tolerance: number;
  violations: ShapeViolationPayload[];
}

export interface AutoselectPayload {
  params: ParamsDoc;
  report: ShapeReportPayload;
}

export interface ApiErrorPayload {
  error: string;
  type: string;
  index?: number;
}

export type ShapeMode = "monotone" | "convex";

/** Error surfaced inline in the UI: HTTP status plus the service diagnostics. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: ApiErrorPayload,
  ) {
    super(payload.error);
    this.name = "ApiError";
  }
}
