/** Thin typed client for the evaluation service; all math stays server-side. */

import {
  ApiError,
  ApiErrorPayload,
  AutoselectPayload,
  BoundsPayload,
  CurveSamplesPayload,
  EvaluateOptions,
  HermiteDataDoc,
  ParamsDoc,
  ProblemDoc,
  ShapeMode,
} from "./types.js";

export type FetchLike = (url: string, init: RequestInit) => Promise<Response>;

export interface RequestLogEntry {
  path: string;
  status: number;
}

export class ApiClient {
  /** Every request's status, for the shape-mode 200 invariant and tests. */
  readonly log: RequestLogEntry[] = [];

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    this.log.push({ path, status: resp.status });
    if (!resp.ok) {
      let payload: ApiErrorPayload;
      try {
        payload = (await resp.json()) as ApiErrorPayload;
      } catch {
        payload = { error: `HTTP ${resp.status}`, type: "UnknownError" };
      }
      throw new ApiError(resp.status, payload);
    }
    return (await resp.json()) as T;
  }

  evaluate(
    data: HermiteDataDoc,
    params: ParamsDoc | undefined,
    options: EvaluateOptions,
  ): Promise<CurveSamplesPayload> {
    const doc: ProblemDoc = { data, options };
    if (params) doc.params = params;
    return this.post<CurveSamplesPayload>("/api/evaluate", doc);
  }

  bounds(
    data: HermiteDataDoc,
    mode: ShapeMode,
    u?: number[],
    alpha?: number[],
  ): Promise<BoundsPayload> {
    const body: Record<string, unknown> = { data, mode };
    if (u) body.u = u;
    if (alpha) body.alpha = alpha;
    return this.post<BoundsPayload>("/api/bounds", body);
  }

  autoselect(
    data: HermiteDataDoc,
    mode: ShapeMode,
    margin: number,
    u?: number[],
  ): Promise<AutoselectPayload> {
    const body: Record<string, unknown> = { data, mode, margin };
    if (u) body.u = u;
    return this.post<AutoselectPayload>("/api/autoselect", body);
  }
}
