/** Thin fetch wrapper over the query service endpoints. */

import type {
  HeuristicName,
  JudgmentPayload,
  MethodName,
  PairsResponse,
  QueryResponse,
} from "./types.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

async function unwrap<T>(responsePromise: ReturnType<FetchLike>): Promise<T> {
  const response = await responsePromise;
  const body = (await response.json()) as Record<string, unknown>;
  if (!response.ok) {
    const detail =
      typeof body?.detail === "string" ? body.detail : `request failed (${response.status})`;
    throw new ApiError(response.status, detail);
  }
  return body as T;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (url, init) =>
      globalThis.fetch(url, init) as ReturnType<FetchLike>,
  ) {}

  postQuery(
    keywords: string[],
    method: MethodName,
    extra: Record<string, unknown> = {},
  ): Promise<QueryResponse> {
    return unwrap(
      this.fetchFn(`${this.baseUrl}/api/query`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ keywords, method, ...extra }),
      }),
    );
  }

  getQuery(queryId: string): Promise<QueryResponse> {
    return unwrap(this.fetchFn(`${this.baseUrl}/api/query/${queryId}`));
  }

  getClusters(queryId: string, heuristic: HeuristicName): Promise<unknown> {
    return unwrap(
      this.fetchFn(`${this.baseUrl}/api/query/${queryId}/clusters?heuristic=${heuristic}`),
    );
  }

  getPairs(queryId: string): Promise<PairsResponse> {
    return unwrap(this.fetchFn(`${this.baseUrl}/api/query/${queryId}/pairs`));
  }

  postJudgments(payload: JudgmentPayload): Promise<{ status: string; count: number }> {
    return unwrap(
      this.fetchFn(`${this.baseUrl}/api/judgments`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(payload),
      }),
    );
  }
}
