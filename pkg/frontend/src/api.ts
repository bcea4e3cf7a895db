import type {
  CatalogSample,
  DescribeResult,
  MetricsPayload,
  PlanPair,
  SessionView,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

/** Typed client for the guessing service. All UI traffic funnels through
 * here, so tests can count or stub requests by injecting `fetchImpl`. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(`${this.baseUrl}${path}`, {
        method,
        headers: body === undefined ? {} : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (error) {
      throw new ApiError(0, `service unreachable: ${String(error)}`);
    }
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const parsed = (await response.json()) as { detail?: unknown };
        if (parsed.detail !== undefined) detail = JSON.stringify(parsed.detail);
      } catch {
        // keep statusText
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  getCatalog(): Promise<{ samples: CatalogSample[] }> {
    return this.request("GET", "/catalog");
  }

  startSession(targetId: number, referenceId: number): Promise<SessionView> {
    return this.request("POST", "/sessions", {
      target_id: targetId,
      reference_id: referenceId,
    });
  }

  describe(sessionId: string, text: string): Promise<DescribeResult> {
    return this.request("POST", `/sessions/${sessionId}/describe`, { text });
  }

  judge(
    sessionId: string,
    correct: boolean,
    validity?: number,
    similarity?: number,
  ): Promise<SessionView> {
    const body: Record<string, unknown> = { correct };
    if (validity !== undefined) body.validity = validity;
    if (similarity !== undefined) body.similarity = similarity;
    return this.request("POST", `/sessions/${sessionId}/judge`, body);
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  getMetrics(): Promise<MetricsPayload> {
    return this.request("GET", "/metrics");
  }

  plan(seed: number): Promise<{ seed: number; pairs: PlanPair[] }> {
    return this.request("POST", "/plan", { seed });
  }
}
