/** Wire types and a thin client for the recommendation service.
 *
 * Everything on the wire uses full IRIs; prefix abbreviation is purely a
 * display concern. The fetch implementation is injectable so tests can
 * mock the service without a network.
 */

export type PositionKey = "sts" | "ps" | "ots";

export const POSITIONS: readonly PositionKey[] = ["sts", "ps", "ots"];

export interface QuerySlp {
  sts: string[];
  ps: string[];
  ots: string[];
}

export type FeatureName = "f1" | "f2" | "f3" | "f4" | "f5";

export interface RankedTerm {
  rank: number;
  term: string;
  score: number;
  features: Record<FeatureName, number>;
}

export type RecommendResponse = Partial<Record<PositionKey, RankedTerm[]>>;

export interface RecommendRequest extends QuerySlp {
  positions: PositionKey[];
  limit: number;
}

export interface TermSuggestion {
  term: string;
  kind: "type" | "property";
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export function emptyQuery(): QuerySlp {
  return { sts: [], ps: [], ots: [] };
}

export function cloneQuery(query: QuerySlp): QuerySlp {
  return { sts: [...query.sts], ps: [...query.ps], ots: [...query.ots] };
}

export function queryIsEmpty(query: QuerySlp): boolean {
  return query.sts.length === 0 && query.ps.length === 0 && query.ots.length === 0;
}

export function recommendBody(query: QuerySlp, limit: number): RecommendRequest {
  return { ...cloneQuery(query), positions: [...POSITIONS], limit };
}

async function parseError(response: Response): Promise<ServiceError> {
  try {
    const body = (await response.json()) as { error?: string; message?: string };
    return new ServiceError(body.error ?? "HTTP_ERROR", body.message ?? `HTTP ${response.status}`);
  } catch {
    return new ServiceError("HTTP_ERROR", `HTTP ${response.status}`);
  }
}

export class ApiClient {
  constructor(
    readonly endpoint: string,
    private readonly fetchFn: FetchLike,
  ) {}

  async recommend(query: QuerySlp, limit: number): Promise<RecommendResponse> {
    const response = await this.fetchFn(`${this.endpoint}/recommend`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(recommendBody(query, limit)),
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as RecommendResponse;
  }

  async terms(prefix: string, kind?: "type" | "property", limit = 12): Promise<TermSuggestion[]> {
    const params = new URLSearchParams({ prefix, limit: String(limit) });
    if (kind) {
      params.set("kind", kind);
    }
    const response = await this.fetchFn(`${this.endpoint}/terms?${params}`);
    if (!response.ok) {
      throw await parseError(response);
    }
    const body = (await response.json()) as { terms: TermSuggestion[] };
    return body.terms;
  }

  async health(): Promise<{ status: string; slp_count: number }> {
    const response = await this.fetchFn(`${this.endpoint}/healthz`);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as { status: string; slp_count: number };
  }
}
