/** Mock services for controller tests: an auto-responding fetch that
 * records every request, and a manual fetch whose responses resolve only
 * when the test says so (for out-of-order delivery).
 */

import { FetchLike, PositionKey, RankedTerm, RecommendRequest, RecommendResponse } from "../src/api.js";

export interface RecordedCall {
  url: string;
  body: RecommendRequest;
}

export function makeTerm(term: string, rank: number, f5 = 1): RankedTerm {
  return {
    rank,
    term,
    score: 1 / rank,
    features: { f1: 3, f2: 4, f3: 9, f4: 0, f5 },
  };
}

export function listsFor(tag: string): RecommendResponse {
  const make = (position: PositionKey): RankedTerm[] => [
    makeTerm(`http://mock.org/${tag}/${position}/first`, 1),
    makeTerm(`http://mock.org/${tag}/${position}/second`, 2),
  ];
  return { sts: make("sts"), ps: make("ps"), ots: make("ots") };
}

export function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/** Immediately answers every /recommend with lists derived from a counter. */
export function autoService(): { fetchFn: FetchLike; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    const body = JSON.parse(String(init?.body ?? "{}")) as RecommendRequest;
    calls.push({ url, body });
    return jsonResponse(listsFor(`r${calls.length}`));
  };
  return { fetchFn, calls };
}

export interface PendingCall extends RecordedCall {
  respond(payload: unknown, status?: number): void;
  fail(message?: string): void;
}

/** Holds every request open until the test resolves it explicitly. */
export function manualService(): { fetchFn: FetchLike; pending: PendingCall[] } {
  const pending: PendingCall[] = [];
  const fetchFn: FetchLike = (url, init) =>
    new Promise<Response>((resolve, reject) => {
      pending.push({
        url,
        body: JSON.parse(String(init?.body ?? "{}")) as RecommendRequest,
        respond: (payload, status = 200) => resolve(jsonResponse(payload, status)),
        fail: (message = "connection refused") => reject(new Error(message)),
      });
    });
  return { fetchFn, pending };
}

export function offlineService(): { fetchFn: FetchLike; calls: number[] } {
  const calls: number[] = [];
  const fetchFn: FetchLike = () => {
    calls.push(1);
    return Promise.reject(new Error("ECONNREFUSED"));
  };
  return { fetchFn, calls };
}
