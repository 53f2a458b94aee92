/** Pure workbench state machine.
 *
 * All mutations flow through `reduce(state, event)`: replaying an event log
 * reproduces the exact screen state. The history stack always contains at
 * least the empty root query; its top is the current query. Optimistic
 * edits remember the history to restore if their re-query fails, so a dead
 * service never corrupts the builder.
 */

import {
  PositionKey,
  QuerySlp,
  RecommendResponse,
  cloneQuery,
  emptyQuery,
} from "./api.js";

export interface InflightRequest {
  seq: number;
  /** history to restore if this request fails; null for non-edits (undo) */
  revertTo: QuerySlp[] | null;
}

export interface WorkbenchState {
  history: QuerySlp[];
  lists: RecommendResponse | null;
  banner: string | null;
  latestSeq: number;
  inflight: InflightRequest | null;
  endpoint: string;
  limit: number;
}

export type WorkbenchEvent =
  | { kind: "term-added"; position: PositionKey; term: string; seq: number }
  | { kind: "undo"; seq: number | null }
  | { kind: "refresh"; seq: number }
  | { kind: "response"; seq: number; lists: RecommendResponse }
  | { kind: "request-failed"; seq: number; message: string }
  | { kind: "banner-dismissed" }
  | { kind: "endpoint-changed"; endpoint: string }
  | { kind: "limit-changed"; limit: number };

export function initialState(endpoint: string, limit = 10): WorkbenchState {
  return {
    history: [emptyQuery()],
    lists: null,
    banner: null,
    latestSeq: 0,
    inflight: null,
    endpoint,
    limit,
  };
}

export function currentQuery(state: WorkbenchState): QuerySlp {
  const top = state.history[state.history.length - 1];
  if (!top) {
    throw new Error("history invariant violated: empty stack");
  }
  return top;
}

export function atRoot(state: WorkbenchState): boolean {
  return state.history.length === 1;
}

export function hasTerm(query: QuerySlp, position: PositionKey, term: string): boolean {
  return query[position].includes(term);
}

function withTerm(query: QuerySlp, position: PositionKey, term: string): QuerySlp {
  const next = cloneQuery(query);
  next[position] = [...next[position], term];
  return next;
}

export function reduce(state: WorkbenchState, event: WorkbenchEvent): WorkbenchState {
  switch (event.kind) {
    case "term-added": {
      const query = currentQuery(state);
      if (hasTerm(query, event.position, event.term)) {
        return state; // duplicate adds are no-ops and fire no request
      }
      return {
        ...state,
        history: [...state.history, withTerm(query, event.position, event.term)],
        banner: null,
        latestSeq: event.seq,
        inflight: { seq: event.seq, revertTo: state.history },
      };
    }
    case "undo": {
      if (atRoot(state)) {
        return state;
      }
      const history = state.history.slice(0, -1);
      return {
        ...state,
        history,
        banner: null,
        // undoing to the empty root fires no request and clears the lists
        lists: event.seq === null ? null : state.lists,
        latestSeq: event.seq ?? state.latestSeq,
        inflight: event.seq === null ? null : { seq: event.seq, revertTo: null },
      };
    }
    case "refresh":
      return { ...state, latestSeq: event.seq, inflight: { seq: event.seq, revertTo: null } };
    case "response": {
      if (event.seq !== state.latestSeq) {
        return state; // stale response: a newer request superseded it
      }
      return { ...state, lists: event.lists, inflight: null, banner: null };
    }
    case "request-failed": {
      if (event.seq !== state.latestSeq) {
        return state; // failure of a superseded request is irrelevant
      }
      const revertTo = state.inflight?.revertTo ?? null;
      return {
        ...state,
        history: revertTo ?? state.history,
        banner: event.message,
        inflight: null,
      };
    }
    case "banner-dismissed":
      return { ...state, banner: null };
    case "endpoint-changed":
      return { ...state, endpoint: event.endpoint };
    case "limit-changed":
      return { ...state, limit: event.limit };
  }
}

export function replay(events: WorkbenchEvent[], endpoint: string, limit = 10): WorkbenchState {
  return events.reduce(reduce, initialState(endpoint, limit));
}
