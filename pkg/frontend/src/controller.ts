/** Orchestrates the edit -> re-query -> render loop.
 *
 * The controller owns the request sequence counter: every edit issues
 * exactly one recommendation request tagged with a fresh sequence number,
 * and only the response matching the latest issued number is ever applied,
 * so out-of-order replies from slow requests are discarded. At most one
 * response can therefore win per edit ("latest wins").
 */

import { ApiClient, FetchLike, PositionKey, QuerySlp, queryIsEmpty } from "./api.js";
import {
  WorkbenchEvent,
  WorkbenchState,
  atRoot,
  currentQuery,
  hasTerm,
  initialState,
  reduce,
} from "./state.js";

export type StateListener = (state: WorkbenchState) => void;

export class WorkbenchController {
  private state: WorkbenchState;
  private client: ApiClient;
  private seq = 0;
  private listeners: StateListener[] = [];
  readonly log: WorkbenchEvent[] = [];

  constructor(
    endpoint: string,
    private readonly fetchFn: FetchLike,
    limit = 10,
  ) {
    this.state = initialState(endpoint, limit);
    this.client = new ApiClient(endpoint, fetchFn);
  }

  getState(): WorkbenchState {
    return this.state;
  }

  query(): QuerySlp {
    return currentQuery(this.state);
  }

  subscribe(listener: StateListener): void {
    this.listeners.push(listener);
  }

  private dispatch(event: WorkbenchEvent): void {
    this.log.push(event);
    this.state = reduce(this.state, event);
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  /** Add a term at a position and re-query; duplicates are no-ops. */
  async addTerm(position: PositionKey, term: string): Promise<void> {
    if (hasTerm(currentQuery(this.state), position, term)) {
      return;
    }
    const seq = ++this.seq;
    this.dispatch({ kind: "term-added", position, term, seq });
    await this.issue(seq);
  }

  /** Pop one extension and re-query (or clear lists back at the root). */
  async undo(): Promise<void> {
    if (atRoot(this.state)) {
      return;
    }
    const target = this.state.history[this.state.history.length - 2];
    if (!target || queryIsEmpty(target)) {
      this.dispatch({ kind: "undo", seq: null });
      return;
    }
    const seq = ++this.seq;
    this.dispatch({ kind: "undo", seq });
    await this.issue(seq);
  }

  setEndpoint(endpoint: string): void {
    this.dispatch({ kind: "endpoint-changed", endpoint });
    this.client = new ApiClient(endpoint, this.fetchFn);
  }

  setLimit(limit: number): void {
    this.dispatch({ kind: "limit-changed", limit });
  }

  dismissBanner(): void {
    this.dispatch({ kind: "banner-dismissed" });
  }

  /** Re-query for the current state without an edit (initial load, retry). */
  async refresh(): Promise<void> {
    if (queryIsEmpty(currentQuery(this.state))) {
      return;
    }
    const seq = ++this.seq;
    this.dispatch({ kind: "refresh", seq });
    await this.issue(seq);
  }

  private async issue(seq: number): Promise<void> {
    const query = currentQuery(this.state);
    try {
      const lists = await this.client.recommend(query, this.state.limit);
      this.dispatch({ kind: "response", seq, lists });
    } catch (error) {
      const message = error instanceof Error ? error.message : String(error);
      this.dispatch({ kind: "request-failed", seq, message: `service unreachable: ${message}` });
    }
  }
}
