/** Debounced typeahead against the /terms endpoint.
 *
 * A 250 ms debounce keeps keystrokes from flooding the service; a sequence
 * counter discards suggestion lists that arrive after a newer query, the
 * same latest-wins rule the recommendation loop uses.
 */

import { ApiClient, TermSuggestion } from "./api.js";

type Scheduler = (fn: () => void, ms: number) => ReturnType<typeof setTimeout>;
type Canceler = (handle: ReturnType<typeof setTimeout>) => void;

export const TYPEAHEAD_DEBOUNCE_MS = 250;

export class Typeahead {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private seq = 0;

  constructor(
    private readonly client: ApiClient,
    private readonly onSuggestions: (items: TermSuggestion[]) => void,
    private readonly delayMs: number = TYPEAHEAD_DEBOUNCE_MS,
    private readonly schedule: Scheduler = setTimeout,
    private readonly cancel: Canceler = clearTimeout,
  ) {}

  input(prefix: string, kind?: "type" | "property"): void {
    if (this.timer !== null) {
      this.cancel(this.timer);
      this.timer = null;
    }
    if (!prefix) {
      this.onSuggestions([]);
      return;
    }
    this.timer = this.schedule(() => {
      const seq = ++this.seq;
      this.client
        .terms(prefix, kind)
        .then((items) => {
          if (seq === this.seq) {
            this.onSuggestions(items);
          }
        })
        .catch(() => {
          if (seq === this.seq) {
            this.onSuggestions([]);
          }
        });
    }, this.delayMs);
  }
}
