import assert from "node:assert/strict";
import { test } from "node:test";

import { ApiClient, FetchLike } from "../src/api.js";
import { Typeahead } from "../src/typeahead.js";
import { jsonResponse } from "./helpers.js";

function suggestionService() {
  const queries: string[] = [];
  const fetchFn: FetchLike = async (url) => {
    const prefix = new URL(url).searchParams.get("prefix") ?? "";
    queries.push(prefix);
    return jsonResponse({ terms: [{ term: `http://v.org/${prefix}`, kind: "type" }] });
  };
  return { client: new ApiClient("http://svc.test", fetchFn), queries };
}

/** Deterministic fake clock: timers fire only when the test ticks. */
function fakeClock() {
  let nextId = 1;
  const timers = new Map<number, () => void>();
  return {
    schedule: (fn: () => void, _ms: number) => {
      const id = nextId++;
      timers.set(id, fn);
      return id as unknown as ReturnType<typeof setTimeout>;
    },
    cancel: (handle: ReturnType<typeof setTimeout>) => {
      timers.delete(handle as unknown as number);
    },
    fire: () => {
      for (const [id, fn] of [...timers]) {
        timers.delete(id);
        fn();
      }
    },
    pending: () => timers.size,
  };
}

test("rapid keystrokes collapse into a single request", async () => {
  const { client, queries } = suggestionService();
  const clock = fakeClock();
  const results: string[][] = [];
  const typeahead = new Typeahead(
    client,
    (items) => results.push(items.map((i) => i.term)),
    250,
    clock.schedule,
    clock.cancel,
  );
  typeahead.input("p");
  typeahead.input("pe");
  typeahead.input("pers");
  assert.equal(clock.pending(), 1, "earlier timers canceled");
  clock.fire();
  await new Promise((resolve) => setImmediate(resolve));
  assert.deepEqual(queries, ["pers"], "only the settled prefix is queried");
  assert.deepEqual(results, [["http://v.org/pers"]]);
});

test("clearing the input clears suggestions without querying", () => {
  const { client, queries } = suggestionService();
  const clock = fakeClock();
  const results: string[][] = [];
  const typeahead = new Typeahead(
    client,
    (items) => results.push(items.map((i) => i.term)),
    250,
    clock.schedule,
    clock.cancel,
  );
  typeahead.input("x");
  typeahead.input("");
  assert.equal(clock.pending(), 0);
  assert.deepEqual(results, [[]]);
  assert.deepEqual(queries, []);
});

test("late suggestion lists are discarded after a newer query", async () => {
  const resolvers: Array<(r: Response) => void> = [];
  const prefixes: string[] = [];
  const fetchFn: FetchLike = (url) =>
    new Promise<Response>((resolve) => {
      prefixes.push(new URL(url).searchParams.get("prefix") ?? "");
      resolvers.push(resolve);
    });
  const client = new ApiClient("http://svc.test", fetchFn);
  const clock = fakeClock();
  const results: string[][] = [];
  const typeahead = new Typeahead(
    client,
    (items) => results.push(items.map((i) => i.term)),
    250,
    clock.schedule,
    clock.cancel,
  );

  typeahead.input("a");
  clock.fire();
  typeahead.input("ab");
  clock.fire();
  assert.deepEqual(prefixes, ["a", "ab"]);

  resolvers[1]!(jsonResponse({ terms: [{ term: "http://v.org/ab", kind: "type" }] }));
  await new Promise((resolve) => setImmediate(resolve));
  resolvers[0]!(jsonResponse({ terms: [{ term: "http://v.org/a-stale", kind: "type" }] }));
  await new Promise((resolve) => setImmediate(resolve));

  assert.deepEqual(results, [["http://v.org/ab"]], "stale list never shown");
});
