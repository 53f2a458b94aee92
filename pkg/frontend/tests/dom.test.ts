/** DOM-writer tests over a minimal document shim: enough createElement /
 * append / dataset / click plumbing to verify that every rendered row is
 * click-extendable into exactly its column's position.
 */

import assert from "node:assert/strict";
import { test } from "node:test";

import { PositionKey } from "../src/api.js";
import { buildColumns, buildQueryChips, renderColumns, renderQuery } from "../src/render.js";
import { makeTerm } from "./helpers.js";

class FakeElement {
  children: FakeElement[] = [];
  textContent = "";
  className = "";
  title = "";
  type = "";
  dataset: Record<string, string> = {};
  private handlers = new Map<string, Array<() => void>>();

  constructor(
    readonly tagName: string,
    readonly ownerDocument: FakeDocument,
  ) {}

  append(...nodes: FakeElement[]): void {
    this.children.push(...nodes);
  }

  addEventListener(kind: string, handler: () => void): void {
    const list = this.handlers.get(kind) ?? [];
    list.push(handler);
    this.handlers.set(kind, list);
  }

  click(): void {
    for (const handler of this.handlers.get("click") ?? []) {
      handler();
    }
  }

  /** depth-first search by class name */
  find(className: string): FakeElement[] {
    const out: FakeElement[] = [];
    for (const child of this.children) {
      if (child.className.split(" ").includes(className)) {
        out.push(child);
      }
      out.push(...child.find(className));
    }
    return out;
  }
}

class FakeDocument {
  createElement(tag: string): FakeElement {
    return new FakeElement(tag, this);
  }
}

function container(): FakeElement {
  return new FakeElement("div", new FakeDocument());
}

function response() {
  return {
    sts: [makeTerm("http://v.org/TypeA", 1), makeTerm("http://v.org/TypeB", 2)],
    ps: [makeTerm("http://v.org/propX", 1)],
    ots: [makeTerm("http://v.org/TypeC", 1)],
  };
}

test("renderColumns wires each row's click to its own column position", () => {
  const root = container();
  const picks: Array<[PositionKey, string]> = [];
  renderColumns(
    root as unknown as HTMLElement,
    buildColumns(response()),
    (position, term) => picks.push([position, term]),
  );
  assert.equal(root.children.length, 3);
  for (const row of root.find("term-row")) {
    row.click();
  }
  assert.deepEqual(picks, [
    ["sts", "http://v.org/TypeA"],
    ["sts", "http://v.org/TypeB"],
    ["ps", "http://v.org/propX"],
    ["ots", "http://v.org/TypeC"],
  ]);
});

test("renderColumns keeps the received order and shows ranks", () => {
  const root = container();
  renderColumns(root as unknown as HTMLElement, buildColumns(response()), () => {});
  const stsColumn = root.children[0]!;
  assert.equal(stsColumn.dataset.position, "sts");
  const labels = stsColumn.find("label").map((el) => el.textContent);
  assert.deepEqual(labels, ["…/TypeA", "…/TypeB"]);
  const ranks = stsColumn.find("rank").map((el) => el.textContent);
  assert.deepEqual(ranks, ["1", "2"]);
});

test("empty columns render their hint instead of rows", () => {
  const root = container();
  renderColumns(root as unknown as HTMLElement, buildColumns(null), () => {});
  for (const column of root.children) {
    assert.equal(column.find("term-row").length, 0);
    const hints = column.find("empty-hint");
    assert.equal(hints.length, 1);
    assert.match(hints[0]!.textContent, /add a term/);
  }
});

test("renderQuery paints one chip per query term with tooltips", () => {
  const root = container();
  renderQuery(
    root as unknown as HTMLElement,
    buildQueryChips({
      sts: ["http://xmlns.com/foaf/0.1/Person"],
      ps: [],
      ots: ["http://v.org/Thing"],
    }),
  );
  assert.equal(root.children.length, 2);
  assert.equal(root.children[0]!.textContent, "sts: foaf:Person");
  assert.equal(root.children[0]!.title, "http://xmlns.com/foaf/0.1/Person");
  const empty = container();
  renderQuery(empty as unknown as HTMLElement, []);
  assert.match(empty.children[0]!.textContent, /empty query/);
});
