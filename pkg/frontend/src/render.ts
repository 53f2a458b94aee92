/** View-model construction (pure, tested) and DOM writing (browser only).
 *
 * The view model preserves the server's ranking order exactly: rows appear
 * in response order, never re-sorted or filtered. Each row carries the
 * position of its column so a click extends the query at that position.
 */

import { POSITIONS, PositionKey, QuerySlp, RecommendResponse } from "./api.js";
import { abbreviate } from "./prefixes.js";

export interface FeatureChip {
  name: string;
  value: number;
  badge: boolean; // f4 renders as an on/off badge instead of a count
}

export interface TermRow {
  rank: number;
  term: string;
  label: string;
  tooltip: string;
  score: string;
  chips: FeatureChip[];
  position: PositionKey;
}

export interface ColumnView {
  position: PositionKey;
  title: string;
  rows: TermRow[];
  emptyHint: string | null;
}

const COLUMN_TITLES: Record<PositionKey, string> = {
  sts: "subject types",
  ps: "properties",
  ots: "object types",
};

export function buildColumns(response: RecommendResponse | null): ColumnView[] {
  return POSITIONS.map((position) => {
    const items = response?.[position] ?? [];
    return {
      position,
      title: COLUMN_TITLES[position],
      rows: items.map((item) => ({
        rank: item.rank,
        term: item.term,
        label: abbreviate(item.term),
        tooltip: item.term,
        score: item.score.toPrecision(4),
        chips: (["f1", "f2", "f3", "f4", "f5"] as const).map((name) => ({
          name,
          value: item.features[name],
          badge: name === "f4",
        })),
        position,
      })),
      emptyHint:
        items.length > 0
          ? null
          : response === null
            ? "add a term to see recommendations"
            : "no recommendations for this position",
    };
  });
}

export interface QueryChipView {
  position: PositionKey;
  term: string;
  label: string;
}

export function buildQueryChips(query: QuerySlp): QueryChipView[] {
  return POSITIONS.flatMap((position) =>
    query[position].map((term) => ({ position, term, label: abbreviate(term) })),
  );
}

// DOM writers; only main.ts calls these, never the tests ---------------------

export function renderColumns(
  container: HTMLElement,
  columns: ColumnView[],
  onPick: (position: PositionKey, term: string) => void,
): void {
  container.textContent = "";
  for (const column of columns) {
    const section = container.ownerDocument.createElement("section");
    section.className = "column";
    section.dataset.position = column.position;
    const heading = container.ownerDocument.createElement("h2");
    heading.textContent = `${column.title} (${column.position})`;
    section.append(heading);
    if (column.emptyHint) {
      const hint = container.ownerDocument.createElement("p");
      hint.className = "empty-hint";
      hint.textContent = column.emptyHint;
      section.append(hint);
    }
    for (const row of column.rows) {
      const button = container.ownerDocument.createElement("button");
      button.className = "term-row";
      button.type = "button";
      button.title = row.tooltip;
      button.addEventListener("click", () => onPick(row.position, row.term));
      const rank = container.ownerDocument.createElement("span");
      rank.className = "rank";
      rank.textContent = String(row.rank);
      const label = container.ownerDocument.createElement("span");
      label.className = "label";
      label.textContent = row.label;
      const score = container.ownerDocument.createElement("span");
      score.className = "score";
      score.textContent = row.score;
      button.append(rank, label, score);
      for (const chip of row.chips) {
        const el = container.ownerDocument.createElement("span");
        el.className = chip.badge ? (chip.value ? "chip badge on" : "chip badge") : "chip";
        el.textContent = chip.badge ? (chip.value ? "same vocab" : "") : `${chip.name}=${chip.value}`;
        if (el.textContent) {
          button.append(el);
        }
      }
      section.append(button);
    }
    container.append(section);
  }
}

export function renderQuery(
  container: HTMLElement,
  chips: QueryChipView[],
  emptyText = "empty query: add a first term via search",
): void {
  container.textContent = "";
  if (chips.length === 0) {
    const hint = container.ownerDocument.createElement("span");
    hint.className = "empty-hint";
    hint.textContent = emptyText;
    container.append(hint);
    return;
  }
  for (const chip of chips) {
    const el = container.ownerDocument.createElement("span");
    el.className = `query-chip ${chip.position}`;
    el.textContent = `${chip.position}: ${chip.label}`;
    el.title = chip.term;
    container.append(el);
  }
}
