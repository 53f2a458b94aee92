/** Browser bootstrap: wires the controller, search box, and renderers.
 *
 * Endpoint resolution: `?endpoint=` query parameter, then the settings
 * input, then same-origin.
 */

import { ApiClient, PositionKey } from "./api.js";
import { WorkbenchController } from "./controller.js";
import { buildColumns, buildQueryChips, renderColumns, renderQuery } from "./render.js";
import { abbreviate } from "./prefixes.js";
import { Typeahead } from "./typeahead.js";
import { atRoot } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing #${id}`);
  }
  return found as T;
}

function resolveEndpoint(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("endpoint");
  return (fromQuery ?? window.location.origin).replace(/\/$/, "");
}

function main(): void {
  const endpoint = resolveEndpoint();
  const controller = new WorkbenchController(endpoint, (url, init) => fetch(url, init));

  const columnsEl = el<HTMLDivElement>("columns");
  const queryEl = el<HTMLDivElement>("query");
  const bannerEl = el<HTMLDivElement>("banner");
  const undoButton = el<HTMLButtonElement>("undo");
  const searchInput = el<HTMLInputElement>("search");
  const searchKind = el<HTMLSelectElement>("search-kind");
  const suggestionsEl = el<HTMLDivElement>("suggestions");
  const endpointInput = el<HTMLInputElement>("endpoint");
  const statusEl = el<HTMLSpanElement>("status");

  endpointInput.value = endpoint;

  const pick = (position: PositionKey, term: string) => {
    void controller.addTerm(position, term);
  };

  controller.subscribe((state) => {
    renderColumns(columnsEl, buildColumns(state.lists), pick);
    renderQuery(queryEl, buildQueryChips(controller.query()));
    bannerEl.textContent = state.banner ?? "";
    bannerEl.hidden = state.banner === null;
    undoButton.disabled = atRoot(state);
  });

  undoButton.addEventListener("click", () => void controller.undo());
  bannerEl.addEventListener("click", () => controller.dismissBanner());

  const searchClient = () => new ApiClient(controller.getState().endpoint, (u, i) => fetch(u, i));

  const showSuggestions = (items: { term: string; kind: "type" | "property" }[]) => {
    suggestionsEl.textContent = "";
    for (const item of items) {
      const button = document.createElement("button");
      button.type = "button";
      button.className = "suggestion";
      button.textContent = `${abbreviate(item.term)} (${item.kind})`;
      button.title = item.term;
      button.addEventListener("click", () => {
        const position: PositionKey =
          item.kind === "property" ? "ps" : searchKind.value === "ots" ? "ots" : "sts";
        pick(position, item.term);
        suggestionsEl.textContent = "";
        searchInput.value = "";
      });
      suggestionsEl.append(button);
    }
  };

  let typeahead = new Typeahead(searchClient(), showSuggestions);

  endpointInput.addEventListener("change", () => {
    controller.setEndpoint(endpointInput.value.replace(/\/$/, ""));
    typeahead = new Typeahead(searchClient(), showSuggestions);
    void probeHealth();
  });

  searchInput.addEventListener("input", () => {
    const kind = searchKind.value === "ps" ? "property" : "type";
    typeahead.input(searchInput.value.trim(), kind);
  });

  async function probeHealth(): Promise<void> {
    try {
      const health = await searchClient().health();
      statusEl.textContent = `connected: ${health.slp_count} SLPs`;
      statusEl.className = "ok";
    } catch {
      statusEl.textContent = "service unreachable";
      statusEl.className = "down";
    }
  }

  void probeHealth();
}

document.addEventListener("DOMContentLoaded", main);
