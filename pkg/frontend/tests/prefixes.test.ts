import assert from "node:assert/strict";
import { test } from "node:test";

import { abbreviate } from "../src/prefixes.js";

test("known namespaces abbreviate to prefix:local", () => {
  assert.equal(abbreviate("http://xmlns.com/foaf/0.1/knows"), "foaf:knows");
  assert.equal(abbreviate("http://www.w3.org/2004/02/skos/core#Concept"), "skos:Concept");
  assert.equal(abbreviate("http://swrc.ontoware.org/ontology#Publication"), "swrc:Publication");
});

test("longest matching prefix wins", () => {
  const table = { "http://a.org/": "a", "http://a.org/deep/": "deep" };
  assert.equal(abbreviate("http://a.org/deep/Term", table), "deep:Term");
  assert.equal(abbreviate("http://a.org/Other", table), "a:Other");
});

test("unknown namespaces fall back to a readable tail", () => {
  assert.equal(abbreviate("http://nobody.example/ns/Widget"), "…/Widget");
  assert.equal(abbreviate("http://nobody.example/ns#Widget"), "…#Widget");
});

test("degenerate IRIs pass through unchanged", () => {
  assert.equal(abbreviate("urn:nothing"), "urn:nothing");
  assert.equal(abbreviate("http://host/"), "http://host/");
});
