"""Seeded synthetic corpora for desk-scale experiments.

The generator plants a fixed set of SLP templates in every PLD, so held-out
terms are recoverable through co-occurrence, and adds globally popular
"distractor" types that never participate in any connected pair. Popularity
features therefore prefer the wrong candidates while the co-occurrence
feature identifies the planted term exactly, which is the contrast the
evaluation harness needs to measure.

Noise quads connect fresh untyped resources through PLD-local properties:
they enlarge the candidate pool and the SLP store without ever containing a
template term, so recoverability is untouched.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .corpus import Partition, PldGraph, write_corpus_dir
from .nquads import IRI_KIND, RDF_TYPE, Quad, RdfObject
from .slp import Slp

DISTRACTOR_TYPES = 10
DISTRACTOR_NS = "http://commons.example/pop#"


@dataclass
class SynthSpec:
    pld_count: int = 50
    vocab_count: int = 6
    slp_templates: int = 10
    noise_rate: float = 0.0

    def __post_init__(self):
        if self.pld_count < 1 or self.vocab_count < 1 or self.slp_templates < 1:
            raise ValueError("pld_count, vocab_count, slp_templates must be >= 1")
        if self.noise_rate < 0:
            raise ValueError("noise_rate must be >= 0")


def _vocab_namespaces(count: int) -> list[str]:
    # alternate slash and hash namespaces so both forms are exercised
    return [
        f"http://vocab{j:02d}.net/v/" if j % 2 == 0 else f"http://vocab{j:02d}.net/core#"
        for j in range(count)
    ]


def build_templates(spec: SynthSpec, rng: random.Random) -> list[Slp]:
    """Globally disjoint three-term SLP templates over the synthetic
    vocabularies.

    One term per slot keeps every held-out extraction uniquely recoverable:
    extending a reduced template by any term of a *different* template never
    reproduces a stored pattern, and no sibling term within the same slot
    can shadow the removed one.
    """
    vocabs = _vocab_namespaces(spec.vocab_count)
    return [
        Slp(
            frozenset({rng.choice(vocabs) + f"SubjectType{t}"}),
            frozenset({rng.choice(vocabs) + f"connects{t}"}),
            frozenset({rng.choice(vocabs) + f"ObjectType{t}"}),
        )
        for t in range(spec.slp_templates)
    ]


def _iri(value: str) -> RdfObject:
    return RdfObject(IRI_KIND, value)


def generate_synthetic_corpus(spec: SynthSpec, seed: int, out_dir: str | Path) -> Path:
    """Write a deterministic corpus directory realizing the spec."""
    rng = random.Random(seed)
    templates = build_templates(spec, rng)
    distractors = [f"{DISTRACTOR_NS}Common{i}" for i in range(DISTRACTOR_TYPES)]

    graphs: dict[str, PldGraph] = {}
    for p in range(spec.pld_count):
        pld = f"d{p:02d}.org"
        context = f"http://{rng.choice(['', 'www.', 'data.'])}{pld}/graph"
        quads: list[Quad] = []

        # exactly one realization per template and PLD: per-term quad totals
        # are identical across templates, so popularity carries no signal
        # about which template a query came from
        for t, template in enumerate(templates):
            subject = f"http://{pld}/r/t{t}s"
            obj = f"http://{pld}/r/t{t}o"
            for type_term in sorted(template.sts):
                quads.append(Quad(subject, RDF_TYPE, _iri(type_term), context))
            for type_term in sorted(template.ots):
                quads.append(Quad(obj, RDF_TYPE, _iri(type_term), context))
            for prop in sorted(template.ps):
                quads.append(Quad(subject, prop, _iri(obj), context))

        # three times as popular, but never co-occurring: typed resources
        # with no links
        for d, dtype in enumerate(distractors):
            for n in range(3):
                quads.append(Quad(f"http://{pld}/x/d{d}n{n}", RDF_TYPE, _iri(dtype), context))

        noise_count = int(spec.noise_rate * len(quads))
        for n in range(noise_count):
            prop = f"http://{pld}/ns#local{n % 7}"
            quads.append(Quad(f"http://{pld}/n/a{n}", prop, _iri(f"http://{pld}/n/b{n}"), context))

        graphs[pld] = PldGraph(pld, quads)

    return write_corpus_dir(Partition(graphs=graphs), out_dir)
