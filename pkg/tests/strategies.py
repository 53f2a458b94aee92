"""Hypothesis strategies and seeded generators shared across the tests."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from termpicker.nquads import BLANK_KIND, IRI_KIND, LITERAL_KIND, RDF_TYPE, Quad, RdfObject
from termpicker.slp import Position, Slp

_PATH_ALPHABET = "abcdefghijkXYZ0123456789_.~%-"

iris = st.builds(
    lambda host, path, frag: f"http://{host}.org/{path}" + (f"#{frag}" if frag else ""),
    st.sampled_from(["ex1", "ex2", "data.ex3"]),
    st.text(alphabet=_PATH_ALPHABET, min_size=1, max_size=12),
    st.one_of(st.just(""), st.text(alphabet=_PATH_ALPHABET, min_size=1, max_size=6)),
)

blank_labels = st.builds(
    lambda s: "_:" + s, st.text(alphabet="abc0123456789", min_size=1, max_size=8)
)

_lexical = st.text(max_size=20)
_langs = st.sampled_from(["en", "de", "en-GB"])

literal_objects = st.one_of(
    st.builds(lambda v: RdfObject(LITERAL_KIND, v), _lexical),
    st.builds(lambda v, dt: RdfObject(LITERAL_KIND, v, datatype=dt), _lexical, iris),
    st.builds(lambda v, lang: RdfObject(LITERAL_KIND, v, lang=lang), _lexical, _langs),
)

rdf_objects = st.one_of(
    st.builds(RdfObject, st.just(IRI_KIND), iris),
    st.builds(RdfObject, st.just(BLANK_KIND), blank_labels),
    literal_objects,
)

quads = st.builds(
    Quad,
    st.one_of(iris, blank_labels),
    iris,
    rdf_objects,
    iris,
)


def small_term_pool(prefix: str, size: int) -> list[str]:
    return [f"http://pool.org/{prefix}{i}" for i in range(size)]


_TYPES = small_term_pool("T", 6)
_PROPS = small_term_pool("p", 6)

slps = st.builds(
    lambda sts, ps, ots: Slp(frozenset(sts), frozenset(ps) - {RDF_TYPE}, frozenset(ots)),
    st.sets(st.sampled_from(_TYPES), max_size=3),
    st.sets(st.sampled_from(_PROPS), max_size=3),
    st.sets(st.sampled_from(_TYPES), max_size=3),
)


# seeded random corpora for oracle-equivalence runs --------------------------

VOCAB_POOL = ("http://voc-a.org/ns#", "http://voc-b.org/v/", "http://x0.org/self#")
TYPE_POOL = tuple(v + f"T{k}" for v in VOCAB_POOL for k in range(3))
PROP_POOL = tuple(v + f"p{k}" for v in VOCAB_POOL for k in range(2))


def random_background(
    rng: random.Random, max_plds: int = 5, max_quads: int = 200
) -> dict[str, list[Quad]]:
    """Messy multi-PLD corpus over small shared term pools: typed and
    untyped resources, blank nodes, literal objects, cross-PLD term reuse."""
    graphs: dict[str, list[Quad]] = {}
    for i in range(rng.randint(1, max_plds)):
        pld = f"x{i}.org"
        ctx = f"http://{pld}/g"
        resources = [f"http://{pld}/r{j}" for j in range(8)] + ["_:b0", "_:b1"]
        quads = []
        for _ in range(rng.randint(0, max_quads)):
            roll = rng.random()
            if roll < 0.45:
                obj = RdfObject(IRI_KIND, rng.choice(TYPE_POOL))
                quads.append(Quad(rng.choice(resources), RDF_TYPE, obj, ctx))
            elif roll < 0.9:
                target = rng.choice(resources)
                kind = BLANK_KIND if target.startswith("_:") else IRI_KIND
                obj = RdfObject(kind, target)
                quads.append(Quad(rng.choice(resources), rng.choice(PROP_POOL), obj, ctx))
            else:
                obj = RdfObject(LITERAL_KIND, rng.choice(["1", "2015", "x"]))
                quads.append(Quad(rng.choice(resources), rng.choice(PROP_POOL), obj, ctx))
        graphs[pld] = quads
    return graphs


def random_query(rng: random.Random) -> Slp:
    """Non-empty query SLP over the shared pools."""
    while True:
        sts = frozenset(rng.sample(TYPE_POOL, rng.randint(0, 2)))
        ps = frozenset(rng.sample(PROP_POOL, rng.randint(0, 1)))
        ots = frozenset(rng.sample(TYPE_POOL, rng.randint(0, 2)))
        if sts or ps or ots:
            return Slp(sts, ps, ots)


def random_feature_probe(rng: random.Random) -> tuple[Slp, str, Position]:
    query = random_query(rng)
    pos = rng.choice(list(Position))
    pool = PROP_POOL if pos is Position.PS else TYPE_POOL
    return query, rng.choice(pool), pos
