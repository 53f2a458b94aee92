"""Background-corpus indices and the five per-candidate features.

The background corpus stands in for "datasets already published elsewhere":
per-term and per-vocabulary dataset counts, total occurrence counts, the
type/property candidate sets, and the deduplicated SLP store. Features are
raw absolute counts, never normalized.

Feature summary for a query SLP q and candidate term x at position pos:

* f1 — number of PLDs using x (as predicate or rdf:type object)
* f2 — number of PLDs using any term of x's vocabulary namespace
* f3 — total number of quads using x
* f4 — 1 if x's namespace already occurs among q's terms, else 0
* f5 — number of stored SLPs containing the extension of q by x at pos
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .corpus import PldGraph
from .domains import vocabulary_namespace
from .nquads import RDF_TYPE
from .slp import (
    Position,
    Slp,
    SlpSet,
    compute_corpus_slps,
    require_query_slp,
    slp_extend,
)

FEATURE_NAMES = ("f1", "f2", "f3", "f4", "f5")


@dataclass(frozen=True)
class FeatureVector:
    """Raw feature values for one (query, candidate, position) triple."""

    f1: int
    f2: int
    f3: int
    f4: int
    f5: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.f1, self.f2, self.f3, self.f4, self.f5)

    def to_dict(self) -> dict[str, int]:
        return {name: value for name, value in zip(FEATURE_NAMES, self.as_tuple())}


def _namespace_or_none(term: str) -> str | None:
    try:
        return vocabulary_namespace(term)
    except ValueError:
        return None


def shares_query_vocabulary(query: Slp, candidate: str) -> int:
    """f4: whether the candidate's vocabulary already appears in the query."""
    ns = _namespace_or_none(candidate)
    if ns is None:
        return 0
    for term in query.all_terms():
        if _namespace_or_none(term) == ns:
            return 1
    return 0


class SlpContainmentIndex:
    """Inverted index term -> SLP ids, per position, for subset counting.

    Containment queries intersect posting sets smallest-first; an SLP store
    easily reaches 10^5 patterns and per-candidate linear scans dominate the
    evaluation cost otherwise.
    """

    def __init__(self, slps: SlpSet):
        self._slps: list[Slp] = []
        self._weights: list[int] = []
        self._postings: dict[Position, dict[str, set[int]]] = {pos: {} for pos in Position}
        for idx, (slp, plds) in enumerate(sorted(slps.items(), key=lambda e: str(e[0]))):
            self._slps.append(slp)
            self._weights.append(len(plds))
            for pos in Position:
                table = self._postings[pos]
                for term in slp.get(pos):
                    table.setdefault(term, set()).add(idx)

    def __len__(self) -> int:
        return len(self._slps)

    def count_containing(self, pattern: Slp, weighted: bool = False) -> int:
        """Number of stored SLPs s with pattern <= s.

        ``weighted`` counts each matching SLP once per provenance PLD
        instead of once overall.
        """
        posting_sets: list[set[int]] = []
        for pos in Position:
            table = self._postings[pos]
            for term in pattern.get(pos):
                postings = table.get(term)
                if not postings:
                    return 0
                posting_sets.append(postings)
        if not posting_sets:
            # empty pattern is contained in every stored SLP
            return sum(self._weights) if weighted else len(self._slps)
        posting_sets.sort(key=len)
        ids = set(posting_sets[0])
        for postings in posting_sets[1:]:
            ids &= postings
            if not ids:
                return 0
        if weighted:
            return sum(self._weights[i] for i in ids)
        return len(ids)


class BackgroundCorpus:
    """Read-only usage indices plus the SLP store of the background PLDs."""

    def __init__(
        self,
        term_pld_count: Mapping[str, int],
        vocab_pld_count: Mapping[str, int],
        term_occurrences: Mapping[str, int],
        types: Iterable[str],
        properties: Iterable[str],
        slps: SlpSet,
    ):
        self.term_pld_count = dict(term_pld_count)
        self.vocab_pld_count = dict(vocab_pld_count)
        self.term_occurrences = dict(term_occurrences)
        self.types = frozenset(types)
        self.properties = frozenset(properties)
        self.slps = slps
        self.slp_index = SlpContainmentIndex(slps)

    # feature computations ------------------------------------------------

    def term_dataset_count(self, term: str) -> int:
        """f1."""
        return self.term_pld_count.get(term, 0)

    def vocabulary_dataset_count(self, term: str) -> int:
        """f2, resolved through the term's namespace."""
        ns = _namespace_or_none(term)
        return self.vocab_pld_count.get(ns, 0) if ns else 0

    def term_occurrence_count(self, term: str) -> int:
        """f3."""
        return self.term_occurrences.get(term, 0)

    def cooccurring_slp_count(
        self, query: Slp, candidate: str, pos: Position, weighted: bool = False
    ) -> int:
        """f5: stored SLPs containing the query extended by the candidate."""
        require_query_slp(query)
        return self.slp_index.count_containing(slp_extend(query, pos, candidate), weighted)

    def features(
        self, query: Slp, candidate: str, pos: Position, weighted_f5: bool = False
    ) -> FeatureVector:
        return FeatureVector(
            f1=self.term_dataset_count(candidate),
            f2=self.vocabulary_dataset_count(candidate),
            f3=self.term_occurrence_count(candidate),
            f4=shares_query_vocabulary(query, candidate),
            f5=self.cooccurring_slp_count(query, candidate, pos, weighted_f5),
        )

    def candidates(self, pos: Position) -> frozenset[str]:
        """Recommendation candidates: observed types for sts/ots, observed
        properties for ps."""
        return self.properties if pos is Position.PS else self.types


def build_index(graphs: Iterable[PldGraph]) -> BackgroundCorpus:
    """Single pass over the background graphs populating every index."""
    term_plds: dict[str, set[str]] = {}
    vocab_plds: dict[str, set[str]] = {}
    occurrences: dict[str, int] = {}
    types: set[str] = set()
    properties: set[str] = set()
    graphs = list(graphs)
    ns_memo: dict[str, str | None] = {}

    def _count(term: str, pld: str) -> None:
        term_plds.setdefault(term, set()).add(pld)
        occurrences[term] = occurrences.get(term, 0) + 1
        ns = ns_memo.get(term, "\0miss")
        if ns == "\0miss":
            ns = ns_memo[term] = _namespace_or_none(term)
        if ns:
            vocab_plds.setdefault(ns, set()).add(pld)

    for graph in graphs:
        for quad in graph.quads:
            # every predicate occurrence counts, rdf:type included; only
            # non-rdf:type predicates become property candidates
            _count(quad.predicate, graph.pld)
            if quad.predicate == RDF_TYPE:
                if quad.obj.is_iri():
                    types.add(quad.obj.value)
                    _count(quad.obj.value, graph.pld)
            else:
                properties.add(quad.predicate)

    slps = compute_corpus_slps(graphs)
    return BackgroundCorpus(
        term_pld_count={t: len(p) for t, p in term_plds.items()},
        vocab_pld_count={v: len(p) for v, p in vocab_plds.items()},
        term_occurrences=occurrences,
        types=types,
        properties=properties,
        slps=slps,
    )


# index persistence --------------------------------------------------------

TERMS_FILE = "terms.tsv"
VOCABS_FILE = "vocabs.tsv"
SLPS_FILE = "slps.tsv"


def save_index(corpus: BackgroundCorpus, out_dir: str | Path) -> Path:
    """Persist the corpus as terms.tsv, vocabs.tsv, and slps.tsv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    term_lines = []
    for term in sorted(set(corpus.term_pld_count) | corpus.types | corpus.properties):
        kinds = ("T" if term in corpus.types else "") + ("P" if term in corpus.properties else "")
        term_lines.append(
            f"{term}\t{kinds}\t{corpus.term_pld_count.get(term, 0)}"
            f"\t{corpus.term_occurrences.get(term, 0)}\n"
        )
    (out / TERMS_FILE).write_text("".join(term_lines), encoding="utf-8")
    vocab_lines = [f"{ns}\t{n}\n" for ns, n in sorted(corpus.vocab_pld_count.items())]
    (out / VOCABS_FILE).write_text("".join(vocab_lines), encoding="utf-8")
    corpus.slps.write_store(out / SLPS_FILE)
    return out


def load_index(index_dir: str | Path) -> BackgroundCorpus:
    index_dir = Path(index_dir)
    term_pld_count: dict[str, int] = {}
    occurrences: dict[str, int] = {}
    types: set[str] = set()
    properties: set[str] = set()
    for line_no, line in enumerate(
        (index_dir / TERMS_FILE).read_text(encoding="utf-8").splitlines(), 1
    ):
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise ValueError(f"{TERMS_FILE}: line {line_no}: expected 4 columns")
        term, kinds, pld_count, occ = fields
        if "T" in kinds:
            types.add(term)
        if "P" in kinds:
            properties.add(term)
        term_pld_count[term] = int(pld_count)
        occurrences[term] = int(occ)
    vocab_pld_count: dict[str, int] = {}
    for line_no, line in enumerate(
        (index_dir / VOCABS_FILE).read_text(encoding="utf-8").splitlines(), 1
    ):
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ValueError(f"{VOCABS_FILE}: line {line_no}: expected 2 columns")
        vocab_pld_count[fields[0]] = int(fields[1])
    slps = SlpSet.read_store(index_dir / SLPS_FILE)
    return BackgroundCorpus(
        term_pld_count, vocab_pld_count, occurrences, types, properties, slps
    )
