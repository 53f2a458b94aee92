"""Schema-level patterns (SLPs) and their algebra.

An SLP is a triple of term sets ``(sts, ps, ots)``: the RDF types of a
subject resource, the non-rdf:type properties connecting it to an object
resource, and the RDF types of that object resource. SLPs summarize how a
dataset combines vocabulary terms, independent of instance data.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .corpus import PldGraph
from .nquads import LITERAL_KIND, RDF_TYPE, RdfObject


class Position(enum.Enum):
    """Slot of an SLP a vocabulary term can occupy."""

    STS = "sts"
    PS = "ps"
    OTS = "ots"

    @classmethod
    def from_string(cls, name: str) -> "Position":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown position {name!r}; expected sts, ps, or ots") from None


TYPE_POSITIONS = (Position.STS, Position.OTS)


class EmptyQueryError(ValueError):
    """A query SLP must contain at least one term."""


@dataclass(frozen=True)
class Slp:
    """Immutable schema-level pattern. ``rdf:type`` never appears in ``ps``."""

    sts: frozenset[str] = frozenset()
    ps: frozenset[str] = frozenset()
    ots: frozenset[str] = frozenset()

    def __post_init__(self):
        for name in ("sts", "ps", "ots"):
            value = getattr(self, name)
            if not isinstance(value, frozenset):
                object.__setattr__(self, name, frozenset(value))
        if RDF_TYPE in self.ps:
            raise ValueError("rdf:type is not a connecting property")

    def get(self, pos: Position) -> frozenset[str]:
        return getattr(self, pos.value)

    def terms(self) -> Iterator[tuple[Position, str]]:
        for pos in Position:
            for term in sorted(self.get(pos)):
                yield pos, term

    def all_terms(self) -> frozenset[str]:
        return self.sts | self.ps | self.ots

    def is_empty(self) -> bool:
        return not (self.sts or self.ps or self.ots)

    def __len__(self) -> int:
        return len(self.sts) + len(self.ps) + len(self.ots)


EMPTY_SLP = Slp()


def require_query_slp(slp: Slp) -> Slp:
    """Validate the non-empty-query rule shared by ranking and the service."""
    if slp.is_empty():
        raise EmptyQueryError("query SLP must not be empty")
    return slp


def slp_union(a: Slp, b: Slp) -> Slp:
    """Component-wise union; commutative, associative, idempotent."""
    return Slp(a.sts | b.sts, a.ps | b.ps, a.ots | b.ots)


def slp_extend(slp: Slp, pos: Position, term: str) -> Slp:
    """Add one term at the given position."""
    if pos is Position.PS and term == RDF_TYPE:
        raise ValueError("rdf:type cannot be added as a connecting property")
    parts = {p.value: slp.get(p) for p in Position}
    parts[pos.value] = parts[pos.value] | {term}
    return Slp(parts["sts"], parts["ps"], parts["ots"])


def slp_remove(slp: Slp, pos: Position, term: str) -> Slp:
    """Drop a term from the given position; absent terms are a no-op."""
    parts = {p.value: slp.get(p) for p in Position}
    parts[pos.value] = parts[pos.value] - {term}
    return Slp(parts["sts"], parts["ps"], parts["ots"])


def slp_subset(a: Slp, b: Slp, strict: bool = False) -> bool:
    """Component-wise containment; ``strict`` additionally requires a != b."""
    contained = a.sts <= b.sts and a.ps <= b.ps and a.ots <= b.ots
    if strict:
        return contained and a != b
    return contained


def canonical_serialize(slp: Slp) -> str:
    """Canonical line form: each set sorted and space-joined, sets tab-joined."""
    return "\t".join(" ".join(sorted(slp.get(pos))) for pos in Position)


def canonical_parse(line: str) -> Slp:
    """Inverse of :func:`canonical_serialize`."""
    fields = line.split("\t")
    if len(fields) != 3:
        raise ValueError(f"expected 3 tab-separated groups, got {len(fields)}")
    sets = [frozenset(f.split(" ")) - {""} for f in fields]
    return Slp(*sets)


class SlpSet:
    """Deduplicated SLP store with per-SLP pay-level-domain provenance."""

    def __init__(self):
        self._entries: dict[Slp, set[str]] = {}

    def add(self, slp: Slp, plds: Iterable[str]) -> None:
        self._entries.setdefault(slp, set()).update(plds)

    def merge(self, other: "SlpSet") -> "SlpSet":
        for slp, plds in other._entries.items():
            self.add(slp, plds)
        return self

    def provenance(self, slp: Slp) -> frozenset[str]:
        return frozenset(self._entries.get(slp, ()))

    def items(self) -> Iterator[tuple[Slp, frozenset[str]]]:
        for slp, plds in self._entries.items():
            yield slp, frozenset(plds)

    def __iter__(self) -> Iterator[Slp]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, slp: Slp) -> bool:
        return slp in self._entries

    def write_store(self, path: str | Path) -> None:
        lines = [
            f"{canonical_serialize(slp)}\t{' '.join(sorted(plds))}"
            for slp, plds in self._entries.items()
        ]
        Path(path).write_text("".join(line + "\n" for line in sorted(lines)), encoding="utf-8")

    @classmethod
    def read_store(cls, path: str | Path) -> "SlpSet":
        out = cls()
        for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if not raw:
                continue
            fields = raw.split("\t")
            if len(fields) != 4:
                raise ValueError(f"{path}: line {line_no}: expected 4 tab-separated fields")
            slp = canonical_parse("\t".join(fields[:3]))
            plds = set(fields[3].split(" ")) - {""}
            out.add(slp, plds)
        return out


def compute_slps(graph: PldGraph) -> SlpSet:
    """Extract the maximal SLP of every connected resource pair in a graph.

    A pair (s, o) qualifies when at least one non-rdf:type quad links s to o.
    Its SLP collects all rdf:type objects of s, all non-rdf:type predicates
    from s to o, and all rdf:type objects of o (empty for literals and
    untyped resources). Blank nodes participate like IRIs; the result is
    deduplicated with the graph's PLD as provenance.
    """
    types: dict[str, set[str]] = {}
    pairs: dict[tuple[str, RdfObject], set[str]] = {}
    for quad in graph.quads:
        if quad.predicate == RDF_TYPE:
            if quad.obj.is_iri():
                types.setdefault(quad.subject, set()).add(quad.obj.value)
            continue
        pairs.setdefault((quad.subject, quad.obj), set()).add(quad.predicate)

    out = SlpSet()
    provenance = (graph.pld,)
    empty: frozenset[str] = frozenset()
    for (subject, obj), preds in pairs.items():
        sts = frozenset(types.get(subject, empty))
        if obj.kind == LITERAL_KIND:
            ots = empty
        else:
            ots = frozenset(types.get(obj.value, empty))
        out.add(Slp(sts, frozenset(preds), ots), provenance)
    return out


def compute_corpus_slps(graphs: Iterable[PldGraph]) -> SlpSet:
    """Union of per-graph SLP sets; provenance accumulates across graphs."""
    merged = SlpSet()
    for graph in graphs:
        merged.merge(compute_slps(graph))
    return merged
