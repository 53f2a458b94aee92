"""Partitioning quad streams by pay-level domain and corpus-directory I/O.

A corpus directory holds one N-Quads file per PLD plus a ``manifest.tsv``
with columns ``pld<TAB>quad_count<TAB>file``. Quads whose context has no
derivable PLD land in a reserved ``unassigned`` bucket that every reader
skips; it exists only for accounting.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .domains import PayLevelDomainError, PublicSuffixList, pay_level_domain
from .nquads import ParseStats, Quad, parse_nquads, write_nquads

UNASSIGNED = "unassigned"


@dataclass
class PldGraph:
    """All quads whose context resolves to one pay-level domain."""

    pld: str
    quads: list[Quad] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.quads)


@dataclass
class Partition:
    graphs: dict[str, PldGraph]
    unassigned: list[Quad] = field(default_factory=list)

    def total_quads(self) -> int:
        return sum(len(g) for g in self.graphs.values()) + len(self.unassigned)


def partition_by_pld(quads: Iterable[Quad], psl: PublicSuffixList | None = None) -> Partition:
    """Assign each quad to the PLD of its context IRI.

    Contexts without a derivable PLD (no host, IP literals, unknown
    suffixes) go to the unassigned bucket, so no input quad is lost.
    """
    partition = Partition(graphs={})
    cache: dict[str, str | None] = {}
    for quad in quads:
        pld = cache.get(quad.context, "\0miss")
        if pld == "\0miss":
            try:
                pld = pay_level_domain(quad.context, psl)
            except PayLevelDomainError:
                pld = None
            cache[quad.context] = pld
        if pld is None:
            partition.unassigned.append(quad)
        else:
            partition.graphs.setdefault(pld, PldGraph(pld)).quads.append(quad)
    return partition


_UNSAFE_FILENAME = re.compile(r"[^A-Za-z0-9.-]")


def _pld_filename(pld: str, taken: set[str]) -> str:
    base = _UNSAFE_FILENAME.sub("_", pld) or "pld"
    name = f"{base}.nq"
    suffix = 1
    while name in taken:
        name = f"{base}.{suffix}.nq"
        suffix += 1
    taken.add(name)
    return name


def write_corpus_dir(partition: Partition, out_dir: str | Path) -> Path:
    """Materialize a partition as a corpus directory with a manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    taken: set[str] = set()
    rows: list[tuple[str, int, str]] = []
    for pld in sorted(partition.graphs):
        fname = _pld_filename(pld, taken)
        count = write_nquads(partition.graphs[pld].quads, out / fname)
        rows.append((pld, count, fname))
    if partition.unassigned:
        fname = _pld_filename(UNASSIGNED, taken)
        count = write_nquads(partition.unassigned, out / fname)
        rows.append((UNASSIGNED, count, fname))
    manifest = "".join(f"{pld}\t{count}\t{fname}\n" for pld, count, fname in rows)
    (out / "manifest.tsv").write_text(manifest, encoding="utf-8")
    return out


def read_manifest(corpus_dir: str | Path) -> list[tuple[str, int, str]]:
    path = Path(corpus_dir) / "manifest.tsv"
    rows = []
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ValueError(f"{path}: line {line_no}: expected 3 tab-separated columns")
        rows.append((fields[0], int(fields[1]), fields[2]))
    return rows


def read_corpus_dir(
    corpus_dir: str | Path,
    include: Iterable[str] | None = None,
    exclude: Iterable[str] | None = None,
) -> dict[str, PldGraph]:
    """Load per-PLD graphs from a corpus directory.

    The unassigned bucket is always skipped. ``include``/``exclude`` filter
    by PLD name; include wins over exclude when both are given.
    """
    corpus_dir = Path(corpus_dir)
    include_set = set(include) if include is not None else None
    exclude_set = set(exclude) if exclude is not None else set()
    graphs: dict[str, PldGraph] = {}
    for pld, _count, fname in read_manifest(corpus_dir):
        if pld == UNASSIGNED:
            continue
        if include_set is not None:
            if pld not in include_set:
                continue
        elif pld in exclude_set:
            continue
        quads = list(parse_nquads(corpus_dir / fname, strict=True))
        graphs[pld] = PldGraph(pld, quads)
    return graphs


@dataclass
class IngestReport:
    files: int = 0
    stats: ParseStats = field(default_factory=ParseStats)
    plds: int = 0
    unassigned_quads: int = 0


def ingest_files(
    paths: Sequence[str | Path],
    out_dir: str | Path,
    strict: bool = False,
    psl: PublicSuffixList | None = None,
) -> IngestReport:
    """Parse N-Quads files, partition by PLD, and write a corpus directory.

    Blank-node labels are scoped with a per-file ordinal prefix so labels
    from different files never join by accident.
    """
    report = IngestReport()

    def _all_quads():
        for ordinal, path in enumerate(sorted(Path(p) for p in paths)):
            report.files += 1
            yield from parse_nquads(
                path, strict=strict, stats=report.stats, bnode_prefix=f"f{ordinal}."
            )

    partition = partition_by_pld(_all_quads(), psl)
    write_corpus_dir(partition, out_dir)
    report.plds = len(partition.graphs)
    report.unassigned_quads = len(partition.unassigned)
    return report
