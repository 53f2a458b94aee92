"""Leave-one-out evaluation: PLD selection, fold orchestration, reporting.

Ten PLDs are chosen by vocabulary-reuse criteria; each fold holds one out as
the test set, trains ranking models on the other nine, and computes all
features against the remaining PLDs only. Recommendation quality is MAP and
MRR@5 over held-out extraction queries, reported per position and overall,
with means and standard deviations across folds.
"""

from __future__ import annotations

import random
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .corpus import PldGraph, read_corpus_dir
from .domains import PayLevelDomainError, pay_level_domain, vocabulary_namespace
from .features import BackgroundCorpus, build_index
from .metrics import average_precision, reciprocal_rank_at_k
from .nquads import RDF_TYPE
from .ranking import (
    ExtractionQuery,
    Hyperparams,
    TrainingInstance,
    extract_queries,
    featurize_query,
    train_coordinate_ascent,
    train_random_forests,
)
from .seeds import derive_seed
from .slp import Position, compute_corpus_slps, compute_slps

POSITIONS = tuple(p.value for p in Position)
REPORT_POSITIONS = POSITIONS + ("overall",)
ALGORITHMS = ("rf", "ca")
REPORT_HEADER = ("fold", "algo", "mask", "position", "map", "mrr5")


@dataclass(frozen=True)
class PldStats:
    """Selection criteria of one PLD: distinct vocabulary terms, the share
    of them from externally hosted namespaces, and its SLP yield."""

    pld: str
    distinct_terms: int
    reuse_ratio: float
    slp_count: int


def _term_is_reused(term: str, own_pld: str) -> bool:
    """A term counts as reused unless its namespace host resolves to the
    PLD that uses it."""
    try:
        ns_pld = pay_level_domain(vocabulary_namespace(term))
    except (ValueError, PayLevelDomainError):
        return True
    return ns_pld != own_pld


def pld_stats_from_graphs(graphs: Iterable[PldGraph]) -> list[PldStats]:
    out = []
    for graph in sorted(graphs, key=lambda g: g.pld):
        terms: set[str] = set()
        for quad in graph.quads:
            if quad.predicate == RDF_TYPE:
                if quad.obj.is_iri():
                    terms.add(quad.obj.value)
            else:
                terms.add(quad.predicate)
        reused = sum(1 for t in terms if _term_is_reused(t, graph.pld))
        ratio = reused / len(terms) if terms else 0.0
        out.append(
            PldStats(
                pld=graph.pld,
                distinct_terms=len(terms),
                reuse_ratio=ratio,
                slp_count=len(compute_slps(graph)),
            )
        )
    return out


def pld_stats(corpus_dir: str | Path) -> list[PldStats]:
    return pld_stats_from_graphs(read_corpus_dir(corpus_dir).values())


def select_plds(stats: Sequence[PldStats], n: int = 10) -> list[str]:
    """Top PLDs by reuse ratio, then distinct-term count, then name."""
    if len(stats) < n:
        raise ValueError(f"need at least {n} PLDs, corpus has {len(stats)}")
    ranked = sorted(stats, key=lambda s: (-s.reuse_ratio, -s.distinct_terms, s.pld))
    return [s.pld for s in ranked[:n]]


@dataclass(frozen=True)
class FoldPlan:
    """Ordered evaluation PLDs; fold i tests plds[i] and trains on the rest."""

    plds: tuple[str, ...]

    def folds(self):
        for i, test in enumerate(self.plds):
            yield i, test, tuple(p for p in self.plds if p != test)


def build_background_index(
    graphs: Mapping[str, PldGraph], plan: FoldPlan
) -> BackgroundCorpus:
    """Feature index over everything except the evaluation PLDs.

    No quad from a selected PLD may leak into any fold's features, so the
    index is built once from the complement and shared across folds.
    """
    selected = set(plan.plds)
    return build_index(g for pld, g in graphs.items() if pld not in selected)


@dataclass(frozen=True)
class EvalRow:
    fold: str
    algo: str
    mask: str
    position: str
    map_score: float | None
    mrr5: float | None


def _cell(value: float | None) -> str:
    return "skipped" if value is None else f"{value:.6f}"


@dataclass
class EvalReport:
    rows: list[EvalRow]

    def get(self, fold: str, algo: str, mask: str, position: str) -> EvalRow:
        for row in self.rows:
            if (row.fold, row.algo, row.mask, row.position) == (fold, algo, mask, position):
                return row
        raise KeyError((fold, algo, mask, position))

    def write_tsv(self, path: str | Path) -> None:
        lines = ["\t".join(REPORT_HEADER)]
        for row in self.rows:
            lines.append(
                "\t".join(
                    (row.fold, row.algo, row.mask, row.position, _cell(row.map_score), _cell(row.mrr5))
                )
            )
        Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def format_summary_table(report: EvalReport) -> str:
    """Wide mean-value layout: one row per algorithm and mask, MAP/MRR@5
    columns per position and overall."""
    header = ["algo", "mask"]
    for position in REPORT_POSITIONS:
        header += [f"{position}:map", f"{position}:mrr5"]
    lines = ["\t".join(header)]
    seen: list[tuple[str, str]] = []
    for row in report.rows:
        if (row.algo, row.mask) not in seen:
            seen.append((row.algo, row.mask))
    for algo, mask in seen:
        cells = [algo, mask]
        for position in REPORT_POSITIONS:
            row = report.get("mean", algo, mask, position)
            cells += [_cell(row.map_score), _cell(row.mrr5)]
        lines.append("\t".join(cells))
    return "\n".join(lines)


def _train_model(
    algo: str,
    instances: Sequence[TrainingInstance],
    hp: Hyperparams,
    mask: str,
    seed: int,
):
    if algo == "rf":
        return train_random_forests(instances, hp, mask, seed)
    if algo == "ca":
        return train_coordinate_ascent(instances, hp, mask, seed)
    raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")


@dataclass
class _PreparedQuery:
    """Test query with its candidate list and feature matrix precomputed,
    shared by every (algo, mask) pair of the fold."""

    query: ExtractionQuery
    candidates: list[str]
    X: np.ndarray


def _prepare_test_queries(
    corpus: BackgroundCorpus, queries: Sequence[ExtractionQuery], weighted_f5: bool = False
) -> list[_PreparedQuery]:
    prepared = []
    for query in queries:
        candidates = sorted(corpus.candidates(query.position))
        if not candidates:
            continue
        X = np.array(
            [
                corpus.features(query.query, c, query.position, weighted_f5).as_tuple()
                for c in candidates
            ],
            dtype=float,
        )
        prepared.append(_PreparedQuery(query, candidates, X))
    return prepared


def _ranked_terms(prepared: _PreparedQuery, scores: np.ndarray) -> list[str]:
    order = np.lexsort((np.arange(len(scores)), -scores))
    return [prepared.candidates[i] for i in order]


def run_loo_evaluation(
    corpus_dir: str | Path,
    plan: FoldPlan | None = None,
    folds: int = 10,
    algos: Sequence[str] = ALGORITHMS,
    masks: Sequence[str] = ("pop", "same", "slp"),
    seed: int = 0,
    hp: Hyperparams | None = None,
    extract_min: int = 1,
    extract_max: int = 2,
    weighted_f5: bool = False,
) -> EvalReport:
    """Full leave-one-out run over a corpus directory.

    The background index excludes every selected PLD and is shared by all
    folds. Per fold, training queries are drawn from the nine training PLDs'
    SLPs and test queries (with their own derived seed) from the held-out
    PLD. Folds without test queries are reported as skipped.
    """
    hp = hp or Hyperparams()
    graphs = read_corpus_dir(corpus_dir)
    if plan is None:
        plan = FoldPlan(tuple(select_plds(pld_stats_from_graphs(graphs.values()), folds)))
    missing = [p for p in plan.plds if p not in graphs]
    if missing:
        raise ValueError(f"fold plan names PLDs absent from the corpus: {missing}")
    corpus = build_background_index(graphs, plan)

    # fold -> (algo, mask) -> position -> (aps, rrs)
    results: dict[int, dict[tuple[str, str], dict[str, tuple[list[float], list[float]]]]] = {}
    skipped_folds: set[int] = set()

    for fold_idx, test_pld, train_plds in plan.folds():
        train_slps = compute_corpus_slps(graphs[p] for p in train_plds)
        test_slps = compute_slps(graphs[test_pld])
        train_rng = random.Random(derive_seed(seed, f"fold{fold_idx}:train"))
        test_rng = random.Random(derive_seed(seed, f"fold{fold_idx}:test"))
        train_queries = extract_queries(train_slps, train_rng, extract_min, extract_max)
        test_queries = extract_queries(test_slps, test_rng, extract_min, extract_max)

        train_instances: dict[Position, list[TrainingInstance]] = {p: [] for p in Position}
        for query in train_queries:
            if not (query.relevant & corpus.candidates(query.position)):
                continue
            train_instances[query.position].extend(featurize_query(corpus, query, weighted_f5))

        prepared = _prepare_test_queries(corpus, test_queries, weighted_f5)
        if not prepared:
            skipped_folds.add(fold_idx)
            continue

        fold_results: dict[tuple[str, str], dict[str, tuple[list[float], list[float]]]] = {}
        for algo in algos:
            for mask in masks:
                models = {}
                for pos in Position:
                    if train_instances[pos]:
                        model_seed = derive_seed(seed, f"fold{fold_idx}:{algo}:{mask}:{pos.value}")
                        models[pos] = _train_model(algo, train_instances[pos], hp, mask, model_seed)
                cells: dict[str, tuple[list[float], list[float]]] = {
                    p: ([], []) for p in REPORT_POSITIONS
                }
                for pq in prepared:
                    model = models.get(pq.query.position)
                    if model is None:
                        continue
                    ranked = _ranked_terms(pq, model.score_matrix(pq.X))
                    ap = average_precision(ranked, pq.query.relevant)
                    rr = reciprocal_rank_at_k(ranked, pq.query.relevant, k=5)
                    for key in (pq.query.position.value, "overall"):
                        cells[key][0].append(ap)
                        cells[key][1].append(rr)
                fold_results[(algo, mask)] = cells
        results[fold_idx] = fold_results

    rows: list[EvalRow] = []
    for algo in algos:
        for mask in masks:
            per_position_values: dict[str, list[tuple[float, float]]] = {
                p: [] for p in REPORT_POSITIONS
            }
            for fold_idx, _test, _train in plan.folds():
                for position in REPORT_POSITIONS:
                    if fold_idx in skipped_folds:
                        rows.append(EvalRow(str(fold_idx), algo, mask, position, None, None))
                        continue
                    aps, rrs = results[fold_idx][(algo, mask)][position]
                    if not aps:
                        rows.append(EvalRow(str(fold_idx), algo, mask, position, None, None))
                        continue
                    fold_map = sum(aps) / len(aps)
                    fold_rr = sum(rrs) / len(rrs)
                    per_position_values[position].append((fold_map, fold_rr))
                    rows.append(EvalRow(str(fold_idx), algo, mask, position, fold_map, fold_rr))
            for kind in ("mean", "stddev"):
                for position in REPORT_POSITIONS:
                    values = per_position_values[position]
                    if not values:
                        rows.append(EvalRow(kind, algo, mask, position, None, None))
                        continue
                    maps = [v[0] for v in values]
                    rrs = [v[1] for v in values]
                    if kind == "mean":
                        rows.append(
                            EvalRow(kind, algo, mask, position, statistics.fmean(maps), statistics.fmean(rrs))
                        )
                    else:
                        rows.append(
                            EvalRow(kind, algo, mask, position, statistics.pstdev(maps), statistics.pstdev(rrs))
                        )
    return EvalReport(rows)
