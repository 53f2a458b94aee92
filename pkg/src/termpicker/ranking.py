"""Trainable ranking models over the five candidate features.

Two model families are provided. Random Forests is point-wise: bagged
variance-reduction regression trees fit to binary relevance labels.
Coordinate Ascent is list-wise: linear weights optimized coordinate by
coordinate to maximize Mean Average Precision on the training queries.

Training data comes from held-out term extraction: one or two terms are
removed from each source SLP, the remainder becomes the query, and only the
removed terms count as relevant. All training is deterministic given
(data, hyperparameters, mask, seed); scoring ties are always broken by
candidate IRI so rankings are total orders.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .features import FEATURE_NAMES, BackgroundCorpus, FeatureVector
from .seeds import derive_seed
from .slp import Position, Slp, SlpSet, canonical_serialize, require_query_slp, slp_remove

MASK_PRESETS: dict[str, tuple[str, ...]] = {
    "pop": ("f1", "f2", "f3"),
    "same": ("f1", "f2", "f3", "f4"),
    "slp": ("f1", "f2", "f3", "f4", "f5"),
}

MODEL_FORMAT_VERSION = 1


def resolve_mask(mask: str | Iterable[str]) -> tuple[str, ...]:
    """Normalize a preset name or an explicit feature subset."""
    if isinstance(mask, str):
        try:
            return MASK_PRESETS[mask.lower()]
        except KeyError:
            raise ValueError(f"unknown feature mask {mask!r}; presets: pop, same, slp") from None
    names = set(mask)
    unknown = names - set(FEATURE_NAMES)
    if unknown:
        raise ValueError(f"unknown feature names: {sorted(unknown)}")
    if not names:
        raise ValueError("feature mask must not be empty")
    return tuple(name for name in FEATURE_NAMES if name in names)


def _mask_columns(mask: Sequence[str]) -> np.ndarray:
    return np.array([FEATURE_NAMES.index(name) for name in mask], dtype=int)


@dataclass
class Hyperparams:
    """Training knobs for both model families; all defaults are desk-tested."""

    trees: int = 300
    bag_fraction: float = 0.7
    features_per_split: int = 2
    min_leaf: int = 1
    max_depth: int | None = None
    restarts: int = 5
    max_sweeps: int = 25
    step_init: float = 0.05
    step_grow: float = 2.0
    step_shrink: float = 0.5
    min_step: float = 1e-4
    max_step: float = 12.8
    tolerance: float = 1e-4

    def __post_init__(self):
        if self.trees < 1 or self.restarts < 1 or self.max_sweeps < 1:
            raise ValueError("counts must be >= 1")
        if not 0.0 < self.bag_fraction <= 1.0:
            raise ValueError("bag_fraction must be in (0, 1]")
        if self.features_per_split < 1 or self.min_leaf < 1:
            raise ValueError("features_per_split and min_leaf must be >= 1")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max_depth must be >= 1 or None")


@dataclass(frozen=True)
class ExtractionQuery:
    """One held-out ranking task: a reduced source SLP plus the removed
    terms at one position, which are the only relevant candidates."""

    query_id: str
    position: Position
    query: Slp
    relevant: frozenset[str]
    source: Slp


@dataclass(frozen=True)
class TrainingInstance:
    query_id: str
    position: Position
    candidate: str
    features: FeatureVector
    relevance: int


def extract_queries(
    slps: SlpSet | Iterable[Slp],
    rng: random.Random,
    extract_min: int = 1,
    extract_max: int = 2,
) -> list[ExtractionQuery]:
    """Draw held-out terms from each source SLP.

    Between ``extract_min`` and ``extract_max`` terms are removed, never all
    of them: the remaining query must stay non-empty, so single-term SLPs
    are skipped. One task is emitted per position that lost a term.
    """
    if not 1 <= extract_min <= extract_max:
        raise ValueError("need 1 <= extract_min <= extract_max")
    out: list[ExtractionQuery] = []
    ordered = sorted(slps, key=canonical_serialize)
    for i, source in enumerate(ordered):
        terms = list(source.terms())
        if len(terms) < 2:
            continue
        count = rng.randint(extract_min, min(extract_max, len(terms) - 1))
        removed = rng.sample(terms, count)
        query = source
        for pos, term in removed:
            query = slp_remove(query, pos, term)
        by_pos: dict[Position, set[str]] = {}
        for pos, term in removed:
            by_pos.setdefault(pos, set()).add(term)
        for pos in Position:
            if pos in by_pos:
                out.append(
                    ExtractionQuery(
                        query_id=f"q{i}:{pos.value}",
                        position=pos,
                        query=query,
                        relevant=frozenset(by_pos[pos]),
                        source=source,
                    )
                )
    return out


def featurize_query(
    corpus: BackgroundCorpus, query: ExtractionQuery, weighted_f5: bool = False
) -> list[TrainingInstance]:
    """One instance per candidate at the query's position."""
    return [
        TrainingInstance(
            query_id=query.query_id,
            position=query.position,
            candidate=candidate,
            features=corpus.features(query.query, candidate, query.position, weighted_f5),
            relevance=int(candidate in query.relevant),
        )
        for candidate in sorted(corpus.candidates(query.position))
    ]


def generate_training_data(
    slps: SlpSet | Iterable[Slp],
    corpus: BackgroundCorpus,
    seed: int,
    extract_min: int = 1,
    extract_max: int = 2,
    weighted_f5: bool = False,
) -> list[TrainingInstance]:
    """Extract and featurize training queries.

    Queries whose removed terms are all absent from the candidate set have
    no reachable relevant item and are dropped; a ranking loss cannot learn
    from them.
    """
    rng = random.Random(seed)
    queries = extract_queries(slps, rng, extract_min, extract_max)
    instances: list[TrainingInstance] = []
    for query in queries:
        if not (query.relevant & corpus.candidates(query.position)):
            continue
        instances.extend(featurize_query(corpus, query, weighted_f5))
    return instances


# grouped training data ------------------------------------------------------


class _Groups:
    """Instances sorted by (query, candidate) with per-query boundaries, so
    MAP of a weight vector reduces to a handful of vectorized passes."""

    def __init__(self, instances: Sequence[TrainingInstance]):
        ordered = sorted(instances, key=lambda r: (r.query_id, r.candidate))
        self.X = np.array([r.features.as_tuple() for r in ordered], dtype=float)
        self.rel = np.array([r.relevance for r in ordered], dtype=float)
        starts = [0]
        for i in range(1, len(ordered)):
            if ordered[i].query_id != ordered[i - 1].query_id:
                starts.append(i)
        starts.append(len(ordered))
        self.starts = np.array(starts, dtype=int)
        self.counts = np.diff(self.starts)
        self.qidx = np.repeat(np.arange(len(self.counts)), self.counts)
        self.pos_in_q = np.arange(len(ordered)) - np.repeat(self.starts[:-1], self.counts)
        self.tie = self.pos_in_q  # candidates sorted per query: index = lexicographic rank
        self.m = np.add.reduceat(self.rel, self.starts[:-1]) if len(ordered) else np.array([])

    def __len__(self) -> int:
        return len(self.rel)

    def mean_ap(self, scores: np.ndarray) -> float:
        """MAP of ranking each query's candidates by score desc, IRI asc."""
        if not len(self.rel):
            return 0.0
        order = np.lexsort((self.tie, -scores, self.qidx))
        r = self.rel[order]
        c = np.cumsum(r)
        heads = self.starts[1:-1]
        offsets = np.concatenate([[0.0], c[heads - 1]]) if heads.size else np.array([0.0])
        prec = (c - np.repeat(offsets, self.counts)) / (self.pos_in_q + 1.0)
        contrib = np.where(r > 0, prec, 0.0)
        per_query = np.add.reduceat(contrib, self.starts[:-1])
        valid = self.m > 0
        if not valid.any():
            return 0.0
        return float(np.mean(per_query[valid] / self.m[valid]))


# models ----------------------------------------------------------------------


@dataclass
class LinearModel:
    """Weighted sum over the masked features."""

    mask: tuple[str, ...]
    weights: dict[str, float]
    seed: int
    hyperparams: Hyperparams
    map_history: list[float] = field(default_factory=list)
    variant: str = "linear"

    def score_matrix(self, X: np.ndarray) -> np.ndarray:
        cols = _mask_columns(self.mask)
        w = np.array([self.weights[name] for name in self.mask])
        return X[:, cols] @ w

    def score(self, fv: FeatureVector) -> float:
        return float(self.score_matrix(np.array([fv.as_tuple()], dtype=float))[0])


@dataclass
class ForestModel:
    """Mean prediction of bagged regression trees; trees reference global
    feature columns restricted to the mask."""

    mask: tuple[str, ...]
    trees: list[dict]
    seed: int
    hyperparams: Hyperparams
    variant: str = "forest"

    def score_matrix(self, X: np.ndarray) -> np.ndarray:
        total = np.zeros(len(X))
        for tree in self.trees:
            total += _predict_tree(tree, X)
        return total / len(self.trees)

    def score(self, fv: FeatureVector) -> float:
        return float(self.score_matrix(np.array([fv.as_tuple()], dtype=float))[0])


RankingModel = LinearModel | ForestModel


def _predict_tree(root: dict, X: np.ndarray) -> np.ndarray:
    out = np.empty(len(X))
    stack: list[tuple[dict, np.ndarray]] = [(root, np.arange(len(X)))]
    while stack:
        node, idx = stack.pop()
        if idx.size == 0:
            continue
        if "leaf" in node:
            out[idx] = node["leaf"]
            continue
        go_left = X[idx, node["feature"]] <= node["threshold"]
        stack.append((node["left"], idx[go_left]))
        stack.append((node["right"], idx[~go_left]))
    return out


def _best_split(xcol: np.ndarray, y: np.ndarray, min_leaf: int) -> tuple[float, float] | None:
    """Largest SSE reduction over midpoint thresholds; first (= smallest)
    threshold wins ties. Returns (gain, threshold) or None."""
    order = np.argsort(xcol, kind="stable")
    xs = xcol[order]
    ys = y[order]
    cuts = np.nonzero(xs[1:] != xs[:-1])[0]
    if cuts.size == 0:
        return None
    n = len(ys)
    nl = cuts + 1.0
    nr = n - nl
    valid = (nl >= min_leaf) & (nr >= min_leaf)
    if not valid.any():
        return None
    csum = np.cumsum(ys)
    csq = np.cumsum(ys * ys)
    sum_l = csum[cuts]
    sq_l = csq[cuts]
    sse = (sq_l - sum_l**2 / nl) + ((csq[-1] - sq_l) - (csum[-1] - sum_l) ** 2 / nr)
    sse = np.where(valid, sse, np.inf)
    best = int(np.argmin(sse))
    parent_sse = csq[-1] - csum[-1] ** 2 / n
    gain = float(parent_sse - sse[best])
    threshold = float((xs[cuts[best]] + xs[cuts[best] + 1]) / 2.0)
    return gain, threshold


_GAIN_EPS = 1e-12


def _fit_tree(
    X: np.ndarray,
    y: np.ndarray,
    rows: np.ndarray,
    cols: np.ndarray,
    rng: np.random.Generator,
    hp: Hyperparams,
) -> dict:
    def build(idx: np.ndarray, depth: int) -> dict:
        yv = y[idx]
        if (
            idx.size < 2 * hp.min_leaf
            or (hp.max_depth is not None and depth >= hp.max_depth)
            or float(yv.min()) == float(yv.max())
        ):
            return {"leaf": float(yv.mean())}
        k = min(hp.features_per_split, cols.size)
        chosen = sorted(cols[j] for j in rng.choice(cols.size, size=k, replace=False))
        best: tuple[float, int, float] | None = None
        for col in chosen:
            found = _best_split(X[idx, col], yv, hp.min_leaf)
            if found is None:
                continue
            gain, threshold = found
            if best is None or gain > best[0] + _GAIN_EPS:
                best = (gain, col, threshold)
        if best is None or best[0] <= _GAIN_EPS:
            return {"leaf": float(yv.mean())}
        _, col, threshold = best
        go_left = X[idx, col] <= threshold
        return {
            "feature": int(col),
            "threshold": threshold,
            "left": build(idx[go_left], depth + 1),
            "right": build(idx[~go_left], depth + 1),
        }

    return build(rows, 0)


def train_random_forests(
    instances: Sequence[TrainingInstance],
    hp: Hyperparams,
    mask: str | Iterable[str],
    seed: int,
) -> ForestModel:
    """Point-wise forest on binary relevance labels.

    Each tree gets its own derived RNG stream, draws a bag of
    ``bag_fraction * n`` instances without replacement, and samples
    ``features_per_split`` mask features at every node.
    """
    if not instances:
        raise ValueError("no training instances")
    mask = resolve_mask(mask)
    cols = _mask_columns(mask)
    X = np.array([r.features.as_tuple() for r in instances], dtype=float)
    y = np.array([r.relevance for r in instances], dtype=float)
    n = len(X)
    bag_size = max(1, int(np.ceil(hp.bag_fraction * n)))
    trees = []
    for t in range(hp.trees):
        rng = np.random.default_rng(derive_seed(seed, f"tree:{t}"))
        rows = np.sort(rng.choice(n, size=bag_size, replace=False))
        trees.append(_fit_tree(X, y, rows, cols, rng, hp))
    return ForestModel(mask=mask, trees=trees, seed=seed, hyperparams=hp)


def train_coordinate_ascent(
    instances: Sequence[TrainingInstance],
    hp: Hyperparams,
    mask: str | Iterable[str],
    seed: int,
) -> LinearModel:
    """List-wise linear model maximizing training MAP.

    Each restart sweeps the coordinates repeatedly. Per coordinate, a
    geometric ladder of step sizes (growing from the initial step up to the
    cap, shrinking down to the floor) is probed in both directions, and the
    best strictly improving move is accepted, so the accepted-MAP sequence
    is non-decreasing by construction. The best restart wins; the returned
    model records its accepted-MAP history.
    """
    if not instances:
        raise ValueError("no training instances")
    mask = resolve_mask(mask)
    cols = _mask_columns(mask)
    groups = _Groups(instances)
    Xm = groups.X[:, cols]
    k = len(mask)

    def mean_ap(w: np.ndarray) -> float:
        return groups.mean_ap(Xm @ w)

    ladder: list[float] = []
    step = hp.step_init
    while step <= hp.max_step:
        ladder.append(step)
        step *= hp.step_grow
    step = hp.step_init * hp.step_shrink
    while step >= hp.min_step:
        ladder.append(step)
        step *= hp.step_shrink

    rng = np.random.default_rng(derive_seed(seed, "restarts"))
    best: tuple[float, np.ndarray, list[float]] | None = None
    for restart in range(hp.restarts):
        if restart == 0:
            w = np.full(k, 1.0 / k)
        else:
            w = rng.uniform(-1.0, 1.0, size=k)
        current = mean_ap(w)
        history = [current]
        for _sweep in range(hp.max_sweeps):
            improved = False
            for ci in range(k):
                base = w[ci]
                best_value, best_map = base, current
                for sign in (1.0, -1.0):
                    for size in ladder:
                        w[ci] = base + sign * size
                        trial_map = mean_ap(w)
                        if trial_map > best_map + hp.tolerance:
                            best_value, best_map = w[ci], trial_map
                w[ci] = best_value
                if best_map > current + hp.tolerance:
                    current = best_map
                    history.append(current)
                    improved = True
            if not improved:
                break
        if best is None or current > best[0]:
            best = (current, w.copy(), history)

    assert best is not None
    _, weights, history = best
    return LinearModel(
        mask=mask,
        weights={name: float(weights[i]) for i, name in enumerate(mask)},
        seed=seed,
        hyperparams=hp,
        map_history=history,
    )


def training_map(model: RankingModel, instances: Sequence[TrainingInstance]) -> float:
    groups = _Groups(instances)
    return groups.mean_ap(model.score_matrix(groups.X))


# ranking ---------------------------------------------------------------------


@dataclass(frozen=True)
class RankedTerm:
    term: str
    score: float
    features: FeatureVector


def rank(
    model: RankingModel,
    corpus: BackgroundCorpus,
    query: Slp,
    pos: Position,
    limit: int | None = 10,
    weighted_f5: bool = False,
) -> list[RankedTerm]:
    """Score every candidate at a position; order by score desc, IRI asc."""
    require_query_slp(query)
    candidates = sorted(corpus.candidates(pos))
    if not candidates:
        return []
    fvs = [corpus.features(query, c, pos, weighted_f5) for c in candidates]
    X = np.array([fv.as_tuple() for fv in fvs], dtype=float)
    scores = model.score_matrix(X)
    order = sorted(range(len(candidates)), key=lambda i: (-scores[i], candidates[i]))
    if limit is not None:
        order = order[: max(limit, 0)]
    return [RankedTerm(candidates[i], float(scores[i]), fvs[i]) for i in order]


def recommend_all(
    models: Mapping[Position, RankingModel],
    corpus: BackgroundCorpus,
    query: Slp,
    limit: int | None = 10,
) -> dict[Position, list[RankedTerm]]:
    """Ranked recommendations for all three positions."""
    return {pos: rank(models[pos], corpus, query, pos, limit) for pos in Position}


# persistence -------------------------------------------------------------------


def _tree_to_json(node: dict) -> dict:
    if "leaf" in node:
        return {"leaf": node["leaf"]}
    return {
        "feature": FEATURE_NAMES[node["feature"]],
        "threshold": node["threshold"],
        "left": _tree_to_json(node["left"]),
        "right": _tree_to_json(node["right"]),
    }


def _tree_from_json(node: dict) -> dict:
    if "leaf" in node:
        return {"leaf": float(node["leaf"])}
    return {
        "feature": FEATURE_NAMES.index(node["feature"]),
        "threshold": float(node["threshold"]),
        "left": _tree_from_json(node["left"]),
        "right": _tree_from_json(node["right"]),
    }


def save_model(model: RankingModel, path: str | Path) -> None:
    doc: dict = {
        "version": MODEL_FORMAT_VERSION,
        "variant": model.variant,
        "mask": list(model.mask),
        "seed": model.seed,
        "hyperparams": asdict(model.hyperparams),
    }
    if isinstance(model, LinearModel):
        doc["weights"] = model.weights
        doc["map_history"] = model.map_history
    else:
        doc["trees"] = [_tree_to_json(t) for t in model.trees]
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> RankingModel:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    version = doc.get("version")
    if version != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model file version {version!r}")
    mask = resolve_mask(doc["mask"])
    hp = Hyperparams(**doc["hyperparams"])
    if doc["variant"] == "linear":
        return LinearModel(
            mask=mask,
            weights={k: float(v) for k, v in doc["weights"].items()},
            seed=int(doc["seed"]),
            hyperparams=hp,
            map_history=[float(v) for v in doc.get("map_history", [])],
        )
    if doc["variant"] == "forest":
        return ForestModel(
            mask=mask,
            trees=[_tree_from_json(t) for t in doc["trees"]],
            seed=int(doc["seed"]),
            hyperparams=hp,
        )
    raise ValueError(f"unknown model variant {doc['variant']!r}")
