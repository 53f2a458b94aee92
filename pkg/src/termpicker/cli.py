"""Command-line pipeline: ingest, slps, build-index, train, recommend,
evaluate, synth, serve.

Every stage's output file is a valid input to the next. Exit codes: 0 on
success, 1 on usage errors, 2 on data errors.
"""

from __future__ import annotations

import argparse
import glob
import os
import sys
from pathlib import Path

from . import __version__
from .corpus import ingest_files, read_corpus_dir
from .evaluation import (
    FoldPlan,
    format_summary_table,
    pld_stats_from_graphs,
    run_loo_evaluation,
    select_plds,
)
from .features import build_index, load_index, save_index
from .nquads import ParseError
from .ranking import (
    Hyperparams,
    generate_training_data,
    load_model,
    rank,
    save_model,
    train_coordinate_ascent,
    train_random_forests,
    training_map,
)
from .seeds import derive_seed
from .service import ServiceState, make_server
from .slp import EmptyQueryError, Position, Slp, SlpSet, compute_corpus_slps
from .synth import SynthSpec, generate_synthetic_corpus

ENV_INDEX = "TERMPICKER_INDEX"
ENV_BIND = "TERMPICKER_BIND"
ENV_MODEL = {
    Position.STS: "TERMPICKER_MODEL_STS",
    Position.PS: "TERMPICKER_MODEL_PS",
    Position.OTS: "TERMPICKER_MODEL_OTS",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_pld_file(path: str) -> list[str]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [line.strip() for line in lines if line.strip()]


def _hyperparams(args) -> Hyperparams:
    kwargs = {}
    for attr in ("trees", "restarts", "max_sweeps"):
        value = getattr(args, attr, None)
        if value is not None:
            kwargs[attr] = value
    return Hyperparams(**kwargs)


def cmd_ingest(args) -> int:
    paths = sorted(glob.glob(args.input, recursive=True))
    if not paths:
        raise FileNotFoundError(f"no input files match {args.input!r}")
    report = ingest_files(paths, args.out, strict=args.strict)
    print(
        f"ingested {report.stats.quads} quads from {report.files} files into "
        f"{report.plds} PLDs ({report.stats.malformed} malformed lines skipped, "
        f"{report.unassigned_quads} quads unassigned)"
    )
    return 0


def cmd_slps(args) -> int:
    include = _read_pld_file(args.plds) if args.plds else None
    graphs = read_corpus_dir(args.corpus, include=include)
    slps = compute_corpus_slps(graphs.values())
    slps.write_store(args.out)
    print(f"wrote {len(slps)} SLPs from {len(graphs)} PLDs to {args.out}")
    return 0


def cmd_build_index(args) -> int:
    exclude = _read_pld_file(args.exclude_plds) if args.exclude_plds else None
    graphs = read_corpus_dir(args.corpus, exclude=exclude)
    corpus = build_index(graphs.values())
    save_index(corpus, args.out)
    print(
        f"indexed {len(graphs)} PLDs: {len(corpus.types)} types, "
        f"{len(corpus.properties)} properties, {len(corpus.slps)} SLPs"
    )
    return 0


def cmd_train(args) -> int:
    slps = SlpSet.read_store(args.slps)
    corpus = load_index(args.index)
    instances = generate_training_data(
        slps,
        corpus,
        seed=derive_seed(args.seed, "extract"),
        extract_min=args.extract_min,
        extract_max=args.extract_max,
        weighted_f5=args.weighted_f5,
    )
    if args.position != "pooled":
        wanted = Position.from_string(args.position)
        instances = [r for r in instances if r.position is wanted]
    if not instances:
        raise ValueError("no training instances; corpus or SLP store too small")
    hp = _hyperparams(args)
    model_seed = derive_seed(args.seed, f"model:{args.algo}:{args.features}:{args.position}")
    if args.algo == "rf":
        model = train_random_forests(instances, hp, args.features, model_seed)
    else:
        model = train_coordinate_ascent(instances, hp, args.features, model_seed)
    save_model(model, args.out)
    print(
        f"trained {args.algo} ({args.features}, position={args.position}) on "
        f"{len(instances)} instances; training MAP {training_map(model, instances):.4f}"
    )
    return 0


def _query_from_args(args) -> Slp:
    return Slp(
        frozenset(args.sts or []),
        frozenset(args.ps or []),
        frozenset(args.ots or []),
    )


def cmd_recommend(args) -> int:
    corpus = load_index(args.index)
    model = load_model(args.model)
    query = _query_from_args(args)
    pos = Position.from_string(args.position)
    ranked = rank(model, corpus, query, pos, args.top, weighted_f5=args.weighted_f5)
    for i, item in enumerate(ranked, start=1):
        fv = item.features
        print(f"{i}\t{item.score}\t{item.term}\t{fv.f1}\t{fv.f2}\t{fv.f3}\t{fv.f4}\t{fv.f5}")
    return 0


def cmd_evaluate(args) -> int:
    plan = FoldPlan(tuple(_read_pld_file(args.plan))) if args.plan else None
    report = run_loo_evaluation(
        args.corpus,
        plan=plan,
        folds=args.folds,
        algos=tuple(args.algos.split(",")),
        masks=tuple(args.features.split(",")),
        seed=args.seed,
        hp=_hyperparams(args),
        extract_min=args.extract_min,
        extract_max=args.extract_max,
        weighted_f5=args.weighted_f5,
    )
    report.write_tsv(args.out)
    print(format_summary_table(report))
    return 0


def cmd_synth(args) -> int:
    spec = SynthSpec(
        pld_count=args.plds,
        vocab_count=args.vocabs,
        slp_templates=args.templates,
        noise_rate=args.noise,
    )
    generate_synthetic_corpus(spec, args.seed, args.out)
    print(f"wrote synthetic corpus ({args.plds} PLDs, {args.templates} templates) to {args.out}")
    return 0


def cmd_stats(args) -> int:
    graphs = read_corpus_dir(args.corpus)
    stats = pld_stats_from_graphs(graphs.values())
    selected = set(select_plds(stats, min(args.top, len(stats))))
    print("pld\tdistinct_terms\treuse_ratio\tslp_count\tselected")
    for s in sorted(stats, key=lambda s: (-s.reuse_ratio, -s.distinct_terms, s.pld)):
        mark = "*" if s.pld in selected else ""
        print(f"{s.pld}\t{s.distinct_terms}\t{s.reuse_ratio:.2f}\t{s.slp_count}\t{mark}")
    return 0


def resolve_serve_config(args, env=os.environ) -> tuple[str, dict[Position, str], str, int]:
    """Merge CLI options with the TERMPICKER_* environment; options win."""
    index_dir = args.index or env.get(ENV_INDEX)
    if not index_dir:
        raise UsageError(f"--index or {ENV_INDEX} is required")
    model_paths = {}
    for pos in Position:
        path = getattr(args, f"model_{pos.value}") or args.model or env.get(ENV_MODEL[pos])
        if not path:
            raise UsageError(
                f"no model for position {pos.value}; pass --model-{pos.value}, --model, "
                f"or set {ENV_MODEL[pos]}"
            )
        model_paths[pos] = path
    bind = args.bind or env.get(ENV_BIND) or "127.0.0.1:8349"
    host, _, port_str = bind.rpartition(":")
    try:
        port = int(port_str)
    except ValueError:
        raise UsageError(f"invalid bind address {bind!r}") from None
    return index_dir, model_paths, host or "127.0.0.1", port


def cmd_serve(args) -> int:
    index_dir, model_paths, host, port = resolve_serve_config(args)
    corpus = load_index(index_dir)
    models = {pos: load_model(path) for pos, path in model_paths.items()}
    server = make_server(ServiceState(corpus, models), host, port)
    print(f"serving on http://{server.server_address[0]}:{server.server_address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def _add_extraction_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--extract-min", type=int, default=1, dest="extract_min")
    p.add_argument("--extract-max", type=int, default=2, dest="extract_max")


def _add_f5_mode_option(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--weighted-f5", action="store_true", dest="weighted_f5",
        help="count co-occurring SLPs once per contributing PLD instead of once overall",
    )


def _add_training_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trees", type=int, default=None, help="forest size (default 300)")
    p.add_argument("--restarts", type=int, default=None, help="coordinate-ascent restarts (default 5)")
    p.add_argument(
        "--max-sweeps", type=int, default=None, dest="max_sweeps",
        help="coordinate-ascent sweeps (default 25)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="termpicker", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse N-Quads files into a per-PLD corpus directory")
    p.add_argument("--input", required=True, help="glob of .nq/.nq.gz files")
    p.add_argument("--out", required=True)
    p.add_argument("--strict", action="store_true", help="fail on the first malformed line")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("slps", help="compute the SLP store of a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--plds", help="file with one PLD per line to include (default: all)")
    p.set_defaults(func=cmd_slps)

    p = sub.add_parser("build-index", help="build the background feature index")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--exclude-plds", dest="exclude_plds", help="file with PLDs to leave out")
    p.set_defaults(func=cmd_build_index)

    p = sub.add_parser("train", help="train a ranking model from an SLP store and index")
    p.add_argument("--slps", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--algo", required=True, choices=["rf", "ca"])
    p.add_argument("--features", default="slp", help="pop, same, or slp")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--position", default="pooled", choices=["sts", "ps", "ots", "pooled"])
    _add_extraction_options(p)
    _add_training_options(p)
    _add_f5_mode_option(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("recommend", help="rank candidate terms for a query SLP")
    p.add_argument("--index", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--sts", action="append")
    p.add_argument("--ps", action="append")
    p.add_argument("--ots", action="append")
    p.add_argument("--position", required=True)
    p.add_argument("--top", type=int, default=10)
    _add_f5_mode_option(p)
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("evaluate", help="run the leave-one-out evaluation")
    p.add_argument("--corpus", required=True)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--algos", default="rf,ca")
    p.add_argument("--features", default="pop,same,slp")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--plan", help="file with one evaluation PLD per line (default: select by C1/C2)")
    _add_extraction_options(p)
    _add_training_options(p)
    _add_f5_mode_option(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("synth", help="generate a seeded synthetic corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--plds", type=int, default=50)
    p.add_argument("--vocabs", type=int, default=6)
    p.add_argument("--templates", type=int, default=10)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("stats", help="per-PLD selection criteria (C1/C2) of a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--top", type=int, default=10)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("serve", help="serve recommendations over HTTP")
    p.add_argument("--index", help=f"index directory (or {ENV_INDEX})")
    p.add_argument("--model", help="model file for every position")
    for pos in Position:
        p.add_argument(f"--model-{pos.value}", dest=f"model_{pos.value}",
                       help=f"model file for {pos.value} (or {ENV_MODEL[pos]})")
    p.add_argument("--bind", help=f"host:port (or {ENV_BIND}; default 127.0.0.1:8349)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, EmptyQueryError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
