"""Command-line pipeline: synth, ingest, weight, detect, compare, edges,
report, and the end-to-end pipeline command.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or
inconsistent inputs), 3 internal error. All outputs are written in sorted
order with fixed formatting, so repeated runs on the same inputs and seed
are byte-identical at any thread count.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import platform
import sys
from pathlib import Path

import networkx
import numpy

from . import __version__
from .activity import batch_coarsen, write_series_csv
from .communities import (Covering, FitnessParams, covering_stats,
                          detect_communities, read_covering, write_covering)
from .compare import nmi_matrix
from .edgestats import (ConditionalWeightReport, EdgeClass, conditional_weights,
                        partition_edges, size_ccdf)
from .ingest import (combine_reports, count_information_events,
                     filter_active, giant_scc, read_events, read_follow_edges,
                     write_follow_edges)
from .synth import (SynthConfig, config_to_json, generate, write_events_jsonl,
                    write_influence_edges)
from .weighting import (WeightedDigraph, hashtag_similarity_weights,
                        hashtag_tfidf_vectors, mention_retweet_weights,
                        mention_share_weights, orphans, retweet_share_weights,
                        structural_weights, transfer_entropy_weights)

BASE_SCHEMES = ("structural", "mention", "retweet", "mention_retweet", "hashtag")


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _fmt(value: float) -> str:
    return format(value, ".12g")


def write_weight_table(wg: WeightedDigraph, path: Path, meta: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("source,target,weight\n")
        for (v, u), w in sorted(wg.weights.items()):
            fh.write(f"{v},{u},{_fmt(w)}\n")
    sidecar = dict(meta, scheme=wg.scheme)
    path.with_suffix(".json").write_text(
        json.dumps(sidecar, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def read_weight_table(path: Path, scheme: str | None = None) -> WeightedDigraph:
    if scheme is None:
        scheme = path.stem.removeprefix("weights_")
    weights = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["source", "target", "weight"]:
            raise ValueError(f"not a weight table: {path}")
        for row in reader:
            if len(row) != 3:
                raise ValueError(f"bad weight row in {path}: {row!r}")
            weights[(row[0], row[1])] = float(row[2])
    nodes = frozenset(v for e in weights for v in e)
    return WeightedDigraph(nodes=nodes, weights=weights, scheme=scheme)


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


# ---------------------------------------------------------------- commands


def cmd_synth(args) -> int:
    cfg = SynthConfig(
        nodes=args.nodes, communities=args.communities,
        overlap_fraction=args.overlap, p_in=args.p_in, p_out=args.p_out,
        epsilon=args.epsilon, rho=args.rho, bins=args.bins,
        bin_width=args.bin_width, influence_in_degree=args.influence_in_degree,
        influence_lag=args.influence_lag,
        cross_influencers=args.cross_influencers, cross_span=args.cross_span,
        cross_epsilon=args.cross_epsilon,
        mention_events=args.mention_events, retweet_events=args.retweet_events,
        interaction_intra_bias=args.interaction_intra_bias, seed=args.seed,
    )
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    log, graph, truth = generate(cfg)
    write_events_jsonl(log, out / "events.jsonl")
    write_follow_edges(graph, out / "follows.csv")
    write_covering(truth.covering, out / "planted_covering.txt")
    write_influence_edges(truth, out / "planted_influence.csv")
    (out / "config.json").write_text(config_to_json(cfg), encoding="utf-8")
    print(f"synth: {len(graph.nodes)} nodes, {len(graph.edges)} edges, "
          f"{len(log)} events -> {out}")
    return 0


def _run_ingest(events_path: Path, follows_path: Path, out: Path,
                threshold: int):
    log = read_events(events_path)
    graph = read_follow_edges(follows_path)
    counts = count_information_events(log, graph)
    active_graph, active_report = filter_active(graph, counts, threshold)
    if not active_graph.nodes:
        raise ValueError("no users survive the activity filter")
    final_graph, scc_report = giant_scc(active_graph)
    report = combine_reports(active_report, scc_report)
    out.mkdir(parents=True, exist_ok=True)
    write_follow_edges(final_graph, out / "graph.csv")
    (out / "filter_report.json").write_text(report.to_json(), encoding="utf-8")
    return log, final_graph, report


def cmd_ingest(args) -> int:
    indir = Path(args.input)
    events = Path(args.events) if args.events else indir / "events.jsonl"
    follows = Path(args.follows) if args.follows else indir / "follows.csv"
    log, graph, report = _run_ingest(events, follows, Path(args.output),
                                     args.threshold)
    print(f"ingest: kept {len(report.kept)} of "
          f"{len(report.kept) + len(report.removed_inactive) + len(report.removed_not_in_gscc)} "
          f"users ({log.skipped} malformed lines skipped)")
    return 0


def _compute_weights(scheme: str, log, graph, series, args,
                     ) -> list[tuple[WeightedDigraph, dict]]:
    meta = {"bin_width": args.bin_width,
            "retweets_count_as_activity": not args.no_retweet_activity}
    if scheme == "structural":
        return [(structural_weights(graph), {})]
    if scheme == "mention":
        return [(mention_share_weights(graph, log), {})]
    if scheme == "retweet":
        return [(retweet_share_weights(graph, log), {})]
    if scheme == "mention_retweet":
        return [(mention_retweet_weights(graph, log), {})]
    if scheme == "hashtag":
        base = 2.0 if args.tfidf_log_base == "2" else math.e
        vectors = hashtag_tfidf_vectors(log, graph.nodes, log_base=base)
        return [(hashtag_similarity_weights(graph, vectors),
                 {"tfidf_log_base": args.tfidf_log_base})]
    if scheme == "te":
        lags = [args.lag] if args.lag else list(range(1, args.max_lag + 1))
        out = []
        for k in lags:
            wg = transfer_entropy_weights(graph, series, k,
                                          truncate=not args.raw,
                                          threads=args.threads)
            out.append((wg, dict(meta, lag=k, truncated=not args.raw)))
        return out
    raise ValueError(f"unknown scheme {scheme!r}")


def cmd_weight(args) -> int:
    log = read_events(Path(args.events))
    graph = read_follow_edges(Path(args.graph))
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    series = None
    if args.scheme in ("te", "all") or args.dump_series:
        series = batch_coarsen(log, graph, bin_width=args.bin_width,
                               retweets_count_as_activity=not args.no_retweet_activity)
    if args.dump_series:
        write_series_csv(series, out / "activity_series.csv")
    schemes = ([args.scheme] if args.scheme != "all"
               else list(BASE_SCHEMES) + ["te"])
    for scheme in schemes:
        for wg, meta in _compute_weights(scheme, log, graph, series, args):
            name = wg.scheme if not (args.raw and scheme == "te") \
                else wg.scheme + "_raw"
            write_weight_table(wg, out / f"weights_{name}.csv", meta)
            print(f"weight: wrote weights_{name}.csv "
                  f"({sum(1 for w in wg.weights.values() if w > 0)} positive "
                  f"of {len(wg.weights)} edges)")
    return 0


def cmd_detect(args) -> int:
    wg = read_weight_table(Path(args.weights))
    covering = detect_communities(wg, FitnessParams(alpha=args.alpha))
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_covering(covering, out)
    stats = covering_stats(covering)
    print(f"detect: {stats['communities']} communities, "
          f"{stats['singletons']} singletons -> {out}")
    return 0


def cmd_compare(args) -> int:
    graph = read_follow_edges(Path(args.graph))
    coverings = {}
    for path in args.coverings:
        path = Path(path)
        label = path.stem.removeprefix("covering_")
        if label in coverings:
            raise ValueError(f"duplicate covering label {label!r}")
        coverings[label] = read_covering(path, graph.nodes)
    labels, matrix = nmi_matrix(coverings)
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    _write_nmi_csv(labels, matrix, out)
    print(f"compare: {len(labels)} coverings -> {out}")
    return 0


def _write_nmi_csv(labels, matrix, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("covering," + ",".join(labels) + "\n")
        for i, label in enumerate(labels):
            fh.write(label + "," + ",".join(_fmt(v) for v in matrix[i]) + "\n")


def _write_edge_report(report: ConditionalWeightReport, out: Path,
                       context: dict) -> None:
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "summary.csv", "w", encoding="utf-8") as fh:
        fh.write("class,count,median\n")
        for cls in EdgeClass:
            stats = report.per_class[cls]
            median = "" if stats.median is None else _fmt(stats.median)
            fh.write(f"{cls.value},{stats.count},{median}\n")
    summary = dict(context, **report.to_summary())
    (out / "summary.json").write_text(
        json.dumps(summary, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    for cls in EdgeClass:
        with open(out / f"ccdf_{cls.value}.csv", "w", encoding="utf-8") as fh:
            fh.write("weight,proportion\n")
            for w, p in report.per_class[cls].ccdf:
                fh.write(f"{_fmt(w)},{_fmt(p)}\n")


def cmd_edges(args) -> int:
    wg = read_weight_table(Path(args.weights))
    covering = read_covering(Path(args.covering), wg.nodes)
    classes = partition_edges(wg, covering)
    report = conditional_weights(wg, classes, bins=args.hist_bins)
    _write_edge_report(report, Path(args.output),
                       {"covering": Path(args.covering).stem,
                        "weights": wg.scheme})
    print(f"edges: {len(classes)} edges partitioned -> {args.output}")
    return 0


def cmd_report(args) -> int:
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for path in sorted(args.coverings):
        path = Path(path)
        label = path.stem.removeprefix("covering_")
        universe = _covering_universe(path, args)
        covering = read_covering(path, universe)
        stats = covering_stats(covering)
        rows.append((label, stats["communities"], stats["singletons"]))
        with open(out / f"size_ccdf_{label}.csv", "w", encoding="utf-8") as fh:
            fh.write("size,proportion\n")
            for s, p in size_ccdf(covering):
                fh.write(f"{s},{_fmt(p)}\n")
    with open(out / "covering_stats.csv", "w", encoding="utf-8") as fh:
        fh.write("covering,communities,singletons\n")
        for label, n_comm, n_single in sorted(rows):
            fh.write(f"{label},{n_comm},{n_single}\n")
    if args.weights:
        with open(out / "orphans.csv", "w", encoding="utf-8") as fh:
            fh.write("scheme,orphans\n")
            for wpath in sorted(args.weights):
                wg = read_weight_table(Path(wpath))
                fh.write(f"{wg.scheme},{len(orphans(wg))}\n")
    print(f"report: {len(rows)} coverings summarized -> {out}")
    return 0


def _covering_universe(path: Path, args) -> frozenset[str]:
    if args.graph:
        return read_follow_edges(Path(args.graph)).nodes
    # without a graph, fall back to the nodes named in the file itself
    members = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                members.update(line.split())
    return frozenset(members)


def cmd_pipeline(args) -> int:
    indir, out = Path(args.input), Path(args.output)
    events_path, follows_path = indir / "events.jsonl", indir / "follows.csv"
    log, graph, report = _run_ingest(events_path, follows_path, out / "ingest",
                                     args.threshold)

    series = batch_coarsen(log, graph, bin_width=args.bin_width,
                           retweets_count_as_activity=not args.no_retweet_activity)

    weights_dir = out / "weights"
    weights_dir.mkdir(parents=True, exist_ok=True)
    meta = {"bin_width": args.bin_width,
            "retweets_count_as_activity": not args.no_retweet_activity}
    tables: dict[str, WeightedDigraph] = {}
    tables["structural"] = structural_weights(graph)
    for k in range(1, args.max_lag + 1):
        wg = transfer_entropy_weights(graph, series, k, threads=args.threads)
        tables[wg.scheme] = wg
    tables["mention"] = mention_share_weights(graph, log)
    tables["retweet"] = retweet_share_weights(graph, log)
    tables["mention_retweet"] = mention_retweet_weights(graph, log)
    base = 2.0 if args.tfidf_log_base == "2" else math.e
    vectors = hashtag_tfidf_vectors(log, graph.nodes, log_base=base)
    tables["hashtag"] = hashtag_similarity_weights(graph, vectors)
    for name in sorted(tables):
        extra = {"lag": int(name.removeprefix("te_lag"))} \
            if name.startswith("te_lag") else {}
        if name == "hashtag":
            extra = {"tfidf_log_base": args.tfidf_log_base}
        write_weight_table(tables[name], weights_dir / f"weights_{name}.csv",
                           dict(meta, **extra))

    coverings_dir = out / "coverings"
    coverings_dir.mkdir(parents=True, exist_ok=True)
    coverings: dict[str, Covering] = {}
    params = FitnessParams(alpha=args.alpha)
    for name in sorted(tables):
        coverings[name] = detect_communities(tables[name], params)
        write_covering(coverings[name], coverings_dir / f"covering_{name}.txt")

    compare_dir = out / "compare"
    compare_dir.mkdir(parents=True, exist_ok=True)
    labels, matrix = nmi_matrix(coverings)
    _write_nmi_csv(labels, matrix, compare_dir / "nmi_matrix.csv")

    featured = f"te_lag{args.featured_lag}"
    edge_coverings = [c for c in ("structural", featured, "hashtag",
                                  "mention_retweet") if c in coverings]
    edge_weights = [w for w in (featured, "hashtag", "mention_retweet")
                    if w in tables]
    for cov_name in edge_coverings:
        for wt_name in edge_weights:
            classes = partition_edges(tables[wt_name], coverings[cov_name])
            edge_report = conditional_weights(tables[wt_name], classes,
                                              bins=args.hist_bins)
            _write_edge_report(edge_report,
                               out / "edges" / f"{cov_name}__{wt_name}",
                               {"covering": cov_name, "weights": wt_name})

    report_dir = out / "report"
    report_dir.mkdir(parents=True, exist_ok=True)
    with open(report_dir / "covering_stats.csv", "w", encoding="utf-8") as fh:
        fh.write("covering,communities,singletons\n")
        for name in sorted(coverings):
            stats = covering_stats(coverings[name])
            fh.write(f"{name},{stats['communities']},{stats['singletons']}\n")
    for name in sorted(coverings):
        with open(report_dir / f"size_ccdf_{name}.csv", "w",
                  encoding="utf-8") as fh:
            fh.write("size,proportion\n")
            for s, p in size_ccdf(coverings[name]):
                fh.write(f"{s},{_fmt(p)}\n")
    with open(report_dir / "orphans.csv", "w", encoding="utf-8") as fh:
        fh.write("scheme,orphans\n")
        for name in sorted(tables):
            fh.write(f"{name},{len(orphans(tables[name]))}\n")

    manifest = {
        "tool": "qocd",
        "version": __version__,
        "python": platform.python_version(),
        "numpy": numpy.__version__,
        "networkx": networkx.__version__,
        "command": "pipeline",
        # threads is deliberately absent: it cannot affect any output, so
        # runs differing only in thread count stay byte-identical
        "flags": {
            "threshold": args.threshold, "bin_width": args.bin_width,
            "max_lag": args.max_lag, "featured_lag": args.featured_lag,
            "alpha": args.alpha, "hist_bins": args.hist_bins,
            "tfidf_log_base": args.tfidf_log_base,
            "retweets_count_as_activity": not args.no_retweet_activity,
        },
        "inputs": {
            "events.jsonl": _sha256(events_path),
            "follows.csv": _sha256(follows_path),
        },
    }
    (out / "manifest.json").write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    print(f"pipeline: {len(graph.nodes)} nodes, {len(tables)} weightings, "
          f"{len(coverings)} coverings -> {out}")
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> _Parser:
    parser = _Parser(prog="qocd",
                     description="Question-oriented weighted networks and "
                                 "overlapping-community analytics")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND",
                                parser_class=_Parser)

    p = sub.add_parser("synth", help="generate a synthetic dataset")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nodes", type=int, default=200)
    p.add_argument("--communities", type=int, default=8)
    p.add_argument("--overlap", type=float, default=0.0)
    p.add_argument("--p-in", type=float, default=0.3)
    p.add_argument("--p-out", type=float, default=0.02)
    p.add_argument("--epsilon", type=float, default=0.4)
    p.add_argument("--rho", type=float, default=0.05)
    p.add_argument("--bins", type=int, default=9072)
    p.add_argument("--bin-width", type=int, default=600)
    p.add_argument("--influence-in-degree", type=int, default=4)
    p.add_argument("--influence-lag", type=int, default=1)
    p.add_argument("--cross-influencers", type=int, default=0)
    p.add_argument("--cross-span", type=int, default=3)
    p.add_argument("--cross-epsilon", type=float, default=None)
    p.add_argument("--mention-events", type=float, default=12.0)
    p.add_argument("--retweet-events", type=float, default=12.0)
    p.add_argument("--interaction-intra-bias", type=float, default=0.9)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("ingest", help="parse, filter, and restrict the graph")
    p.add_argument("-i", "--input", default=".")
    p.add_argument("--events", help="events JSONL (default INPUT/events.jsonl)")
    p.add_argument("--follows", help="follow CSV (default INPUT/follows.csv)")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--threshold", type=int, default=9,
                   help="min outgoing AND incoming information events")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("weight", help="build weighted networks")
    p.add_argument("--events", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--scheme", required=True,
                   choices=list(BASE_SCHEMES) + ["te", "all"])
    p.add_argument("--lag", type=int, help="single transfer-entropy lag")
    p.add_argument("--max-lag", type=int, default=6)
    p.add_argument("--bin-width", type=int, default=600)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-retweet-activity", action="store_true",
                   help="retweets do not mark the actor as active")
    p.add_argument("--tfidf-log-base", choices=["e", "2"], default="e")
    p.add_argument("--raw", action="store_true",
                   help="emit raw (possibly negative) transfer entropies")
    p.add_argument("--dump-series", action="store_true",
                   help="also write the binary activity series for debugging")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("detect", help="detect overlapping communities")
    p.add_argument("--weights", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("compare", help="NMI matrix over covering files")
    p.add_argument("coverings", nargs="+")
    p.add_argument("--graph", required=True,
                   help="follow CSV defining the node universe")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("edges", help="conditional edge-weight statistics")
    p.add_argument("--weights", required=True)
    p.add_argument("--covering", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--hist-bins", type=int, default=50)
    p.set_defaults(func=cmd_edges)

    p = sub.add_parser("report", help="covering stats, size CCDFs, orphans")
    p.add_argument("coverings", nargs="+")
    p.add_argument("--weights", nargs="*", default=[])
    p.add_argument("--graph", help="follow CSV defining the node universe")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("pipeline", help="run every stage end to end")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--threshold", type=int, default=9)
    p.add_argument("--bin-width", type=int, default=600)
    p.add_argument("--max-lag", type=int, default=6)
    p.add_argument("--featured-lag", type=int, default=4)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--hist-bins", type=int, default=50)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--tfidf-log-base", choices=["e", "2"], default="e")
    p.add_argument("--no-retweet-activity", action="store_true")
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse --help exits 0, usage errors exit 1
        return int(exc.code or 0)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, csv.Error,
            json.JSONDecodeError) as exc:
        sys.stderr.write(f"qocd: data error: {exc}\n")
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        sys.stderr.write(f"qocd: internal error: {exc!r}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
