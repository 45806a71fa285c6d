"""Command-line workbench.

Subcommands: stats, match, cover, dist, converge, ub, gen, iso, urn,
movielib, topk, hist, bench. Output goes to stdout or --out as plain table
text, CSV, or JSON. Deterministic commands produce byte-identical output for
fixed seeds. Exit status is 0 on success and 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bench, cover, experiments, generators, instances, library
from .formatting import fmt_fixed, fmt_number
from .matching import max_matching

FORMATS = ("table", "csv", "json")


def _load_instance(path: str, as_format: str = "auto",
                   unit_weights: bool = False) -> instances.BigraphInstance:
    stem, ext = os.path.splitext(os.path.basename(path))
    if as_format == "auto":
        as_format = "cnf" if ext.lower() in (".cnfu", ".cnfw") else "orlib"
    with open(path) as fh:
        text = fh.read()
    if as_format == "cnf":
        inst = instances.parse_cnf(text, name=stem)
        if unit_weights and inst.weight_kind == instances.WEIGHTED:
            inst = instances.BigraphInstance(
                name=stem, n_cols=inst.n_cols, m_rows=inst.m_rows,
                rows=inst.rows, col_weights=(1.0,) * inst.n_cols,
                weight_kind=instances.UNIT)
        return inst
    return instances.ingest_orlib(text, name=stem, unit_weights=unit_weights)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_output(args, header: tuple[str, ...], rows: list[tuple]) -> None:
    if args.format == "json":
        payload = [dict(zip(header, row)) for row in rows]
        _emit(args, json.dumps(payload, indent=2) + "\n")
    elif args.format == "csv":
        lines = [",".join(header)]
        lines += [",".join(str(v) for v in row) for row in rows]
        _emit(args, "\n".join(lines) + "\n")
    else:
        lines = [" ".join(str(v) for v in row) for row in rows]
        _emit(args, "\n".join(lines) + "\n")


def _parse_sizes(size_list: str) -> list[int]:
    """Size lists: '1024,4096', '2^10..2^20' (powers of two), or mixes."""

    def one(tok: str) -> int:
        tok = tok.strip()
        if tok.startswith("2^"):
            return 2 ** int(tok[2:])
        return int(tok)

    sizes: list[int] = []
    for part in size_list.split(","):
        part = part.strip()
        if ".." in part:
            lo_s, hi_s = part.split("..", 1)
            lo, hi = one(lo_s), one(hi_s)
            if not (lo > 0 and hi >= lo):
                raise ValueError(f"bad size range {part!r}")
            size = lo
            while size <= hi:
                sizes.append(size)
                size *= 2
        else:
            sizes.append(one(part))
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError(f"bad sizes {size_list!r}")
    return sizes


def cmd_stats(args) -> int:
    inst = _load_instance(args.path, args.as_format, args.unit)
    st = instances.compute_stats(inst)
    _rows_output(args, ("instance", "nCols", "mRows", "mDens", "mCD"),
                 [(inst.name, st.n_cols, st.m_rows,
                   fmt_fixed(st.m_dens, 4), st.m_cd)]
                 if args.format != "table" else
                 [(st.n_cols, st.m_rows, fmt_fixed(st.m_dens, 4), st.m_cd)])
    return 0


def cmd_match(args) -> int:
    inst = _load_instance(args.path, args.as_format, args.unit)
    result = max_matching(inst)
    if args.format == "table":
        _emit(args, f"{result.size} {fmt_fixed(result.m_p, 2)}\n")
    else:
        _rows_output(args, ("instance", "size", "mP"),
                     [(inst.name, result.size, fmt_fixed(result.m_p, 2))])
    return 0


def cmd_cover(args) -> int:
    inst = _load_instance(args.path, args.as_format, args.unit)
    if args.solver == "basic":
        sol = cover.greedy_basic(inst, args.tie_tol)
    elif args.solver == "stoc":
        sol = cover.greedy_stoc(inst, args.replica, args.tie_tol)
    else:
        sol = cover.greedy_iso(inst, args.replica, args.tie_tol)
    coord = "".join(str(c) for c in sol.coord)
    if args.format == "json":
        _emit(args, json.dumps({
            "instance": inst.name, "solver": args.solver,
            "replicaId": sol.replica_id, "value": sol.value,
            "nOps": sol.n_ops, "coord": coord}, indent=2) + "\n")
    elif args.format == "csv":
        _rows_output(args, ("instance", "solver", "replicaId", "value",
                            "nOps", "coord"),
                     [(inst.name, args.solver, sol.replica_id,
                       fmt_number(sol.value), sol.n_ops, coord)])
    else:
        _emit(args, f"value {fmt_number(sol.value)} nOps {sol.n_ops} "
                    f"coord {coord}\n")
    return 0


def _histogram_lines(summary) -> list[str]:
    lines = []
    for value, count in sorted(summary.value_histogram.items()):
        if summary.bkv:
            ratio = fmt_fixed(round(value, 2) / summary.bkv, 2)
            lines.append(f"{fmt_number(value, 4)} {count} {ratio}")
        else:
            lines.append(f"{fmt_number(value, 4)} {count}")
    return lines


def cmd_dist(args) -> int:
    inst = _load_instance(args.path, args.as_format, args.unit)
    summary = experiments.run_cover_distribution(
        inst, args.seeds, solver=args.solver, seed_mode=args.seed_mode,
        bkv=args.bkv, meta_seed=args.meta_seed, tie_tol=args.tie_tol)
    values = experiments.stats_string(summary.stats)
    if args.format == "json":
        payload = {
            "instance": summary.instance_name, "numSeeds": summary.num_seeds,
            "solver": summary.solver, "valueStats": values,
            "histogram": {fmt_number(v, 9): c for v, c in
                          sorted(summary.value_histogram.items())},
        }
        if summary.bkv is not None:
            payload["bkv"] = summary.bkv
            payload["ratioStats"] = experiments.ratio_string(summary.stats,
                                                             summary.bkv)
        _emit(args, json.dumps(payload, indent=2) + "\n")
    elif args.format == "csv":
        rows = experiments.summary_rows(summary)
        _rows_output(args, ("instance", "numSeeds", "value", "count"),
                     [(name, seeds, fmt_number(v, 9), c)
                      for name, seeds, v, c in rows])
    else:
        lines = [f"instance {summary.instance_name} seeds {summary.num_seeds} "
                 f"solver {summary.solver}",
                 f"values {values}"]
        if summary.bkv is not None:
            ratios = experiments.ratio_string(summary.stats, summary.bkv)
            lines.append(f"ratios {ratios} (bkv {fmt_number(summary.bkv, 4)})")
        lines.append("histogram:")
        lines += _histogram_lines(summary)
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_converge(args) -> int:
    inst = _load_instance(args.path, args.as_format, args.unit)
    counts = [int(c) for c in args.counts.split(",")]
    summaries = experiments.converge_check(inst, counts, args.solver,
                                           seed_mode=args.seed_mode,
                                           bkv=args.bkv,
                                           meta_seed=args.meta_seed)
    if args.format == "json":
        payload = []
        for s in summaries:
            payload.append({"numSeeds": s.num_seeds,
                            "histogram": {fmt_number(v, 9): c for v, c in
                                          sorted(s.value_histogram.items())}})
        _emit(args, json.dumps(payload, indent=2) + "\n")
    elif args.format == "csv":
        rows = []
        for s in summaries:
            rows += [(s.instance_name, s.num_seeds, fmt_number(v, 9), c)
                     for _, _, v, c in experiments.summary_rows(s)]
        _rows_output(args, ("instance", "numSeeds", "value", "count"), rows)
    else:
        lines = []
        for s in summaries:
            lines.append(f"num_seeds {s.num_seeds}")
            lines += _histogram_lines(s)
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_ub(args) -> int:
    if args.path:
        inst = _load_instance(args.path, args.as_format, args.unit)
        st = instances.compute_stats(inst)
        m_cd = st.m_cd
        bkv = args.bkv
        if bkv is None:
            bkv = experiments.default_registry().lookup_instance(inst)
        if bkv is None:
            raise ValueError(f"{inst.name}: no bkv known; pass --bkv")
    else:
        if args.bkv is None or args.mcd is None:
            raise ValueError("need either a path or both --bkv and --mcd")
        bkv, m_cd = args.bkv, args.mcd
    bound = cover.harmonic_bound(bkv, m_cd)
    if args.format == "json":
        _emit(args, json.dumps({"bkv": bkv, "mCD": bound.d,
                                "harmonic": bound.h_d, "UB": bound.ub},
                               indent=2) + "\n")
    elif args.format == "csv":
        _rows_output(args, ("bkv", "mCD", "harmonic", "UB"),
                     [(fmt_number(bkv, 4), bound.d, fmt_number(bound.h_d, 3),
                       fmt_number(bound.ub))])
    else:
        _emit(args, f"mCD {bound.d} harmonic {fmt_number(bound.h_d, 3)} "
                    f"UB {fmt_number(bound.ub)}\n")
    return 0


def cmd_gen(args) -> int:
    if args.kind == "random":
        if None in (args.m_rows, args.n_cols, args.deg_min, args.deg_max):
            raise ValueError("gen random needs M N DEGMIN DEGMAX")
        inst = generators.gen_random_instance(args.m_rows, args.n_cols,
                                              args.deg_min, args.deg_max,
                                              args.seed)
    else:
        if not args.name:
            raise ValueError("gen builtin needs --name")
        inst = library.get_builtin(args.name)
    _emit(args, instances.write_cnf(inst))
    return 0


def cmd_iso(args) -> int:
    inst = _load_instance(args.path, args.as_format, args.unit)
    iso, perm = generators.gen_isomorph(inst, args.replica)
    perm_text = ",".join(str(p) for p in perm)
    _emit(args, instances.write_cnf(
        iso, comments=(f"isomorph replica {args.replica} of {inst.name}",
                       f"permutation {perm_text}")))
    return 0


def cmd_urn(args) -> int:
    sizes = _parse_sizes(args.sizes)
    rows = []
    # one derived seed per row, else rows would share the generator stream
    for offset, size in enumerate(sizes):
        trials = args.trials if args.trials else size
        frac = generators.urn_trial(size, trials, args.seed + offset)
        rows.append((size, trials, f"{frac:.6f}"))
    _rows_output(args, ("size", "trials", "unique_fraction"), rows)
    return 0


def cmd_movielib(args) -> int:
    movies, watches = generators.gen_movielib(args.size, args.seed)
    generators.write_movielib(movies, watches, args.movies, args.watches)
    sys.stderr.write(f"wrote {len(movies)} movies to {args.movies}, "
                     f"{len(watches)} watches to {args.watches}\n")
    return 0


def _records_for(args):
    if args.movies and args.watches:
        return generators.read_movielib(args.movies, args.watches)
    if args.size is None:
        raise ValueError("need --size or both --movies and --watches")
    return generators.gen_movielib(args.size, args.seed)


def cmd_topk(args) -> int:
    movies, watches = _records_for(args)
    result = bench.topk_movies(movies, watches, args.k, args.strategy)
    _rows_output(args, ("movieID", "watchCount"), list(result.entries))
    return 0


def cmd_hist(args) -> int:
    _, watches = _records_for(args)
    hist = bench.watch_histogram(watches)
    rows = [(idx, hist[idx]) for idx in sorted(hist)]
    _rows_output(args, ("watchCount", "numMovies"), rows)
    return 0


def cmd_bench(args) -> int:
    sizes = _parse_sizes(args.sizes)
    if args.task == "topk":
        task = bench.topk_task(k=args.k, seed=args.seed,
                               strategy=args.strategy)
    elif args.task == "urn":
        task = bench.urn_task(seed=args.seed)
    else:
        task = bench.matching_task(seed=args.seed)
    sweep = bench.asymptotic_sweep(sizes, task, repetitions=args.reps)
    for size, message in sweep.failures.items():
        sys.stderr.write(f"size {size} failed: {message}\n")
    _emit(args, bench.sweep_csv(sweep.rows))
    return 0


def _add_common(parser, with_seed=False) -> None:
    parser.add_argument("--format", choices=FORMATS, default="table")
    parser.add_argument("--out", default=None, help="write output to a file")
    if with_seed:
        parser.add_argument("--seed", type=int, default=0)


def _add_instance_args(parser) -> None:
    parser.add_argument("path")
    parser.add_argument("--as", dest="as_format", default="auto",
                        choices=("auto", "cnf", "orlib"),
                        help="input format override")
    parser.add_argument("--unit", action="store_true",
                        help="override all column weights to 1.0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bglab",
        description="Bipartite-graph instance workbench: statistics, maximum "
                    "matchings, greedy set covers, distribution experiments, "
                    "and timing sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="instance statistics")
    _add_instance_args(p)
    _add_common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("match", help="maximum bipartite matching")
    _add_instance_args(p)
    _add_common(p)
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("cover", help="one greedy cover run")
    _add_instance_args(p)
    p.add_argument("--solver", choices=("basic", "stoc", "iso"),
                   default="basic")
    p.add_argument("--replica", type=int, default=0)
    p.add_argument("--tie-tol", type=float, default=0.0)
    _add_common(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("dist", help="seeded cover distribution")
    _add_instance_args(p)
    p.add_argument("--solver", choices=experiments.SOLVERS, default="stoc")
    p.add_argument("--seeds", type=int, default=1000)
    p.add_argument("--seed-mode", choices=experiments.SEED_MODES,
                   default="consecutive")
    p.add_argument("--bkv", type=float, default=None)
    p.add_argument("--meta-seed", type=int, default=0)
    p.add_argument("--tie-tol", type=float, default=0.0)
    _add_common(p)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("converge", help="histograms at growing seed counts")
    _add_instance_args(p)
    p.add_argument("--solver", choices=experiments.SOLVERS, default="stoc")
    p.add_argument("--counts", default="100,1000,10000")
    p.add_argument("--seed-mode", choices=experiments.SEED_MODES,
                   default="consecutive")
    p.add_argument("--bkv", type=float, default=None)
    p.add_argument("--meta-seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("ub", help="greedy upper bound from bkv and mCD")
    p.add_argument("path", nargs="?", default=None)
    p.add_argument("--as", dest="as_format", default="auto",
                   choices=("auto", "cnf", "orlib"))
    p.add_argument("--unit", action="store_true")
    p.add_argument("--bkv", type=float, default=None)
    p.add_argument("--mcd", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_ub)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("kind", choices=("random", "builtin"))
    p.add_argument("m_rows", type=int, nargs="?", default=None)
    p.add_argument("n_cols", type=int, nargs="?", default=None)
    p.add_argument("deg_min", type=int, nargs="?", default=None)
    p.add_argument("deg_max", type=int, nargs="?", default=None)
    p.add_argument("--name", default=None, help="builtin instance name")
    _add_common(p, with_seed=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("iso", help="emit a column-permuted isomorph")
    _add_instance_args(p)
    p.add_argument("--replica", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("urn", help="urn-model unique-fraction trials")
    p.add_argument("--sizes", default="2^10..2^20")
    p.add_argument("--trials", type=int, default=None,
                   help="trials per urn (default: urn size)")
    _add_common(p, with_seed=True)
    p.set_defaults(func=cmd_urn)

    p = sub.add_parser("movielib", help="emit synthetic movie/watch tables")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--movies", default="movies.csv")
    p.add_argument("--watches", default="watches.csv")
    _add_common(p, with_seed=True)
    p.set_defaults(func=cmd_movielib)

    p = sub.add_parser("topk", help="most frequently watched movies")
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--movies", default=None)
    p.add_argument("--watches", default=None)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--strategy", choices=("hash", "sorted"), default="hash")
    _add_common(p, with_seed=True)
    p.set_defaults(func=cmd_topk)

    p = sub.add_parser("hist", help="watch-frequency histogram")
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--movies", default=None)
    p.add_argument("--watches", default=None)
    _add_common(p, with_seed=True)
    p.set_defaults(func=cmd_hist)

    p = sub.add_parser("bench", help="phase-split asymptotic timing sweep")
    p.add_argument("--task", choices=("topk", "urn", "match"), default="topk")
    p.add_argument("--sizes", default="2^10..2^16")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--strategy", choices=("hash", "sorted"), default="hash")
    p.add_argument("--reps", type=int, default=1)
    _add_common(p, with_seed=True)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        sys.stderr.write(f"bglab {args.command}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
