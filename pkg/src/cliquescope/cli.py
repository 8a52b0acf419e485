"""``cliquescope`` command line: one analysis per invocation.

Exit codes: 0 success, 2 input/parse/I-O error, 3 invalid configuration,
4 algorithm non-convergence.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import __version__
from .centrality import (
    KATZ_ALPHA,
    KATZ_BETA,
    KATZ_MAX_ITER,
    KATZ_TOL,
    ConvergenceError,
    average_rank,
    betweenness_centrality,
    clique_centrality,
    closeness_centrality,
    degree_centrality,
    format_report,
    format_table,
    katz_centrality,
    rank_scores,
)
from .cliques import bron_kerbosch, format_cliques
from .community import MAX_LEVELS, MIN_GAIN, format_partition, louvain
from .graph import GraphError, drop_zero_edges, read_edge_list
from .layout import LAYOUT_ITERATIONS, export_csv, export_svg, parse_csv, spring_layout
from .scores import HIGHER, LOWER, ScoreVector
from .spectral import (
    SPECTRAL_DESK_LIMIT,
    EigenConvergenceError,
    format_embedding,
    laplacian,
    smallest_eigenpairs,
    spectral_cluster,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_CONVERGENCE = 4

MEASURE_NAMES = ("degree", "clique", "closeness", "betweenness", "katz")
ANALYSES = ("cliques", "average-rank", "louvain", "spectral") + tuple(
    f"centrality:{m}" for m in MEASURE_NAMES
)
# analyses whose measures never see edge weights; zero-weight edges always go
ALWAYS_DROP = {"cliques", "centrality:degree", "centrality:clique"}
LOWER_IS_CENTRAL = {"closeness", "average-rank"}
BOOL_KEYS = {"svg", "keep_zero_edges", "no_pivot", "embedding"}


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="cliquescope",
        description="Clique, centrality and community analysis of weighted edge lists.",
    )
    p.add_argument("analysis", help="one of: " + ", ".join(ANALYSES))
    p.add_argument("input", nargs="?", help="edge list file (label,label[,weight] per line)")
    p.add_argument("--config", help="key=value file; command-line flags take precedence")
    p.add_argument("-o", "--out-dir", default=".", help="directory for log files (default: .)")
    p.add_argument("--delimiter", default=",", help="field delimiter; 'ws' splits on whitespace")
    p.add_argument("--keep-zero-edges", action="store_true",
                   help="keep zero-weight edges for analyses that use them")
    p.add_argument("--svg", action="store_true", help="also write a spring-layout SVG")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--top", type=int, default=10, help="rows in the console table")
    p.add_argument("--no-pivot", action="store_true", help="Bron-Kerbosch without pivoting")
    p.add_argument("--measures", default="", help="comma list for average-rank")
    p.add_argument("--from-logs", default="",
                   help="comma list of label,value CSV logs to combine for average-rank")
    p.add_argument("--k", type=int, help="number of spectral clusters")
    p.add_argument("--mode", default="discretize", choices=("discretize", "kmeans"))
    p.add_argument("--embedding", action="store_true", help="dump the spectral embedding")
    p.add_argument("--alpha", type=float, default=KATZ_ALPHA)
    p.add_argument("--beta", type=float, default=KATZ_BETA)
    p.add_argument("--tol", type=float, default=KATZ_TOL)
    p.add_argument("--max-iter", type=int, default=KATZ_MAX_ITER)
    p.add_argument("--min-gain", type=float, default=MIN_GAIN)
    p.add_argument("--max-levels", type=int, default=MAX_LEVELS)
    p.add_argument("--layout-iterations", type=int, default=LAYOUT_ITERATIONS)
    return p


def read_config(path: str) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def parse_args(argv: list[str] | None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_intermixed_args(argv)
    if args.config:
        try:
            config = read_config(args.config)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        known = {a.dest for a in parser._actions}
        defaults = {}
        for key, value in config.items():
            if key not in known or key in ("analysis", "config"):
                raise ConfigError(f"unknown config key {key!r}")
            if key in BOOL_KEYS:
                defaults[key] = value.lower() in ("1", "true", "yes", "on")
            else:
                defaults[key] = value
        parser.set_defaults(**defaults)
        args = parser.parse_intermixed_args(argv)
    return args


def validate(args: argparse.Namespace) -> None:
    if args.analysis not in ANALYSES:
        raise ConfigError(f"unknown analysis {args.analysis!r}; choose from {', '.join(ANALYSES)}")
    if args.analysis == "spectral" and (args.k is None or args.k < 1):
        raise ConfigError("spectral needs --k >= 1")
    if args.analysis == "average-rank":
        if args.from_logs:
            if len(_split(args.from_logs)) < 2:
                raise ConfigError("--from-logs needs at least two log files")
        else:
            measures = _split(args.measures)
            if len(measures) < 2:
                raise ConfigError("average-rank needs --measures with at least two measures")
            bad = [m for m in measures if m not in MEASURE_NAMES]
            if bad:
                raise ConfigError(f"unknown measure(s): {', '.join(bad)}")
    if args.input is None and not (args.analysis == "average-rank" and args.from_logs):
        raise ConfigError("an input edge list is required")
    if args.top < 1:
        raise ConfigError("--top must be at least 1")


def _split(s: str) -> list[str]:
    return [x.strip() for x in s.split(",") if x.strip()]


def compute_measure(g, name: str, args: argparse.Namespace) -> ScoreVector:
    if name == "degree":
        return degree_centrality(g)
    if name == "clique":
        return clique_centrality(g, pivoting=not args.no_pivot)
    if name == "closeness":
        return closeness_centrality(g)
    if name == "betweenness":
        return betweenness_centrality(g)
    return katz_centrality(g, args.alpha, args.beta, args.tol, args.max_iter)


def scores_from_log(path: str) -> ScoreVector:
    """Read a ``label,value`` log; the measure comes from its file name."""
    with open(path, encoding="utf-8") as fh:
        values = parse_csv(fh.read())
    parts = Path(path).name.split(".")
    measure = parts[-2] if len(parts) >= 3 else Path(path).stem
    measure = measure.removeprefix("centrality-")
    direction = LOWER if measure in LOWER_IS_CENTRAL else HIGHER
    labels = tuple(sorted(values))
    return ScoreVector(labels, [values[lab] for lab in labels], measure, direction)


def write_log(out_dir: Path, stem: str, analysis: str, files: dict[str, str | bytes]) -> list[Path]:
    """Write ``<stem>.<analysis><suffix>`` files, overwriting earlier runs."""
    out_dir.mkdir(parents=True, exist_ok=True)
    tag = analysis.replace(":", "-")
    paths = []
    for suffix, content in files.items():
        path = out_dir / f"{stem}.{tag}{suffix}"
        if isinstance(content, bytes):
            path.write_bytes(content)
        else:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(content)
        paths.append(path)
    return paths


def write_meta(out_dir: Path, args: argparse.Namespace, wall: float) -> Path:
    path = out_dir / "run.meta"
    lines = [f"tool=cliquescope {__version__}"]
    for key, value in sorted(vars(args).items()):
        lines.append(f"{key}={value}")
    lines.append(f"threads={os.environ.get('CLIQUESCOPE_THREADS', '1')}")
    lines.append(f"wall_time_s={wall:.3f}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def run(args: argparse.Namespace, stdout=None) -> int:
    stdout = stdout or sys.stdout
    start = time.perf_counter()
    analysis = args.analysis
    out_dir = Path(args.out_dir)
    files: dict[str, str | bytes] = {}
    g = None
    colors = None

    if analysis == "average-rank" and args.from_logs:
        logs = _split(args.from_logs)
        vectors = [scores_from_log(p) for p in logs]
        stem = Path(args.input).stem if args.input else Path(logs[0]).name.split(".")[0]
    else:
        delim = None if args.delimiter == "ws" else args.delimiter
        g = read_edge_list(args.input, delimiter=delim)
        stem = Path(args.input).stem
        if analysis in ALWAYS_DROP or not args.keep_zero_edges:
            g = drop_zero_edges(g)
        print(g.summary(), file=stdout)

    if analysis == "cliques":
        cs = bron_kerbosch(g, pivoting=not args.no_pivot)
        files[".txt"] = format_cliques(cs, g)
        print(f"maximal_cliques={len(cs)}", file=stdout)
    elif analysis.startswith("centrality:"):
        s = compute_measure(g, analysis.split(":", 1)[1], args)
        files[".csv"] = export_csv(s)
        files[".tsv"] = format_report(s)
        stdout.write(format_table(s, args.top))
        if s.component_sizes is not None and s.component_sizes.min() < g.n_nodes:
            files[".components.csv"] = export_csv(dict(zip(s.labels, s.component_sizes.tolist())))
            print("note: graph is disconnected; closeness sums cover each node's own "
                  "component (sizes in the .components.csv log)", file=stdout)
        colors = s
    elif analysis == "average-rank":
        if not args.from_logs:
            vectors = [compute_measure(g, m, args) for m in _split(args.measures)]
        s = average_rank([rank_scores(v) for v in vectors])
        files[".csv"] = export_csv(s)
        files[".tsv"] = format_report(s)
        stdout.write(format_table(s, args.top))
        colors = s
    elif analysis == "louvain":
        result = louvain(g, min_gain=args.min_gain, max_levels=args.max_levels)
        files[".csv"] = export_csv(result.partition)
        files[".tsv"] = format_partition(result.partition)
        print(result.summary(), file=stdout)
        colors = result.partition
    elif analysis == "spectral":
        if args.k > g.n_nodes:
            raise ConfigError(f"--k {args.k} exceeds the node count {g.n_nodes}")
        if g.n_nodes > SPECTRAL_DESK_LIMIT:
            print(f"warning: spectral mode targets graphs of at most {SPECTRAL_DESK_LIMIT} "
                  f"nodes; {g.n_nodes} will be slow", file=sys.stderr)
        part = spectral_cluster(g, args.k, mode=args.mode, seed=args.seed)
        files[".csv"] = export_csv(part)
        files[".tsv"] = format_partition(part)
        if args.embedding:
            files[".embedding.tsv"] = format_embedding(smallest_eigenpairs(laplacian(g), args.k))
        print(f"clusters={part.count}", file=stdout)
        colors = part

    if args.svg and g is not None:
        coords = spring_layout(g, seed=args.seed, iterations=args.layout_iterations)
        files[".svg"] = export_svg(g, coords, colors)

    paths = write_log(out_dir, stem, analysis, files)
    paths.append(write_meta(out_dir, args, time.perf_counter() - start))
    for path in paths:
        print(f"wrote {path}", file=stdout)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        args = parse_args(argv)
        validate(args)
        return run(args)
    except ConfigError as exc:
        print(f"cliquescope: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, EigenConvergenceError) as exc:
        print(f"cliquescope: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (GraphError, OSError, ValueError) as exc:
        print(f"cliquescope: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
