"""``psp-cluster``: PSP, clusters and MMI of a weighted edge list."""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .clustering import Hierarchy, clusters_at, format_rational, fundamental_partition, hierarchy
from .config import SolverConfig, SolverStats
from .graph_core import GraphError, WeightedGraph, parse_edge_list
from .maxflow import InvariantError, PreflowError
from .parametric_cut import ParametricCutError
from .psp import PartitionMergeError, PSPResult, compute_psp
from .pwl import CrossingError

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 3

INTERNAL_ERRORS = (
    InvariantError,
    PreflowError,
    ParametricCutError,
    PartitionMergeError,
    CrossingError,
    AssertionError,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def parse_gamma(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def fmt_block(block) -> str:
    return "{" + ",".join(str(v) for v in block) + "}"


def fmt_partition(p) -> str:
    return "|".join(fmt_block(b) for b in p)


def render_tsv(h: Hierarchy) -> str:
    lines = []
    for start, p, _ in h.rows():
        key = "-inf" if start is None else format_rational(start)
        lines.append(f"{key}\t{fmt_partition(p)}")
    return "\n".join(lines) + "\n"


def render_json(h: Hierarchy) -> str:
    return h.to_json() + "\n"


def render_dot(h: Hierarchy) -> str:
    """Nesting tree: each block hangs under the block of the previous level containing it."""
    ids: dict[tuple, str] = {}
    nodes: list[str] = []
    edges: list[str] = []
    ends = [*h.critical_values, None]
    for level, (start, p, _) in enumerate(h.rows()):
        prev = h.partitions[level - 1] if level else ()
        for b in p:
            if b in ids:
                continue
            ids[b] = f"n{len(ids)}"
            # the block survives until the first level that no longer has it
            stop = next((k for k in range(level, len(h.partitions)) if b not in h.partitions[k]), None)
            lo = "-inf" if start is None else format_rational(start)
            hi = "inf" if stop is None else format_rational(ends[stop - 1])
            nodes.append(f'  {ids[b]} [label="{fmt_block(b)}\\n[{lo}, {hi})"];')
            parent = next((c for c in prev if set(b) <= set(c)), None)
            if parent is not None:
                edges.append(f"  {ids[parent]} -> {ids[b]};")
    return "digraph psp {\n" + "\n".join(nodes + edges) + "\n}\n"


RENDERERS = {"tsv": render_tsv, "json": render_json, "dot": render_dot}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--parallel", action="store_true", default=argparse.SUPPRESS,
                        help="solve independent gamma slices concurrently")
    common.add_argument("--stats", action="store_true", default=argparse.SUPPRESS,
                        help="print solver statistics to stderr")

    parser = _Parser(prog="psp-cluster", description=__doc__)
    parser.add_argument("--parallel", action="store_true", default=False,
                        help="solve independent gamma slices concurrently")
    parser.add_argument("--stats", action="store_true", default=False,
                        help="print solver statistics to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("psp", parents=[common], help="critical values and partitions")
    p.add_argument("file")
    p.add_argument("--format", choices=sorted(RENDERERS), default="tsv")

    c = sub.add_parser("clusters", parents=[common], help="clusters at a threshold")
    c.add_argument("file")
    c.add_argument("--gamma", type=parse_gamma, required=True)

    m = sub.add_parser("mmi", parents=[common], help="MMI and fundamental partition")
    m.add_argument("file")
    return parser


def load_graph(path: str) -> WeightedGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GraphError(f"cannot read {path}: {exc.strerror}") from None
    return parse_edge_list(text)


def run(args, out) -> tuple[PSPResult, WeightedGraph, SolverStats]:
    g = load_graph(args.file)
    workers = min(8, os.cpu_count() or 1) if args.parallel else 1
    config = SolverConfig(workers=max(1, workers))
    stats = SolverStats()
    psp = compute_psp(g, config, stats)
    h = hierarchy(psp)
    if args.command == "psp":
        out.write(RENDERERS[args.format](h))
    elif args.command == "clusters":
        for block in clusters_at(psp, args.gamma):
            out.write(fmt_block(sorted(psp.labels[v] for v in block)) + "\n")
    else:
        value, p = fundamental_partition(psp)
        labelled = sorted(tuple(sorted(psp.labels[v] for v in b)) for b in p)
        out.write(f"mmi={format_rational(value)}; fundamental={fmt_partition(labelled)}\n")
    return psp, g, stats


def report_stats(g: WeightedGraph, psp: PSPResult, stats: SolverStats, err) -> None:
    info = {
        "n": g.n,
        "edges": len(g.edges),
        "total_weight": format_rational(g.total_weight),
        "critical_values": len(psp.critical_values),
        **stats.as_dict(),
    }
    err.write(json.dumps(info) + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        psp, g, stats = run(args, sys.stdout)
    except GraphError as exc:
        print(f"psp-cluster: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except INTERNAL_ERRORS as exc:
        print(f"psp-cluster: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.stats:
        report_stats(g, psp, stats, sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
