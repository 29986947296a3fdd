"""Command-line front end.

Exit status: 0 success, 1 a verification or property check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

from . import counterexample as cx
from .construct import (
    build_laminar_family,
    build_tree_classical,
    build_tree_paper,
    format_family,
    format_tree,
    join_component_trees,
    parse_tree,
)
from .errors import CutTreeError, InputError
from .graph import WeightedGraph, format_graph, format_rational, read_graph
from .mincut import min_cut
from .submodular import SetFunctionOracle, check_properties, load_oracle
from .verifier import lambda_spectrum, verify_gh_tree

ORACLE_KINDS = ("graph:", "pairs:", "table:")


def _load(path: str, per_component: bool = False) -> WeightedGraph | SetFunctionOracle:
    if path.startswith(ORACLE_KINDS):
        return load_oracle(path)
    return read_graph(path, allow_disconnected=per_component)


def _load_graph(path: str, per_component: bool = False) -> WeightedGraph:
    obj = _load(path, per_component)
    if not isinstance(obj, WeightedGraph):
        raise InputError(f"{path!r} is an oracle; this command needs a graph file")
    return obj


def _vertex(obj, text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise InputError(f"vertex must be an integer, got {text!r}") from exc
    if not 0 <= v < obj.n:
        raise InputError(f"vertex {v} out of range 0..{obj.n - 1}")
    return v


def _build_tree(obj, method: str, root: int, allow_large: bool):
    if method == "classical":
        if not isinstance(obj, WeightedGraph):
            raise InputError("the classical builder needs a graph, not an oracle")
        return build_tree_classical(obj, root)
    return build_tree_paper(obj, root, allow_large)


def cmd_tree(args) -> int:
    obj = _load(args.graph, args.per_component)
    root = _vertex(obj, args.root)
    if isinstance(obj, WeightedGraph) and not obj.is_connected():
        parts = []
        for verts in obj.components():
            sub = obj.induced(verts)
            sub_root = verts.index(root) if root in verts else 0
            parts.append((verts, _build_tree(sub, args.method, sub_root, args.allow_large)))
        tree = join_component_trees(obj.n, parts, root)
    else:
        tree = _build_tree(obj, args.method, root, args.allow_large)
    sys.stdout.write(format_tree(tree, args.decimal))
    return 0


def cmd_mincut(args) -> int:
    g = _load_graph(args.graph, args.per_component)
    res = min_cut(g, _vertex(g, args.u), _vertex(g, args.v))
    print(f"lambda {format_rational(res.lam, args.decimal)}")
    print(f"smallest {res.smallest}")
    print(f"largest {res.largest}")
    return 0


def cmd_laminar(args) -> int:
    obj = _load(args.graph, args.per_component)
    family = build_laminar_family(obj, allow_large=args.allow_large)
    sys.stdout.write(format_family(family, args.decimal))
    return 0


def cmd_verify(args) -> int:
    obj = _load(args.graph, args.per_component)
    try:
        with open(args.tree, encoding="utf-8") as fh:
            tree = parse_tree(fh.read(), obj.n)
    except OSError as exc:
        raise InputError(f"cannot read {args.tree}: {exc}") from exc
    mode = "all-pairs" if args.all_pairs else "edges-only"
    report = verify_gh_tree(obj, tree, mode, args.allow_large, threads=args.threads)
    for line in report.notes:
        print(f"# {line}")
    for line in report.lines():
        print(line)
    print(f"{'PASS' if report.ok else 'FAIL'} {report.check} checked={report.checked} "
          f"failures={len(report.findings)}")
    return 0 if report.ok else 1


def cmd_check_properties(args) -> int:
    b = load_oracle(args.oracle, args.n)
    report = check_properties(b, args.mode, args.samples, args.seed, args.allow_large)
    for line in report.lines():
        print(line)
    print(f"{'PASS' if report.ok else 'FAIL'} {report.oracle} n={report.n} mode={report.mode}")
    return 0 if report.ok else 1


def cmd_counterexample(args) -> int:
    if args.N < 1:
        raise InputError(f"N must be at least 1, got {args.N}")
    g = cx.generate_truncation(args.N)
    sys.stdout.write(format_graph(g))
    if args.N > cx.MAX_ANALYZE_N:
        print(f"# analysis skipped: N > {cx.MAX_ANALYZE_N}")
        return 0
    for line in cx.analyze_chain(args.N).lines():
        print(f"# {line}")
    return 0


def cmd_spectrum(args) -> int:
    obj = _load(args.graph, args.per_component)
    for value in lambda_spectrum(obj, args.allow_large):
        print(format_rational(value, args.decimal))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--decimal", type=int, metavar="K",
                        help="render numbers with K decimal places instead of p/q")
    common.add_argument("--threads", type=int, default=1, metavar="K",
                        help="worker threads for brute-force verification")
    common.add_argument("--allow-large", action="store_true",
                        help="permit exhaustive enumeration above the default cap (up to 20)")
    common.add_argument("--per-component", action="store_true",
                        help="accept disconnected graphs; trees are built per component")

    p = argparse.ArgumentParser(prog="cuttree", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("tree", parents=[common], help="print a Gomory-Hu tree")
    s.add_argument("graph", help="graph file, or an oracle spec such as pairs:4")
    s.add_argument("--root", default="0")
    s.add_argument("--method", choices=("paper", "classical"), default="paper")
    s.set_defaults(func=cmd_tree)

    s = sub.add_parser("mincut", parents=[common], help="lambda and smallest/largest optimal cut")
    s.add_argument("graph")
    s.add_argument("u")
    s.add_argument("v")
    s.set_defaults(func=cmd_mincut)

    s = sub.add_parser("laminar", parents=[common], help="laminar family of optimal cuts")
    s.add_argument("graph")
    s.set_defaults(func=cmd_laminar)

    s = sub.add_parser("verify", parents=[common], help="check a tree file against a graph")
    s.add_argument("graph")
    s.add_argument("tree")
    s.add_argument("--all-pairs", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("check-properties", parents=[common],
                       help="check oracle properties 0-4 (graph:<file>, pairs:<n>, table:<file>)")
    s.add_argument("oracle")
    s.add_argument("--n", type=int, help="ground size for a bare 'pairs' oracle")
    s.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    s.add_argument("--samples", type=int, default=2000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_check_properties)

    s = sub.add_parser("counterexample", parents=[common],
                       help="truncated hub-and-path graph and its unique-cut chain")
    s.add_argument("N", type=int)
    s.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("spectrum", parents=[common], help="distinct lambda values")
    s.add_argument("graph")
    s.set_defaults(func=cmd_spectrum)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CutTreeError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
