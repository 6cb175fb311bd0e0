"""Command-line entry point: ``symwl {power,wl,cospectral,gen,verify}``.

Exit codes: 0 all checks pass (or hypothesis not met), 1 a verification
failed, 2 usage or budget error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .config import DEFAULT_LIMITS, DEFAULT_SEED, BudgetError, Limits
from .generators import cfi_pair, least_distinguishing_dimension, named
from .graph import Graph, GraphError, format_graph, parse_graph6, read_graph, relabel
from .harness import (SCHEMA_VERSION, default_rounds, describe, verify_entrywise, verify_props,
                      verify_theorem1)
from .powers import kth_power, restricted_power, sym_power
from .spectra import char_poly
from .wl import compare

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def load_graph(source: str, fmt: str | None = None) -> Graph:
    """Graph from a path, ``-`` (stdin), ``named:NAME`` or ``g6:STRING``."""
    if source.startswith("named:"):
        return named(source[len("named:"):])
    if source.startswith("g6:"):
        return parse_graph6(source[len("g6:"):])
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    return read_graph(text, fmt)


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _limits(args) -> Limits:
    return Limits(max_vertices=args.budget_vertices, max_wl_records=args.budget_wl_records,
                  max_dim=getattr(args, "max_dim", DEFAULT_LIMITS.max_dim))


def load_pair(args) -> tuple[Graph, Graph]:
    """``h`` may be the word ``relabel``: a seeded random relabelling of ``g``."""
    g = load_graph(args.g, args.input_format)
    if args.h == "relabel":
        perm = np.random.default_rng(args.seed).permutation(g.n)
        return g, relabel(g, perm)
    return g, load_graph(args.h, args.input_format)


def cmd_power(args) -> int:
    g = load_graph(args.graph, args.input_format)
    build = {"full": kth_power, "restricted": restricted_power, "symmetric": sym_power}[args.kind]
    _emit(format_graph(build(g, args.k, _limits(args)), args.format), args.output)
    return EXIT_OK


def cmd_wl(args) -> int:
    g, h = load_pair(args)
    _limits(args).check_wl(max(g.n, h.n), args.dim)
    comp = compare(g, h, args.dim, args.max_rounds)
    rounds = len(comp.histograms_equal)
    verdict = "distinguished" if comp.distinguished else "not distinguished"
    doc = {"schema": SCHEMA_VERSION, "dimension": args.dim, "g": describe(g), "h": describe(h),
           "rounds": [{"round": r + 1, "class_counts": comp.class_counts[r] if comp.class_counts else [],
                       "histograms_equal": comp.histograms_equal[r]} for r in range(rounds)],
           "first_difference": comp.first_difference, "verdict": verdict,
           "stabilised": comp.complete}
    if args.out == "json":
        _emit(_dump(doc), args.output)
    else:
        _emit(f"{args.dim}-dim WL: {verdict}"
              + (f" (first differing round {comp.first_difference})" if comp.distinguished else "")
              + "\n", args.output)
    return EXIT_OK


def cmd_cospectral(args) -> int:
    g, h = load_pair(args)
    pg, ph = char_poly(g), char_poly(h)
    same = g.n == h.n and pg == ph
    doc = {"schema": SCHEMA_VERSION, "g": describe(g), "h": describe(h), "cospectral": same,
           "char_poly_g": [str(c) for c in pg.coeffs], "char_poly_h": [str(c) for c in ph.coeffs]}
    if args.out == "json":
        _emit(_dump(doc), args.output)
    else:
        _emit(f"g: {pg}\nh: {ph}\ncospectral: {same}\n", args.output)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.gen_kind == "named":
        _emit(format_graph(named(args.name), args.format), args.output)
        return EXIT_OK
    base = load_graph(args.base, args.input_format)
    twist = tuple(int(x) for x in args.twist.split(",")) if args.twist else None
    pair = cfi_pair(base, twist)
    doc = {"schema": SCHEMA_VERSION, "manifest": pair.manifest(),
           "plain": format_graph(pair.plain, args.format),
           "twisted": format_graph(pair.twisted, args.format)}
    if args.certify:
        cert = least_distinguishing_dimension(pair.plain, pair.twisted, args.max_dim,
                                              limits=_limits(args))
        doc["certification"] = {"status": cert.status, "least_dimension": cert.least_dimension,
                                "tried": cert.tried}
    if args.out == "json":
        _emit(_dump(doc), args.output)
    else:
        _emit(doc["plain"] + doc["twisted"], args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    limits = _limits(args)
    if args.claim == "props":
        g = load_graph(args.g, args.input_format)
        R = args.max_r if args.max_r is not None else default_rounds(g, args.k)
        report = verify_props(g, args.k, R, limits)
    else:
        if args.h is None:
            raise GraphError(f"verify {args.claim} needs two graphs")
        g, h = load_pair(args)
        if args.claim == "thm1":
            report = verify_theorem1(g, h, args.k, limits)
        else:
            R = args.max_r if args.max_r is not None else default_rounds(g, args.k)
            report = verify_entrywise(g, h, args.k, R, limits)
    if args.out == "json":
        _emit(report.to_json(args.timings), args.output)
    else:
        _emit(report.to_text(), args.output)
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-vertices", type=int, default=DEFAULT_LIMITS.max_vertices)
    common.add_argument("--budget-wl-records", type=int, default=DEFAULT_LIMITS.max_wl_records,
                        help="cap on n^(dim+1), the per-round WL record count")
    common.add_argument("--input-format", choices=["graph6", "edgelist"], default=None,
                        help="format of graph files (sniffed when omitted)")
    common.add_argument("--output", default=None, help="write to this path instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    parser = argparse.ArgumentParser(prog="symwl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("power", parents=[common], help="build a full, restricted or symmetric power")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kind", choices=["full", "restricted", "symmetric"], default="full")
    p.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("wl", parents=[common], help="compare two graphs with k-dim WL")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-rounds", type=int, default=None)
    p.add_argument("--out", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_wl)

    p = sub.add_parser("cospectral", parents=[common], help="exact cospectrality test")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--out", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_cospectral)

    p = sub.add_parser("gen", parents=[common], help="generate named graphs or CFI pairs")
    gsub = p.add_subparsers(dest="gen_kind", required=True)
    pn = gsub.add_parser("named", parents=[common])
    pn.add_argument("name")
    pn.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")
    pn.set_defaults(func=cmd_gen)
    pc = gsub.add_parser("cfi", parents=[common])
    pc.add_argument("base", help="base graph (path, named:NAME or g6:STRING)")
    pc.add_argument("--twist", default=None, help="twist edge as 'u,v'")
    pc.add_argument("--certify", action="store_true", help="search for the least separating WL dimension")
    pc.add_argument("--max-dim", type=int, default=DEFAULT_LIMITS.max_dim)
    pc.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")
    pc.add_argument("--out", choices=["json", "text"], default="json")
    pc.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="check the identities on an instance")
    p.add_argument("claim", choices=["thm1", "entrywise", "props"])
    p.add_argument("g")
    p.add_argument("h", nargs="?")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--max-r", type=int, default=None)
    p.add_argument("--out", choices=["json", "text"], default="json")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, BudgetError, ValueError, OSError) as exc:
        print(f"symwl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
