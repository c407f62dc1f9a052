"""Command line front end.

Graph arguments are either a path to a graph file or ``family:p1,p2`` (for
example ``complete:5`` or ``random_connected:8,0.3``); random families use
``--seed``.

Exit codes: 0 ok, 1 invalid input, 2 verification failed, 3 timeout.
Errors go to stderr as a single line ``error: <Code>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .bounds import bounds
from .coloring import verify_r_vsdtc
from .errors import InvalidInput, SearchTimeout, VSDTCError
from .experiments import best_constructive, rows_to_csv, rows_to_json, rows_to_text, run_scan, run_table
from .graph import FAMILIES, Graph, generate
from .io import coloring_document, format_graph, read_coloring, read_graph
from .solver import SearchBudget, chromatic_number

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_TIMEOUT = 0, 1, 2, 3


class VerificationFailed(VSDTCError):
    code = "VerificationFailed"


class _Parser(argparse.ArgumentParser):
    """Usage errors are invalid input: exit 1 with the one-line error format."""

    def error(self, message):
        self.exit(EXIT_INVALID, f"error: InvalidInput: {message}\n")


def load_graph(arg: str, seed: int = 0) -> Graph:
    if os.path.exists(arg):
        try:
            return read_graph(arg)
        except OSError as exc:
            raise InvalidInput(f"cannot read {arg}: {exc.strerror}") from None
    kind, sep, rest = arg.partition(":")
    if not sep or kind not in FAMILIES:
        raise InvalidInput(f"{arg!r} is neither a file nor family:params (families: {', '.join(FAMILIES)})")
    params = [p for p in rest.split(",") if p]
    return generate(kind, *[_number(p) for p in params], seed=seed)


def _number(s: str):
    try:
        return int(s)
    except ValueError:
        try:
            return float(s)
        except ValueError:
            raise InvalidInput(f"bad parameter {s!r}") from None


def _budget(args) -> SearchBudget:
    secs = args.timeout_ms / 1000.0 if args.timeout_ms else SearchBudget.max_seconds
    nodes = args.max_nodes or SearchBudget.max_nodes
    return SearchBudget(max_nodes=nodes, max_seconds=secs)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    G = load_graph(args.graph, args.seed)
    _emit(format_graph(G, (args.graph, f"seed {args.seed}")), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    G = load_graph(args.graph, args.seed)
    f = read_coloring(G, args.coloring)
    report = verify_r_vsdtc(G, f, args.r)
    if args.format == "json":
        print(json.dumps(report.summary(), indent=2))
    else:
        print("valid" if report.valid else "invalid")
        for v in report.violations:
            where = f" at distance {v.distance}" if v.distance is not None else ""
            print(f"  {v.kind}: {v.first!r} {v.second!r}{where}")
    return EXIT_OK if report.valid else EXIT_VERIFY


def cmd_solve(args) -> int:
    G = load_graph(args.graph, args.seed)
    res = chromatic_number(G, args.r, _budget(args))
    if res.status != "exact":
        lo = max([res.lower_bound_used] + [p.kappa + 1 for p in res.probes if p.outcome == "none"])
        raise SearchTimeout(f"no exact value within budget; value is at least {lo}")
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            json.dump(coloring_document(G, res.witness, args.r), fh, indent=2)
            fh.write("\n")
    if args.format == "json":
        doc = {
            "chromatic_number": res.chromatic_number,
            "r": args.r,
            "lower_bound": res.lower_bound_used,
            "lower_bound_source": res.lower_bound_source,
            "nodes": res.nodes,
            "witness": coloring_document(G, res.witness, args.r),
        }
        print(json.dumps(doc, indent=2))
    else:
        print(res.chromatic_number)
    return EXIT_OK


def cmd_greedy(args) -> int:
    G = load_graph(args.graph, args.seed)
    f, method = best_constructive(G, args.r)
    report = verify_r_vsdtc(G, f, args.r)
    doc = coloring_document(G, f, args.r, report)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    if args.format == "json":
        print(json.dumps(dict(doc, colors_used=f.colors_used(), method=method), indent=2))
    else:
        print(f"{f.colors_used()} {method} {'valid' if report.valid else 'invalid'}")
    if not report.valid:
        raise VerificationFailed(f"{method} coloring failed verification")
    return EXIT_OK


def cmd_bounds(args) -> int:
    G = load_graph(args.graph, args.seed)
    b = bounds(G, args.r)
    if args.format == "json":
        print(json.dumps(b.as_dict(), indent=2))
    else:
        print(f"lower {b.lower}")
        for key, val in sorted(b.upper.items()):
            print(f"upper.{key} {val}")
        for key, val in sorted(b.conjectured.items()):
            print(f"conjectured.{key} {'-' if val is None else val}")
    return EXIT_OK


def cmd_table(args) -> int:
    rows = run_table(range(args.min_n, args.max_n + 1), args.r, _budget(args))
    render = {"csv": rows_to_csv, "json": lambda rs: rows_to_json(rs) + "\n"}.get(args.format, rows_to_text)
    _emit(render(rows), args.out)
    return EXIT_OK


def cmd_scan(args) -> int:
    summary = run_scan(
        args.family,
        args.count,
        seed=args.seed,
        r=args.r,
        budget=_budget(args),
        min_n=args.min_n,
        max_n=args.max_n,
        k=args.k,
        p=args.p,
    )
    if args.format == "json":
        text = json.dumps(summary.as_dict(), indent=2) + "\n"
    elif args.format == "csv":
        text = rows_to_csv(x.row for x in summary.records)
    else:
        d = summary.as_dict()
        keys = ("family", "r", "count", "seed", "exact", "timeouts", "order_violations", "min_order_margin", "max_degree_excess")
        text = "".join(f"{k} {'-' if d[k] is None else d[k]}\n" for k in keys)
        text += f"candidates {len(d['candidates'])}\n"
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--r", type=int, default=1, help="distance radius (default 1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timeout-ms", type=int, default=None, help="wall-clock limit per search probe")
    common.add_argument("--max-nodes", type=int, default=None, help="node limit per search probe")
    common.add_argument("--out", default=None, help="write the main output (or witness) here")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")

    parser = _Parser(prog="vsdtc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a generated graph file")
    p.add_argument("graph", help="family:params")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="check a coloring document")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[common], help="exact value by search")
    p.add_argument("graph")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("greedy", parents=[common], help="best applicable constructive coloring")
    p.add_argument("graph")
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("bounds", parents=[common], help="lower and upper bounds")
    p.add_argument("graph")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", parents=[common], help="exact values for complete graphs")
    p.add_argument("--min-n", type=int, default=3)
    p.add_argument("--max-n", type=int, default=5)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("scan", parents=[common], help="conjecture margins over random graphs")
    p.add_argument("--family", choices=FAMILIES, default="random_tree")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--min-n", type=int, default=3)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--k", type=int, default=2, help="degeneracy for random_k_degenerate")
    p.add_argument("--p", type=float, default=0.3, help="edge probability for random_connected")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.r is not None and args.r < 1:
            raise InvalidInput(f"--r must be >= 1, got {args.r}")
        return args.func(args)
    except SearchTimeout as exc:
        code = EXIT_TIMEOUT
        err = exc
    except VerificationFailed as exc:
        code = EXIT_VERIFY
        err = exc
    except InvalidInput as exc:
        code = EXIT_INVALID
        err = exc
    except VSDTCError as exc:
        code = EXIT_INVALID if exc.code in ("IncompleteColoring", "BadVertex") else EXIT_VERIFY
        err = exc
    except OSError as exc:
        print(f"error: InvalidInput: {exc}", file=sys.stderr)
        return EXIT_INVALID
    msg = " ".join(str(err).split())
    print(f"error: {err.code}: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
