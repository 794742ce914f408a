"""Command-line entry point.

Exit codes: 0 success or MATCH, 1 verification MISMATCH, 2 usage error
(including a non-prime p), 3 I/O error.  Data goes to stdout (or ``-o``),
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import sys
from typing import Optional, Sequence

from ccg.field import is_prime

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_IO = 3

log = logging.getLogger("ccg")

BUILD_FORMATS = ("dot", "graphml", "edgelist", "json", "json-stats")


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"p must be a prime, got {p}")
    return p


def _threads(args: argparse.Namespace) -> int:
    if args.threads:
        return args.threads
    from ccg.oracle import default_threads

    return default_threads()


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccg", description="Compressed commuting graphs of M_3(GF(p)).")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--p", type=_prime, required=True, help="prime characteristic")
        sp.add_argument("--threads", type=int, default=0, help="worker threads (default: $CCG_THREADS or 1)")

    b = sub.add_parser("build", help="construct a graph and export it")
    common(b)
    b.add_argument("--graph", choices=("lambda", "gamma", "delta"), default="lambda")
    b.add_argument("--format", choices=BUILD_FORMATS, default="json")
    b.add_argument("-o", "--output", help="output file (default: stdout)")

    v = sub.add_parser("verify", help="compare the construction with brute force")
    common(v)
    v.add_argument("--graph", choices=("lambda", "gamma", "m2"), default="lambda")

    s = sub.add_parser("stats", help="closed-form vertex and neighbourhood tables as JSON")
    common(s)
    s.add_argument("-o", "--output")

    i = sub.add_parser("incidence", help="point-line incidence matrix of PG(2, p)")
    common(i)
    i.add_argument("--format", choices=("text", "csv", "pbm"), default="text")
    i.add_argument("-o", "--output")
    return parser


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _build(args: argparse.Namespace) -> str:
    from ccg import export
    from ccg.delta import build_delta
    from ccg.gamma import blow_up
    from ccg.lambda_graph import build_lambda

    buf = io.StringIO()
    if args.graph == "delta":
        d = build_delta(args.p)
        view, stats = export.view_delta(d), (lambda: export.delta_stats(d))
    else:
        lam = build_lambda(args.p)
        if args.graph == "lambda":
            view, stats = export.view_lambda(lam), (lambda: export.lambda_stats(lam))
        else:
            gam = blow_up(lam)
            stats = lambda: export.gamma_stats(gam)  # noqa: E731
            view = None if args.format in ("json", "json-stats") else export.view_gamma(gam)
    if args.format in ("json", "json-stats"):
        export.write_json(stats(), buf)
    elif args.format == "dot":
        export.write_dot(view, buf)
    elif args.format == "graphml":
        export.write_graphml(view, buf)
    else:
        export.write_edgelist(view, buf)
    return buf.getvalue()


def _verify(args: argparse.Namespace):
    from ccg import oracle
    from ccg.gamma import blow_up
    from ccg.lambda_graph import build_lambda

    p, threads = args.p, _threads(args)
    if args.graph == "m2":
        return oracle.m2_star_check(p)
    if args.graph == "lambda":
        if p > oracle.MAX_LAMBDA_P:
            raise ValueError(f"brute-force oracle limited to p <= {oracle.MAX_LAMBDA_P}")
        return oracle.compare_lambda(build_lambda(p), oracle.brute_lambda(p, threads))
    if p <= oracle.MAX_GAMMA_P:
        brute_lam = oracle.brute_lambda(p, threads)
        lam_verdict = oracle.compare_lambda(build_lambda(p), brute_lam)
        if not lam_verdict.match:
            return lam_verdict
        return oracle.compare_gamma(blow_up(brute_lam), oracle.brute_gamma(p, threads))
    if p > oracle.MAX_LAMBDA_P:
        raise ValueError(f"commuting-graph oracle limited to p <= {oracle.MAX_LAMBDA_P}")
    return oracle.compare_gamma_degrees(blow_up(build_lambda(p)), p)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.threads < 0:
        print("ccg: --threads must be non-negative", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "build":
            _emit(_build(args), args.output)
        elif args.command == "stats":
            from ccg.export import tables_json, write_json

            buf = io.StringIO()
            write_json(tables_json(args.p), buf)
            _emit(buf.getvalue(), args.output)
        elif args.command == "incidence":
            from ccg.export import write_incidence
            from ccg.projective import build_Tp

            buf = io.StringIO()
            write_incidence(build_Tp(args.p), args.format, buf)
            _emit(buf.getvalue(), args.output)
        else:
            try:
                verdict = _verify(args)
            except ValueError as exc:
                print(f"ccg: {exc}", file=sys.stderr)
                return EXIT_USAGE
            report = {"p": args.p, "graph": args.graph, **verdict.report()}
            sys.stdout.write(json.dumps(report, indent=2) + "\n")
            print(f"{report['verdict']}: {verdict.message}", file=sys.stderr)
            return EXIT_OK if verdict.match else EXIT_MISMATCH
    except OSError as exc:
        print(f"ccg: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
