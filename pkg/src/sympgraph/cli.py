"""Command line front end: ``sympgraph {build,certify,color,aut}``.

Exit codes: 0 success, 1 a certificate reported failures, 2 invalid (nu, q),
3 size bound exceeded, 4 time budget exhausted.
"""
from __future__ import annotations

import argparse
import sys

from .certify import (BudgetExceeded, DEFAULT_SAMPLES, aut_certificate,
                      coloring_certificate, dumps, srg_certificate)
from .errors import SizeExceeded
from .gf import prime_power
from .graph import export, symplectic_graph

EXIT_FAIL, EXIT_INVALID, EXIT_SIZE, EXIT_BUDGET = 1, 2, 3, 4


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--nu", type=int, required=True)
    common.add_argument("--q", type=int, required=True, help="field size, a prime power")
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--budget-seconds", type=float, default=None)

    p = argparse.ArgumentParser(prog="sympgraph", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    b = sub.add_parser("build", parents=[common], help="construct and export the graph")
    b.add_argument("--format", default="graph6", choices=["graph6", "dimacs", "json"])
    sub.add_parser("certify", parents=[common], help="strong regularity and spectrum")
    sub.add_parser("color", parents=[common], help="spread colouring and chromatic number")
    a = sub.add_parser("aut", parents=[common], help="automorphism group certificates")
    a.add_argument("--mode", default="all",
                   choices=["formula", "search", "decompose-roundtrip", "all"])
    a.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    return p


def _emit(data: bytes, out: str | None) -> None:
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.nu < 1 or prime_power(args.q) is None:
        print(f"error: need nu >= 1 and a prime power q (got nu={args.nu}, q={args.q})",
              file=sys.stderr)
        return EXIT_INVALID
    try:
        if args.command == "build":
            g = symplectic_graph(args.nu, args.q, threads=args.threads)
            data = export(g, args.format)
            if not data.endswith(b"\n"):
                data += b"\n"
            _emit(data, args.out)
            print(f"n={g.n} k={int(g.adj[0].sum())}", file=sys.stdout if args.out else sys.stderr)
            return 0
        if args.command == "certify":
            cert = srg_certificate(args.nu, args.q, threads=args.threads)
        elif args.command == "color":
            cert = coloring_certificate(args.nu, args.q, threads=args.threads)
        else:
            cert = aut_certificate(args.nu, args.q, mode=args.mode, seed=args.seed,
                                   samples=args.samples, threads=args.threads,
                                   budget_seconds=args.budget_seconds)
    except SizeExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except AssertionError as exc:
        print(f"error: internal check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit((dumps(cert) + "\n").encode(), args.out)
    return EXIT_FAIL if cert.get("failures", 0) else 0


if __name__ == "__main__":
    sys.exit(main())
