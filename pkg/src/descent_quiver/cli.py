"""Command line front end.

Plain text is the default output; ``--json`` switches to the machine format.
The exit status is 0 on success and on PASS verdicts, 1 on FAIL verdicts and
2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .alignment import render_forest
from .forest import ForestError, erase, format_forest, labeling, parse_forest
from .orbits import delta_borbit, delta_forest
from .quiver import build_quiver, format_partition, parse_partition
from .relations import BudgetExceeded, DEFAULT_CAP, kernel_I, verify_conjecture
from .words import pi

THREADS_ENV = "DESCENT_QUIVER_THREADS"


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _expr(text: str) -> tuple[tuple, bool]:
    """Parse a forest literal; ``[ ... ]B`` marks an orbit."""
    s = text.strip()
    if s.startswith("[") and s.endswith("]B"):
        return parse_forest(s[1:-2]), True
    return parse_forest(s), False


def _range(text: str) -> list:
    if "-" in text:
        a, b = text.split("-", 1)
        return list(range(int(a), int(b) + 1))
    return [int(text)]


# ---------------------------------------------------------------- commands

def cmd_quiver(args) -> int:
    q = build_quiver(args.n, with_paths=False)
    if args.format == "dot":
        sys.stdout.write(q.to_dot(include_isolated=not args.omit_isolated))
    elif args.format == "json":
        print(q.to_json())
    else:
        for e in q.edges:
            print(e.describe())
    return 0


def _dims(n: int) -> dict:
    q = build_quiver(n)
    by_len = q.count_by_length()
    dim_i = len(kernel_I(q))
    return {
        "n": n,
        "vertices": len(q.vertices),
        "edges": len(q.edges),
        "paths_by_length": {str(k): v for k, v in sorted(by_len.items())},
        "dim_kQ": len(q.paths),
        "dim_I": dim_i,
        "quotient": len(q.paths) - dim_i,
    }


def cmd_dims(args) -> int:
    d = _dims(args.n)
    if args.json:
        print(json.dumps(d, indent=2))
        return 0
    print(f"vertices {d['vertices']}")
    print(f"edges {d['edges']}")
    for k, v in d["paths_by_length"].items():
        if int(k) >= 2:
            print(f"paths len-{k} {v}")
    print(f"dim kQ {d['dim_kQ']}")
    print(f"quotient {d['quotient']}")
    return 0


def _verify(job) -> dict:
    n, cap, mode = job
    return verify_conjecture(n, cap=cap, mode=mode)


def cmd_verify(args) -> int:
    mode = "direct" if args.no_j_correction else "solved"
    jobs = [(n, args.cap, mode) for n in _range(args.n)]
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as ex:
            reports = list(ex.map(_verify, jobs))
    else:
        reports = [_verify(j) for j in jobs]
    if args.json:
        print(json.dumps(reports if len(reports) > 1 else reports[0], indent=2))
    else:
        for r in reports:
            print(f"n={r['n']} {r['verdict']} dim kQ={r['dim_kQ']} dim I={r['dim_I']}"
                  f" ideal={r['dim_ideal']} quotient={r['dim_quotient']}/{r['expected_quotient']}")
            for w in r["witnesses"]:
                print(f"  missing: {w}")
    return 0 if all(r["verdict"] == "PASS" for r in reports) else 1


def cmd_delta(args) -> int:
    f, orbit = _expr(args.expr)
    print(delta_borbit(f) if orbit or args.as_borbit else delta_forest(f))
    return 0


def cmd_pi(args) -> int:
    f, _ = _expr(args.expr)
    print(pi(erase(f) if labeling(f) == "labeled" else f))
    return 0


def cmd_render(args) -> int:
    f, _ = _expr(args.expr)
    print(render_forest(f))
    return 0


def cmd_paths(args) -> int:
    q = build_quiver(args.n)
    src, dst = parse_partition(args.source), parse_partition(args.dest)
    ps = q.paths_between(src, dst)
    if args.json:
        print(json.dumps([{"index": q.index_of(p), "edges": list(p.edge_ids),
                           "orbits": [format_forest(x) for x in sorted(q.iota_set(p), key=str)]}
                          for p in ps], indent=2))
        return 0
    print(f"{len(ps)} paths {format_partition(src)} -> {format_partition(dst)}")
    for p in ps:
        print(f"{p.describe()}  delta {q.delta_of_path(p)}")
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="descent-quiver",
                                 description="Quiver presentations of descent algebras of type B.")
    ap.add_argument("--threads", type=int, default=_default_threads(),
                    help=f"worker cap (default from ${THREADS_ENV}, else 1)")
    # also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quiver", parents=[common], help="print the quiver")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "dot", "json"), default="text")
    p.add_argument("--omit-isolated", action="store_true", help="drop vertices without edges")
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("dims", parents=[common], help="vertex, edge and path counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("verify", parents=[common], help="check the generating families against ker Delta")
    p.add_argument("--n", required=True, help="n or a range such as 1-8")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--no-j-correction", action="store_true",
                   help="lift J renderings literally instead of solving for a lift")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("delta", parents=[common], help="Delta of a forest or orbit")
    p.add_argument("--expr", required=True)
    p.add_argument("--as-borbit", action="store_true", help="treat the forest as its orbit")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("pi", parents=[common], help="bracket expansion of a forest")
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_pi)

    p = sub.add_parser("render", parents=[common], help="strongly right aligned rendering")
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("paths", parents=[common], help="paths between two vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--source", required=True, help="partition such as 1122")
    p.add_argument("--dest", required=True, help="partition, or 0 for the empty one")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_paths)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "n", None) is not None and isinstance(args.n, int) and args.n < 1:
        ap.error("--n must be positive")
    try:
        return args.func(args)
    except (ForestError, BudgetExceeded, ValueError) as e:
        print(f"error: {type(e).__module__.rsplit('.', 1)[-1]}.{type(e).__name__}: {e}",
              file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
