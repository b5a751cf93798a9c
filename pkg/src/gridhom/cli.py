"""Command-line front end.

    gridhom compute  FILE [--hat|--tilde|--both] [--euler] [--json] [--raw] [--check-oracle]
    gridhom verify   THEOREM [FILE ...] [--seed S] [--steps K] [--json]
    gridhom trace    FILE [--json]
    gridhom moves    FILE LOG [-o OUT] | FILE --random K --seed S [--log-out LOG] [-o OUT]

Exit codes: 0 success, 1 parse error, 2 invalid diagram or illegal move,
3 unbalanced coloring, 4 internal invariant violated, 5 a verification failed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path

from . import __version__, fixtures, verify
from .diagram import WeightedDiagram, load_weighted
from .errors import (
    BalanceError,
    DiagramSyntaxError,
    GridHomError,
    IllegalMove,
    PatternNotFound,
    TraceError,
    ValidationError,
)
from .homology import (
    PoincarePolynomial,
    euler_characteristic,
    format_alex,
    hat_from_tilde,
    normalize_ashift,
    table,
    tilde_homology,
)
from .moves import dump_log, load_log, random_move_walk, replay

SCHEMA = 1
EXIT_PARSE, EXIT_VALIDATION, EXIT_BALANCE, EXIT_INTERNAL, EXIT_FAILED = 1, 2, 3, 4, 5

THEOREMS = ("cut-edge", "sink-source", "wedge", "connected-sum", "disjoint",
            "kunneth", "cn-acyclic", "move-invariance")


def _set_threads(requested: int | None) -> None:
    if requested is None:
        env = os.environ.get("GRIDHOM_THREADS")
        requested = int(env) if env else None
    if requested is None:
        return
    import numba

    numba.set_num_threads(max(1, min(int(requested), numba.config.NUMBA_NUM_THREADS)))


def _read(spec: str) -> WeightedDiagram:
    """A path, or ``@name`` for a diagram shipped with the package."""
    if spec.startswith("@"):
        return fixtures.load(spec[1:])
    return load_weighted(Path(spec).read_text())


def _euler_str(poly: dict[int, int]) -> str:
    if not poly:
        return "0"
    terms = []
    for a2, k in sorted(poly.items(), reverse=True):
        e = format_alex(a2)
        mono = "t" if e == "1" else f"t^({e})" if "/" in e else f"t^{e}"
        coef = "" if abs(k) == 1 and a2 != 0 else f"{abs(k)}*" if a2 != 0 else str(abs(k))
        terms.append(("-" if k < 0 else "+", coef + mono if a2 != 0 else coef))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, t in terms[1:]:
        out += f" {sign} {t}"
    return out


def _poly_json(p: PoincarePolynomial) -> list[dict]:
    return [dict(r, alex=format_alex(r["alex2"])) for r in p.as_records()]


# -- compute ------------------------------------------------------------------------


def cmd_compute(args) -> int:
    wd = _read(args.file)
    t0 = time.perf_counter()
    raw_tilde = tilde = tilde_homology(wd)
    t1 = time.perf_counter()
    hat = hat_from_tilde(tilde, wd.plain_o_weights)
    if not args.raw:
        hat, tilde = normalize_ashift(hat), normalize_ashift(tilde)
    which = "both" if args.both else "tilde" if args.tilde else "hat"
    report = {
        "schema": SCHEMA,
        "command": "compute",
        "input": {"file": args.file, "n": wd.n, "states": math.factorial(wd.n),
                  "plain_o_weights": wd.plain_o_weights},
        "normalized": not args.raw,
    }
    if which in ("hat", "both"):
        report["hat"] = _poly_json(hat)
    if which in ("tilde", "both"):
        report["tilde"] = _poly_json(tilde)
    if args.euler:
        report["euler"] = {format_alex(a): k for a, k in euler_characteristic(hat).items()}
    status = 0
    if args.check_oracle:
        from .oracle import oracle_homology

        ref = oracle_homology(wd)
        agree = ref == raw_tilde
        report["oracle_agrees"] = agree
        status = 0 if agree else EXIT_INTERNAL
    if args.timing:
        report["timing"] = {"homology_seconds": round(t1 - t0, 3)}
    if args.json:
        print(json.dumps(report, sort_keys=True))
        return status
    print(f"{args.file}: {wd.n}x{wd.n} grid, {report['input']['states']} states, "
          f"{len(wd.plain_o_weights)} plain O")
    note = "" if args.raw else " (Alexander shifted so the minimum is 0)"
    if which in ("hat", "both"):
        print(f"hat homology{note}:")
        print(table(hat))
    if which in ("tilde", "both"):
        print(f"tilde homology{note}:")
        print(table(tilde))
    if args.euler:
        print("euler characteristic of hat:", _euler_str(euler_characteristic(hat)))
    if args.check_oracle:
        print("dense oracle:", "agrees" if report["oracle_agrees"] else "DISAGREES")
    if args.timing:
        print(f"homology time: {report['timing']['homology_seconds']} s")
    return status


# -- verify -------------------------------------------------------------------------


def _verdicts(args) -> list[verify.Verdict]:
    th = args.theorem
    files = [_read(f) for f in args.files]

    def need(k):
        if len(files) != k:
            raise SystemExit(f"gridhom verify {th}: expected {k} input file(s), got {len(files)}")

    strict = not args.loose
    if th == "cut-edge":
        if len(files) == 2:
            return [verify.cut_edge(*files, strict=strict)]
        need(1)
        return [verify.vanishing(files[0], "cut-edge")]
    if th == "sink-source":
        need(1)
        return [verify.vanishing(files[0], "sink-source")]
    if th == "wedge":
        need(2)
        return [verify.wedge(*files, strict=strict, oracle=args.oracle)]
    if th == "connected-sum":
        need(2)
        return [verify.connected_sum(*files, strict=strict, oracle=args.oracle)]
    if th == "disjoint":
        need(2)
        return [verify.disjoint(*files, oracle=args.oracle)]
    if th == "kunneth":
        need(2)
        return [verify.kunneth(*files, strict=strict, oracle=args.oracle)]
    if th == "cn-acyclic":
        return [verify.cn_acyclic(n) for n in range(args.n_min, args.n_max + 1)]
    need(1)
    return [verify.move_invariance(files[0], steps=args.steps, seed=args.seed, max_n=args.max_n)]


def cmd_verify(args) -> int:
    verdicts = _verdicts(args)
    ok = all(v.passed for v in verdicts)
    if args.json:
        print(json.dumps({"schema": SCHEMA, "command": "verify", "theorem": args.theorem,
                          "inputs": args.files, "passed": ok,
                          "results": [v.as_dict() for v in verdicts]}, sort_keys=True))
    else:
        for v in verdicts:
            extra = " ".join(f"{k}={val}" for k, val in v.details.items() if k != "log")
            print(f"{'PASS' if v.passed else 'FAIL'} {v.name} {extra}")
            if v.lhs is not None:
                print("  lhs:")
                print(table(v.lhs))
                print("  rhs:")
                print(table(v.rhs))
    return 0 if ok else EXIT_FAILED


# -- trace --------------------------------------------------------------------------


def cmd_trace(args) -> int:
    wd = _read(args.file)
    sk = wd.skeleton
    verts = []
    for v, cell in enumerate(sk.vertices):
        verts.append({
            "index": v, "cell": list(cell),
            "in": list(sk.in_edges[v]), "out": list(sk.out_edges[v]),
            "in_sum": sum(wd.edge_weights[i] for i in sk.in_edges[v]),
            "out_sum": sum(wd.edge_weights[i] for i in sk.out_edges[v]),
        })
    edges = [{"index": i, "tail": e.tail, "head": e.head, "weight": wd.edge_weights[i],
              "first_x": list(e.first_x), "markings": len(e.path)}
             for i, e in enumerate(sk.edges)]
    if args.json:
        print(json.dumps({"schema": SCHEMA, "command": "trace", "input": args.file,
                          "vertices": verts, "edges": edges}, sort_keys=True))
        return 0
    print(f"{len(verts)} vertices, {len(edges)} edges")
    for v in verts:
        print(f"  v{v['index']} at {tuple(v['cell'])}: in {v['in']} out {v['out']} "
              f"balance {v['in_sum']} = {v['out_sum']}")
    for e in edges:
        print(f"  e{e['index']}: v{e['tail']} -> v{e['head']} weight {e['weight']} "
              f"(leaves through X at {tuple(e['first_x'])}, {e['markings']} markings)")
    return 0


# -- moves --------------------------------------------------------------------------


def cmd_moves(args) -> int:
    wd = _read(args.file)
    if args.random is not None:
        out, log = random_move_walk(wd, args.random, args.seed, max_n=args.max_n)
        if args.log_out:
            Path(args.log_out).write_text(dump_log(log) + "\n")
    else:
        if args.log is None:
            raise SystemExit("gridhom moves: give a move log or --random STEPS")
        out = replay(wd, load_log(Path(args.log).read_text()))
    text = out.text()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gridhom", description="Grid homology of MOY graphs.")
    p.add_argument("--version", action="version", version=f"gridhom {__version__}")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: GRIDHOM_THREADS or all cores)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="hat/tilde homology of a diagram file")
    c.add_argument("file", help="diagram file, or @name for a shipped diagram")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--hat", action="store_true", help="hat homology (default)")
    g.add_argument("--tilde", action="store_true")
    g.add_argument("--both", action="store_true")
    c.add_argument("--euler", action="store_true", help="also print the Euler characteristic")
    c.add_argument("--json", action="store_true")
    c.add_argument("--raw", action="store_true", help="do not shift the Alexander grading")
    c.add_argument("--check-oracle", action="store_true",
                   help="compare with the dense reference (n <= 7)")
    c.add_argument("--timing", action="store_true", help="report wall time (off by default)")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="check one of the structural theorems numerically")
    v.add_argument("theorem", choices=THEOREMS)
    v.add_argument("files", nargs="*")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--steps", type=int, default=20)
    v.add_argument("--max-n", type=int, default=None)
    v.add_argument("--n-min", type=int, default=2)
    v.add_argument("--n-max", type=int, default=6)
    v.add_argument("--loose", action="store_true",
                   help="accept corner vertices without requiring good diagrams")
    v.add_argument("--oracle", action="store_true",
                   help="compute the factors with the dense reference")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("trace", help="vertices, edges and balance of a diagram")
    t.add_argument("file")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_trace)

    m = sub.add_parser("moves", help="replay a move log or run a seeded random walk")
    m.add_argument("file")
    m.add_argument("log", nargs="?")
    m.add_argument("--random", type=int, metavar="STEPS")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--max-n", type=int, default=None)
    m.add_argument("--log-out")
    m.add_argument("-o", "--output")
    m.set_defaults(func=cmd_moves)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _set_threads(args.threads)
        return args.func(args)
    except DiagramSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, TraceError, IllegalMove, PatternNotFound) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except BalanceError as exc:
        print(f"unbalanced coloring: {exc}", file=sys.stderr)
        return EXIT_BALANCE
    except GridHomError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
