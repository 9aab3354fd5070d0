"""``rfg`` command line.

Exit codes: 0 success, 1 error, 2 identity or degenerate input, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from typing import Optional, Sequence

from . import certificates as certs
from .errors import (
    BudgetExceeded,
    CentralInput,
    CertificateError,
    IdentityElement,
    IdentityInput,
    RFGError,
)
from .oracle import DEFAULT_GROUP_BUDGET, exact_divisibility, growth_table
from .raag import SimplicialGraph, format_word, graph_from_json, normal_form
from .separation import separating_cover
from .speciallinear import congruence_witness, int_matrix, slk_bounds_table

CSV_HEADER = "# rfg-v1"

EXIT_OK, EXIT_ERROR, EXIT_DEGENERATE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load_graph(args) -> SimplicialGraph:
    if args.graph and args.graph_inline:
        raise UsageError("give only one of --graph and --graph-inline")
    if args.graph:
        with open(args.graph) as fh:
            obj = json.load(fh)
    elif args.graph_inline:
        obj = json.loads(args.graph_inline)
    else:
        raise UsageError("a graph is required (--graph or --graph-inline)")
    return graph_from_json(obj)


def _need_word(args) -> str:
    if args.word is None:
        raise UsageError("--word is required")
    return args.word


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt_float(x: Optional[float]) -> str:
    return "" if x is None else f"{x:.6f}"


def cmd_witness(args, out) -> int:
    if args.matrix is not None:
        g = int_matrix(json.loads(args.matrix))
        out.write(certs.dumps(certs.congruence_to_json(congruence_witness(g))))
        return EXIT_OK
    graph = _load_graph(args)
    cert = separating_cover(graph, _need_word(args))
    out.write(certs.dumps(certs.separation_to_json(cert)))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if not args.path:
        raise UsageError("verify needs a certificate path")
    kind = certs.load_and_verify(args.path)
    out.write(f"ok {kind}\n")
    return EXIT_OK


def cmd_divide(args, out) -> int:
    graph = _load_graph(args)
    word = normal_form(graph, _need_word(args))
    res = exact_divisibility(graph, word.letters, args.mode, budget=args.budget,
                             max_degree=args.max_degree)
    text = format_word(graph, word.letters)
    if args.format == "csv":
        out.write(_csv(["word", "length", "mode", "value", "exact"],
                       [[text, word.length, res.mode.value, res.value, int(res.exact)]]))
    else:
        out.write(certs.dumps({
            "word": text, "length": word.length, "mode": res.mode.value,
            "value": res.value, "exact": res.exact, "witness": res.witness.to_json(),
        }))
    return EXIT_OK


def cmd_growth(args, out) -> int:
    graph = _load_graph(args)
    table = growth_table(graph, args.n_max, args.mode, budget=args.budget,
                         max_degree=args.max_degree)
    rows = []
    for r in table.rows:
        secs = "" if args.no_timing else f"{r.seconds:.3f}"
        rows.append([r.n, r.value, format_word(graph, r.extremal.letters), r.witness_index,
                     table.mode.value, secs])
    if args.format == "json":
        out.write(certs.dumps({"mode": table.mode.value, "rows": [
            dict(zip(["n", "F_n", "extremal_word", "witness_index"], row[:4])) for row in rows]}))
    else:
        out.write(_csv(["n", "F_n", "extremal_word", "witness_index", "mode", "seconds"], rows))
    return EXIT_OK


def cmd_slk(args, out) -> int:
    table = slk_bounds_table(args.k, args.n_max)
    if args.format == "json":
        out.write(certs.dumps({
            "k": table.k, "lower_slope": table.lower_slope, "upper_slope": table.upper_slope,
            "rows": [{"n": r.n, "lcm": r.lcm, "lower": r.lower, "upper": r.upper, "p": r.p,
                      "slope_partial": r.slope_partial} for r in table.rows],
        }))
    else:
        out.write(_csv(["n", "lcm", "lower", "upper", "p", "slope_partial"],
                       [[r.n, r.lcm, r.lower, r.upper, r.p, _fmt_float(r.slope_partial)]
                        for r in table.rows]))
    return EXIT_OK


def cmd_selftest(args, out) -> int:
    from .selftest import run_selftest
    results = run_selftest(seed=args.seed)
    for name, ok, detail in results:
        out.write(f"{'PASS' if ok else 'FAIL'} {name}{': ' + detail if detail else ''}\n")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_ERROR


COMMANDS = {
    "witness": cmd_witness,
    "verify": cmd_verify,
    "divide": cmd_divide,
    "growth": cmd_growth,
    "slk": cmd_slk,
    "selftest": cmd_selftest,
}


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rfg", description="Separating covers and divisibility tables "
                                "for right-angled Artin groups and SL_k(Z).")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("path", nargs="?", help="certificate file (verify)")
    p.add_argument("--graph", help="graph JSON file")
    p.add_argument("--graph-inline", help="graph JSON text")
    p.add_argument("--word", help='word such as "a b^-1 c^3"')
    p.add_argument("--matrix", help="SL_k(Z) matrix as a JSON array of rows (witness)")
    p.add_argument("--mode", choices=["subgroup", "normal"], default="subgroup")
    p.add_argument("--n-max", type=_positive, default=None)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--budget", type=_positive, default=DEFAULT_GROUP_BUDGET,
                   help="group-order budget for normal mode")
    p.add_argument("--max-degree", type=_positive, default=None)
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timing", action="store_true",
                   help="leave the growth seconds column empty for reproducible output")
    return p


_DEFAULT_FORMAT = {"divide": "json", "growth": "csv", "slk": "csv"}
_DEFAULT_N_MAX = {"growth": 4, "slk": 20}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_ERROR
    if args.format is None:
        args.format = _DEFAULT_FORMAT.get(args.command, "json")
    if args.n_max is None:
        args.n_max = _DEFAULT_N_MAX.get(args.command, 4)
    random.seed(args.seed)
    try:
        return COMMANDS[args.command](args, out)
    except (IdentityElement, IdentityInput, CentralInput) as e:
        err.write(f"rfg: degenerate input: {e}\n")
        return EXIT_DEGENERATE
    except CertificateError as e:
        err.write(f"rfg: verification failed: {e}\n")
        return EXIT_ERROR
    except BudgetExceeded as e:
        err.write(f"rfg: budget exhausted: {e}\n")
        return EXIT_BUDGET
    except RFGError as e:
        err.write(f"rfg: {type(e).__name__}: {e}\n")
        return EXIT_ERROR
    except (UsageError, OSError, json.JSONDecodeError, ValueError, KeyError, TypeError) as e:
        err.write(f"rfg: {type(e).__name__}: {e}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
