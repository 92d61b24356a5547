"""Command line front end.

Every command prints one JSON report with sorted keys.  Exit codes: 0 when
the command succeeds (and every check passes), 1 on a mismatch, 2 on
invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Sequence

from .acceptance import SUITES, run_suite
from .curve import CurveError
from .fixtures import load_curve
from .givental import assemble_decomposition, r_matrix
from .graphs import enumerate_graphs, graph_weight
from .legendre import bridge_check, chekhov_decompose, verify_closed_forms
from .partition import free_energy, partition_function
from .recursion import TopologicalRecursion
from .tables import FAMILIES, coefficient_table


class InputError(Exception):
    """Invalid command line input (exit code 2)."""


def _stable(g: int, n: int) -> None:
    if g < 0 or n < 1 or 2 * g - 2 + n <= 0:
        raise InputError(f"(g, n) = ({g}, {n}) is not in the stable range 2g - 2 + n > 0, n >= 1")


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"missing required option(s): {', '.join(missing)}")


def _curve(args: argparse.Namespace):
    _need(args, "curve")
    try:
        spec = load_curve(args.curve)
        return spec, spec.build()
    except CurveError as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# commands; each returns (status, curve name, payload)


def cmd_correlator(args: argparse.Namespace) -> tuple[str, str | None, Any]:
    _need(args, "g", "n")
    _stable(args.g, args.n)
    spec, curve = _curve(args)
    basis = "V" if args.basis == "v" else "xi"
    corr = TopologicalRecursion(curve).correlator(args.g, args.n, basis)
    return "pass", spec.name, {"g": args.g, "n": args.n, "basis": args.basis, "coefficients": corr.to_json()}


def cmd_tables(args: argparse.Namespace) -> tuple[str, str | None, Any]:
    _need(args, "curve")
    if args.curve not in FAMILIES:
        raise InputError(f"tables are available for {', '.join(FAMILIES)}")
    table = coefficient_table(args.curve, args.gmax, args.nmax)
    return "pass", args.curve, {"g_max": args.gmax, "n_max": args.nmax, "entries": table.to_json()}


def cmd_partition(args: argparse.Namespace) -> tuple[str, str | None, Any]:
    spec, curve = _curve(args)
    engine = TopologicalRecursion(curve)
    F = free_energy(engine, args.gmax, args.nmax)
    payload = {"g_max": args.gmax, "n_max": args.nmax, "free_energy": F.to_json()}
    if args.with_z:
        payload["partition_function"] = partition_function(engine, args.gmax, args.nmax).to_json()
    return "pass", spec.name, payload


def cmd_decompose(args: argparse.Namespace) -> tuple[str, str | None, Any]:
    spec, curve = _curve(args)
    report = assemble_decomposition(curve, args.gmax, args.nmax, spec.name)
    payload = report.to_json()
    payload["first_mismatch"] = report.mismatches[0] if report.mismatches else None
    payload["r_matrix"] = r_matrix(curve, args.order).to_json()
    return ("pass" if report.ok else "fail"), spec.name, payload


def cmd_graphs(args: argparse.Namespace) -> tuple[str, str | None, Any]:
    _need(args, "g", "n")
    _stable(args.g, args.n)
    spec, curve = _curve(args)
    rows = []
    for graph in enumerate_graphs(curve, args.g, args.n):
        w = graph_weight(graph, curve)
        entry = graph.to_json()
        entry["weight"] = w.value.to_json()
        entry["factors"] = {k: v.to_json() for k, v in w.factors.items()}
        rows.append(entry)
    return "pass", spec.name, {"g": args.g, "n": args.n, "count": len(rows), "graphs": rows}


def cmd_legendre(args: argparse.Namespace) -> tuple[str, str | None, Any]:
    if args.action == "decompose":
        F = chekhov_decompose(args.gmax, args.degmax, args.times)
        return "pass", "legendre", {"g_max": args.gmax, "deg_max": args.degmax, "times": args.times, "free_energy": F.to_json()}
    report = verify_closed_forms(args.degmax)
    bridge = bridge_check(args.gmax, min(args.degmax, 3))
    ok = report["ok"] and bridge["ok"]
    return ("pass" if ok else "fail"), "legendre", {"closed_forms": report, "bridge": bridge}


def cmd_verify(args: argparse.Namespace) -> tuple[str, str | None, Any]:
    results = run_suite(args.suite)
    rows = []
    for r in results:
        row = r.to_json()
        if not args.timing:
            row.pop("seconds")
        rows.append(row)
        print(r.line(), file=sys.stderr)
    status = "pass" if all(r.ok for r in results) else "fail"
    return status, None, {"suite": args.suite, "criteria": rows}


COMMANDS = {
    "correlator": cmd_correlator,
    "tables": cmd_tables,
    "partition": cmd_partition,
    "decompose": cmd_decompose,
    "graphs": cmd_graphs,
    "legendre": cmd_legendre,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irregular-tr", description="Exact topological recursion with irregular branch points.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-out", help="also write the report to this file")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings (breaks byte-identical output)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("correlator", parents=[common], help="correlator coefficients")
    p.add_argument("--curve", help="fixture name or curve JSON file")
    p.add_argument("--g", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--basis", choices=("v", "local"), default="v")

    p = sub.add_parser("tables", parents=[common], help="Airy or Bessel coefficient table")
    p.add_argument("--curve", help="airy or bessel")
    p.add_argument("--gmax", type=int, default=2)
    p.add_argument("--nmax", type=int, default=3)

    p = sub.add_parser("partition", parents=[common], help="free energy and partition function")
    p.add_argument("--curve")
    p.add_argument("--gmax", type=int, default=2)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--with-z", action="store_true", help="also print exp of the free energy")

    p = sub.add_parser("decompose", parents=[common], help="compare the operator decomposition with the recursion")
    p.add_argument("--curve")
    p.add_argument("--gmax", type=int, default=2)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--order", type=int, default=4, help="number of R-matrix coefficients to report")

    p = sub.add_parser("graphs", parents=[common], help="decorated graphs with their weights")
    p.add_argument("--curve")
    p.add_argument("--g", type=int)
    p.add_argument("--n", type=int)

    p = sub.add_parser("legendre", parents=[common], help="two-hard-edge decomposition in global times")
    p.add_argument("action", choices=("verify", "decompose"), nargs="?", default="verify")
    p.add_argument("--gmax", type=int, default=3)
    p.add_argument("--degmax", type=int, default=4)
    p.add_argument("--times", choices=("closed", "global"), default="closed")

    p = sub.add_parser("verify", parents=[common], help="run acceptance suites")
    p.add_argument("suite", choices=tuple(SUITES), nargs="?", default="all")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        status, curve_name, payload = COMMANDS[args.command](args)
        code = 0 if status == "pass" else 1
    except InputError as exc:
        status, curve_name, payload, code = "error", getattr(args, "curve", None), {"message": str(exc)}, 2
    report: dict[str, Any] = {
        "command": args.command,
        "argv": list(argv) if argv is not None else sys.argv[1:],
        "curve": curve_name,
        "status": status,
        "payload": payload,
    }
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    text = json.dumps(report, sort_keys=True, indent=2)
    print(text)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
