"""Command-line front end."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from . import __version__
from .config import RunConfig, load_config
from .engine import Enumerator
from .exceptions import EXIT_OK, InvariantBreachError, LucasLehmerError
from .forms import build_form, form_target, special_quartic_form
from .primdiv import direct_check, emit_tables, reconstruct
from .smalln import SMALL_INDICES, solve_case
from .thue import solve_thue

log = logging.getLogger(__name__)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, help="working precision in decimal digits")
    common.add_argument("--box", type=int, help="bound on max(|x|, |y|) for scans")
    common.add_argument("--threads", type=int, help="worker threads")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--check-direct", action="store_true", help="verify candidates from u_n")
    common.add_argument("--dump-bases", action="store_true", help="log LLL bases at DEBUG level")
    common.add_argument("--config", type=Path, help="key = value configuration file")
    common.add_argument("-o", "--output", type=Path, help="write results to this file")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    parser = argparse.ArgumentParser(
        prog="lucaslehmer",
        description="Lucas and Lehmer sequences whose n-th term has no primitive divisor.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    forms = sub.add_parser("forms", parents=[common], help="print the binary forms F_n")
    forms.add_argument("n", type=int, nargs="+")

    solve = sub.add_parser("solve", parents=[common], help="solve every equation of one index")
    solve.add_argument("n", type=int)
    solve.add_argument("--m", type=int, help="restrict to one right-hand side")

    thue = sub.add_parser("thue", parents=[common], help="Thue ledger of one catalogued form")
    thue.add_argument("n", type=int, nargs="?", help="index of F_n")
    thue.add_argument("--n", type=int, dest="index", help="same as the positional index")
    thue.add_argument("--quartic", action="store_true", help="the n = 12, k = -2 quartic")

    sub.add_parser("tables", parents=[common], help="build the Lucas and Lehmer tables")

    scan = sub.add_parser("scan", parents=[common], help="bounded search beyond the tables")
    scan.add_argument("nmin", type=int)
    scan.add_argument("nmax", type=int)

    sub.add_parser("selftest", parents=[common], help="run the quick cross-checks")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    base = load_config(args.config) if args.config else RunConfig()
    overrides: dict[str, Any] = {}
    if args.prec is not None:
        overrides["precision"] = args.prec
    if args.box is not None:
        overrides["box"] = args.box
    if args.threads is not None:
        overrides["threads"] = args.threads
    if args.json:
        overrides["output_format"] = "json"
    if args.check_direct:
        overrides["check_direct"] = True
    if args.dump_bases:
        overrides["dump_bases"] = True
    if args.output is not None:
        overrides["output"] = args.output
    return base.merged(**overrides)


def _json(value: Any) -> str:
    return json.dumps(value, indent=2, sort_keys=True, default=str)


def _cmd_forms(args: argparse.Namespace, config: RunConfig) -> Any:
    forms = [build_form(n) for n in args.n]
    if config.output_format == "json":
        return [{"n": f.n, "degree": f.degree, "coeffs": list(f.coeffs)} for f in forms]
    return "\n".join(f.dump() for f in forms)


def _solve_text(report: dict[str, Any]) -> str:
    lines = [f"n = {report['n']} via {report['route']}"]
    if "core" in report:
        lines[0] += f" from n = {report['core']}"
    ledger = report.get("ledger")
    if ledger:
        lines.append("ledger: " + ", ".join(f"{k}={v}" for k, v in ledger.items()))
    for sol in report["solutions"]:
        lines.append(f"  F({sol['x']}, {sol['y']}) = {sol['m']}  [{sol['provenance']}]")
    for cand in report["candidates"]:
        lines.append(f"  {cand['kind']:7s} {cand['pair']}")
    for item in report["filtered"]:
        lines.append(f"  dropped ({item['x']}, {item['y']}): {item['reason']}")
    return "\n".join(lines)


def _cmd_solve(args: argparse.Namespace, config: RunConfig) -> Any:
    with Enumerator(config) as enum:
        report = enum.solve(args.n, args.m)
    return report if config.output_format == "json" else _solve_text(dict(report))


def _cmd_thue(args: argparse.Namespace, config: RunConfig) -> Any:
    if args.quartic:
        form = special_quartic_form()
    elif args.index is not None or args.n is not None:
        form = build_form(args.index if args.index is not None else args.n)
    else:
        raise argparse.ArgumentTypeError("thue needs an index or --quartic")
    result = solve_thue(form, config)
    record = {
        "n": form.n,
        "kind": form.kind,
        "ledger": result.ledger.as_record(),
        "solutions": [{"x": x, "y": y, "m": m} for x, y, m in result.all_pairs()],
    }
    if config.output_format == "json":
        return record
    ledger = "\n".join(f"{k:8s} {v}" for k, v in record["ledger"].items())
    sols = "\n".join(f"  F({x}, {y}) = {m}" for x, y, m in result.all_pairs())
    return f"{ledger}\n{sols}"


def _cmd_tables(args: argparse.Namespace, config: RunConfig) -> Any:
    with Enumerator(config) as enum:
        lucas, lehmer = enum.tables()
    if config.output_format == "json":
        return {"lucas": lucas.as_dict(), "lehmer": lehmer.as_dict()}
    return f"Lucas\n{lucas.to_text()}\n\nLehmer\n{lehmer.to_text()}"


def _cmd_scan(args: argparse.Namespace, config: RunConfig) -> Any:
    with Enumerator(config) as enum:
        report = enum.scan(args.nmin, args.nmax)
    if config.output_format == "json":
        return report
    if not report["hits"]:
        return (
            f"scan {report['nmin']}..{report['nmax']} box {report['box']}: "
            f"no candidates ({report['checked']} pairs checked)"
        )
    lines = [f"scan {report['nmin']}..{report['nmax']} box {report['box']}: candidates found"]
    for n, pairs in sorted(report["hits"].items()):
        lines.append(f"  n = {n}: {pairs}")
    return "\n".join(lines)


def _cmd_selftest(args: argparse.Namespace, config: RunConfig) -> Any:
    checks: list[str] = []

    def record(name: str, ok: bool) -> None:
        if not ok:
            raise InvariantBreachError(f"selftest {name} failed", "selftest", {"check": name})
        checks.append(name)

    record("forms", build_form(7).dump() == "7 3 1 1 -2 -1")
    fib = reconstruct(3, -1)
    twelve, thirteen = direct_check(fib, 12), direct_check(fib, 13)
    record("fibonacci", twelve.u_n == 144 and not twelve.has_primitive_divisor and thirteen.primes == (233,))
    for n in SMALL_INDICES:
        for k in sorted(form_target(n).rhs_values):
            if (n, k) != (12, -2):
                solve_case(n, k, config=config)
    record("quartics", True)
    with Enumerator(config) as enum:
        report = enum.solve(7)
    ledger = report["ledger"]
    record("thue-7", (ledger["X4"], ledger["Y4"]) == (9, 9))
    emit_tables({7: [(s["x"], s["y"]) for s in report["solutions"]]}, check_direct=True)
    record("tables-7", True)
    if config.output_format == "json":
        return {"passed": checks}
    return "\n".join(f"ok  {name}" for name in checks)


_COMMANDS = {
    "forms": _cmd_forms,
    "solve": _cmd_solve,
    "thue": _cmd_thue,
    "tables": _cmd_tables,
    "scan": _cmd_scan,
    "selftest": _cmd_selftest,
}


def _emit(result: Any, config: RunConfig) -> None:
    text = result if isinstance(result, str) else _json(result)
    if config.output is not None:
        config.output.write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code.

    Exit codes: 0 on success, 2 on an invariant breach, 3 on unsupported input.
    """
    args = _parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        config = _config(args)
        _emit(_COMMANDS[args.command](args, config), config)
    except LucasLehmerError as exc:
        diagnostic: dict[str, Any] = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, InvariantBreachError):
            diagnostic["check"] = exc.check
            diagnostic["details"] = exc.details
        sys.stderr.write(_json(diagnostic) + "\n")
        return exc.exit_code
    except argparse.ArgumentTypeError as exc:
        sys.stderr.write(f"lucaslehmer: {exc}\n")
        return 3
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
