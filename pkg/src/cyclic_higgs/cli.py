"""Command-line front end: verify, report, solve.

Exit codes: 0 success, 1 a check failed or the solve did not converge,
2 usage or engine error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import report
from .rootsys import CartanError

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse's default exit code is already 2; keep the usage text
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cyclic-higgs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run exact verification suites")
    v.add_argument("--group", required=True, choices=report.VERIFY_GROUPS)
    v.add_argument("--suite", action="append", choices=sorted(report.SUITES),
                   help="restrict to a suite (repeatable); default: all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json-out", type=Path)

    r = sub.add_parser("report", help="emit summary tables for a group")
    r.add_argument("--group", required=True, choices=report.VERIFY_GROUPS)
    r.add_argument("--json-out", type=Path)

    s = sub.add_parser("solve", help="solve the Toda equations on a flat torus")
    s.add_argument("--group", required=True, choices=("A2", "C2", "G2"))
    s.add_argument("--q-re", type=float, default=1.0)
    s.add_argument("--q-im", type=float, default=0.0)
    s.add_argument("--grid", type=int, default=32)
    s.add_argument("--length", type=float, default=1.0)
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--sign", choices=("auto", "plus", "minus"), default="auto")
    s.add_argument("--max-iters", type=int, default=50)
    s.add_argument("--seed", type=int, default=0, help="unused by the deterministic solver; recorded")
    s.add_argument("--json-out", type=Path)
    s.add_argument("--csv-out", type=Path)
    return p


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def cmd_verify(args) -> int:
    rep = report.run_verify(args.group, args.suite, seed=args.seed)
    _emit(report.dumps(rep), args.json_out)
    for e in rep["entries"]:
        if e["status"] != "pass":
            print(f"FAIL {e['proposition_id']}: {e['quote_anchor']}", file=sys.stderr)
    print(f"{args.group}: {rep['passed']}/{rep['total']} checks pass", file=sys.stderr)
    return EXIT_OK if rep["status"] == "pass" else EXIT_FAIL


def cmd_report(args) -> int:
    _emit(report.dumps(report.run_report(args.group)), args.json_out)
    return EXIT_OK


def cmd_solve(args) -> int:
    from .toda import solver

    if args.grid < 3 or not args.length > 0 or not args.tol > 0:
        print("error: need --grid >= 3, --length > 0, --tol > 0", file=sys.stderr)
        return EXIT_ERROR
    rep, problem, state = solver.solve(args.group, complex(args.q_re, args.q_im), args.grid, args.length,
                                       args.tol, args.sign, max_iters=args.max_iters)
    out = rep.to_json()
    out["q"] = [args.q_re, args.q_im]
    out["grid"] = args.grid
    out["length"] = args.length
    _emit(report.dumps(out), args.json_out)
    if args.csv_out is not None and state is not None:
        with args.csv_out.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "y", *[f"omega_{j}" for j in range(problem.dim)], "residual", "area_density"])
            w.writerows(solver.state_rows(problem, state))
    print(f"solve {args.group}: sign={rep.sign_used} converged={rep.converged} {rep.message}", file=sys.stderr)
    return EXIT_OK if rep.converged else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return {"verify": cmd_verify, "report": cmd_report, "solve": cmd_solve}[args.command](args)
    except (CartanError, ArithmeticError, KeyError, ValueError) as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
