"""Command-line interface.

Subcommands: ``eval`` (measure a model file), ``construct`` (emit a
saturating model as JSON), ``sweep`` (figure-reproduction CSV),
``oracle`` (exact LP maximum of S), ``verify`` (run the acceptance
suite).

Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
3 infeasible parameters.  Every error path prints a single
machine-parseable line ``error: <kind>: <message>`` to stderr.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional

from .bounds import (
    InfeasibleParamsError,
    ModelParams,
    bound_four_param,
    bound_two_param,
    check_inequality_chain,
)
from .constructors import banik_model, four_param_model, hall_model, interp_model, two_param_model
from .info import mutual_information
from .measures import chsh_s, measurement_dependence
from .model import (
    HiddenVariableModel,
    InvalidModelError,
    ModelError,
    load_model,
    model_to_json,
    validate_model,
)
from .oracle import max_s_four_param, max_s_two_param
from .sweeps import FIGURE_IDS, render_csv, render_json, sweep_figure
from .verify import run_verification

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


class CliError(Exception):
    def __init__(self, kind: str, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.kind = kind
        self.code = code


class _Parser(argparse.ArgumentParser):
    """argparse with the project's single-line error contract."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: usage: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fail(kind: str, message: str, code: int = EXIT_USAGE) -> CliError:
    return CliError(kind, message, code)


def _parse_param(text: Optional[str], name: str) -> Optional[Fraction]:
    """Accept decimal or p/q syntax; both parse to exact rationals."""
    if text is None:
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise _fail("usage", f"cannot parse {name} = {text!r} (use decimal or p/q)") from None


def _require(value, name: str):
    if value is None:
        raise _fail("usage", f"missing required flag --{name}")
    return value


def _write_output(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fp:
            fp.write(text)


def _fmt_num(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return format(float(value), ".10g")


def _saturates(s, bound, exact: bool) -> bool:
    if exact:
        return s == bound
    return abs(float(s) - float(bound)) <= 1e-9


def cmd_eval(args) -> int:
    try:
        with open(args.model, "r", encoding="utf-8") as fp:
            model = load_model(fp)
    except OSError as exc:
        raise _fail("parse", f"cannot read {args.model}: {exc}")
    except ModelError as exc:
        raise _fail("parse", str(exc))

    report_v = validate_model(model)
    if not report_v.ok:
        for violation in report_v.violations:
            print(f"violation: {violation.message}", file=sys.stderr)
        raise _fail("validation", f"{len(report_v.violations)} invariant violation(s) in {args.model}")

    s = chsh_s(model)
    dep = measurement_dependence(model)
    info = mutual_information(model)
    params = ModelParams(dep.m1, dep.m2, dep.mhat1, dep.mhat2)
    two = bound_two_param(dep.m1, dep.m2)
    four = bound_four_param(params)
    exact = model.is_exact

    if args.format == "json":
        import json

        payload = {
            "label": model.label,
            "lambda_count": model.lambda_count,
            "chsh_s": _fmt_num(s),
            "m1": _fmt_num(dep.m1),
            "m2": _fmt_num(dep.m2),
            "m": _fmt_num(dep.m),
            "mhat1": _fmt_num(dep.mhat1),
            "mhat2": _fmt_num(dep.mhat2),
            "m1_given": {v: _fmt_num(x) for v, x in sorted(dep.m1_given.items())},
            "m2_given": {u: _fmt_num(x) for u, x in sorted(dep.m2_given.items())},
            "f": _fmt_num(dep.f),
            "f1": _fmt_num(dep.f1),
            "f2": _fmt_num(dep.f2),
            "mutual_information_bits": _fmt_num(info),
            "bound_two_param": _fmt_num(two),
            "bound_four_param": _fmt_num(four),
            "saturates_two_param": _saturates(s, two, exact),
            "saturates_four_param": _saturates(s, four, exact),
            "inequality_chain_ok": check_inequality_chain(dep),
        }
        print(json.dumps(payload, indent=2))
        return EXIT_OK

    print(f"model: {model.label or args.model} ({model.lambda_count} hidden-variable values)")
    print(f"S = {_fmt_num(s)}")
    print(f"M1 = {_fmt_num(dep.m1)}   M2 = {_fmt_num(dep.m2)}   M = {_fmt_num(dep.m)}")
    print(f"Mhat1 = {_fmt_num(dep.mhat1)}   Mhat2 = {_fmt_num(dep.mhat2)}")
    print(
        "M1[v]: "
        + "  ".join(f"{v}: {_fmt_num(x)}" for v, x in sorted(dep.m1_given.items()))
    )
    print(
        "M2[u]: "
        + "  ".join(f"{u}: {_fmt_num(x)}" for u, x in sorted(dep.m2_given.items()))
    )
    print(f"F = {_fmt_num(dep.f)}   F1 = {_fmt_num(dep.f1)}   F2 = {_fmt_num(dep.f2)}")
    print(f"mutual information = {_fmt_num(info)} bits")
    print(f"two-param bound at (M1, M2): {_fmt_num(two)}"
          f"   saturates: {'yes' if _saturates(s, two, exact) else 'no'}")
    print(f"four-param bound at measured params: {_fmt_num(four)}"
          f"   saturates: {'yes' if _saturates(s, four, exact) else 'no'}")
    print(f"inequality chain: {'ok' if check_inequality_chain(dep) else 'BROKEN'}")
    return EXIT_OK


def _construct_model(args) -> HiddenVariableModel:
    family = args.family
    try:
        if family == "two-param":
            return two_param_model(
                _require(_parse_param(args.m1, "m1"), "m1"),
                _require(_parse_param(args.m2, "m2"), "m2"),
            )
        if family == "four-param":
            params = ModelParams(
                _require(_parse_param(args.m1, "m1"), "m1"),
                _require(_parse_param(args.m2, "m2"), "m2"),
                _parse_param(args.mhat1, "mhat1"),
                _parse_param(args.mhat2, "mhat2"),
            )
            return four_param_model(params)
        if family == "interp":
            return interp_model(
                _require(_parse_param(args.m1, "m1"), "m1"),
                _require(_parse_param(args.m2, "m2"), "m2"),
            )
        if family == "hall":
            return hall_model(_require(_parse_param(args.p, "p"), "p"))
        if family == "banik":
            return banik_model(_require(_parse_param(args.p, "p"), "p"))
    except InfeasibleParamsError as exc:
        raise _fail("infeasible", str(exc), EXIT_INFEASIBLE)
    except ValueError as exc:
        raise _fail("infeasible", str(exc), EXIT_INFEASIBLE)
    raise _fail("usage", f"unknown family {family!r}")


def cmd_construct(args) -> int:
    model = _construct_model(args)
    _write_output(model_to_json(model), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        grids = sweep_figure(args.figure, jobs=args.jobs)
    except ValueError as exc:
        raise _fail("usage", str(exc))
    if args.format == "json":
        _write_output(render_json(args.figure, grids), args.out)
    else:
        _write_output(render_csv(args.figure, grids), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    m1 = _require(_parse_param(args.m1, "m1"), "m1")
    m2 = _require(_parse_param(args.m2, "m2"), "m2")
    try:
        if args.family == "two-param":
            result = max_s_two_param(m1, m2)
        else:
            params = ModelParams(
                m1, m2, _parse_param(args.mhat1, "mhat1"), _parse_param(args.mhat2, "mhat2")
            )
            result = max_s_four_param(params)
    except InfeasibleParamsError as exc:
        raise _fail("infeasible", str(exc), EXIT_INFEASIBLE)
    except ValueError as exc:
        raise _fail("infeasible", str(exc), EXIT_INFEASIBLE)

    print(f"s_max = {result.s_max} = {format(float(result.s_max), '.10g')}")
    if result.branch is not None:
        attained = ", ".join(f"(v={v}, u={u})" for v, u in result.attaining_branches)
        print(f"attained by branch(es): {attained}")
    if args.witness or args.out:
        _write_output(model_to_json(result.witness), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    summary = run_verification(level=args.level, seed=args.seed, jobs=args.jobs)
    total_pass = total_fail = 0
    for section in summary.sections:
        status = "PASS" if section.ok else "FAIL"
        print(f"[{status}] {section.name}: {section.passed} passed, {section.failed} failed")
        for message in section.failures:
            print(f"       - {message}")
        total_pass += section.passed
        total_fail += section.failed
    print(
        f"verify ({summary.level}): {total_pass} checks passed, {total_fail} failed, "
        f"{len(summary.sections)} sections"
    )
    if not summary.ok:
        print("error: verify: one or more sections failed", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="mdbell",
        description="Measurement-dependent locally causal models of the CHSH test.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_eval = sub.add_parser("eval", help="measure a model file")
    p_eval.add_argument("model", help="path to a model JSON file")
    p_eval.add_argument("--format", choices=("text", "json"), default="text")
    p_eval.set_defaults(func=cmd_eval)

    p_con = sub.add_parser("construct", help="build a saturating model")
    p_con.add_argument(
        "family", choices=("two-param", "four-param", "interp", "hall", "banik")
    )
    p_con.add_argument("--m1")
    p_con.add_argument("--m2")
    p_con.add_argument("--mhat1")
    p_con.add_argument("--mhat2")
    p_con.add_argument("--p")
    p_con.add_argument("--out")
    p_con.set_defaults(func=cmd_construct)

    p_sweep = sub.add_parser("sweep", help="emit figure-reproduction data")
    p_sweep.add_argument("--figure", required=True, choices=FIGURE_IDS)
    p_sweep.add_argument("--out")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--jobs", type=int, default=None)
    p_sweep.set_defaults(func=cmd_sweep)

    p_oracle = sub.add_parser("oracle", help="exact LP maximum of S")
    p_oracle.add_argument("family", choices=("two-param", "four-param"))
    p_oracle.add_argument("--m1")
    p_oracle.add_argument("--m2")
    p_oracle.add_argument("--mhat1")
    p_oracle.add_argument("--mhat2")
    p_oracle.add_argument("--witness", action="store_true", help="print the witness model")
    p_oracle.add_argument("--out", help="write the witness model to a file")
    p_oracle.set_defaults(func=cmd_oracle)

    p_verify = sub.add_parser("verify", help="run the verification suite")
    p_verify.add_argument("--level", choices=("quick", "full"), default="quick")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--jobs", type=int, default=None)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return exc.code
    except InvalidModelError as exc:
        print(f"error: validation: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:  # e.g. piping into head
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
