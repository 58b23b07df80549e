"""Command-line front end.

Subcommands: digits, predict, compute, verify, classify, child, bench.
Exit code 0 means success with all checks confirmed, 2 means the checks ran
and at least one prediction was falsified, 1 is an operational failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import arith, cfe, generations, predict, verify
from .digits import DEFAULT_DIGIT_BUDGET, DigitBudgetError, digits_up_to

ENV_BUDGET = "CHAMPCFE_MAX_DIGITS"

DEEP_HWM = 9  # levels from here up need an explicit opt-in
MAX_VERIFY_HWM = 10
MAX_COMPUTE_HWM = 11


@dataclass
class RunConfig:
    max_c10_digits: int = DEFAULT_DIGIT_BUDGET
    guard_digits: int = 10
    output_format: str = "text"
    output_path: Path | None = None
    compute_error: bool = False
    deep: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        budget = int(os.environ.get(ENV_BUDGET, DEFAULT_DIGIT_BUDGET))
        if getattr(args, "max_digits", None):
            budget = args.max_digits
        return cls(
            max_c10_digits=budget,
            output_format=getattr(args, "format", "text"),
            output_path=Path(args.out) if getattr(args, "out", None) else None,
            compute_error=getattr(args, "error", False),
            deep=getattr(args, "deep", False),
        )


def _emit(text: str, config: RunConfig) -> None:
    if config.output_path is not None:
        config.output_path.write_text(text)
    else:
        sys.stdout.write(text)


def _require_deep(n: int, config: RunConfig, ceiling: int, what: str) -> None:
    if n > ceiling:
        raise ValueError(
            f"{what} for HWM #{n} is beyond the desk-scale budget (max {ceiling})"
        )
    if n >= DEEP_HWM and not config.deep:
        raise ValueError(
            f"{what} for HWM #{n} takes minutes; pass --deep to confirm"
        )


def cmd_digits(args: argparse.Namespace, config: RunConfig) -> int:
    prefix = digits_up_to(args.position, max_digits=config.max_c10_digits)
    _emit(prefix.digits + "\n", config)
    return 0


def _prediction_record(n: int, child: bool) -> dict:
    if n < 4:
        raise ValueError("predictions start at HWM #4")
    if child and n < 6:
        raise ValueError("child predictions start after HWM #6")
    err = predict.child_error_profile(n) if child else predict.error_profile(n)
    mant = err.digits[0] + ("." + err.digits[1:] if len(err.digits) > 1 else "")
    record = {
        "hwm": n,
        "ncd": predict.ncd(n),
        "error_mantissa": ("-" if err.sign < 0 else "") + mant,
        "error_exponent": err.exponent,
        "denominator_sci": str(
            predict.denominator_sci(n) if n >= 5 else predict.SciDecimal(+1, "81", 1)
        ),
        "hwm_length": predict.hwm_length(n),
        "failing_integer": predict.failing_integer(n)[0],
        "fails_as": predict.failing_integer(n)[1],
        "child_length": None,
        "child_shape": None,
    }
    if child:
        shape = predict.child_denominator_shape(n)
        record["child_length"] = predict.child_length(n - 1)
        record["child_shape"] = {
            "preamble_length": shape.preamble_length,
            "nines_count": shape.nines_count,
            "penultimate_length": shape.penultimate_length,
            "zeroes_count": shape.zeroes_count,
            "total_length": shape.total_length,
        }
    return record


def _format_record(record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2) + "\n"
    if fmt == "csv":
        keys = list(record)
        row = []
        for k in keys:
            v = record[k]
            if isinstance(v, dict):
                v = "/".join(str(x) for x in v.values())
            row.append("" if v is None else str(v))
        return ",".join(keys) + "\n" + ",".join(row) + "\n"
    width = max(len(k) for k in record)
    lines = [f"{k:<{width}}  {record[k]}" for k in record if record[k] is not None]
    return "\n".join(lines) + "\n"


def cmd_predict(args: argparse.Namespace, config: RunConfig) -> int:
    record = _prediction_record(args.hwm, args.child)
    _emit(_format_record(record, config.output_format), config)
    return 0


def cmd_compute(args: argparse.Namespace, config: RunConfig) -> int:
    n = args.hwm
    _require_deep(n, config, MAX_COMPUTE_HWM, "coefficient computation")
    prefix = digits_up_to(cfe.required_prefix_position(n), max_digits=config.max_c10_digits)
    num, den = cfe.hwm_convergent(n, prefix)
    terms = cfe.cfe_extract(num, den, final_index_parity="odd")
    with open(args.out, "w", newline="") as fp:
        cfe.write_coefficients(terms, fp)
    if args.emit_numerator:
        sys.stdout.write(arith.to_digits(num) + "\n")
    return 0


def _profile_text(profile_dict: dict) -> str:
    lines = []
    for key, value in profile_dict.items():
        if key == "checks":
            continue
        lines.append(f"{key}: {value}")
    lines.append("checks:")
    for c in profile_dict["checks"]:
        mark = "ok " if c["ok"] else "FAIL"
        lines.append(
            f"  [{mark}] {c['field']}: predicted={c['predicted']} observed={c['observed']}"
        )
    return "\n".join(lines) + "\n"


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    n = args.hwm
    _require_deep(n, config, MAX_VERIFY_HWM, "verification")
    profile = verify.verify_hwm(
        n,
        compute_error=args.error,
        check_next_hwm=not args.no_next,
        guard_digits=config.guard_digits,
        max_digits=config.max_c10_digits,
    )
    payload = profile.as_dict()
    if config.output_format == "json":
        _emit(json.dumps(payload, indent=2) + "\n", config)
    else:
        _emit(_profile_text(payload), config)
    return 0 if profile.status == verify.CONFIRMED else 2


def _load_thresholds(path: str | None) -> generations.ScanThresholds | None:
    if path is None:
        return None
    with open(path) as fp:
        raw = json.load(fp)
    return generations.ScanThresholds({int(k): int(v) for k, v in raw.items()})


def cmd_classify(args: argparse.Namespace, config: RunConfig) -> int:
    with open(args.coefficients) as fp:
        lengths = cfe.coefficient_digit_lengths(fp)
    thresholds = _load_thresholds(args.thresholds)
    entries = generations.classify(lengths, thresholds=thresholds)
    fmt = config.output_format
    if fmt == "json":
        payload = [
            {
                "index": e.coefficient_index,
                "length": e.digit_length,
                "generation": e.generation,
            }
            for e in entries
        ]
        _emit(json.dumps(payload, indent=2) + "\n", config)
    elif fmt == "csv":
        rows = ["index,length,generation"]
        rows += [
            f"{e.coefficient_index},{e.digit_length},{e.generation}" for e in entries
        ]
        _emit("\n".join(rows) + "\n", config)
    else:
        rows = [
            f"{e.coefficient_index:>8}  {e.digit_length:>12}  gen {e.generation}"
            for e in entries
        ]
        _emit("\n".join(rows) + "\n", config)
    scan = generations.child_positions(entries)
    if scan.violations:
        for v in scan.violations:
            print(f"violation: {v}", file=sys.stderr)
        return 2
    return 0


def cmd_child(args: argparse.Namespace, config: RunConfig) -> int:
    with open(args.coefficients) as fp:
        terms = cfe.read_coefficients(fp)
    profile = verify.verify_child(
        args.coefficient_index,
        terms,
        guard_digits=config.guard_digits,
        max_digits=config.max_c10_digits,
    )
    payload = profile.as_dict()
    if config.output_format == "json":
        _emit(json.dumps(payload, indent=2) + "\n", config)
    else:
        _emit(_profile_text(payload), config)
    return 0 if profile.status == verify.CONFIRMED else 2


def cmd_bench(args: argparse.Namespace, config: RunConfig) -> int:
    n_max = args.max_hwm
    _require_deep(n_max, config, MAX_COMPUTE_HWM, "benchmarking")
    rows = []
    previous = None
    for n in range(4, n_max + 1):
        start = time.perf_counter()
        p = cfe.required_prefix_position(n)
        need = p
        if args.error:
            err = predict.error_profile(n)
            need = max(need, -err.exponent + len(err.digits) + 1 + config.guard_digits)
        truth = digits_up_to(need, max_digits=config.max_c10_digits)
        num, den = cfe.hwm_convergent(n, truth)
        terms = cfe.cfe_extract(num, den, final_index_parity="odd")
        if args.error:
            err_obs = verify.measure_error(
                num, den, truth, mantissa_digits=n - 2, guard_digits=config.guard_digits
            )
        elapsed = time.perf_counter() - start
        total = sum(arith.digit_count(t) for t in terms)
        ratio = "" if previous in (None, 0.0) else f"{elapsed / previous:8.1f}x"
        rows.append(
            f"{n:>3} {p + 1:>12} {need + 1:>12} {total:>12} {elapsed:>10.3f}s {ratio}"
        )
        previous = elapsed
    header = (
        f"{'N':>3} {'c10 digits':>12} {'peak digits':>12} {'cfe digits':>12} "
        f"{'time':>11} {'ratio':>9}"
    )
    note = (
        "# reference scaling: roughly 12x memory and 24x time per level\n"
    )
    _emit(note + header + "\n" + "\n".join(rows) + "\n", config)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="champcfe",
        description="Champernowne base-10 continued-fraction toolkit",
    )
    parser.add_argument(
        "--max-digits",
        type=int,
        default=None,
        help=f"digit budget override (also env {ENV_BUDGET})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("digits", help="write constant digits up to a position")
    p.add_argument("--position", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_digits)

    p = sub.add_parser("predict", help="closed-form predictions for a level")
    p.add_argument("--hwm", type=int, required=True)
    p.add_argument("--child", action="store_true")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("compute", help="compute coefficients up to a level")
    p.add_argument("--hwm", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--emit-numerator", action="store_true")
    p.add_argument("--deep", action="store_true")
    p.set_defaults(handler=cmd_compute)

    p = sub.add_parser("verify", help="verify the predictions for a level")
    p.add_argument("--hwm", type=int, required=True)
    p.add_argument("--error", action="store_true", help="measure the error too")
    p.add_argument("--no-next", action="store_true", help="skip the next-level check")
    p.add_argument("--deep", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("classify", help="assign generations to coefficients")
    p.add_argument("--coefficients", required=True)
    p.add_argument("--thresholds", default=None)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("child", help="verify a child convergent from coefficients")
    p.add_argument("--coefficient-index", type=int, required=True)
    p.add_argument("--coefficients", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_child)

    p = sub.add_parser("bench", help="time the pipeline per level")
    p.add_argument("--max-hwm", type=int, required=True)
    p.add_argument("--error", action="store_true")
    p.add_argument("--deep", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    config = RunConfig.from_args(args)
    try:
        return args.handler(args, config)
    except generations.AnchorError as exc:
        # the prediction failed against the data: a result, not a malfunction
        print(f"violation: {exc}", file=sys.stderr)
        return 2
    except (
        DigitBudgetError,
        cfe.PrecisionError,
        verify.InsufficientTruthError,
        ValueError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
