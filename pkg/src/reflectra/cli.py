"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 a verification check failed,
3 step budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import verify as suites
from .catalog import CATALOG_MAX_WIDTH, known_cycles_for_width
from .digits import MagnitudeOverflow
from .report import emit_scan_csv, emit_scan_json, emit_verification_report
from .scanner import (
    DEFAULT_CHUNK,
    ScanRange,
    default_workers,
    discovered_cycles,
    first_cyclic_in_width,
    scan,
)
from .trajectory import DEFAULT_MAX_STEPS, StepBudgetExceeded, classify, run_sequence

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="reflectra", description="Reflect-and-add digit iteration: classify, scan, verify.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, range_opts=False):
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--max-steps", type=_positive, default=DEFAULT_MAX_STEPS)
        sp.add_argument("--output", "-o", help="write here instead of standard output")
        if range_opts:
            sp.add_argument("--digits", type=_positive)
            sp.add_argument("--from", dest="lo", type=int)
            sp.add_argument("--to", dest="hi", type=int)
            sp.add_argument("--workers", type=_positive, default=None,
                            help="default: $REFLECTRA_WORKERS or the CPU count")

    for name in ("classify", "sequence"):
        sp = sub.add_parser(name)
        sp.add_argument("value", type=int)
        common(sp)

    sp = sub.add_parser("scan")
    common(sp, range_opts=True)
    sp.add_argument("--no-memo", action="store_true")
    sp.add_argument("--chunk-size", type=_positive, default=DEFAULT_CHUNK)
    sp.add_argument("--reproducible", action="store_true",
                    help="omit elapsed_ms and worker_count from JSON")

    sp = sub.add_parser("cycles")
    common(sp, range_opts=True)

    sp = sub.add_parser("first-cyclic")
    common(sp)
    sp.add_argument("--digits", type=_positive, required=True)

    sp = sub.add_parser("verify")
    sp.add_argument("suite", choices=sorted(suites.SUITES))
    sp.add_argument("--output", "-o")
    sp.add_argument("--through", type=int, default=6, help="table1: widest digit count scanned")
    sp.add_argument("--samples", type=int, default=10**6, help="lemma: random samples at 7-18 digits")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=_positive, default=None)
    return p


def _range(args) -> ScanRange:
    has_digits = args.digits is not None
    has_bounds = args.lo is not None or args.hi is not None
    if has_digits == has_bounds:
        raise UsageError("give either --digits or both --from and --to")
    if has_digits:
        return ScanRange.for_digits(args.digits)
    if args.lo is None or args.hi is None:
        raise UsageError("--from and --to go together")
    return ScanRange(args.lo, args.hi)


def _classification_dict(c) -> dict:
    t = c.limit
    return {
        "input": c.input,
        "limit_class": t.label,
        "kind": t.kind.value,
        "canonical": t.cycle_canonical,
        "period": t.period,
        "mirrored": t.mirrored,
        "iterations": c.iterations,
    }


def _family_dict(f) -> dict:
    return {
        "name": f.name,
        "canonical": f.canonical,
        "period": f.period,
        "digit_width": f.digit_width,
        "formula": str(f.formula),
        "members": list(f.members),
    }


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _run(args) -> tuple[str, int]:
    workers = getattr(args, "workers", None) or default_workers()
    cmd = args.command
    if cmd == "classify":
        c = classify(args.value, args.max_steps)
        if args.format == "csv":
            d = _classification_dict(c)
            keys = list(d)
            vals = ["" if d[k] is None else str(d[k]).lower() if isinstance(d[k], bool) else str(d[k])
                    for k in keys]
            return ",".join(keys) + "\n" + ",".join(vals) + "\n", EXIT_OK
        return _dumps(_classification_dict(c)), EXIT_OK
    if cmd == "sequence":
        t = run_sequence(args.value, args.max_steps)
        if args.format == "csv":
            lines = ["step,value"] + [f"{i},{v}" for i, v in enumerate(t.iterates, 1)]
            return "\n".join(lines) + "\n", EXIT_OK
        return _dumps({
            "start": t.start,
            "iterates": list(t.iterates),
            "tail_length": t.tail_length,
            "terminal": t.terminal.label,
            "period": t.terminal.period,
            "mirrored": t.terminal.mirrored,
        }), EXIT_OK
    if cmd == "scan":
        report = scan(_range(args), workers, memo=not args.no_memo,
                      chunk_size=args.chunk_size, max_steps=args.max_steps)
        if args.format == "csv":
            return emit_scan_csv(report), EXIT_OK
        return emit_scan_json(report, include_runtime=not args.reproducible), EXIT_OK
    if cmd == "cycles":
        rng = _range(args)
        d = rng.digit_width
        found = discovered_cycles(rng, workers, max_steps=args.max_steps)
        out = {"range": {"lo": rng.lo, "hi": rng.hi}, "discovered": [_family_dict(f) for f in found]}
        code = EXIT_OK
        if d is not None and d <= CATALOG_MAX_WIDTH:
            known = known_cycles_for_width(d)
            out["known"] = [_family_dict(f) for f in known]
            out["agree"] = [f.canonical for f in known] == [f.canonical for f in found]
            if not out["agree"]:
                code = EXIT_MISMATCH
        return _dumps(out), code
    if cmd == "first-cyclic":
        return _dumps(first_cyclic_in_width(args.digits, max_steps=args.max_steps)), EXIT_OK
    if cmd == "verify":
        fn = suites.SUITES[args.suite]
        if args.suite == "table1":
            checks = fn(through=args.through, workers=workers)
        elif args.suite == "lemma":
            checks = fn(samples=args.samples, seed=args.seed)
        else:
            checks = fn()
        code = EXIT_OK if all(c.holds for c in checks) else EXIT_MISMATCH
        for c in checks:
            if not c.holds:
                print(f"MISMATCH {c.check_name}: claimed {c.claimed}, computed {c.computed}",
                      file=sys.stderr)
        return emit_verification_report(checks), code
    raise UsageError(f"unknown command {cmd}")


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, code = _run(args)
    except UsageError as e:
        print(f"reflectra: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (MagnitudeOverflow, ValueError) as e:
        print(f"reflectra: {e}", file=sys.stderr)
        return EXIT_USAGE
    except StepBudgetExceeded as e:
        print(f"reflectra: step budget exceeded at input {e.value} ({e.max_steps} steps)", file=sys.stderr)
        return EXIT_BUDGET
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
