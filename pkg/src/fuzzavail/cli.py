"""Command-line front end.

Subcommands: ``eval`` (one crisp evaluation), ``surface`` and ``slice``
(CSV sweeps), ``contour`` (iso-lines from a grid CSV), ``rulebase check``
and ``rulebase fmt`` (rule-base file tooling), and ``ingest`` (event log
to MTBF/MTR/kd). Data goes to stdout or the requested file; diagnostics
and warnings go to stderr. Exit codes: 0 success, 1 validation or
diagnostic failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings

from .contours import contours, write_contours_json, write_contours_text
from .dsl import Diagnostic, format_number, parse, serialize, validate
from .events import compute_stats, parse_events
from .fuzzy import DomainClampWarning, FuzzyError, InferenceConfig, REFERENCE_CONFIG, infer
from .model import (
    AvailabilityInputs,
    ReliabilityStats,
    achieved_availability,
    builtin_rulebase,
    global_availability,
    read_grid_csv,
    slice_at,
    surface,
    write_grid_csv,
    write_slice_csv,
)

RULEBASE_ENV = "FUZZAVAIL_RULEBASE"


class CliError(Exception):
    """Validation failure surfaced as exit status 1."""


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            status = args.func(args, parser)
        except (CliError, FuzzyError, ValueError, OSError) as exc:
            _flush_warnings(caught)
            print(f"error: {exc}", file=sys.stderr)
            return 1
    _flush_warnings(caught)
    return status


def _flush_warnings(caught) -> None:
    for entry in caught:
        print(f"warning: {entry.message}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzavail",
        description="Quantify how security posture degrades system availability.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate the combined coefficient for one (kd, ks) pair")
    p_eval.add_argument("--kd", type=float, help="achieved availability fraction in [0, 1]")
    p_eval.add_argument("--mtbf", type=float, help="mean time between failures, hours")
    p_eval.add_argument("--mtr", type=float, help="mean repair time, hours")
    p_eval.add_argument("--ks", type=float, required=True, help="security level fraction in [0, 1]")
    p_eval.add_argument("--rulebase", help="rule-base file overriding the built-in model")
    p_eval.add_argument("--config", help="key=value inference config file")
    p_eval.add_argument("--percent", action="store_true", help="print a percentage instead of a fraction")
    p_eval.set_defaults(func=cmd_eval)

    p_surface = sub.add_parser("surface", help="sweep the unit square and write a kd,ks,ka CSV")
    p_surface.add_argument("--nx", type=int, default=101, help="kd sample count (default 101)")
    p_surface.add_argument("--ny", type=int, default=101, help="ks sample count (default 101)")
    p_surface.add_argument("--out", required=True, help="output CSV path")
    p_surface.add_argument("--rulebase", help="rule-base file overriding the built-in model")
    p_surface.add_argument("--config", help="key=value inference config file")
    p_surface.set_defaults(func=cmd_surface)

    p_slice = sub.add_parser("slice", help="sweep kd at a fixed security level and write a kd,ka CSV")
    p_slice.add_argument("--ks", type=float, required=True, help="fixed security level in [0, 1]")
    p_slice.add_argument("--n", type=int, default=101, help="kd sample count (default 101)")
    p_slice.add_argument("--out", required=True, help="output CSV path")
    p_slice.add_argument("--rulebase", help="rule-base file overriding the built-in model")
    p_slice.add_argument("--config", help="key=value inference config file")
    p_slice.set_defaults(func=cmd_slice)

    p_contour = sub.add_parser("contour", help="extract iso-level polylines from a grid CSV")
    p_contour.add_argument("--grid", required=True, help="grid CSV produced by 'surface'")
    p_contour.add_argument("--levels", required=True, help="comma-separated levels, e.g. 0.3,0.5,0.7")
    p_contour.add_argument("--out", required=True, help="output path")
    p_contour.add_argument("--format", choices=("text", "json"), default="text",
                           help="output encoding (default text)")
    p_contour.set_defaults(func=cmd_contour)

    p_rulebase = sub.add_parser("rulebase", help="rule-base file tooling")
    rb_sub = p_rulebase.add_subparsers(dest="rulebase_command", required=True)
    p_check = rb_sub.add_parser("check", help="parse and lint a rule-base file")
    p_check.add_argument("path")
    p_check.set_defaults(func=cmd_rulebase_check)
    p_fmt = rb_sub.add_parser("fmt", help="rewrite a rule-base file in canonical form")
    p_fmt.add_argument("path")
    p_fmt.set_defaults(func=cmd_rulebase_fmt)

    p_ingest = sub.add_parser("ingest", help="compute MTBF/MTR/kd from an event CSV")
    p_ingest.add_argument("--events", required=True, help="timestamp,kind CSV path")
    p_ingest.add_argument("--start", type=float, help="observation window start, hours")
    p_ingest.add_argument("--end", type=float, help="observation window end, hours")
    p_ingest.set_defaults(func=cmd_ingest)

    return parser


def _clamp_unit(value: float, name: str) -> float:
    if value != value:
        raise CliError(f"{name} must be a number, got NaN")
    if value < 0.0 or value > 1.0:
        warnings.warn(f"{name}={value:g} outside [0, 1], clamped", DomainClampWarning, stacklevel=2)
        return min(max(value, 0.0), 1.0)
    return value


def _load_rulebase(path: str | None):
    """Rule base from --rulebase, the environment fallback, or None (built-in)."""
    if path is None:
        path = os.environ.get(RULEBASE_ENV) or None
    if path is None:
        return None
    with open(path, "r", encoding="utf-8") as fh:
        result = parse(fh.read())
    if result.rulebase is None:
        _print_diagnostics(path, result.diagnostics)
        raise CliError(f"{path}: rule base has errors")
    return result.rulebase


def _load_config(path: str | None) -> InferenceConfig:
    if path is None:
        return REFERENCE_CONFIG
    kwargs = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise CliError(f"{path}:{line_no}: expected key=value")
            key = key.strip().lower()
            value = value.strip().lower()
            if key == "resolution":
                try:
                    kwargs[key] = int(value)
                except ValueError:
                    raise CliError(f"{path}:{line_no}: resolution must be an integer") from None
            elif key in ("tnorm", "implication", "aggregation", "defuzz"):
                if key == "defuzz" and value == "mean-of-maxima":
                    value = "mom"
                kwargs[key] = value
            else:
                raise CliError(f"{path}:{line_no}: unknown config key {key!r}")
    return InferenceConfig(**kwargs)


def _print_diagnostics(path: str, diagnostics: list[Diagnostic]) -> None:
    for d in diagnostics:
        print(f"{path}:{d.location.line}:{d.location.column}: {d.severity}[{d.code}]: {d.message}",
              file=sys.stderr)


def cmd_eval(args, parser) -> int:
    has_kd = args.kd is not None
    has_stats = args.mtbf is not None or args.mtr is not None
    if has_kd and has_stats:
        parser.error("--kd and --mtbf/--mtr are mutually exclusive")
    if not has_kd and (args.mtbf is None or args.mtr is None):
        parser.error("provide --kd, or both --mtbf and --mtr")
    if has_kd:
        kd = args.kd
    else:
        kd = achieved_availability(ReliabilityStats(mtbf=args.mtbf, mtr=args.mtr, failure_count=1))
    kd = _clamp_unit(kd, "kd")
    ks = _clamp_unit(args.ks, "ks")
    rulebase = _load_rulebase(args.rulebase)
    config = _load_config(args.config)
    if rulebase is None:
        kg = global_availability(AvailabilityInputs(kd, ks), config)
    else:
        if len(rulebase.outputs) != 1:
            raise CliError("eval needs a rule base with exactly one output variable")
        kg = infer(rulebase, {"kd": kd, "ks": ks}, config)[rulebase.outputs[0].name]
    print(f"{kg * 100.0:.4f}" if args.percent else f"{kg:.6f}")
    return 0


def cmd_surface(args, parser) -> int:
    if args.nx < 2 or args.ny < 2:
        parser.error("--nx and --ny must be at least 2")
    grid = surface(args.nx, args.ny, _load_config(args.config), rulebase=_load_rulebase(args.rulebase))
    write_grid_csv(grid, args.out)
    print(f"wrote {args.out}: {args.nx * args.ny} rows")
    return 0


def cmd_slice(args, parser) -> int:
    if args.n < 2:
        parser.error("--n must be at least 2")
    ks = _clamp_unit(args.ks, "ks")
    slc = slice_at(ks, args.n, _load_config(args.config), rulebase=_load_rulebase(args.rulebase))
    write_slice_csv(slc, args.out)
    print(f"wrote {args.out}: {args.n} rows")
    return 0


def cmd_contour(args, parser) -> int:
    try:
        levels = [float(part) for part in args.levels.split(",") if part.strip()]
    except ValueError:
        parser.error(f"--levels must be comma-separated numbers, got {args.levels!r}")
    if not levels:
        parser.error("--levels must name at least one level")
    grid = read_grid_csv(args.grid)
    records = contours(grid, levels)
    if args.format == "json":
        write_contours_json(records, args.out)
    else:
        write_contours_text(records, args.out)
    count = sum(len(polylines) for _, polylines in records)
    print(f"wrote {args.out}: {count} polylines")
    return 0


def cmd_rulebase_check(args, parser) -> int:
    with open(args.path, "r", encoding="utf-8") as fh:
        result = parse(fh.read())
    diagnostics = list(result.diagnostics)
    if result.rulebase is not None:
        diagnostics.extend(validate(result.rulebase))
    _print_diagnostics(args.path, diagnostics)
    return 1 if any(d.severity == "error" for d in diagnostics) else 0


def cmd_rulebase_fmt(args, parser) -> int:
    with open(args.path, "r", encoding="utf-8") as fh:
        result = parse(fh.read())
    if result.rulebase is None:
        _print_diagnostics(args.path, result.diagnostics)
        return 1
    with open(args.path, "w", encoding="utf-8", newline="") as fh:
        fh.write(serialize(result.rulebase))
    return 0


def cmd_ingest(args, parser) -> int:
    with open(args.events, "r", encoding="utf-8") as fh:
        result = parse_events(fh.read(), start=args.start, end=args.end)
    if result.timeline is None:
        _print_diagnostics(args.events, result.diagnostics)
        return 1
    _print_diagnostics(args.events, result.diagnostics)
    stats = compute_stats(result.timeline)
    kd = achieved_availability(stats)
    mtbf_text = format_number(stats.mtbf) if stats.mtbf is not None else "na"
    print(f"mtbf={mtbf_text} mtr={format_number(stats.mtr)} "
          f"failures={stats.failure_count} kd={format_number(kd)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
