"""Command-line front end.

Subcommands: agree (single-point evaluation), sweep (width-grid CSV), curve
(transition-curve scan), perturb (lattice-correction profiles), bounds
(diagonal bound table), units (physical-unit report).  CSV output carries a
'#' metadata header (version, invocation, seed, tolerances) and renders
floats with 17 significant digits; identical invocations produce
byte-identical files.

Exit codes: 0 success, 2 usage error, 3 resource cap exceeded, 4 I/O error,
5 numeric-invariant violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from . import __version__
from .analytic import (
    closed_form,
    continuum_form,
    curve_limit_integral,
    curve_value,
    lower_bound,
    perturbation_exact,
    perturbation_integral,
    upper_bound,
)
from .brute import PRNG_NAME, AgreeResult, p_agree_average_brute, p_agree_average_gram
from .errors import NumericCheckError, ResourceLimitError
from .lattice import LatticeConfig
from .tolerances import CLI_RESIDUAL_LIMIT, EMIT_SLACK, TOL_CONSTRUCT, TOL_CROSS
from .units import FLOAT_EXACT_INT_MAX, coarse_to_units, derive_units, perturbation_in_units

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_IO = 4
EXIT_NUMERIC = 5

AGREE_METHODS = ("brute", "gram", "closed", "continuum", "perturbation", "bounds")

#: an "all divisors" sweep refuses to expand beyond this many width pairs
SWEEP_PAIR_CAP = 400


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _fmt_optional(value: Optional[float]) -> str:
    return "" if value is None else _fmt(value)


def _metadata(argv: Sequence[str], seed: Optional[int] = None, extra: Sequence[str] = ()) -> list[str]:
    lines = [
        f"# pagree {__version__}",
        "# command: pagree " + " ".join(str(a) for a in argv),
        f"# seed: {seed if seed is not None else 'none'}",
        f"# prng: {PRNG_NAME}",
        f"# tolerances: construct={TOL_CONSTRUCT:g} cross={TOL_CROSS:g} "
        f"residual_limit={CLI_RESIDUAL_LIMIT:g} emit_slack={EMIT_SLACK:g}",
    ]
    lines.extend(extra)
    return lines


def _clamp_emitted(value: float, label: str) -> float:
    """Clamp an emitted probability to [0, 1]; abort beyond the slack."""
    if value < -EMIT_SLACK or value > 1.0 + EMIT_SLACK:
        raise NumericCheckError(f"{label} = {value} violates [0, 1] beyond {EMIT_SLACK}")
    return min(max(value, 0.0), 1.0)


def _write_text(path: Optional[str], lines: Sequence[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _divisors(d: int) -> list[int]:
    small, large = [], []
    factor = 1
    while factor * factor <= d:
        if d % factor == 0:
            small.append(factor)
            if factor != d // factor:
                large.append(d // factor)
        factor += 1
    return small + large[::-1]


def _parse_methods(raw: str) -> list[str]:
    names = [token.strip() for token in raw.split(",") if token.strip()]
    if not names:
        raise ValueError("at least one method must be requested")
    for name in names:
        if name not in AGREE_METHODS:
            raise ValueError(f"unknown method {name!r}; choose from {', '.join(AGREE_METHODS)}")
    return sorted(set(names))


def _parse_widths(raw: str, d: int) -> list[int]:
    if raw.strip() in ("all", "all-divisors"):
        widths = _divisors(d)
        if len(widths) ** 2 > SWEEP_PAIR_CAP:
            raise ValueError(
                f"all-divisors sweep of d={d} spans {len(widths)**2} width pairs "
                f"(cap {SWEEP_PAIR_CAP}); pass an explicit --widths list")
        return widths
    try:
        widths = sorted({int(token) for token in raw.split(",") if token.strip()})
    except ValueError as exc:
        raise ValueError(f"bad --widths list {raw!r}: {exc}") from None
    if not widths:
        raise ValueError("--widths list is empty")
    for w in widths:
        if w < 1 or d % w != 0:
            raise ValueError(f"width {w} does not divide d={d}")
    return widths


def _evaluate_agree(config: LatticeConfig, methods: Sequence[str]) -> AgreeResult:
    d, w_x, w_p = config.d, config.w_x, config.w_p
    result = AgreeResult(config=config, closed=closed_form(d, w_x, w_p))
    if "brute" in methods:
        result.brute = p_agree_average_brute(config)
    if "gram" in methods:
        result.gram = p_agree_average_gram(config)
    if "continuum" in methods:
        result.continuum = continuum_form(w_x / d, w_p)
    if "perturbation" in methods:
        result.perturbation = perturbation_exact(d, w_x, w_p)
    if "bounds" in methods and w_x == w_p:
        result.upper_bound = upper_bound(d, w_x)
        result.lower_bound = lower_bound(d, w_x)
    return result


def _cmd_agree(args: argparse.Namespace, argv: Sequence[str]) -> int:
    config = LatticeConfig(args.d, args.wx, args.wp)
    methods = _parse_methods(args.methods)
    result = _evaluate_agree(config, methods)
    residuals = result.residuals()

    values: dict[str, Optional[float]] = {"closed": _clamp_emitted(result.closed, "closed")}
    for name in ("brute", "gram", "continuum", "perturbation"):
        raw = getattr(result, name)
        values[name] = None if raw is None else _clamp_emitted(raw, name)
    values["upper_bound"] = result.upper_bound
    values["lower_bound"] = result.lower_bound

    if result.upper_bound is not None and result.closed > result.upper_bound + TOL_CONSTRUCT:
        raise NumericCheckError(
            f"closed value {result.closed} exceeds upper bound {result.upper_bound}")
    if result.lower_bound is not None and result.closed < result.lower_bound - TOL_CONSTRUCT:
        raise NumericCheckError(
            f"closed value {result.closed} undercuts lower bound {result.lower_bound}")

    lines = [f"d = {config.d}  w_x = {config.w_x}  w_p = {config.w_p}  "
             f"(k_x = {config.k_x}, k_p = {config.k_p})"]
    for name in ("closed", "brute", "gram", "continuum", "perturbation",
                 "upper_bound", "lower_bound"):
        if values[name] is not None:
            lines.append(f"{name:13s} = {_fmt(values[name])}")
        elif name in ("upper_bound", "lower_bound") and "bounds" in methods and config.w_x == config.w_p:
            lines.append(f"{name:13s} = not applicable")
    for pair, residual in sorted(residuals.items()):
        lines.append(f"residual {pair:13s} = {_fmt(residual)}")

    record = {
        "d": config.d,
        "w_x": config.w_x,
        "w_p": config.w_p,
        "values": {k: v for k, v in values.items() if v is not None},
        "residuals": residuals,
        "meta": {"version": __version__, "command": "pagree " + " ".join(str(a) for a in argv)},
    }
    payload = json.dumps(record, sort_keys=True)
    for line in lines:
        print(line)
    print(payload)
    if args.out is not None:
        _write_text(args.out, [payload])

    worst = max(residuals.values(), default=0.0)
    if worst > CLI_RESIDUAL_LIMIT:
        print(f"error: cross-method residual {worst} exceeds {CLI_RESIDUAL_LIMIT}",
              file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace, argv: Sequence[str]) -> int:
    if args.d < 1:
        raise ValueError(f"d must be >= 1, got {args.d}")
    methods = _parse_methods(args.methods)
    widths = _parse_widths(args.widths, args.d)

    rows = ["d,w_x,w_p,method,value"]
    for w_x in widths:
        for w_p in widths:
            config = LatticeConfig(args.d, w_x, w_p)
            cell: list[tuple[str, float]] = []
            result = _evaluate_agree(config, methods)
            for name in ("brute", "gram", "continuum", "perturbation"):
                raw = getattr(result, name)
                if raw is not None:
                    cell.append((name, _clamp_emitted(raw, f"{name}@{w_x},{w_p}")))
            if "closed" in methods:
                cell.append(("closed", _clamp_emitted(result.closed, f"closed@{w_x},{w_p}")))
            if "bounds" in methods and w_x == w_p:
                if result.upper_bound is not None:
                    cell.append(("upper_bound", result.upper_bound))
                if result.lower_bound is not None:
                    cell.append(("lower_bound", result.lower_bound))
            for name, value in sorted(cell):
                rows.append(f"{args.d},{w_x},{w_p},{name},{_fmt(value)}")

    _write_text(args.out, _metadata(argv, seed=args.seed) + rows)
    return EXIT_OK


def _cmd_curve(args: argparse.Namespace, argv: Sequence[str]) -> int:
    if args.wp < 1:
        raise ValueError(f"--wp (maximum momentum width) must be >= 1, got {args.wp}")
    extra = []
    if args.d is not None:
        # lattice sizes the scan is meant for; the curve values themselves
        # depend only on w_p
        extra.append(f"# d_list: {args.d}")
    rows = ["w_p,curve_value"]
    for w_p in range(1, args.wp + 1):
        rows.append(f"{w_p},{_fmt(curve_value(w_p).value)}")
    rows.append(f"inf,{_fmt(curve_limit_integral())}")
    _write_text(args.out, _metadata(argv, extra=extra) + rows)
    return EXIT_OK


def _cmd_perturb(args: argparse.Namespace, argv: Sequence[str]) -> int:
    if args.d < 1:
        raise ValueError(f"d must be >= 1, got {args.d}")
    try:
        ratios = [float(token) for token in args.ratios.split(",") if token.strip()]
    except ValueError as exc:
        raise ValueError(f"bad --ratios list {args.ratios!r}: {exc}") from None
    if not ratios or any(r <= 0 for r in ratios):
        raise ValueError("--ratios must list positive numbers")

    divisors = _divisors(args.d)
    root = math.sqrt(args.d)
    extra = []
    targets = []
    for ratio in ratios:
        w_p = min(divisors, key=lambda w: (abs(w - ratio * root), w))
        targets.append(w_p)
        extra.append(f"# ratio {ratio:g}: w_p = {w_p} (target {ratio * root:g})")

    rows = ["d,w_x,w_p,pert_exact,pert_integral,rel_err"]
    for w_p in targets:
        for w_x in divisors:
            exact = perturbation_exact(args.d, w_x, w_p)
            approx = perturbation_integral(args.d, w_x, w_p)
            rel = abs(approx - exact) / abs(exact) if exact != 0.0 else float("nan")
            rows.append(f"{args.d},{w_x},{w_p},{_fmt(exact)},{_fmt(approx)},{_fmt(rel)}")

    _write_text(args.out, _metadata(argv, extra=extra) + rows)
    return EXIT_OK


def _cmd_bounds(args: argparse.Namespace, argv: Sequence[str]) -> int:
    if args.d < 1:
        raise ValueError(f"d must be >= 1, got {args.d}")
    rows = ["d,w,closed,upper_bound,lower_bound"]
    for w in _divisors(args.d):
        closed = _clamp_emitted(closed_form(args.d, w, w), f"closed@{w}")
        rows.append(f"{args.d},{w},{_fmt(closed)},"
                    f"{_fmt_optional(upper_bound(args.d, w))},"
                    f"{_fmt_optional(lower_bound(args.d, w))}")
    _write_text(args.out, _metadata(argv) + rows)
    return EXIT_OK


def _cmd_units(args: argparse.Namespace, argv: Sequence[str]) -> int:
    units = derive_units(args.hbar, args.length, args.d)
    scales = coarse_to_units(units, args.wx, args.wp)
    planck_cell = 2.0 * math.pi * units.hbar
    report = {
        "hbar": units.hbar,
        "L": units.L,
        "d": units.d,
        "w_x": args.wx,
        "w_p": args.wp,
        "delta_x": units.delta_x,
        "delta_p": units.delta_p,
        "Delta_x": scales.delta_X,
        "Delta_p": scales.delta_P,
        "phase_cell_over_planck": scales.phase_cell / planck_cell,
        "l_u": units.l_u,
        "pert_integral_units": perturbation_in_units(units, args.wx, args.wp),
    }
    lines = [
        f"delta_x (lattice spacing)        = {_fmt(units.delta_x)}",
        f"delta_p (momentum quantum)       = {_fmt(units.delta_p)}",
        f"Delta_x (coarse position)        = {_fmt(scales.delta_X)}",
        f"Delta_p (coarse momentum)        = {_fmt(scales.delta_P)}",
        f"Delta_x*Delta_p / (2*pi*hbar)    = {_fmt(report['phase_cell_over_planck'])}",
        f"l_u (intermediate length)        = {_fmt(units.l_u)}",
    ]
    if units.d > FLOAT_EXACT_INT_MAX:
        lines.append("note: d exceeds 2**53 and is carried as a double; "
                     "integer identities hold only to double precision")
    record = dict(report)
    record["meta"] = {"version": __version__,
                      "command": "pagree " + " ".join(str(a) for a in argv)}
    payload = json.dumps(record, sort_keys=True)
    for line in lines:
        print(line)
    print(payload)
    if args.out is not None:
        _write_text(args.out, [payload])
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pagree",
        description="Agreement probabilities of coarse position-momentum-position "
                    "measurement chains on a periodic lattice.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    agree = sub.add_parser("agree", help="evaluate one (d, w_x, w_p) point")
    agree.add_argument("--d", type=int, required=True, help="lattice size")
    agree.add_argument("--wx", type=int, required=True, help="position width")
    agree.add_argument("--wp", type=int, required=True, help="momentum width")
    agree.add_argument("--methods", default="closed",
                       help="comma list from: " + ",".join(AGREE_METHODS))
    agree.add_argument("--out", default=None, help="write the JSON record here")
    agree.set_defaults(func=_cmd_agree)

    sweep = sub.add_parser("sweep", help="CSV over a (w_x, w_p) width grid")
    sweep.add_argument("--d", type=int, required=True)
    sweep.add_argument("--widths", default="all",
                       help="'all' (all divisors) or an explicit comma list")
    sweep.add_argument("--methods", default="closed")
    sweep.add_argument("--out", default=None, help="output CSV path (default stdout)")
    sweep.add_argument("--seed", type=int, default=None, help="recorded in metadata")
    sweep.set_defaults(func=_cmd_sweep)

    curve = sub.add_parser("curve", help="CSV of transition-curve values")
    curve.add_argument("--wp", type=int, required=True, help="largest momentum width")
    curve.add_argument("--d", default=None,
                       help="comma list of lattice sizes, recorded in metadata")
    curve.add_argument("--out", default=None)
    curve.set_defaults(func=_cmd_curve)

    perturb = sub.add_parser("perturb", help="CSV of lattice-correction profiles")
    perturb.add_argument("--d", type=int, required=True)
    perturb.add_argument("--ratios", default="1,2,3,4",
                         help="comma list of w_p/sqrt(d) targets; nearest divisors are used")
    perturb.add_argument("--out", default=None)
    perturb.set_defaults(func=_cmd_perturb)

    bounds = sub.add_parser("bounds", help="CSV of diagonal values and bounds")
    bounds.add_argument("--d", type=int, required=True)
    bounds.add_argument("--out", default=None)
    bounds.set_defaults(func=_cmd_bounds)

    units = sub.add_parser("units", help="physical-unit report")
    units.add_argument("--hbar", type=float, default=1.0 / (2.0 * math.pi),
                       help="action quantum (default 1/(2*pi), making delta_p = 1/L)")
    units.add_argument("--length", type=float, default=1.0, help="total length L")
    units.add_argument("--d", type=float, required=True,
                       help="lattice size; floats accepted for d beyond 2**53")
    units.add_argument("--wx", type=int, default=1)
    units.add_argument("--wp", type=int, default=1)
    units.add_argument("--out", default=None, help="write the JSON record here")
    units.set_defaults(func=_cmd_units)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args, argv)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NumericCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
