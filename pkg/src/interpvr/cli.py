"""Command-line interface.

Exit codes: 0 success, 2 bad flags or parameter domain, 3 file I/O or
malformed input, 4 degenerate or too-short data.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import analytic, estimate, grids
from .dgp import DgpSpec, Model, SegmentedSeries, Variant, benchmarks, simulate
from .errors import DegenerateSeriesError, InsufficientDataError, InvalidSpecError
from .interp import interpolate

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DATA = 4


class InputFormatError(Exception):
    pass


# ------------------------------------------------------------------ I/O

def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def write_series(series: SegmentedSeries, path=None):
    f, close = _open_out(path)
    try:
        f.write("t,i,value\n")
        for t, i, v in zip(series.segment_index(), series.phase_index(), series.values):
            f.write(f"{t},{i},{float(v)!r}\n")
    finally:
        if close:
            f.close()


def read_series(path) -> SegmentedSeries:
    """Read a ``t,i,value`` CSV. A file with only a ``value`` column is
    taken as one observation per segment."""
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    reader = csv.DictReader(io.StringIO(text))
    fields = [c.strip() for c in (reader.fieldnames or [])]
    reader.fieldnames = fields
    if "value" not in fields:
        raise InputFormatError(f"{path}: missing 'value' column")
    has_index = "t" in fields and "i" in fields
    vals, ts, is_ = [], [], []
    for n, row in enumerate(reader, start=2):
        try:
            vals.append(float(row["value"]))
            if has_index:
                ts.append(int(row["t"]))
                is_.append(int(row["i"]))
        except (TypeError, ValueError):
            raise InputFormatError(f"{path}: line {n}: cannot parse row {row}") from None
    if not vals:
        raise InsufficientDataError(f"{path}: no observations")
    if not has_index:
        return SegmentedSeries(vals, 1)
    s = max(is_)
    if is_[0] != 1:
        raise InputFormatError(f"{path}: first row must be phase 1")
    T0 = s * (ts[0] - 1)
    for n, (t, i) in enumerate(zip(ts, is_)):
        if not 1 <= i <= s or s * (t - 1) + i != T0 + n + 1:
            raise InputFormatError(f"{path}: rows are not consecutive at t={t}, i={i}")
    if len(vals) % s:
        raise InputFormatError(f"{path}: last segment is incomplete")
    return SegmentedSeries(vals, s, origin_segment=ts[0])


def _fmt(v, decimals):
    if v is None:
        return "NA"
    if decimals is None:
        return repr(float(v))
    return f"{float(grids.round_half_away(v, decimals)):.{decimals}f}"


def write_grid(grid: grids.ParamGrid, path=None, decimals=None, axis_fmt=repr):
    f, close = _open_out(path)
    try:
        f.write("alpha,theta,value\n")
        for a, t, v in grid.rows():
            f.write(f"{axis_fmt(a)},{axis_fmt(t)},{_fmt(v, decimals)}\n")
    finally:
        if close:
            f.close()


def _emit(report: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        flat = {k: (json.dumps(v) if isinstance(v, list) else v) for k, v in report.items()}
        w.writerow(flat.keys())
        w.writerow(["" if v is None else v for v in flat.values()])


# ------------------------------------------------------------------ commands

def _spec(args) -> DgpSpec:
    return DgpSpec(Model(args.model), args.alpha, args.theta, args.mu, args.sigma2)


def _spec_fields(spec: DgpSpec) -> dict:
    return {"model": spec.model.value, "alpha": spec.alpha, "theta": spec.theta,
            "mu": spec.mu, "sigma2": spec.sigma2}


def cmd_analytic(args):
    spec = _spec(args)
    summ = analytic.variance_ratio(spec, args.variant, args.s)
    report = {**_spec_fields(spec), "variant": summ.variant.value, "s": summ.s, "k": summ.k,
              "short_var": summ.short_var, "long_var": summ.long_var, "vr": summ.vr,
              "provenance": "analytic"}
    if args.phase is not None:
        report["phase"] = args.phase
        report["long_var_phase"] = analytic.long_var_phase(spec, args.s, args.phase, summ.variant)
    _emit(report, args.format)


def cmd_simulate(args):
    series = simulate(_spec(args), args.s, args.segments, args.seed, args.burn_in)
    write_series(series, args.out)


def cmd_interpolate(args):
    series = read_series(args.input)
    write_series(interpolate(benchmarks(series), args.s), args.out)


def cmd_estimate(args):
    series = read_series(args.input)
    k = series.s if args.k is None else args.k
    demean = not args.no_demean
    report = {"model": None, "variant": None, "s": series.s, "k": k,
              "short_var": estimate.diff_var(series, 1, demean),
              "long_var": estimate.diff_var(series, k, demean),
              "vr": estimate.vr_hat(series, k, demean),
              "provenance": "empirical", "n": len(series)}
    if args.phase_report:
        report["phase_vars"] = [float(v) for v in estimate.phase_vars(series, k)]
    _emit(report, args.format)


def cmd_mc(args):
    spec = _spec(args)
    rep = estimate.mc_compare(spec, args.s, args.variant, args.reps, args.segments, args.seed,
                              burn_in=args.burn_in, workers=args.workers)
    report = {**_spec_fields(spec), "variant": rep.variant.value, "s": rep.s, "k": rep.s,
              "n_reps": rep.n_reps, "n_segments": rep.n_segments, "seed": args.seed,
              "vr_mean": rep.vr_mean, "vr_stderr": rep.vr_stderr,
              "vr_analytic": rep.vr_analytic, "z_score": rep.z_score,
              "provenance": "empirical"}
    _emit(report, args.format)


def cmd_table(args):
    vy, vx = grids.table(args.family, args.s)
    stem = f"{grids.Family(args.family).value}_s{args.s}"
    out_vy = args.out_vy or f"{stem}_vy.csv"
    out_vx = args.out_vx or f"{stem}_vx.csv"
    for grid, path in ((vy, out_vy), (vx, out_vx)):
        write_grid(grid, path, args.decimals, axis_fmt=lambda x: f"{x:.2f}")
        if path != "-":
            print(path)


def cmd_surface(args):
    grid = grids.surface(args.family, args.variant, args.s, args.grid_n, args.margin)
    write_grid(grid, args.out, args.decimals)


# ------------------------------------------------------------------ parser

def _dgp_flags(p):
    p.add_argument("--model", choices=[m.value for m in Model])
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--s", type=int)


VARIANTS = [v.value for v in Variant]
FAMILIES = [f.value for f in grids.Family]
REQUIRED = {
    "analytic": ("model", "s"),
    "simulate": ("model", "s", "segments", "seed"),
    "interpolate": ("input", "s"),
    "estimate": ("input",),
    "mc": ("model", "s", "reps", "segments", "seed"),
    "table": ("family", "s"),
    "surface": ("family", "variant", "s"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="interpvr", description=__doc__.splitlines()[0])
    parser.add_argument("--config", metavar="FILE",
                        help="key = value file pre-setting flags; command-line flags win")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analytic", help="closed-form variances and variance ratio")
    _dgp_flags(p)
    p.add_argument("--variant", choices=VARIANTS, default="original")
    p.add_argument("--phase", type=int)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("simulate", help="simulate a path to a series CSV")
    _dgp_flags(p)
    p.add_argument("--segments", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--burn-in", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("interpolate", help="interpolate the benchmarks of a series CSV")
    p.add_argument("--in", dest="input")
    p.add_argument("--s", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("estimate", help="sample variance ratio of a series CSV")
    p.add_argument("--in", dest="input")
    p.add_argument("--k", type=int)
    p.add_argument("--no-demean", action="store_true")
    p.add_argument("--phase-report", action="store_true")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("mc", help="Monte Carlo check of the closed-form ratio")
    _dgp_flags(p)
    p.add_argument("--variant", choices=VARIANTS, default="original")
    p.add_argument("--reps", type=int)
    p.add_argument("--segments", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--burn-in", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("table", help="11 x 11 ratio tables for s = 4 or 10")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--s", type=int)
    p.add_argument("--out-vy")
    p.add_argument("--out-vx")
    p.add_argument("--decimals", type=int)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("surface", help="n x n ratio grid over the open square")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--variant", choices=VARIANTS)
    p.add_argument("--s", type=int)
    p.add_argument("--grid-n", type=int, default=99)
    p.add_argument("--margin", type=float, default=0.01)
    p.add_argument("--out")
    p.add_argument("--decimals", type=int)
    p.set_defaults(func=cmd_surface)

    return parser, sub.choices


def read_config(path) -> dict:
    out = {}
    for n, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputFormatError(f"{path}:{n}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def _apply_config(parser, subparsers, cfg: dict):
    known = set()
    for sp in subparsers.values():
        actions = {a.dest: a for a in sp._actions}
        defaults = {}
        for key, value in cfg.items():
            dest = "input" if key == "in" else key
            if dest not in actions or dest == "help":
                continue
            known.add(key)
            act = actions[dest]
            if isinstance(act, argparse._StoreTrueAction):
                low = value.lower()
                if low not in ("true", "false", "1", "0", "yes", "no"):
                    parser.error(f"config: {key} expects true or false")
                defaults[dest] = low in ("true", "1", "yes")
            else:
                if act.choices is not None and value not in act.choices:
                    parser.error(f"config: invalid value {value!r} for {key}")
                defaults[dest] = act.type(value) if act.type else value
        sp.set_defaults(**defaults)
    unknown = sorted(set(cfg) - known)
    if unknown:
        parser.error(f"config: unknown keys {', '.join(unknown)}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    try:
        if known.config:
            try:
                _apply_config(parser, subparsers, read_config(known.config))
            except ValueError as e:
                parser.error(f"config: {e}")
        args = parser.parse_args(argv)
        missing = [n for n in REQUIRED[args.command] if getattr(args, n) is None]
        if missing:
            flags = ", ".join("--" + ("in" if n == "input" else n.replace("_", "-")) for n in missing)
            subparsers[args.command].error(f"missing required option(s): {flags}")
        args.func(args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except (InsufficientDataError, DegenerateSeriesError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    except (OSError, InputFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except (InvalidSpecError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
