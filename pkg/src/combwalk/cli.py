"""``combwalk`` command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from importlib import metadata
from pathlib import Path

__all__ = ["main", "build_parser", "RunManifest"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def fmt_value(v):
    """Fractions as ``p/q``, floats with 15 significant digits."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction) or type(v).__name__ == "mpq":
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    if isinstance(v, float):
        return format(v, ".15g")
    return str(v)


class RunManifest:
    def __init__(self, command: str, args: dict, seed):
        self.command = command
        self.args = args
        self.seed = seed
        self.version = _version()
        self._t0 = time.perf_counter()

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "args": self.args,
            "seed": self.seed,
            "version": self.version,
            "duration_seconds": round(time.perf_counter() - self._t0, 6),
        }


def _emit(rows: list[dict], args, manifest: RunManifest):
    fields = list(rows[0].keys()) if rows else []
    cells = [{k: fmt_value(r.get(k)) for k in fields} for r in rows]
    if args.format == "json":
        text = json.dumps(cells, indent=1) + "\n"
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(cells)
        text = buf.getvalue()
    if args.out:
        out = Path(args.out)
        out.write_text(text)
        Path(str(out) + ".manifest.json").write_text(json.dumps(manifest.as_dict(), indent=1) + "\n")
    else:
        sys.stdout.write(text)


# coeffs ---------------------------------------------------------------------

def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.name} needs " + ", ".join("--" + m.replace("_", "-") for m in missing))
    return [getattr(args, n) for n in names]


def _gf(args):
    from . import genfun as g

    order = args.order
    name = args.name
    if name == "green":
        k, l = _need(args, "k", "l")
        return g.green(k, l, order)
    if name == "green-G":
        return g.green_G(order)
    if name == "green-F1":
        return g.green_F1(order)
    if name == "green-F2":
        return g.green_F2(order)
    if name == "excursion-E":
        return g.excursion_E(order)
    if name == "w":
        return g.w_of_z(order)
    if name == "a-det":
        (i,) = _need(args, "i")
        return g.a_det(i, order)
    if name == "deviation-H":
        (h,) = _need(args, "h")
        return g.deviation_H(h, order)
    if name == "psi-two-sided":
        h, k, l = _need(args, "h", "k", "l")
        return g.psi_two_sided(h, k, l, order)
    if name == "psi-hat":
        h, l = _need(args, "h", "l")
        return g.psi_hat(h, l, order)
    if name == "psi-hat-sum":
        (h,) = _need(args, "h")
        return g.psi_hat_sum(h, order)
    if name == "mean-dist-x":
        return g.mean_dist_x_gf(order)
    if name == "mean-dist-y":
        return g.mean_dist_y_gf(order)
    if name == "mean-deviation":
        (axis,) = _need(args, "axis")
        return g.mean_deviation_gf(axis, order)
    if name == "theta":
        (n,) = _need(args, "n")
        return g.theta_gf(n, order)
    if name == "span-x":
        return g.span_gf_x(order)
    if name == "span-y":
        return g.span_gf_y(order)
    raise UsageError(f"unknown generating function {name!r}")


GF_NAMES = (
    "green", "green-G", "green-F1", "green-F2", "excursion-E", "w", "a-det", "deviation-H",
    "psi-two-sided", "psi-hat", "psi-hat-sum", "mean-dist-x", "mean-dist-y", "mean-deviation",
    "theta", "span-x", "span-y",
)


def cmd_coeffs(args, manifest):
    if args.order < 0:
        raise UsageError("--order must be >= 0")
    s = _gf(args)
    rows = [{"n": n, "coeff": Fraction(int(c.numerator), int(c.denominator)), "decimal": float(c)}
            for n, c in enumerate(s.coeffs)]
    _emit(rows, args, manifest)
    return EXIT_OK


# verify ---------------------------------------------------------------------

def cmd_verify(args, manifest):
    from . import checks

    def progress(cr):
        print(cr.line(), file=sys.stderr, flush=True)

    results = checks.run_tier(args.suite, args.seed, progress=None if args.quiet else progress)
    rows = []
    for cr in results:
        for c in cr.checks:
            rows.append({
                "criterion": cr.number, "check": c.name, "status": "PASS" if c.passed else "FAIL",
                "measured": c.measured, "tolerance": c.tolerance,
            })
    _emit(rows, args, manifest)
    return EXIT_OK if all(cr.passed for cr in results) else EXIT_FAIL


# simulate / exit-time -------------------------------------------------------

def cmd_simulate(args, manifest):
    from . import asymptotics, simulate

    if args.n < 1 or args.walks < 1:
        raise UsageError("--n and --walks must be >= 1")
    batch = simulate.simulate_walks(simulate.WalkConfig(args.n, args.walks, args.seed))
    rows = []
    for q in args.quantity:
        est = batch.estimate(q)
        try:
            alpha = asymptotics.constant(q).exponent
        except KeyError:
            alpha = 0.5  # loops, norms: diffusive scale
        rows.append({
            "quantity": q, "n": args.n, "walks": args.walks, "seed": args.seed,
            "mean": est.mean, "stderr": est.stderr, "count": est.count,
            "scale_exponent": alpha, "scaled_mean": est.mean / args.n**alpha,
        })
    _emit(rows, args, manifest)
    return EXIT_OK


def cmd_exit_time(args, manifest):
    from . import oracle, simulate

    if args.radius < 1:
        raise UsageError("--radius must be >= 1")
    row = {"radius": args.radius, "norm": args.norm, "mode": args.mode, "value": None, "decimal": None,
           "stderr": None, "count": None}
    if args.mode == "exact":
        if args.radius > oracle.EXACT_MAX_RADIUS:
            raise UsageError(f"exact mode supports radius <= {oracle.EXACT_MAX_RADIUS}")
        v = oracle.exit_time_expectation(args.radius, args.norm, exact=True)
        row.update(value=v, decimal=float(v))
    elif args.mode == "float":
        v = float(oracle.exit_time_expectation(args.radius, args.norm, exact=False))
        row.update(value=v, decimal=v)
    else:
        est = simulate.exit_time_estimate(args.radius, args.norm, args.samples, args.seed)
        row.update(value=est.mean, decimal=est.mean, stderr=est.stderr, count=est.count)
    _emit([row], args, manifest)
    return EXIT_OK


# fit ------------------------------------------------------------------------

def _read_points(path: str):
    try:
        fh = sys.stdin if path == "-" else open(path, newline="")
    except OSError as e:
        raise UsageError(str(e)) from None
    with fh:
        reader = csv.DictReader(fh)
        if not reader.fieldnames or "n" not in reader.fieldnames:
            raise UsageError("input CSV needs a header with an 'n' column")
        col = "value" if "value" in reader.fieldnames else [f for f in reader.fieldnames if f != "n"][0]
        pts = []
        for r in reader:
            v = r[col]
            val = float(Fraction(v)) if "/" in v else float(v)
            pts.append((float(r["n"]), val))
    return pts


def _sequence_points(args):
    from . import genfun, oracle

    lo, hi = args.n_min, args.n_max
    if args.source == "exact":
        if hi > oracle.EXACT_MAX_STEPS:
            raise UsageError(f"exact sequences stop at n = {oracle.EXACT_MAX_STEPS}")
        gf = {
            "abs_x": lambda o: genfun.mean_dist_x_gf(o),
            "abs_y": lambda o: genfun.mean_dist_y_gf(o),
            "dev_x": lambda o: genfun.mean_deviation_gf("x", o),
            "dev_y": lambda o: genfun.mean_deviation_gf("y", o),
            "span_x": lambda o: genfun.span_gf_x(o) * 2,
            "span_y": lambda o: genfun.span_gf_y(o) * 2,
        }[args.quantity](hi)
        return [(n, float(gf[n])) for n in range(lo, hi + 1)]
    seq = oracle.float_sequences(hi)
    vals = getattr(seq, args.quantity)
    return [(n, float(vals[n])) for n in range(lo, hi + 1)]


def cmd_fit(args, manifest):
    from . import asymptotics

    if args.input:
        pts = _read_points(args.input)
    elif args.quantity:
        pts = _sequence_points(args)
    else:
        raise UsageError("fit needs --input or --quantity")
    try:
        fit = asymptotics.fit_power_law(pts)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _emit([{"C": fit.C, "alpha": fit.alpha, "residual": fit.residual,
            "n_min": fit.n_range[0], "n_max": fit.n_range[1], "points": len(pts)}], args, manifest)
    return EXIT_OK


# scaling --------------------------------------------------------------------

def cmd_scaling(args, manifest):
    import numpy as np

    from . import scaling

    if args.n < 1 or args.walks < scaling.MIN_KS_SAMPLES:
        raise UsageError(f"need --n >= 1 and --walks >= {scaling.MIN_KS_SAMPLES}")
    snaps = scaling.sample_snapshot_arrays(args.n, args.walks, (1.0,), args.seed)
    ref = scaling.reference_brownian_at_local_time(np.random.default_rng(args.seed), args.walks)
    tests = [
        ("y_scaled", scaling.ks_against(snaps.column("y_scaled"), "normal")),
        ("loops_scaled", scaling.ks_against(snaps.column("loops_scaled"), "abs_normal")),
        ("x_scaled", scaling.ks_two_sample(snaps.column("x_scaled"), ref)),
    ]
    corr = scaling.sign_correlation(snaps.column("x_scaled"), snaps.column("y_scaled"))
    rows = [{"component": c, "reference": r.reference, "statistic": r.statistic, "pvalue": r.pvalue,
             "n_samples": r.n_samples} for c, r in tests]
    rows.append({"component": "sign(x)*sign(y)", "reference": "mean 0", "statistic": corr.mean,
                 "pvalue": None, "n_samples": corr.count})
    _emit(rows, args, manifest)
    return EXIT_OK


# parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .checks import DEFAULT_SEED
    from .simulate import QUANTITIES

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output file (default: standard output); a .manifest.json sidecar is written next to it")

    p = argparse.ArgumentParser(prog="combwalk", description="Random walk on the 2-dimensional comb: exact series, oracle checks, simulation.")
    p.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", parents=[common], help="exact coefficients of a generating function")
    c.add_argument("name", choices=GF_NAMES)
    c.add_argument("--order", type=int, default=20)
    for flag in ("h", "k", "l", "i", "n"):
        c.add_argument(f"--{flag}", type=int)
    c.add_argument("--axis", choices=("x", "y"))
    c.set_defaults(func=cmd_coeffs)

    v = sub.add_parser("verify", parents=[common], help="run acceptance checks")
    v.add_argument("suite", choices=("exact", "numeric", "montecarlo", "scaling", "all"))
    v.add_argument("--quiet", action="store_true", help="no per-criterion progress on stderr")
    v.set_defaults(func=cmd_verify)
    r = sub.add_parser("reproduce-paper", parents=[common], help="alias of 'verify all'")
    r.add_argument("--quiet", action="store_true")
    r.set_defaults(func=cmd_verify, suite="all")

    s = sub.add_parser("simulate", parents=[common], help="Monte Carlo estimates")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--walks", type=int, required=True)
    s.add_argument("--quantity", choices=QUANTITIES, action="append", required=True)
    s.set_defaults(func=cmd_simulate)

    e = sub.add_parser("exit-time", parents=[common], help="expected exit time from a ball")
    e.add_argument("--radius", type=int, required=True)
    e.add_argument("--norm", choices=("1", "inf"), default="inf")
    e.add_argument("--mode", choices=("exact", "float", "montecarlo"), default="exact")
    e.add_argument("--samples", type=int, default=10**5)
    e.set_defaults(func=cmd_exit_time)

    f = sub.add_parser("fit", parents=[common], help="power-law fit C n^alpha")
    f.add_argument("--input", help="CSV with columns n,value ('-' for stdin)")
    f.add_argument("--quantity", choices=("abs_x", "abs_y", "dev_x", "dev_y", "span_x", "span_y"))
    f.add_argument("--source", choices=("exact", "float"), default="exact")
    f.add_argument("--n-min", type=int, default=16)
    f.add_argument("--n-max", type=int, default=60)
    f.set_defaults(func=cmd_fit)

    k = sub.add_parser("scaling", parents=[common], help="KS tests of the rescaled walk at t = 1")
    k.add_argument("--n", type=int, default=10**5)
    k.add_argument("--walks", type=int, default=10**4)
    k.set_defaults(func=cmd_scaling)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    ns = {k: v for k, v in vars(args).items() if k != "func"}
    manifest = RunManifest(args.command, ns, args.seed)
    try:
        return args.func(args, manifest)
    except (UsageError, ValueError) as e:
        print(f"combwalk {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
