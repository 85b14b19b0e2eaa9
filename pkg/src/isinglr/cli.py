"""Command-line front end: correlation tables as CSV/JSON.

Output conventions: CSV files open with `#`-prefixed key=value metadata
lines, then one header row, then data; floats carry 17 significant digits so
files round-trip doubles exactly; log10 of an exact zero is emitted as the
literal -inf.  Rows computed in double precision carry a `trusted` column
that drops to False wherever a value sits below the 1e-13 noise floor.

Exit codes: 0 success, 1 usage error, 2 numeric-guard refusal.
"""

from __future__ import annotations

import json
import math
import sys

import click
import numpy as np

from .params import (
    DOUBLE_TRUST_FLOOR,
    ChainParams,
    CorrelationSeries,
    GuardError,
    Method,
    TimeGrid,
    ValidationError,
)
from . import analysis, asymptotics, bench, critical, walk

USAGE_EXIT = 1
GUARD_EXIT = 2


def fmt(x) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.17g}"
    return str(x)


class Output:
    """CSV/JSON writer bound to --out (default stdout)."""

    def __init__(self, path):
        self.path = path

    def _open(self):
        if self.path in (None, "-"):
            return sys.stdout, False
        return open(self.path, "w", encoding="utf-8"), True

    def csv(self, meta: dict, header, rows):
        stream, owned = self._open()
        try:
            for key, val in meta.items():
                stream.write(f"# {key}={fmt(val)}\n")
            stream.write(",".join(header) + "\n")
            for row in rows:
                stream.write(",".join(fmt(v) for v in row) + "\n")
        finally:
            if owned:
                stream.close()

    def json(self, payload: dict):
        stream, owned = self._open()
        try:
            json.dump(payload, stream, indent=2)
            stream.write("\n")
        finally:
            if owned:
                stream.close()

    def table(self, meta: dict, header, rows, format: str):
        if format == "json":
            def jsonable(v):
                if isinstance(v, float):
                    return fmt(v)
                if isinstance(v, (bool, np.bool_)):
                    return bool(v)
                if isinstance(v, np.integer):
                    return int(v)
                return v
            self.json({"meta": {k: jsonable(v) for k, v in meta.items()},
                       "columns": list(header),
                       "rows": [[jsonable(v) for v in row] for row in rows]})
        else:
            self.csv(meta, header, rows)


def parse_int_list(text: str):
    """Integer lists: '3', '1,4,9', '1..10', or '1,3,...,39' (arithmetic)."""
    text = text.strip()
    if ".." in text and "..." not in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    parts = [p.strip() for p in text.split(",")]
    if "..." in parts:
        i = parts.index("...")
        if i < 2 or i != len(parts) - 2:
            raise click.UsageError(f"cannot expand ellipsis in {text!r}; "
                                   "use start,next,...,end")
        start, nxt, end = int(parts[i - 2]), int(parts[i - 1]), int(parts[i + 1])
        step = nxt - start
        if step == 0 or (end - start) % step != 0:
            raise click.UsageError(f"ellipsis in {text!r} is not an arithmetic progression")
        return list(range(start, end + (1 if step > 0 else -1), step))
    return [int(p) for p in parts]


def parse_float_list(text: str):
    parts = [p.strip() for p in text.split(",")]
    if "..." in parts:
        return [float(v) for v in parse_int_list(text)]
    return [float(p) for p in parts]


def chain(nq: int, jp: float) -> ChainParams:
    return ChainParams(nq, jp)


def time_grid(s_values, s_max, n_s):
    if s_values:
        # time-series grids must be strictly increasing
        return np.unique(np.asarray(parse_float_list(s_values), dtype=float))
    return np.linspace(0.0, s_max, n_s)


@click.group()
def cli():
    """Lieb-Robinson correlation functions for the transverse-field Ising chain."""


_common = [
    click.option("--nq", type=int, required=True, help="Chain length N."),
    click.option("--jp", type=float, required=True, help="Dimensionless coupling J' = J/gamma."),
    click.option("--out", type=click.Path(writable=True), default=None,
                 help="Output file (default stdout)."),
    click.option("--format", "fmt_name", type=click.Choice(["csv", "json"]),
                 default="csv", show_default=True, help="Table output format."),
]


def common_options(fn):
    for opt in reversed(_common):
        fn = opt(fn)
    return fn


@cli.command()
@common_options
@click.option("--k", "k_spec", default=None, help="Qubit indices, e.g. 1..10 or 2,5,9.")
@click.option("--s", "s_values", default=None, help="Explicit time list (overrides --smax/--ns).")
@click.option("--smax", type=float, default=3.0, show_default=True, help="Grid end time t/tau.")
@click.option("--ns", type=int, default=61, show_default=True, help="Grid points.")
@click.option("--method", type=click.Choice(["walk", "direct", "both", "critical"]),
              default="walk", show_default=True)
@click.option("--digits", type=int, default=None,
              help="Evaluate the walk rows in arbitrary precision with this many digits.")
def correlate(nq, jp, out, fmt_name, k_spec, s_values, smax, ns, method, digits):
    """Time series of C_k(t/tau) for selected qubits."""
    p = chain(nq, jp)
    ks = parse_int_list(k_spec) if k_spec else list(range(1, min(nq, 10) + 1))
    ss = time_grid(s_values, smax, ns)

    columns = {}
    if method in ("walk", "both"):
        if digits is None:
            grid = walk.lr_walk_grid(p, ks, ss)
        else:
            grid = np.array([[float(walk.lr_walk_highprec(p, k, float(s), digits))
                              for s in ss] for k in ks])
        for i, k in enumerate(ks):
            columns[f"C{k}_walk"] = grid[i]
    if method in ("direct", "both"):
        from .oracle import lr_direct_grid
        grid_d = lr_direct_grid(p, ks, ss)
        for i, k in enumerate(ks):
            columns[f"C{k}_direct"] = grid_d[i]
    if method == "both":
        for i, k in enumerate(ks):
            columns[f"absdiff{k}"] = np.abs(columns[f"C{k}_walk"] - columns[f"C{k}_direct"])
    if method == "critical":
        if jp != 1.0:
            raise ValidationError("the closed form applies at jp = 1 only")
        for k in ks:
            columns[f"C{k}_critical"] = np.array([critical.lr_critical(k, float(s)) for s in ss])

    header = ["s"] + list(columns) + ["trusted"]
    floor_applies = digits is None and method != "critical"
    rows = []
    for j, s in enumerate(ss):
        vals = [columns[name][j] for name in columns]
        trusted = (not floor_applies) or s == 0.0 or all(v >= DOUBLE_TRUST_FLOOR for v in vals)
        rows.append([float(s)] + [float(v) for v in vals] + [trusted])
    # bound/zero validation on every emitted series
    tg = TimeGrid(tuple(float(s) for s in ss))
    for name, col in columns.items():
        if name.startswith("C"):
            k_of = int(name[1:].split("_")[0])
            which = Method.DIRECT if name.endswith("_direct") else (
                Method.CRITICAL if name.endswith("_critical") else Method.WALK)
            CorrelationSeries(k_of, tg, tuple(float(v) for v in col), which)

    meta = {"nq": nq, "jp": jp, "method": method,
            "precision": digits if digits else "double"}
    Output(out).table(meta, header, rows, fmt_name)


@cli.command()
@common_options
@click.option("--s", "s_values", required=True,
              help="Snapshot times, e.g. 1,3,...,39.")
@click.option("--k", "k_spec", default=None, help="Qubit range (default whole chain).")
@click.option("--critical", "with_critical", is_flag=True,
              help="Add the J'=1 closed-form column for each time.")
@click.option("--digits", type=int, default=None, help="Arbitrary-precision walk rows.")
def snapshot(nq, jp, out, fmt_name, s_values, k_spec, with_critical, digits):
    """Spatial snapshots: C_k at fixed times, one row per qubit."""
    p = chain(nq, jp)
    ks = parse_int_list(k_spec) if k_spec else list(range(1, nq + 1))
    ss = parse_float_list(s_values)
    if with_critical and jp != 1.0:
        raise ValidationError("--critical requires jp = 1")

    if digits is None:
        grid = walk.lr_walk_grid(p, ks, np.asarray(ss))
    else:
        grid = np.array([[float(walk.lr_walk_highprec(p, k, float(s), digits))
                          for s in ss] for k in ks])
    header = ["k"] + [f"C_s{fmt(float(s))}" for s in ss]
    if with_critical:
        header += [f"critical_s{fmt(float(s))}" for s in ss]
    header += ["trusted"]
    rows = []
    for i, k in enumerate(ks):
        horizon = analysis.reflection_safe_horizon(p, k)
        vals = list(grid[i])
        if with_critical:
            vals += [critical.lr_critical(int(k), float(s)) for s in ss]
        in_floor = digits is not None or all(v >= DOUBLE_TRUST_FLOOR or v == 0.0 for v in vals)
        trusted = in_floor and max(ss) <= horizon
        rows.append([int(k)] + [float(v) for v in vals] + [trusted])
    meta = {"nq": nq, "jp": jp, "method": "walk+critical" if with_critical else "walk",
            "precision": digits if digits else "double"}
    Output(out).table(meta, header, rows, fmt_name)


@cli.command()
@common_options
@click.option("--threshold", type=float, default=0.1, show_default=True)
@click.option("--kmin", type=int, default=None, help="Fit window start (default bulk).")
@click.option("--kmax", type=int, default=None, help="Fit window end (default bulk).")
def front(nq, jp, out, fmt_name, threshold, kmin, kmax):
    """Front-velocity estimate from threshold crossings, as JSON."""
    del fmt_name  # estimates are nested; always JSON
    p = chain(nq, jp)
    fit_range = None
    if kmin is not None or kmax is not None:
        lo, hi = analysis.default_fit_range(p)
        fit_range = (kmin if kmin is not None else lo, kmax if kmax is not None else hi)
    est = analysis.front_velocity(p, threshold, fit_range)
    Output(out).json({
        "nq": nq,
        "jp": jp,
        "threshold": est.threshold,
        "velocity": est.velocity,
        "velocity_expected": asymptotics.v_group_max(jp),
        "v_lieb_robinson": asymptotics.v_lieb_robinson(jp),
        "fit_range": list(est.fit_range),
        "crossing_times": [[int(k), s] for k, s in est.crossing_times],
        "step_velocities": list(est.step_velocities),
    })


@cli.command()
@click.option("--jp", "jp_list", required=True, help="Couplings, e.g. 0.25,0.5,1,2,4.")
@click.option("--nq", type=int, default=200, show_default=True)
@click.option("--k", "k_probe", type=int, default=10, show_default=True,
              help="Probe qubit for the plateau.")
@click.option("--out", type=click.Path(writable=True), default=None)
@click.option("--format", "fmt_name", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
def saturation(jp_list, nq, k_probe, out, fmt_name):
    """Measured long-time plateau of C_k against the analytic 2 min(1, 1/J')."""
    rows = []
    for jp in parse_float_list(jp_list):
        n_use = nq if jp < 3.0 else max(nq, 300)
        p = chain(n_use, jp)
        window = analysis.saturation_window(p, k_probe)
        measured = analysis.measure_saturation(p, k_probe, window)
        rows.append([jp, measured, asymptotics.saturation_value(jp)])
    Output(out).table({"nq": nq, "k": k_probe}, ["jp", "measured", "analytic"],
                      rows, fmt_name)


@cli.command()
@click.option("--jp", "jp_list", required=True, help="Couplings to scan.")
@click.option("--nq", type=int, default=200, show_default=True)
@click.option("--threshold", type=float, default=0.1, show_default=True)
@click.option("--out", type=click.Path(writable=True), default=None)
@click.option("--format", "fmt_name", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
def velocities(jp_list, nq, threshold, out, fmt_name):
    """Front velocity vs coupling, with the analytic front and leading-edge speeds."""
    rows = []
    for jp in parse_float_list(jp_list):
        p = chain(nq, jp)
        est = analysis.front_velocity(p, threshold)
        rows.append([jp, est.velocity, asymptotics.v_group_max(jp),
                     asymptotics.v_lieb_robinson(jp)])
    Output(out).table({"nq": nq, "threshold": threshold},
                      ["jp", "v_front_measured", "v_front_analytic", "v_lieb_robinson"],
                      rows, fmt_name)


@cli.command()
@common_options
@click.option("--kmin", type=int, default=1, show_default=True)
@click.option("--kmax", type=int, default=None, help="Default: chain end.")
@click.option("--smax", type=float, default=30.0, show_default=True)
@click.option("--ns", type=int, default=101, show_default=True)
@click.option("--digits", type=int, default=None,
              help="High-precision rows; needed for contours below 1e-13.")
def lightcone(nq, jp, out, fmt_name, kmin, kmax, smax, ns, digits):
    """Light-cone grid: k, s, log10 C, trusted; -inf marks exact zeros."""
    p = chain(nq, jp)
    grid = analysis.lightcone(p, (kmin, kmax if kmax else nq), (0.0, smax),
                              resolution=ns, digits=digits)
    rows = []
    for i, k in enumerate(grid.k_values):
        for j, s in enumerate(grid.s_values):
            rows.append([int(k), float(s), float(grid.log10_c[i, j]),
                         bool(grid.trust_mask[i, j])])
    meta = {"nq": nq, "jp": jp, "precision": digits if digits else "double"}
    Output(out).table(meta, ["k", "s", "log10C", "trusted"], rows, fmt_name)


@cli.command()
@click.option("--jp", type=float, required=True, help="Dimensionless coupling J' = J/gamma.")
@click.option("--out", type=click.Path(writable=True), default=None)
@click.option("--k", "k_spec", required=True, help="Qubit indices, e.g. 11200..11350.")
@click.option("--s", "s_values", required=True, help="Times, e.g. 928,930,...,940.")
@click.option("--forms", default="exact,largek,exponential", show_default=True,
              help="Comma list from exact,largek,exponential.")
@click.option("--format", "fmt_name", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
def edge(jp, out, k_spec, s_values, forms, fmt_name):
    """Log-domain leading-edge tables far ahead of the front.

    These analytic forms are the only viable route out at qubit indices in
    the tens of thousands, where matrix methods are hopeless and the values
    underflow doubles by hundreds of decades.  No chain length is involved:
    the forms describe the semi-infinite leading edge.
    """
    ks = parse_int_list(k_spec)
    ss = parse_float_list(s_values)
    wanted = [f.strip() for f in forms.split(",")]
    evaluators = {
        "exact": lambda k, s: asymptotics.lr_leading_exact(k, s, jp),
        "largek": lambda k, s: asymptotics.lr_leading_largek(k, s, jp),
        "exponential": lambda k, s: asymptotics.lr_leading_exponential(k, s, jp),
    }
    unknown = [f for f in wanted if f not in evaluators]
    if unknown:
        raise click.UsageError(f"unknown forms {unknown}")
    header = ["k", "s"] + [f"log10C_{f}" for f in wanted]
    rows = []
    for k in ks:
        for s in ss:
            rows.append([k, float(s)] +
                        [evaluators[f](int(k), float(s)).log10_magnitude for f in wanted])
    Output(out).table({"jp": jp, "v_lieb_robinson": asymptotics.v_lieb_robinson(jp)},
                      header, rows, fmt_name)


@cli.command("bench")
@click.option("--nq", "nq_list", default="50,100,200,400", show_default=True,
              help="Chain lengths for the walk scaling fit.")
@click.option("--compare-nq", type=int, default=10, show_default=True,
              help="Chain length for the walk vs direct comparison.")
@click.option("--smax", type=float, default=3.0, show_default=True)
@click.option("--ns", type=int, default=60, show_default=True)
@click.option("--repeats", type=int, default=3, show_default=True)
@click.option("--out", type=click.Path(writable=True), default=None)
def bench_cmd(nq_list, compare_nq, smax, ns, repeats, out):
    """Wall-time scaling of the walk method and speedup over the dense oracle."""
    scaling = bench.scaling_report(parse_int_list(nq_list), s_max=smax,
                                   n_times=ns, repeats=repeats)
    comparison = bench.comparison_report(compare_nq, s_max=smax, n_times=ns,
                                         repeats=repeats)
    Output(out).json({"scaling": scaling, "comparison": comparison})


@cli.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(writable=True), default=None,
              help="Overrides the out entry of the recipe.")
def recipe(config, out):
    """Run a saved run configuration (JSON with command + options)."""
    with open(config, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    name = spec.get("command")
    target = cli.get_command(None, name)
    if target is None:
        raise click.UsageError(f"recipe names unknown command {name!r}")
    args = []
    options = dict(spec.get("options", {}))
    if out is not None:
        options["out"] = out
    for key, val in options.items():
        if isinstance(val, bool):
            if val:
                args.append(f"--{key}")
        else:
            args.extend([f"--{key}", str(val)])
    target.main(args=args, standalone_mode=False)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except (click.UsageError, ValidationError) as exc:
        click.echo(f"error: {exc}", err=True)
        return USAGE_EXIT
    except GuardError as exc:
        click.echo(f"numeric guard: {exc}", err=True)
        return GUARD_EXIT
    except click.exceptions.Exit as exc:  # --help and friends
        return exc.exit_code
    except click.Abort:
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
