"""Command-line front end: simulate, lyapunov, scan, attractor.

Exit codes: 0 success, 1 config error, 2 I/O error, 3 divergence-truncated
result (the output file is still written up to truncation).  All numeric
CSV fields carry 17 significant digits, so repeated runs are byte
identical and values round-trip exactly.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Iterable, Optional

from . import __version__, conformable, lyapunov, models, svgplot, sweep
from .config import ConfigError, RunConfig, load_config
from .conformable import GridSpec
from .sweep import COMPONENTS

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_DIVERGED = 3


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _write_csv(path: str, header: str, rows: Iterable[str]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(row + "\n")


def _svg_target(cfg: RunConfig, args) -> Optional[str]:
    if not args.plot:
        return None
    if args.svg is not None:
        return args.svg
    if cfg.svg_path is not None:
        return cfg.svg_path
    return str(Path(cfg.csv_path).with_suffix(".svg"))


def _cmd_simulate(cfg: RunConfig, args) -> int:
    mdl = models.MODELS[cfg.model]
    grid = GridSpec(cfg.h, cfg.n_steps)
    traj = conformable.integrate(
        lambda s: mdl.field(s, cfg.params), cfg.x0, cfg.orders, grid, cfg.guard
    )
    header = "step,t," + ",".join(COMPONENTS[: mdl.dim])
    rows = (
        f"{i},{_fmt(t)}," + ",".join(_fmt(v) for v in state)
        for i, (t, state) in enumerate(zip(traj.times, traj.states))
    )
    _write_csv(cfg.csv_path, header, rows)
    if traj.diverged:
        print(
            f"orbit diverged at step {traj.diverged_index}; "
            f"wrote {traj.states.shape[0]} rows",
            file=sys.stderr,
        )
        return EXIT_DIVERGED
    return EXIT_OK


def _cmd_lyapunov(cfg: RunConfig, args) -> int:
    exp = cfg.experiment
    spec = sweep.point_spectrum(
        cfg.model,
        cfg.params,
        cfg.orders,
        cfg.h,
        cfg.x0,
        transient=cfg.transient,
        n_iter=exp["n_iter"],
        reorth_every=exp["reorth_every"],
        guard=cfg.guard,
    )
    label = lyapunov.classify_regime(spec, exp["eps"])
    rows = (f"{i + 1},{_fmt(v)}" for i, v in enumerate(spec.exponents))
    _write_csv(cfg.csv_path, "exponent_rank,value", rows)
    print(f"regime={label} converged={spec.converged}")
    print("exponents: " + " ".join(_fmt(v) for v in spec.exponents))
    return EXIT_DIVERGED if spec.diverged else EXIT_OK


def _build_plan(cfg: RunConfig) -> sweep.SweepPlan:
    exp = cfg.experiment
    return sweep.SweepPlan(
        target=exp["target"],
        lo=exp["lo"],
        hi=exp["hi"],
        grid_points=exp["grid_points"],
        model=cfg.model,
        params=cfg.params,
        orders=cfg.orders,
        x0=cfg.x0,
        h=cfg.h,
        transient=cfg.transient,
        n_iter=exp["n_iter"],
        reorth_every=exp["reorth_every"],
        guard=cfg.guard,
        sample_transient=exp["sample_transient"],
        n_samples=exp["n_samples"],
        component=exp["component"],
        eps=exp["eps"],
    )


def _cmd_scan(cfg: RunConfig, args) -> int:
    plan = _build_plan(cfg)
    kind = cfg.experiment["kind"]
    svg_path = _svg_target(cfg, args)
    if kind == "scan":
        result = sweep.spectrum_scan(plan, workers=cfg.workers)
        dim = models.MODELS[cfg.model].dim
        header = (
            "param_value,"
            + ",".join(f"lambda_{i + 1}" for i in range(dim))
            + ",regime"
        )
        rows = (
            f"{_fmt(rec.value)},"
            + ",".join(_fmt(lam) for lam in rec.spectrum.exponents)
            + f",{rec.regime}"
            for rec in result.records
        )
        _write_csv(cfg.csv_path, header, rows)
        if svg_path is not None:
            values = [rec.value for rec in result.records]
            series = [
                [rec.spectrum.exponents[i] for rec in result.records]
                for i in range(dim)
            ]
            Path(svg_path).write_text(
                svgplot.polylines(values, series, xlabel=plan.target, ylabel="lambda")
            )
    else:
        result = sweep.bifurcation_scan(plan, workers=cfg.workers)
        rows = (
            f"{_fmt(rec.value)},{i},{_fmt(sample)}"
            for rec in result.records
            for i, sample in enumerate(rec.samples)
        )
        _write_csv(cfg.csv_path, "param_value,sample_index,component_value", rows)
        if svg_path is not None:
            xs = [rec.value for rec in result.records for _ in rec.samples]
            ys = [sample for rec in result.records for sample in rec.samples]
            Path(svg_path).write_text(
                svgplot.scatter(xs, ys, xlabel=plan.target, ylabel=result.component)
            )
    n_div = sum(1 for rec in result.records if rec.diverged)
    if n_div:
        print(f"{n_div} of {len(result.records)} grid points diverged", file=sys.stderr)
    return EXIT_OK


def _cmd_attractor(cfg: RunConfig, args) -> int:
    projection = cfg.experiment["projection"]
    grid = GridSpec(cfg.h, cfg.n_steps)
    trace = sweep.attractor_trace(
        cfg.params,
        cfg.orders,
        cfg.x0,
        grid,
        projection,
        transient=cfg.transient,
        guard=cfg.guard,
        model=cfg.model,
    )
    rows = (",".join(_fmt(v) for v in point) for point in trace.points)
    _write_csv(cfg.csv_path, "c1,c2,c3", rows)
    svg_path = _svg_target(cfg, args)
    if svg_path is not None:
        pts = trace.points
        a, b, c = projection
        Path(svg_path).write_text(
            svgplot.panels(
                [
                    (pts[:, 0], pts[:, 1], a, b),
                    (pts[:, 0], pts[:, 2], a, c),
                    (pts[:, 1], pts[:, 2], b, c),
                ]
            )
        )
    if trace.diverged:
        print("orbit diverged; trace truncated", file=sys.stderr)
        return EXIT_DIVERGED
    return EXIT_OK


COMMANDS = {
    "simulate": _cmd_simulate,
    "lyapunov": _cmd_lyapunov,
    "scan": _cmd_scan,
    "attractor": _cmd_attractor,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finchaos",
        description="Conformable-Euler simulation and Lyapunov analysis "
        "of financial chaos models.",
    )
    parser.add_argument("--version", action="version", version=f"finchaos {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "simulate": "integrate one trajectory and write it as CSV",
        "lyapunov": "compute the Lyapunov spectrum at one parameter point",
        "scan": "sweep a parameter (spectrum or bifurcation experiment)",
        "attractor": "record a post-transient 3-component projection",
    }
    for name, text in helps.items():
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("config", nargs="?", default=None, help="JSON config file")
        cmd.add_argument("--preset", default=None, help="named preset, e.g. paper-sec4")
        cmd.add_argument(
            "--override",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override a config key (dotted path, JSON-parsed value); repeatable",
        )
        cmd.add_argument("--output", default=None, help="CSV output path (overrides output.csv)")
        cmd.add_argument("--plot", action="store_true", help="also write an SVG plot")
        cmd.add_argument("--svg", default=None, help="SVG output path (implies nothing without --plot)")
        cmd.add_argument("--workers", type=int, default=None, help="worker processes for scans")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(
            args.config,
            args.preset,
            args.override,
            args.command,
            csv_path=args.output,
            svg_path=args.svg,
            workers=args.workers,
        )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](cfg, args)
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main(sys.argv[1:]))
