"""Command-line front end.

Subcommands: ldos, coupling, amplitudes, spectrum, concurrence, sweep,
oracle-check, reproduce-figure.  Every run writes its outputs plus a JSON
manifest into --output-dir.  Floats are written with 17 significant
digits so reruns produce byte-identical files.

Exit codes: 0 success, 2 validation/configuration error, 3 numerical
error (including an oracle check beyond threshold).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .bath import (
    build_bath,
    compare_to_analytic,
    default_dt,
    default_probes,
    default_t_final,
    integrate,
)
from .cascade import FrequencyGrid, amplitude_grid
from .config import SimulationConfig, load_config
from .errors import ConfigError, NumericalError, SingularityError, ValidationError
from .figures import FIGURE_IDS, figure_tables, coupling_row, spectrum_table
from .greens import ldos_curve
from .pipeline import build_system
from .sweeps import SweepPoint, concurrence_sweep, parse_sweep_spec
from .units import ATOMIC

_EXIT_OK = 0
_EXIT_VALIDATION = 2
_EXIT_NUMERICAL = 3


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return f"{float(value):.16e}"


class _Run:
    """Collects outputs and warnings, then writes the manifest."""

    def __init__(self, subcommand: str, outdir: Path, config: SimulationConfig):
        self.subcommand = subcommand
        self.outdir = outdir
        self.config = config
        self.outputs: list[str] = []
        self.warnings: list[str] = []
        self.start = time.monotonic()

    def path(self, name: str) -> Path:
        self.outdir.mkdir(parents=True, exist_ok=True)
        target = (self.outdir / name).resolve()
        if self.outdir.resolve() not in target.parents and target != self.outdir.resolve():
            raise ValidationError(f"output path escapes --output-dir: {name}")
        return target

    def write_csv(self, name: str, header: list[str], rows) -> Path:
        target = self.path(name)
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        target.write_text("\n".join(lines) + "\n")
        self.outputs.append(target.name)
        return target

    def write_text(self, name: str, text: str) -> Path:
        target = self.path(name)
        target.write_text(text)
        self.outputs.append(target.name)
        return target

    def finish(self) -> Path:
        manifest = {
            "tool": "plasmon-cascade",
            "version": __version__,
            "subcommand": self.subcommand,
            "config": {k: (str(v) if isinstance(v, complex) else v)
                       for k, v in self.config.raw.items()},
            "outputs": self.outputs,
            "duration_s": time.monotonic() - self.start,
            "warnings": self.warnings,
        }
        target = self.path(f"manifest_{self.subcommand.replace('-', '_')}.json")
        target.write_text(json.dumps(manifest, indent=2) + "\n")
        return target


def _columns_to_rows(table: dict) -> tuple[list[str], list[tuple]]:
    header = list(table.keys())
    length = len(next(iter(table.values())))
    rows = [tuple(table[k][i] for k in header) for i in range(length)]
    return header, rows


def _dict_rows(rows: list[dict], columns: list[str]) -> list[tuple]:
    return [tuple(row[c] for c in columns) for row in rows]


def _parse_range(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"expected START:STOP:COUNT, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ValidationError(f"bad range {text!r}: {exc}") from exc
    if count < 2:
        raise ValidationError(f"range needs at least 2 points, got {count}")
    return np.linspace(start, stop, count)


def _apply_overrides(config: SimulationConfig, args) -> SimulationConfig:
    updates = {}
    if getattr(args, "paper_literal_kappa", False):
        updates["paper_literal_kappa"] = True
    if getattr(args, "window_mode", None):
        updates["window_mode"] = args.window_mode
    if updates:
        config = config.with_cascade(**updates)
    radius = getattr(args, "radius_nm", None)
    distance = getattr(args, "distance_nm", None)
    if radius is not None or distance is not None:
        config = config.with_geometry(radius_nm=radius, distance_nm=distance)
    return config


def _cmd_ldos(args, config: SimulationConfig, run: _Run) -> int:
    omega_ev = _parse_range(args.omega_ev)
    curve = ldos_curve(config.geometry, config.material,
                       ATOMIC.ev_to_internal(omega_ev[0]),
                       ATOMIC.ev_to_internal(omega_ev[-1]),
                       len(omega_ev))
    rows = [(ATOMIC.internal_to_ev(w), v)
            for w, v in zip(curve.frequencies, curve.scaled_ldos)]
    run.write_csv("ldos.csv", ["omega_ev", "scaled_ldos"], rows)
    return _EXIT_OK


def _cmd_coupling(args, config: SimulationConfig, run: _Run) -> int:
    ratios = _parse_range(args.h_over_r)
    radius_nm = (args.radius_nm if args.radius_nm is not None
                 else ATOMIC.internal_to_nm(config.geometry.radius))
    rows = []
    for ratio in ratios:
        row = coupling_row(config, radius_nm, ratio * radius_nm)
        rows.append((row["h_over_r"], row["g_mev"], row["gamma_ex_mev"],
                     row["kappa_mev"]))
    run.write_csv("coupling.csv",
                  ["h_over_r", "g_mev", "gamma_ex_mev", "kappa_mev"], rows)
    return _EXIT_OK


def _make_grid(config: SimulationConfig, params) -> FrequencyGrid:
    if config.cascade.grid_halfspan > 0:
        return FrequencyGrid.zoomed(params, config.cascade.grid_halfspan,
                                    config.cascade.grid_points)
    return FrequencyGrid.spanning(params, points=config.cascade.grid_points)


def _cmd_amplitudes(args, config: SimulationConfig, run: _Run) -> int:
    system = build_system(config)
    run.warnings.extend(system.warnings)
    grid = _make_grid(config, system.params)
    agrid = amplitude_grid(system.params, grid)
    if args.format == "json":
        payload = {
            "grid": {
                "m_axis_ev": [ATOMIC.internal_to_ev(v) for v in grid.m_axis],
                "n_axis_ev": [ATOMIC.internal_to_ev(v) for v in grid.n_axis],
            },
            "c_x_re": agrid.c_x.real.tolist(),
            "c_x_im": agrid.c_x.imag.tolist(),
            "c_y_re": agrid.c_y.real.tolist(),
            "c_y_im": agrid.c_y.imag.tolist(),
        }
        run.write_text("amplitudes.json", json.dumps(payload) + "\n")
        return _EXIT_OK
    rows = []
    for i, wm in enumerate(grid.m_axis):
        for j, wn in enumerate(grid.n_axis):
            rows.append((ATOMIC.internal_to_ev(wm), ATOMIC.internal_to_ev(wn),
                         agrid.c_x[i, j].real, agrid.c_x[i, j].imag,
                         agrid.c_y[i, j].real, agrid.c_y[i, j].imag))
    run.write_csv("amplitudes.csv",
                  ["omega_m_ev", "omega_n_ev", "re_cx", "im_cx", "re_cy", "im_cy"],
                  rows)
    return _EXIT_OK


def _cmd_spectrum(args, config: SimulationConfig, run: _Run) -> int:
    radius_nm = (args.radius_nm if args.radius_nm is not None
                 else ATOMIC.internal_to_nm(config.geometry.radius))
    h_nm = (args.distance_nm if args.distance_nm is not None
            else ATOMIC.internal_to_nm(config.geometry.distance))
    table, system = spectrum_table(config, radius_nm, h_nm)
    run.warnings.extend(system.warnings)
    header, rows = _columns_to_rows(table)
    run.write_csv("spectrum.csv", header, rows)
    return _EXIT_OK


_CONCURRENCE_COLUMNS = ["r_nm", "h_nm", "h_over_r", "w_mev", "gamma_prime_abs",
                        "concurrence", "t_weight", "h_weight"]


def _cmd_concurrence(args, config: SimulationConfig, run: _Run) -> int:
    point = SweepPoint(
        r_nm=ATOMIC.internal_to_nm(config.geometry.radius),
        h_nm=ATOMIC.internal_to_nm(config.geometry.distance),
        w_mev=(args.filter_width_mev if args.filter_width_mev is not None
               else ATOMIC.internal_to_mev(config.cascade.filter_width)),
    )
    rows = concurrence_sweep(config, [point], workers=1)
    row = rows[0]
    if row["error"]:
        raise NumericalError(row["error"])
    run.warnings.extend(w for w in row["warnings"].split("; ") if w)
    run.write_csv("concurrence.csv", _CONCURRENCE_COLUMNS,
                  _dict_rows(rows, _CONCURRENCE_COLUMNS))
    if args.report in ("gamma-prime", "both"):
        print(f"gamma_prime_abs = {row['gamma_prime_abs']:.6f}")
    if args.report in ("concurrence", "both"):
        print(f"concurrence = {row['concurrence']:.6f}")
    return _EXIT_OK


def _cmd_sweep(args, config: SimulationConfig, run: _Run) -> int:
    spec_path = Path(args.spec)
    if not spec_path.exists():
        raise ConfigError(f"sweep spec not found: {spec_path}")
    points = parse_sweep_spec(spec_path.read_text(), config, source=str(spec_path))
    rows = concurrence_sweep(config, points, workers=args.workers)
    columns = _CONCURRENCE_COLUMNS + ["error"]
    run.write_csv("concurrence_sweep.csv", columns, _dict_rows(rows, columns))
    return _EXIT_OK


def _cmd_oracle_check(args, config: SimulationConfig, run: _Run) -> int:
    system = build_system(config)
    run.warnings.extend(system.warnings)
    params = system.params
    bath = build_bath(params, args.modes)
    probes = default_probes(params, bath)
    dt = default_dt(params) * args.dt_scale
    t_final = default_t_final(params) * args.t_final_scale
    final = integrate(params, bath, t_final, dt, probes=probes,
                      c2_damping=args.c2_damping)
    report = compare_to_analytic(final, bath, params,
                                 c2_damping=args.c2_damping, dt=dt,
                                 t_final=t_final)
    text = report.to_json()
    print(text)
    run.write_text("oracle_report.json", text + "\n")
    if report.mean_error > args.threshold:
        print(f"mean relative error {report.mean_error:.3%} exceeds threshold "
              f"{args.threshold:.3%}", file=sys.stderr)
        return _EXIT_NUMERICAL
    return _EXIT_OK


def _cmd_reproduce_figure(args, config: SimulationConfig, run: _Run) -> int:
    tables, note = figure_tables(args.figure, config, workers=args.workers)
    for stem, table in tables.items():
        if isinstance(table, dict):
            header, rows = _columns_to_rows(table)
        else:
            header = _CONCURRENCE_COLUMNS + ["error"]
            rows = _dict_rows(table, header)
        run.write_csv(f"{stem}.csv", header, rows)
    run.write_text(f"fig{args.figure}_params.txt",
                   f"figure: {args.figure}\n{note}\n")
    return _EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plasmon-cascade",
        description="Entangled-photon-pair simulator for an emitter cascade "
                    "coupled to nanoparticle plasmons")
    parser.add_argument("--config", default=None, help="config file path")
    parser.add_argument("--output-dir", default=".", help="directory for outputs")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--paper-literal-kappa", action="store_true",
                        help="use the x-channel linewidth in both channel factors")
    parser.add_argument("--window-mode", choices=["product", "single"], default=None)
    parser.add_argument("--report", choices=["gamma-prime", "concurrence", "both"],
                        default="both")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("ldos", help="scaled LDOS vs photon energy")
    p.add_argument("--radius-nm", type=float, default=None)
    p.add_argument("--distance-nm", type=float, default=None)
    p.add_argument("--omega-ev", default="2:4:2001", help="START:STOP:COUNT")
    p.set_defaults(func=_cmd_ldos)

    p = sub.add_parser("coupling", help="coupling strength and decay rate vs h/R")
    p.add_argument("--radius-nm", type=float, default=None)
    p.add_argument("--h-over-r", default="1.4:4:27", help="START:STOP:COUNT")
    p.set_defaults(func=_cmd_coupling)

    p = sub.add_parser("amplitudes", help="two-photon amplitude grid")
    p.add_argument("--radius-nm", type=float, default=None)
    p.add_argument("--distance-nm", type=float, default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_amplitudes)

    p = sub.add_parser("spectrum", help="marginal photon spectra")
    p.add_argument("--radius-nm", type=float, default=None)
    p.add_argument("--distance-nm", type=float, default=None)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("concurrence", help="filtered entanglement of one geometry")
    p.add_argument("--radius-nm", type=float, default=None)
    p.add_argument("--distance-nm", type=float, default=None)
    p.add_argument("--filter-width-mev", type=float, default=None)
    p.set_defaults(func=_cmd_concurrence)

    p = sub.add_parser("sweep", help="concurrence over a sweep-spec file")
    p.add_argument("--spec", required=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("oracle-check",
                       help="discretized-bath time integration vs analytic amplitudes")
    p.add_argument("--radius-nm", type=float, default=None)
    p.add_argument("--distance-nm", type=float, default=None)
    p.add_argument("--modes", type=int, default=400)
    p.add_argument("--threshold", type=float, default=0.05)
    p.add_argument("--dt-scale", type=float, default=1.0)
    p.add_argument("--t-final-scale", type=float, default=1.0)
    p.add_argument("--c2-damping", choices=["printed", "exciton"], default="printed")
    p.set_defaults(func=_cmd_oracle_check)

    p = sub.add_parser("reproduce-figure", help="emit the data grid of a figure")
    p.add_argument("figure", choices=list(FIGURE_IDS))
    p.set_defaults(func=_cmd_reproduce_figure)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        config = _apply_overrides(config, args)
        outdir = Path(args.output_dir)
        runner = _Run(args.subcommand, outdir, config)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            status = args.func(args, config, runner)
        runner.warnings.extend(str(w.message) for w in caught)
        runner.finish()
        return status
    except (ConfigError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_VALIDATION
    except (NumericalError, SingularityError, ArithmeticError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return _EXIT_NUMERICAL


def main() -> None:
    sys.exit(run())
