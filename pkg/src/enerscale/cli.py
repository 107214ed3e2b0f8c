"""Command-line surface: ingest -> reconstruct -> analyze -> project.

Usage
-----
```bash
enerscale ingest --out-dir out/canonical          # bundled manifest
enerscale ingest --manifest my_manifest.json --out-dir out/canonical
enerscale reconstruct --out-dir out/recon
enerscale calibrate
enerscale tables --table 2 --out-dir out/tables
enerscale project --preset paper-2017 --eta-c 0 --horizon 40 --out out/traj.csv
enerscale project --curve --from-w 100 --to-w 5000 --out out/curve.csv
enerscale report --out-dir out/report
```

Exit codes: 0 success, 1 runtime error, 2 validation failure, 64 usage error.
Every run writes a JSON manifest (command line, parameters, input checksums,
version, outputs); identical manifests reproduce byte-identical outputs, so
run manifests carry no timestamps. All numeric output uses shortest
round-trip decimal formatting.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__, datasets, tables
from .carbon import CarbonCycleParams
from .errors import EnerscaleError
from .ingestion import load_manifest, load_series, validate, write_series
from .projection import Scenario, committed_curve, run_scenario
from .reconstruction import (
    calibrate_initial_wealth,
    calibrate_initial_wealth_iterative,
)
from .scaling import scaling_series, scaling_stats
from .series import Period
from .units import Quantity, Unit

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_VALIDATION = 2
EXIT_USAGE = 64


class UsageError(Exception):
    """Raised for malformed command lines; mapped to exit code 64."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D102 - argparse hook
        raise UsageError(message)


def _fmt(value) -> str:
    """Shortest round-trip rendering for CSV cells."""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


@dataclass
class RunManifest:
    """Reproducibility record emitted alongside every command's outputs."""

    command: list[str]
    parameters: dict
    version: str = __version__
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)

    def add_input(self, path: Path) -> None:
        self.inputs[str(path)] = _sha256(path)

    def add_output(self, path: Path) -> None:
        if str(path) not in self.outputs:
            self.outputs.append(str(path))

    def write(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "version": self.version,
            "inputs": self.inputs,
            "outputs": sorted(self.outputs),
        }
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path


def _build_parser() -> _Parser:
    parser = _Parser(prog="enerscale", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_ingest = sub.add_parser("ingest", help="validate a manifest of series into canonical CSVs")
    p_ingest.add_argument("--manifest", type=Path, default=None,
                          help="series manifest (default: bundled snapshot)")
    p_ingest.add_argument("--out-dir", type=Path, required=True)

    p_recon = sub.add_parser("reconstruct", help="infill historical production and accumulate wealth")
    p_recon.add_argument("--out-dir", type=Path, required=True)

    p_cal = sub.add_parser("calibrate", help="report the PPP/MER ratio and initial wealth")
    p_cal.add_argument("--pop-growth", type=float, default=5.9e-4,
                       help="ancient population growth rate, 1/yr")
    p_cal.add_argument("--out", type=Path, default=None, help="optional JSON output path")

    p_tab = sub.add_parser("tables", help="reproduce a summary table")
    p_tab.add_argument("--table", type=int, required=True, help="table number, 1-5")
    p_tab.add_argument("--data-dir", type=Path, default=None,
                       help="directory with reconstruct outputs (default: recompute)")
    p_tab.add_argument("--out-dir", type=Path, default=Path("."))

    p_proj = sub.add_parser("project", help="run a forward scenario or the committed curve")
    p_proj.add_argument("--preset", default=None, help="named initial conditions, e.g. paper-2017")
    p_proj.add_argument("--eta-c", type=float, default=0.0, help="carbonization trend, 1/yr")
    p_proj.add_argument("--eta-w", type=float, default=None,
                        help="wealth growth rate, 1/yr (preset default 0.024)")
    p_proj.add_argument("--horizon", type=float, default=40.0, help="years to project")
    p_proj.add_argument("--dt", type=float, default=0.25, help="time step, years")
    p_proj.add_argument("--w0", type=float, default=None, help="initial wealth, T$2010")
    p_proj.add_argument("--lambda-gw", type=float, default=None,
                        help="scaling, GW per T$2010")
    p_proj.add_argument("--c0", type=float, default=None, help="carbonization, GtC/EJ")
    p_proj.add_argument("--delta0", type=float, default=None,
                        help="initial concentration perturbation, ppmv")
    p_proj.add_argument("--sigma", type=float, default=0.023, help="sink rate, 1/yr")
    p_proj.add_argument("--start-year", type=float, default=2017.0)
    p_proj.add_argument("--spinup", action="store_true",
                        help="integrate the observed emissions record for delta0")
    p_proj.add_argument("--curve", action="store_true",
                        help="emit the committed-equilibrium curve instead of a trajectory")
    p_proj.add_argument("--from-w", type=float, default=100.0)
    p_proj.add_argument("--to-w", type=float, default=5000.0)
    p_proj.add_argument("--points", type=int, default=50)
    p_proj.add_argument("--out", type=Path, required=True)

    p_rep = sub.add_parser("report", help="headline quantities as JSON plus aligned text")
    p_rep.add_argument("--out-dir", type=Path, required=True)
    return parser


def _cmd_ingest(args, manifest: RunManifest) -> int:
    manifest_path = args.manifest if args.manifest is not None else datasets.manifest_path()
    entries = load_manifest(manifest_path)
    manifest.add_input(manifest_path)
    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    any_invalid = False
    for name, entry in sorted(entries.items()):
        series = load_series(entry.descriptor)
        manifest.add_input(entry.descriptor.path)
        report = validate(series, require_contiguous=entry.contiguous)
        csv_path = write_series(series, out_dir / f"{name}.csv")
        report_path = out_dir / f"{name}.validation.json"
        report_path.write_text(
            json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        manifest.add_output(csv_path)
        manifest.add_output(report_path)
        if not report.is_empty():
            any_invalid = True
            print(f"validation failure in {name}: gaps={list(report.gaps)}", file=sys.stderr)
    manifest.write(out_dir / "run_manifest.json")
    return EXIT_VALIDATION if any_invalid else EXIT_OK


def _cmd_reconstruct(args, manifest: RunManifest) -> int:
    for entry in datasets.manifest().values():
        manifest.add_input(entry.descriptor.path)
    recon = datasets.baseline()
    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    gdp_path = write_series(recon.gdp, out_dir / "gdp_annual.csv", value_column="gdp")
    wealth_path = write_series(recon.wealth.series, out_dir / "wealth.csv", value_column="wealth")
    provenance = {
        "w1_tusd": recon.w1.value,
        "kappa_x": recon.ratio.value,
        "kappa_x_window": [recon.ratio.window.start_year, recon.ratio.window.end_year],
        "spline_knot_years": list(recon.spline_knot_years),
        "method": recon.wealth.method,
    }
    prov_path = out_dir / "reconstruction.json"
    prov_path.write_text(json.dumps(provenance, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    for p in (gdp_path, wealth_path, prov_path):
        manifest.add_output(p)
    manifest.write(out_dir / "run_manifest.json")
    return EXIT_OK


def _cmd_calibrate(args, manifest: RunManifest) -> int:
    recon = datasets.baseline()
    closed = calibrate_initial_wealth(recon.gdp, args.pop_growth)
    iterative = calibrate_initial_wealth_iterative(recon.gdp, args.pop_growth)
    payload = {
        "kappa_x": recon.ratio.value,
        "pop_growth": args.pop_growth,
        "w1_closed_form_tusd": closed.value,
        "w1_iterative_tusd": iterative.value,
        "production_year1_tusd": recon.gdp.value_at(1),
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text)
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text + "\n", encoding="utf-8")
        manifest.add_output(args.out)
        manifest.write(args.out.with_suffix(".manifest.json"))
    return EXIT_OK


def _tables_inputs(data_dir: Path | None):
    """Snapshot plus either recomputed or on-disk reconstruction outputs."""
    snapshot = datasets.load_snapshot()
    if data_dir is None:
        return snapshot, datasets.baseline()
    for required in ("gdp_annual.csv", "wealth.csv", "reconstruction.json"):
        if not (data_dir / required).exists():
            raise EnerscaleError(
                f"missing reconstruction output {data_dir / required}; run `enerscale reconstruct`"
            )
    from .ingestion import canonical_descriptor
    from .reconstruction import ReconstructionResult, WealthSeries, PppMerRatio
    from .series import SeriesKind

    gdp = load_series(canonical_descriptor(data_dir / "gdp_annual.csv",
                                           SeriesKind.GDP_MER, Unit.TUSD_PER_YR, "gdp"))
    wealth_series = load_series(canonical_descriptor(data_dir / "wealth.csv",
                                                     SeriesKind.WEALTH, Unit.TUSD, "wealth"))
    prov = json.loads((data_dir / "reconstruction.json").read_text(encoding="utf-8"))
    wealth = WealthSeries(
        series=wealth_series,
        w1=Quantity(prov["w1_tusd"], Unit.TUSD),
        method=prov.get("method", "loaded from disk"),
    )
    recon = ReconstructionResult(
        gdp=gdp,
        wealth=wealth,
        ratio=PppMerRatio(prov["kappa_x"], Period(*prov["kappa_x_window"])),
        w1=wealth.w1,
        spline_knot_years=tuple(prov.get("spline_knot_years", ())),
    )
    return snapshot, recon


def _cmd_tables(args, manifest: RunManifest) -> int:
    if args.table not in (1, 2, 3, 4, 5):
        raise UsageError(f"--table must be 1-5, got {args.table}")
    snapshot, recon = _tables_inputs(args.data_dir)
    result = tables.build_table(args.table, snapshot, recon)
    out_dir: Path = args.out_dir
    csv_path = _write_rows(out_dir / f"table{args.table}.csv", result.header, result.rows)
    text = tables.render_text(result)
    text_path = out_dir / f"table{args.table}.txt"
    text_path.write_text(text, encoding="utf-8")
    print(text, end="")
    manifest.add_output(csv_path)
    manifest.add_output(text_path)
    manifest.write(out_dir / f"table{args.table}.manifest.json")
    return EXIT_OK


def _scenario_from_args(args) -> Scenario:
    params = CarbonCycleParams(sigma=args.sigma)
    eta_w = args.eta_w if args.eta_w is not None else datasets.PRESET_GROWTH
    if args.preset is not None:
        try:
            base = datasets.preset_scenario(
                args.preset, eta_c=args.eta_c, eta_w=eta_w,
                horizon_years=args.horizon, dt=args.dt,
                carbon_params=params, spinup=args.spinup,
            )
        except KeyError as exc:
            raise UsageError(str(exc)) from None
        return base
    missing = [flag for flag, value in
               [("--w0", args.w0), ("--lambda-gw", args.lambda_gw), ("--c0", args.c0),
                ("--delta0", args.delta0)] if value is None]
    if missing:
        raise UsageError(
            "either --preset or explicit initial conditions are required; missing: "
            + ", ".join(missing)
        )
    return Scenario(
        start_year=args.start_year,
        horizon_years=args.horizon,
        w0=args.w0,
        lambda_gw=args.lambda_gw,
        c0=args.c0,
        eta_w=eta_w,
        eta_c=args.eta_c,
        delta0=args.delta0,
        carbon_params=params,
        dt=args.dt,
    )


def _cmd_project(args, manifest: RunManifest) -> int:
    out: Path = args.out
    if args.curve:
        if args.from_w <= 0 or args.to_w <= args.from_w or args.points < 2:
            raise EnerscaleError("curve needs 0 < from-w < to-w and at least 2 points")
        scenario = _scenario_from_args(args)
        step = (args.to_w - args.from_w) / (args.points - 1)
        w_values = [args.from_w + i * step for i in range(args.points)]
        pairs = committed_curve(
            w_values,
            Quantity(scenario.lambda_gw, Unit.GW_PER_TUSD),
            Quantity(scenario.c0, Unit.GTC_PER_EJ),
            scenario.carbon_params,
        )
        rows = [
            (w, d, scenario.carbon_params.preindustrial + d) for w, d in pairs
        ]
        _write_rows(out, ("wealth_tusd", "committed_delta_ppmv", "committed_concentration_ppmv"), rows)
    else:
        scenario = _scenario_from_args(args)
        trajectory = run_scenario(scenario)
        rows = [
            (
                p.year, p.wealth, p.energy_ej, p.emissions_gtc, p.delta_co2,
                p.committed_delta, p.concentration, p.committed_concentration,
            )
            for p in trajectory.points
        ]
        _write_rows(
            out,
            (
                "year", "wealth_tusd", "energy_ej_per_yr", "emissions_gtc_per_yr",
                "delta_co2_ppmv", "committed_delta_ppmv", "concentration_ppmv",
                "committed_concentration_ppmv",
            ),
            rows,
        )
    manifest.parameters["scenario"] = {
        "start_year": scenario.start_year,
        "horizon_years": scenario.horizon_years,
        "w0": scenario.w0,
        "lambda_gw": scenario.lambda_gw,
        "c0": scenario.c0,
        "eta_w": scenario.eta_w,
        "eta_c": scenario.eta_c,
        "delta0": scenario.delta0,
        "dt": scenario.dt,
        "sigma": scenario.carbon_params.sigma,
        "kappa_a": scenario.carbon_params.kappa_a,
        "preindustrial": scenario.carbon_params.preindustrial,
    }
    manifest.add_output(out)
    manifest.write(out.with_suffix(out.suffix + ".manifest.json"))
    return EXIT_OK


def _cmd_report(args, manifest: RunManifest) -> int:
    from .projection import halving_time, required_clean_capacity

    snapshot = datasets.load_snapshot()
    recon = datasets.baseline()
    lam = scaling_series(snapshot.energy, recon.wealth)
    stats = scaling_stats(lam, Period(1980, 2017))
    w2017 = recon.wealth.value_at(2017)
    gdp_by_year = dict(zip(recon.gdp.years, recon.gdp.values))
    scenario = datasets.preset_scenario()
    trajectory = run_scenario(scenario)
    crossing = trajectory.first_crossing(2.0 * scenario.carbon_params.preindustrial)
    capacity = required_clean_capacity(
        Quantity(snapshot.energy.value_at(2017), Unit.EJ_PER_YR), datasets.PRESET_GROWTH
    )
    payload = {
        "scaling_mean_gw_per_tusd": stats.mean.value,
        "scaling_std": stats.std.value,
        "scaling_ci95_halfwidth": stats.ci95_halfwidth.value,
        "scaling_trend_per_yr": stats.trend_per_year,
        "w1_tusd": recon.w1.value,
        "wealth_2017_tusd": w2017,
        "share_first_millennium": sum(v for y, v in gdp_by_year.items() if y <= 1000) / w2017,
        "share_1980_2017": sum(v for y, v in gdp_by_year.items() if y >= 1980) / w2017,
        "committed_concentration_2017_ppmv": trajectory.points[0].committed_concentration,
        "committed_doubling_year": crossing,
        "committed_concentration_2040_ppmv": trajectory.at_year(2040.0).committed_concentration,
        "halving_time_yr": halving_time(scenario.carbon_params),
        "clean_capacity_gw_per_yr": capacity.gw_per_year,
        "clean_capacity_gw_per_day": capacity.gw_per_day,
    }
    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = out_dir / "report.json"
    report_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    width = max(len(k) for k in payload)
    lines = [f"{k.ljust(width)}  {_fmt(v)}" for k, v in sorted(payload.items())]
    text = "\n".join(lines) + "\n"
    print(text, end="")
    manifest.add_output(report_path)
    manifest.write(out_dir / "run_manifest.json")
    return EXIT_OK


_COMMANDS = {
    "ingest": _cmd_ingest,
    "reconstruct": _cmd_reconstruct,
    "calibrate": _cmd_calibrate,
    "tables": _cmd_tables,
    "project": _cmd_project,
    "report": _cmd_report,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        manifest = RunManifest(
            command=["enerscale"] + argv,
            parameters={k: str(v) for k, v in vars(args).items() if k != "subcommand"},
        )
        return _COMMANDS[args.subcommand](args, manifest)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnerscaleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def console_main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
