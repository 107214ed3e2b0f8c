import csv
import json

import pytest

from enerscale.cli import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, EXIT_VALIDATION, main
from enerscale.ingestion import canonical_descriptor, load_series
from enerscale.series import SeriesKind
from enerscale.units import Unit


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


# -------------------------------------------------------------------- ingest

def test_ingest_bundled_snapshot(tmp_path):
    out = tmp_path / "canon"
    assert main(["ingest", "--out-dir", str(out)]) == EXIT_OK
    names = {
        "gdp_mer", "gdp_ppp", "energy_consumption", "energy_production",
        "emissions", "population", "concentration",
    }
    for name in names:
        assert (out / f"{name}.csv").exists()
        report = json.loads((out / f"{name}.validation.json").read_text())
        assert report["empty"] is True
    manifest = json.loads((out / "run_manifest.json").read_text())
    assert len(manifest["inputs"]) == len(names) + 1  # series + manifest itself
    assert manifest["version"]


def test_ingest_missing_manifest_path(tmp_path, capsys):
    missing = tmp_path / "nowhere.json"
    code = main(["ingest", "--manifest", str(missing), "--out-dir", str(tmp_path / "o")])
    assert code == EXIT_RUNTIME
    assert str(missing) in capsys.readouterr().err


def test_ingest_gap_series_exits_2(tmp_path, capsys):
    data = tmp_path / "gappy.csv"
    data.write_text("year,value\n2000,1.0\n2003,2.0\n", encoding="utf-8")
    manifest = tmp_path / "manifest.json"
    manifest.write_text(json.dumps({
        "gappy": {"path": "gappy.csv", "kind": "energy", "unit": "EJ/yr",
                   "contiguous": True}
    }), encoding="utf-8")
    out = tmp_path / "out"
    assert main(["ingest", "--manifest", str(manifest), "--out-dir", str(out)]) == EXIT_VALIDATION
    report = json.loads((out / "gappy.validation.json").read_text())
    assert report["gaps"] == [[2001, 2002]]
    assert "gappy" in capsys.readouterr().err


# --------------------------------------------------------------- reconstruct

def test_reconstruct_outputs(tmp_path, recon):
    out = tmp_path / "recon"
    assert main(["reconstruct", "--out-dir", str(out)]) == EXIT_OK
    gdp = load_series(canonical_descriptor(out / "gdp_annual.csv",
                                           SeriesKind.GDP_MER, Unit.TUSD_PER_YR, "gdp"))
    assert gdp == recon.gdp
    prov = json.loads((out / "reconstruction.json").read_text())
    assert prov["w1_tusd"] == pytest.approx(250.0, abs=5.0)
    assert prov["kappa_x"] == pytest.approx(1.205, abs=0.01)
    assert prov["spline_knot_years"][0] == 1


# ----------------------------------------------------------------- calibrate

def test_calibrate_prints_json(capsys):
    assert main(["calibrate"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["w1_closed_form_tusd"] == pytest.approx(payload["w1_iterative_tusd"])


# -------------------------------------------------------------------- tables

def test_tables_all_ids(tmp_path):
    for table_id in (1, 2, 3, 4, 5):
        out = tmp_path / f"t{table_id}"
        assert main(["tables", "--table", str(table_id), "--out-dir", str(out)]) == EXIT_OK
        assert (out / f"table{table_id}.csv").exists()
        assert (out / f"table{table_id}.txt").exists()


def test_tables_rejects_unknown_id(tmp_path, capsys):
    code = main(["tables", "--table", "9", "--out-dir", str(tmp_path)])
    assert code == EXIT_USAGE
    assert "usage error" in capsys.readouterr().err


def test_tables_from_reconstruction_dir(tmp_path):
    recon_dir = tmp_path / "recon"
    assert main(["reconstruct", "--out-dir", str(recon_dir)]) == EXIT_OK
    out = tmp_path / "tables"
    assert main(["tables", "--table", "1", "--data-dir", str(recon_dir),
                 "--out-dir", str(out)]) == EXIT_OK
    fresh = tmp_path / "tables_fresh"
    assert main(["tables", "--table", "1", "--out-dir", str(fresh)]) == EXIT_OK
    assert (out / "table1.csv").read_bytes() == (fresh / "table1.csv").read_bytes()


def test_tables_missing_reconstruction_inputs(tmp_path, capsys):
    code = main(["tables", "--table", "1", "--data-dir", str(tmp_path / "void"),
                 "--out-dir", str(tmp_path)])
    assert code == EXIT_RUNTIME
    assert "reconstruct" in capsys.readouterr().err


def test_table1_rows_match_library(tmp_path, snapshot, recon):
    from enerscale.scaling import scaling_series, scaling_stats
    from enerscale.series import Period

    out = tmp_path / "t1"
    main(["tables", "--table", "1", "--out-dir", str(out)])
    rows = read_rows(out / "table1.csv")
    assert [r["period"] for r in rows] == [
        "1980-1990", "1990-2000", "2000-2010", "2010-2017", "1980-2010", "1980-2017",
    ]
    lam = scaling_series(snapshot.energy, recon.wealth)
    expected = scaling_stats(lam, Period(1980, 2017)).mean.value
    assert float(rows[-1]["mean"]) == expected  # repr round-trip is lossless


# ------------------------------------------------------------------- project

def test_project_requires_initial_conditions(tmp_path, capsys):
    code = main(["project", "--out", str(tmp_path / "t.csv")])
    assert code == EXIT_USAGE
    assert "--w0" in capsys.readouterr().err


def test_project_rejects_bad_dt(tmp_path, capsys):
    code = main(["project", "--preset", "paper-2017", "--dt", "0",
                 "--out", str(tmp_path / "t.csv")])
    assert code == EXIT_RUNTIME
    assert "dt must be in (0, 1]" in capsys.readouterr().err


def test_project_unknown_preset(tmp_path, capsys):
    code = main(["project", "--preset", "mystery", "--out", str(tmp_path / "t.csv")])
    assert code == EXIT_USAGE


def test_project_trajectory_milestones(tmp_path):
    out = tmp_path / "traj.csv"
    assert main(["project", "--preset", "paper-2017", "--eta-c", "0",
                 "--horizon", "23", "--out", str(out)]) == EXIT_OK
    rows = read_rows(out)
    assert rows[0]["year"] == "2017.0"
    by_year = {float(r["year"]): r for r in rows}
    committed_2030 = float(by_year[2030.0]["committed_concentration_ppmv"])
    assert committed_2030 == pytest.approx(550.0, abs=15.0)
    manifest = json.loads((out.parent / "traj.csv.manifest.json").read_text())
    assert manifest["parameters"]["scenario"]["eta_c"] == 0.0


def test_project_curve_monotone(tmp_path):
    out = tmp_path / "curve.csv"
    assert main(["project", "--preset", "paper-2017", "--curve", "--from-w", "100",
                 "--to-w", "5000", "--points", "25", "--out", str(out)]) == EXIT_OK
    rows = read_rows(out)
    assert len(rows) == 25
    deltas = [float(r["committed_delta_ppmv"]) for r in rows]
    assert deltas == sorted(deltas)
    assert all(b > a for a, b in zip(deltas, deltas[1:]))


def test_project_outputs_parse_through_ingestion(tmp_path):
    out = tmp_path / "traj.csv"
    main(["project", "--preset", "paper-2017", "--horizon", "10", "--dt", "1",
          "--out", str(out)])
    # integer-stepped trajectories round-trip through the series parser
    rows = read_rows(out)
    rewritten = tmp_path / "wealth_only.csv"
    with open(rewritten, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["year", "value"])
        for row in rows:
            writer.writerow([int(float(row["year"])), row["wealth_tusd"]])
    series = load_series(canonical_descriptor(rewritten, SeriesKind.WEALTH, Unit.TUSD))
    assert len(series) == 11
    assert series.values[0] == float(rows[0]["wealth_tusd"])


# ------------------------------------------------------------------- report

def test_report_payload(tmp_path):
    out = tmp_path / "rep"
    assert main(["report", "--out-dir", str(out)]) == EXIT_OK
    payload = json.loads((out / "report.json").read_text())
    assert 5.7 <= payload["scaling_mean_gw_per_tusd"] <= 6.1
    assert payload["halving_time_yr"] == pytest.approx(30.14, abs=0.01)


# ------------------------------------------------------------ reproducibility

def test_repeated_runs_are_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["project", "--preset", "paper-2017", "--eta-c", "0",
                     "--horizon", "40", "--out", str(out / "traj.csv")]) == EXIT_OK
        assert main(["tables", "--table", "2", "--out-dir", str(out)]) == EXIT_OK
        assert main(["reconstruct", "--out-dir", str(out / "recon")]) == EXIT_OK
    for rel in ("traj.csv", "table2.csv", "recon/wealth.csv", "recon/gdp_annual.csv",
                "recon/reconstruction.json"):
        assert (a / rel).read_bytes() == (b / rel).read_bytes(), rel
    # run manifests for identical commands are identical apart from paths
    ma = json.loads((a / "traj.csv.manifest.json").read_text())
    mb = json.loads((b / "traj.csv.manifest.json").read_text())
    assert ma["parameters"]["scenario"] == mb["parameters"]["scenario"]


def test_usage_error_exit_code():
    assert main(["frobnicate"]) == EXIT_USAGE
