"""Tests for the command line surface: exit codes, formats, determinism."""

import json

import pytest

from phasegeo.cli import main
from phasegeo.io import read_reports_csv

STATE_JSON = json.dumps(
    {
        "dimension": 2,
        "hbar": 1.0,
        "matrix": [[[0.75, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.25, 0.0]]],
    }
)

SPIN_OBSERVABLES_JSON = json.dumps(
    {
        "observables": [
            {"name": "Sx", "matrix": [[[0, 0], [0.5, 0]], [[0.5, 0], [0, 0]]]},
            {"name": "Sy", "matrix": [[[0, 0], [0, -0.5]], [[0, 0.5], [0, 0]]]},
            {"name": "Sz", "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]]},
        ]
    }
)


def _value(stdout, label):
    for line in stdout.splitlines():
        if line.startswith(label):
            return float(line.split("=")[-1])
    raise AssertionError(f"label {label!r} not found in output")


class TestDemoSpin:
    def test_reference_point(self, capsys):
        assert main(["demo", "spin", "--p1", "0.75", "--hbar", "1"]) == 0
        out = capsys.readouterr().out
        assert _value(out, "poisson bracket") == pytest.approx(0.25, abs=1e-10)
        assert _value(out, "riemann bracket") == pytest.approx(0.0, abs=1e-10)
        assert _value(out, "geometric_bound") == pytest.approx(0.125, abs=1e-10)
        assert _value(out, "rs_bound") == pytest.approx(0.125, abs=1e-10)
        assert _value(out, "product") == pytest.approx(0.25, abs=1e-10)
        assert "X_Sx horizontal" in out

    def test_degenerate_point_is_vertical(self, capsys):
        assert main(["demo", "spin", "--p1", "0.5"]) == 0
        out = capsys.readouterr().out
        assert "X_Sx vertical, X_Sy vertical" in out
        assert _value(out, "poisson bracket") == pytest.approx(0.0, abs=1e-10)
        assert _value(out, "geometric_bound") == pytest.approx(0.0, abs=1e-10)

    def test_near_pure_point(self, capsys):
        assert main(["demo", "spin", "--p1", "0.999"]) == 0
        out = capsys.readouterr().out
        assert _value(out, "geometric_bound") == pytest.approx(
            0.25 * (0.999 - 0.001), abs=1e-10
        )

    def test_out_of_range_p1_is_usage_error(self):
        with pytest.raises(SystemExit) as err:
            main(["demo", "spin", "--p1", "1.5"])
        assert err.value.code == 2

    def test_nonpositive_hbar_is_usage_error(self):
        with pytest.raises(SystemExit) as err:
            main(["demo", "spin", "--p1", "0.5", "--hbar", "0"])
        assert err.value.code == 2


class TestAnalyze:
    @pytest.fixture()
    def files(self, tmp_path):
        state = tmp_path / "state.json"
        state.write_text(STATE_JSON)
        obs = tmp_path / "obs.json"
        obs.write_text(SPIN_OBSERVABLES_JSON)
        return str(state), str(obs)

    def test_spin_triple_produces_three_reports(self, files, capsys):
        state, obs = files
        assert main(["analyze", "--state", state, "--observables", obs]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["reports"]) == 3
        first = doc["reports"][0]
        assert (first["a"], first["b"]) == ("Sx", "Sy")
        assert first["geometric_bound"] == pytest.approx(0.125, abs=1e-10)
        assert first["rs_bound"] == pytest.approx(0.125, abs=1e-10)

    def test_csv_format(self, files, tmp_path, capsys):
        state, obs = files
        out_path = tmp_path / "reports.csv"
        code = main(
            ["analyze", "--state", state, "--observables", obs,
             "--output", str(out_path), "--format", "csv"]
        )
        assert code == 0
        with open(out_path) as fh:
            records = read_reports_csv(fh, ("a", "b"))
        assert len(records) == 3
        assert records[0]["a"] == "Sx"

    def test_single_observable_warns_but_succeeds(self, tmp_path, capsys):
        state = tmp_path / "state.json"
        state.write_text(STATE_JSON)
        obs = tmp_path / "one.json"
        obs.write_text(
            json.dumps(
                {"observables": [{"name": "Sx", "matrix": [[[0, 0], [0.5, 0]], [[0.5, 0], [0, 0]]]}]}
            )
        )
        assert main(["analyze", "--state", str(state), "--observables", str(obs)]) == 0
        captured = capsys.readouterr()
        assert "fewer than two observables" in captured.err
        assert json.loads(captured.out)["reports"] == []

    def test_malformed_entry_exits_2_naming_index(self, tmp_path, capsys):
        state = tmp_path / "state.json"
        state.write_text(
            json.dumps(
                {
                    "dimension": 2,
                    "matrix": [[[0.75, 0.0], [1]], [[0.0, 0.0], [0.25, 0.0]]],
                }
            )
        )
        obs = tmp_path / "obs.json"
        obs.write_text(SPIN_OBSERVABLES_JSON)
        assert main(["analyze", "--state", str(state), "--observables", str(obs)]) == 2
        assert "matrix[0][1]" in capsys.readouterr().err

    def test_dimension_mismatch_exits_2(self, tmp_path, capsys):
        state = tmp_path / "state.json"
        state.write_text(
            json.dumps({"dimension": 3, "matrix": [[[1 / 3, 0]] * 3] * 3})
        )
        obs = tmp_path / "obs.json"
        obs.write_text(SPIN_OBSERVABLES_JSON)
        assert main(["analyze", "--state", str(state), "--observables", str(obs)]) == 2

    def test_missing_file_exits_2(self, tmp_path, capsys):
        obs = tmp_path / "obs.json"
        obs.write_text(SPIN_OBSERVABLES_JSON)
        assert main(["analyze", "--state", str(tmp_path / "nope.json"), "--observables", str(obs)]) == 2


class TestSweep:
    def test_deterministic_output(self, capsys):
        args = ["sweep", "--dim", "3", "--rank", "2", "--samples", "10", "--seed", "5"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_json_document_shape(self, capsys):
        assert main(["sweep", "--dim", "3", "--rank", "2", "--samples", "4", "--seed", "1"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["dim"] == 3 and doc["rank"] == 2 and doc["samples"] == 4
        assert len(doc["records"]) == 4
        assert len(doc["spectrum"]) == 2
        assert doc["records"][0]["sample_index"] == 0
        assert "min_slack_geometric" in doc["summary"]
        assert doc["summary"]["min_slack_geometric"] >= -1e-9

    def test_pure_rank_sweep_matches_bounds(self, capsys):
        """Rank-1 orbits make the two bounds coincide on every record."""
        assert main(["sweep", "--dim", "2", "--rank", "1", "--samples", "25", "--seed", "9"]) == 0
        doc = json.loads(capsys.readouterr().out)
        for rec in doc["records"]:
            assert abs(rec["geometric_bound"] - rec["rs_bound"]) < 1e-9

    def test_csv_format_round_trips(self, tmp_path):
        out_path = tmp_path / "sweep.csv"
        code = main(
            ["sweep", "--dim", "3", "--rank", "3", "--samples", "5", "--seed", "3",
             "--output", str(out_path), "--format", "csv"]
        )
        assert code == 0
        with open(out_path) as fh:
            records = read_reports_csv(fh, ("sample_index", "seed", "dimension", "rank"))
        assert [r["sample_index"] for r in records] == list(range(5))
        assert all(r["seed"] == 3 for r in records)

    def test_bad_rank_is_usage_error(self):
        with pytest.raises(SystemExit) as err:
            main(["sweep", "--dim", "2", "--rank", "3", "--samples", "1", "--seed", "0"])
        assert err.value.code == 2


class TestVerify:
    def test_battery_passes_at_dim_2(self, capsys):
        assert main(["verify", "--dim", "2", "--samples", "40", "--seed", "7"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert "invariants passed" in out

    def test_tolerance_scale_env(self, capsys, monkeypatch):
        monkeypatch.setenv("PHASEGEO_TOLERANCE_SCALE", "10")
        assert main(["verify", "--dim", "2", "--samples", "5", "--seed", "1"]) == 0
        out = capsys.readouterr().out
        assert "tolerance=1.0e-08" in out  # 1e-9 checks scaled up tenfold

    def test_battery_covers_higher_dimensions(self, capsys):
        """Rank mixtures and multiplicity blocks at dim 6 all verify."""
        assert main(["verify", "--dim", "6", "--samples", "8", "--seed", "3"]) == 0
        assert "FAIL" not in capsys.readouterr().out

    def test_dim_one_is_usage_error(self):
        with pytest.raises(SystemExit) as err:
            main(["verify", "--dim", "1", "--samples", "5", "--seed", "1"])
        assert err.value.code == 2
