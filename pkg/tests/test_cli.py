import json

import numpy as np
import pytest

import ddrfsim as dd
from ddrfsim.cli import main


def run(args):
    return main(args)


class TestSpectroscopyCommand:
    def test_nine_cell_grid(self, tmp_path):
        out = tmp_path / "run"
        assert run([
            "spectroscopy", "--grid", "3x3", "--no-bath", "--out-dir", str(out),
        ]) == 0
        sweep = dd.read_sweep_csv(out / "spectroscopy.csv")
        assert sweep.values.shape == (3, 3)
        manifest = json.loads((out / "manifest.json").read_text())
        assert all((tmp_path / "run").joinpath(p).exists() or
                   __import__("pathlib").Path(p).exists()
                   for p in manifest["outputs"])

    def test_phase_frequency_output(self, tmp_path):
        out = tmp_path / "run"
        assert run([
            "spectroscopy", "--grid", "5x9", "--no-bath", "--phase-frequency",
            "--out-dir", str(out),
        ]) == 0
        folded = dd.read_sweep_csv(out / "spectroscopy_wphi.csv")
        assert folded.x_name == "detuning0"
        assert "fold_period_hz" in folded.metadata

    def test_missing_config_exits_2(self, tmp_path, capsys):
        code = run(["spectroscopy", "--config", str(tmp_path / "nope"),
                    "--out-dir", str(tmp_path)])
        assert code == 2
        assert "nope" in capsys.readouterr().err

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            assert run([
                "spectroscopy", "--grid", "7x7", "--out-dir", str(out),
            ]) == 0
        assert (a / "spectroscopy.csv").read_bytes() == (b / "spectroscopy.csv").read_bytes()

    def test_metadata_supports_reruns(self, tmp_path):
        out = tmp_path / "run"
        run(["spectroscopy", "--grid", "3x3", "--no-bath", "--out-dir", str(out)])
        sweep = dd.read_sweep_csv(out / "spectroscopy.csv")
        for key in ("n_pulses", "tau_s", "rabi_hz", "grid", "b_z_tesla"):
            assert key in sweep.metadata


class TestRabiCommand:
    def test_curves_and_analytic_agreement(self, tmp_path):
        out = tmp_path / "run"
        assert run([
            "rabi", "--spin", "C0", "--n-list", "24,48", "--points", "81",
            "--out-dir", str(out),
        ]) == 0
        sim = dd.read_sweep_csv(out / "rabi.csv")
        ana = dd.read_sweep_csv(out / "rabi_analytic.csv")
        assert sim.values.shape == (81, 2)
        assert np.max(np.abs(sim.values - ana.values)) <= 0.02

    def test_flat_far_detuned_low_n(self, tmp_path, table, field, constants):
        out = tmp_path / "run"
        assert run([
            "rabi", "--spin", "C0", "--n-list", "4", "--points", "11",
            "--driving-time-ms", "0.1", "--rf-span-khz", "1",
            "--out-dir", str(out),
        ]) == 0
        sweep = dd.read_sweep_csv(out / "rabi.csv")
        assert sweep.values.min() >= 0.9  # weak short drive barely moves the spin

    def test_unknown_spin_exits_2(self, tmp_path, capsys):
        assert run(["rabi", "--spin", "Q9", "--out-dir", str(tmp_path)]) == 2
        assert "Q9" in capsys.readouterr().err


class TestSensitivityCommand:
    def test_single_delta(self, tmp_path):
        out = tmp_path / "run"
        assert run([
            "sensitivity", "--delta-hz", "115", "--t-ms-range", "0.1", "100", "25",
            "--out-dir", str(out),
        ]) == 0
        summary = json.loads((out / "sensitivity_summary.json").read_text())
        det = summary["detuned"][0]
        res = summary["resonant"][0]
        assert det["v_min"] <= 1.0
        assert 20 <= res["v_min"] / det["v_min"] <= 120
        comparison = dd.read_sweep_csv(out / "sensitivity_vs_delta.csv")
        assert comparison.values.shape == (1, 2)
        for quantity in ("vmin", "omega_eff", "omega_set", "coherence"):
            assert (out / f"sensitivity_delta000_detuned_{quantity}.csv").exists()

    def test_non_positive_delta_exits_2(self, tmp_path):
        assert run(["sensitivity", "--delta-hz", "-3",
                    "--out-dir", str(tmp_path)]) == 2

    def test_missing_delta_exits_2(self, tmp_path):
        assert run(["sensitivity", "--out-dir", str(tmp_path)]) == 2


class TestRegisterCommand:
    def test_small_map_and_summary(self, tmp_path):
        out = tmp_path / "run"
        assert run([
            "register", "--target", "C1", "--n-range", "8", "128", "5",
            "--tau-us-range", "5", "40", "5", "--out-dir", str(out),
        ]) == 0
        summary = json.loads((out / f"register_C1_summary.json").read_text())
        assert summary["target"] == "C1"
        assert 0.9 <= summary["fidelity"] <= 1.0
        assert summary["feasible_cells"] > 0
        sweep = dd.read_sweep_csv(out / "register_C1.csv")
        assert sweep.metadata["level"] == "echo"

    def test_contributions_panel_order(self, tmp_path):
        out = tmp_path / "run"
        assert run([
            "register", "--target", "C4", "--n-range", "8", "128", "4",
            "--tau-us-range", "6", "40", "4", "--contributions",
            "--out-dir", str(out),
        ]) == 0
        maxima = []
        for level in ("single", "register", "bath", "t2", "t2star", "echo"):
            sweep = dd.read_sweep_csv(out / f"register_C4_{level}.csv")
            maxima.append(sweep.values.max())
        for a, b in zip(maxima[:4], maxima[1:5]):
            assert b <= a + 1e-9
        assert maxima[5] >= maxima[4]

    def test_target_not_in_register_exits_2(self, tmp_path, capsys):
        assert run(["register", "--target", "C3",
                    "--out-dir", str(tmp_path)]) == 2
        assert "C3" in capsys.readouterr().err

    def test_all_infeasible_exits_3(self, tmp_path):
        code = run([
            "register", "--target", "C1", "--n-range", "2", "2", "1",
            "--tau-us-range", "0.2", "0.2", "1", "--out-dir", str(tmp_path),
        ])
        assert code == 3


class TestManifest:
    def test_records_inputs_and_outputs(self, tmp_path):
        out = tmp_path / "run"
        run(["spectroscopy", "--grid", "3x3", "--no-bath", "--out-dir", str(out)])
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["command"] == "spectroscopy"
        assert manifest["parameters"]["grid"] == "3x3"
        assert len(manifest["input_hashes"]) == 1
        hash_value = next(iter(manifest["input_hashes"].values()))
        assert len(hash_value) == 64
        assert manifest["duration_s"] >= 0
        import pathlib
        for path in manifest["outputs"]:
            assert pathlib.Path(path).exists()
