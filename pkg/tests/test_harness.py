"""Tests for the experiment runner and its artifacts."""

import csv
from pathlib import Path

import numpy as np
import pytest

from ahb_inverse.api import ExperimentRunner
from ahb_inverse.core import ConfigLoader, StopReason
from ahb_inverse.core.export import read_pgm, write_coo, write_image_csv

TAU = 1.01
MU0 = 0.99 * (2 - 2 / TAU)


def fredholm_config(**overrides):
    data = {
        "title": "small fredholm",
        "problem": {"name": "fredholm", "n_nodes": 100},
        "noise": {"mode": "absolute", "levels": [0.05, 0.01], "seed": 3, "repeats": 2},
        "methods": [
            {"name": "landweber", "tau": TAU, "mu0": 1.0},
            {"name": "ahb", "tau": TAU, "mu0": MU0, "beta_cap": "inf"},
            {"name": "nu", "tau": TAU},
            {"name": "nesterov", "tau": TAU},
        ],
        "output": {"images": False},
    }
    data.update(overrides)
    return ConfigLoader.parse_experiment(data)


def tomography_config(**overrides):
    tau = 1.05
    data = {
        "title": "small tomography",
        "problem": {"name": "tomography", "rows": 16, "cols": 16, "n_angles": 8, "n_rays": 23},
        "regularizer": {"name": "tv", "kappa": 1.0, "pdhg_iters": 20},
        "noise": {"mode": "relative", "levels": [0.05], "seed": 0},
        "methods": [
            {"name": "ahb", "tau": tau, "mu0": 0.99 * (2 - 2 / tau), "beta_cap": 0.99},
            {"name": "nu", "tau": tau},
        ],
        "output": {"images": True, "export_matrix": True},
    }
    data.update(overrides)
    return ConfigLoader.parse_experiment(data)


def read_rows(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


def test_fredholm_sweep(tmp_path):
    """Test the summary, the per-run logs and the exit code of a full sweep."""
    result = ExperimentRunner(fredholm_config(), out_dir=str(tmp_path)).run_experiment()

    assert len(result.runs) == 2 * 2 * 4
    assert not result.skipped
    assert result.all_discrepancy
    assert result.exit_code == 0

    summary = read_rows(tmp_path / "summary.csv")
    assert summary[0] == ["delta", "delta_rel", "method", "iterations", "error", "stop_reason", "seed"]
    assert len(summary) == 1 + len(result.runs)
    assert {row[2] for row in summary[1:]} == {"Landweber", "AHB", "nu-method", "Nesterov"}
    assert len(read_rows(tmp_path / "timings.csv")) == 1 + len(result.runs)

    for run, row in zip(result.runs, summary[1:]):
        log = read_rows(tmp_path / "runs" / f"{run.name}.csv")
        assert int(log[-1][0]) == run.record.iterations == int(row[3])
        assert row[5] == StopReason.DISCREPANCY.value
        assert run.reconstruction.shape == (100,)

    names = {run.name for run in result.runs}
    assert "ahb__delta1__seed4" in names
    assert "nu-method__delta0__seed3" in names


def test_rerun_is_byte_identical(tmp_path):
    """Test that every artifact except timings.csv is byte-identical across reruns."""
    first, second = tmp_path / "a", tmp_path / "b"
    ExperimentRunner(fredholm_config(), out_dir=str(first)).run_experiment()
    ExperimentRunner(fredholm_config(), out_dir=str(second)).run_experiment()

    files = sorted(p.relative_to(first) for p in first.rglob("*") if p.is_file())
    assert files == sorted(p.relative_to(second) for p in second.rglob("*") if p.is_file())
    assert Path("summary.csv") in files
    for name in files:
        if name == Path("timings.csv"):
            continue
        assert (first / name).read_bytes() == (second / name).read_bytes(), name

    # timings keep their rows and keys; only the measured seconds may change
    timings_a = read_rows(first / "timings.csv")
    timings_b = read_rows(second / "timings.csv")
    assert [row[:3] for row in timings_a] == [row[:3] for row in timings_b]


def test_parallel_matches_serial(tmp_path):
    """Test that concurrent runs reproduce the serial results."""
    serial = ExperimentRunner(fredholm_config(), out_dir=str(tmp_path / "serial"), jobs=1)
    parallel = ExperimentRunner(fredholm_config(), out_dir=str(tmp_path / "parallel"), jobs=2)
    serial.run_experiment()
    parallel.run_experiment()
    assert (tmp_path / "serial" / "summary.csv").read_bytes() == (
        tmp_path / "parallel" / "summary.csv"
    ).read_bytes()


def test_exact_data_curves(tmp_path):
    """Test that exact-data curves have exact_iterations + 1 points and match the logs."""
    config = fredholm_config(curves={"exact_iterations": 20})
    result = ExperimentRunner(config, out_dir=str(tmp_path)).run_experiment()

    assert len(result.exact_runs) == 4
    for run in result.exact_runs:
        assert run.name.endswith("__exact")
        assert run.record.stop_reason == StopReason.MAX_ITER
        curve = read_rows(tmp_path / "curves" / f"{run.name}.csv")
        assert curve[0] == ["n", "error"]
        assert len(curve) == 1 + 21
        for (n, err), row in zip(curve[1:], run.record.rows):
            assert int(n) == row.n
            assert float(err) == pytest.approx(row.truth_error, rel=1e-11)

    # the noisy runs get curves too
    assert (tmp_path / "curves" / f"{result.runs[0].name}.csv").exists()


def test_tomography_images_and_skips(tmp_path):
    """Test image output, matrix export and the skipped unsupported combination."""
    runner = ExperimentRunner(tomography_config(), out_dir=str(tmp_path))
    result = runner.run_experiment()

    assert len(result.skipped) == 1
    assert "nu-method" in result.skipped[0]
    assert result.exit_code == 1
    assert len(result.runs) == 1
    run = result.runs[0]
    assert run.delta_rel == 0.05
    assert run.delta == pytest.approx(0.05 * runner.setup.exact_data.norm())

    truth = read_pgm(tmp_path / "images" / "truth.pgm")
    assert truth.shape == (16, 16)
    assert truth.max() == 255
    assert read_pgm(tmp_path / "images" / f"{run.name}.pgm").shape == (16, 16)
    assert len(read_rows(tmp_path / "images" / f"{run.name}.csv")) == 17

    coo = read_rows(tmp_path / "matrix.coo.csv")
    assert coo[0] == ["row", "col", "value"]
    assert len(coo) == 1 + runner.setup.problem.matrix.nnz


def test_no_runnable_method(tmp_path):
    """Test a config in which every method is unsupported."""
    config = fredholm_config(
        regularizer={"name": "tv"},
        methods=[{"name": "landweber", "tau": TAU, "mu0": 1.0}],
    )
    result = ExperimentRunner(config, out_dir=str(tmp_path)).run_experiment()
    assert result.runs == []
    assert result.exit_code == 1
    assert not (tmp_path / "summary.csv").exists()


def test_self_check(tmp_path):
    """Test the adjoint self-check and the elliptic Taylor tests."""
    fredholm = ExperimentRunner(fredholm_config(), out_dir=str(tmp_path)).self_check(trials=20)
    assert fredholm.passed
    assert fredholm.derivatives == []

    elliptic_config = ConfigLoader.parse_experiment(
        {
            "problem": {"name": "elliptic", "m": 10},
            "noise": {"levels": [0.001]},
            "methods": [{"name": "landweber", "tau": 1.05, "mu0": 0.01}],
        }
    )
    report = ExperimentRunner(elliptic_config, out_dir=str(tmp_path)).self_check(trials=20)
    assert report.passed
    assert len(report.derivatives) == 20
    assert all(3.5 <= d.ratio <= 4.5 for d in report.derivatives)


def test_reconstruction_improves_on_start(tmp_path):
    """Test that every run ends closer to the truth than the zero start."""
    result = ExperimentRunner(fredholm_config(), out_dir=str(tmp_path)).run_experiment(write=False)
    for run in result.runs:
        assert run.record.final_error < run.record.rows[0].truth_error
        assert np.all(np.isfinite(run.reconstruction))
    assert not (tmp_path / "summary.csv").exists()


def test_numeric_table_writers(tmp_path):
    """Test the image and coordinate-format writers."""
    image = np.array([[0.5, -1.0], [2.0, 1e-13]])
    rows = read_rows(write_image_csv(tmp_path / "img.csv", image))
    assert rows == [["c0", "c1"], ["0.5", "-1"], ["2", "1e-13"]]

    matrix = np.array([[0.0, 3.0, 0.0], [0.25, 0.0, 1.0]])
    rows = read_rows(write_coo(tmp_path / "m.coo.csv", matrix))
    assert rows == [["row", "col", "value"], ["0", "1", "3"], ["1", "0", "0.25"], ["1", "2", "1"]]
