"""Tests for the ahb command line."""

import pytest
import toml
from click.testing import CliRunner

from ahb_inverse.cli import cli
from ahb_inverse.cli.commands.init import experiment_template
from ahb_inverse.core import ConfigLoader

TAU = 1.01
MU0 = 0.99 * (2 - 2 / TAU)


@pytest.fixture(autouse=True)
def isolated_global_config(tmp_path, monkeypatch):
    monkeypatch.setattr(ConfigLoader, "GLOBAL_CONFIG_DIR", tmp_path / "global")
    monkeypatch.setattr(ConfigLoader, "GLOBAL_CONFIG_FILE", tmp_path / "global" / "config.toml")


def small_config(path, **overrides):
    data = {
        "title": "cli",
        "problem": {"name": "fredholm", "n_nodes": 60},
        "noise": {"levels": [0.05], "seed": 1},
        "methods": [
            {"name": "landweber", "tau": TAU, "mu0": 1.0},
            {"name": "ahb", "tau": TAU, "mu0": MU0, "beta_cap": "inf"},
        ],
        "output": {"images": False},
    }
    data.update(overrides)
    path.write_text(toml.dumps(data))
    return path


def test_version():
    result = CliRunner().invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "ahb" in result.output


def test_list_problems():
    """Test the problem catalogue in table and JSON form."""
    runner = CliRunner()
    result = runner.invoke(cli, ["list-problems"])
    assert result.exit_code == 0
    for name in ("fredholm", "tomography", "elliptic"):
        assert name in result.output

    result = runner.invoke(cli, ["list-problems", "--json"])
    assert result.exit_code == 0
    assert '"image_valued"' in result.output


@pytest.mark.parametrize("problem", ["fredholm", "tomography", "elliptic"])
def test_templates_are_valid(problem):
    """Test that every init template parses into an experiment config."""
    config = ConfigLoader.parse_experiment(toml.loads(experiment_template(problem, "demo")))
    assert config.problem.name == problem
    assert config.output.dir == "results/demo"


def test_init_writes_template(tmp_path):
    """Test init, the overwrite guard and the global config."""
    path = tmp_path / "exp.toml"
    runner = CliRunner()

    result = runner.invoke(cli, ["init", "--problem", "tomography", "--path", str(path), "--global"])
    assert result.exit_code == 0
    assert ConfigLoader.load_experiment(path).problem.name == "tomography"
    assert ConfigLoader.GLOBAL_CONFIG_FILE.exists()

    path.write_text("# edited\n")
    result = runner.invoke(cli, ["init", "--path", str(path)])
    assert "already" in result.output
    assert path.read_text() == "# edited\n"

    result = runner.invoke(cli, ["init", "--path", str(path), "--force"])
    assert result.exit_code == 0
    assert ConfigLoader.load_experiment(path).problem.name == "fredholm"


def test_run_small_config(tmp_path):
    """Test a complete run and its outputs."""
    config = small_config(tmp_path / "exp.toml")
    out = tmp_path / "out"
    result = CliRunner().invoke(cli, ["run", "--config", str(config), "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "Landweber" in (out / "summary.csv").read_text()
    assert (out / "summary.csv").exists()
    assert (out / "runs" / "ahb__delta0__seed1.csv").exists()


def test_run_overrides(tmp_path):
    """Test the seed and iteration-cap overrides."""
    config = small_config(tmp_path / "exp.toml")
    out = tmp_path / "out"
    result = CliRunner().invoke(
        cli,
        ["run", "--config", str(config), "--out", str(out), "--seed", "7", "--max-iter", "2", "--json"],
    )
    # a two-step cap stops by max_iter, which is a nonzero exit
    assert result.exit_code == 1
    assert (out / "runs" / "landweber__delta0__seed7.csv").exists()
    assert "max_iter" in result.output


def test_run_missing_config(tmp_path):
    """Test that a missing file exits with status 1."""
    result = CliRunner().invoke(cli, ["run", "--config", str(tmp_path / "nope.toml")])
    assert result.exit_code == 1
    assert "No experiment config" in result.output


def test_run_unknown_key(tmp_path):
    """Test that unknown keys are rejected."""
    config = small_config(tmp_path / "exp.toml", unexpected=1)
    result = CliRunner().invoke(cli, ["run", "--config", str(config)])
    assert result.exit_code == 1
    assert "Invalid experiment config" in result.output


def test_check_command(tmp_path):
    """Test check on a valid config and on an unsupported combination."""
    runner = CliRunner()
    config = small_config(tmp_path / "exp.toml")
    result = runner.invoke(cli, ["check", "--config", str(config), "--trials", "10"])
    assert result.exit_code == 0, result.output
    assert "passed" in result.output

    bad = small_config(tmp_path / "bad.toml", regularizer={"name": "tv"})
    result = runner.invoke(cli, ["check", "--config", str(bad), "--trials", "10"])
    assert result.exit_code == 1
    assert "Unsupported" in result.output
