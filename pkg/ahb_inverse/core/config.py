"""Configuration management for ahb-inverse."""

from pathlib import Path
from typing import Any, Dict, Union

import toml
from loguru import logger
from pydantic import ValidationError

from .errors import ConfigurationError
from .models import ExperimentConfig, GlobalConfig

TABLE1_TAU = 1.01
TABLE2_TAU = 1.05
TABLE3_TAU = 1.05
TABLE3_ETA = 0.01


class ConfigLoader:
    """Load experiment and global configurations."""

    GLOBAL_CONFIG_DIR = Path.home() / ".config" / "ahb"
    GLOBAL_CONFIG_FILE = GLOBAL_CONFIG_DIR / "config.toml"

    @classmethod
    def load_global_config(cls) -> GlobalConfig:
        """Load global configuration; defaults when the file is absent or unreadable."""
        if not cls.GLOBAL_CONFIG_FILE.exists():
            return GlobalConfig()

        try:
            data = toml.load(cls.GLOBAL_CONFIG_FILE)
            return GlobalConfig(
                log_level=data.get("logging", {}).get("level", "INFO"),
                jobs=data.get("run", {}).get("jobs", 1),
                out_dir=data.get("run", {}).get("out_dir", "results"),
            )
        except Exception as e:
            logger.warning(f"Error loading global config: {e}, using defaults")
            return GlobalConfig()

    @classmethod
    def create_default_global_config(cls) -> Path:
        """Create default global configuration file."""
        cls.GLOBAL_CONFIG_DIR.mkdir(parents=True, exist_ok=True)

        default_config = """# Global ahb settings

[logging]
level = "INFO"

[run]
jobs = 1
out_dir = "results"
"""
        cls.GLOBAL_CONFIG_FILE.write_text(default_config)
        logger.info(f"Created default global config at {cls.GLOBAL_CONFIG_FILE}")
        return cls.GLOBAL_CONFIG_FILE

    @classmethod
    def parse_experiment(cls, data: Dict[str, Any], source: str = "<dict>") -> ExperimentConfig:
        """Validate a parsed TOML document; unknown keys are errors."""
        try:
            return ExperimentConfig.model_validate(data)
        except ValidationError as e:
            raise ConfigurationError(f"Invalid experiment config {source}:\n{e}") from e

    @classmethod
    def load_experiment(cls, path: Union[str, Path]) -> ExperimentConfig:
        """Load an experiment configuration from a TOML file."""
        config_file = Path(path)
        if not config_file.exists():
            raise FileNotFoundError(f"No experiment config found at {config_file}")

        try:
            data = toml.load(config_file)
        except toml.TomlDecodeError as e:
            raise ConfigurationError(f"Error parsing {config_file}: {e}") from e

        config = cls.parse_experiment(data, str(config_file))
        logger.debug(f"Loaded experiment '{config.title}' from {config_file}")
        return config

    @classmethod
    def builtin_table(cls, number: int) -> ExperimentConfig:
        """Built-in configuration reproducing one of the three published result tables."""
        builders = {1: _table1, 2: _table2, 3: _table3}
        if number not in builders:
            raise ConfigurationError(f"no built-in table {number}; choose 1, 2 or 3")
        return cls.parse_experiment(builders[number](), f"table{number}")


def _table1() -> Dict[str, Any]:
    tau = TABLE1_TAU
    # Landweber takes alpha = 1/||A||^2; mu0 = 0.99(2 - 2/tau) is the AHB step.
    landweber = {"tau": tau, "mu0": 1.0, "step_rule": "constant"}
    ahb = {"tau": tau, "mu0": 0.99 * (2.0 - 2.0 / tau), "step_rule": "constant"}
    return {
        "title": "table1-fredholm",
        "problem": {"name": "fredholm", "n_nodes": 1000},
        "regularizer": {"name": "quadratic"},
        "noise": {"mode": "absolute", "levels": [0.1, 0.01, 0.001, 0.0001, 0.00001], "seed": 0},
        "methods": [
            {"name": "landweber", **landweber},
            {"name": "nu", "nu": 3.0, "gamma_scale": 0.99, "tau": tau},
            {"name": "nesterov", "alpha_shift": 3.0, "gamma_scale": 0.99, "tau": tau},
            {"name": "ahb", "beta_cap": "inf", **ahb},
        ],
        "output": {"dir": "results/table1", "images": False},
        "curves": {"exact_iterations": 2000},
    }


def _table2() -> Dict[str, Any]:
    tau, kappa = TABLE2_TAU, 1.0
    landweber = {
        "tau": tau,
        "mu0": 0.99 * (2.0 - 2.0 / tau) / kappa,
        "mu1": 100.0,
        "step_rule": "adaptive",
    }
    return {
        "title": "table2-tomography",
        "problem": {"name": "tomography", "rows": 64, "cols": 64, "n_angles": 30, "n_rays": 95},
        "regularizer": {"name": "tv", "kappa": kappa, "pdhg_iters": 70},
        "noise": {"mode": "relative", "levels": [0.05, 0.01, 0.005, 0.001], "seed": 0},
        "methods": [
            {"name": "landweber", **landweber},
            {"name": "ahb", "beta_cap": 0.99, "label": "AHB (beta=0.99)", **landweber},
            {"name": "ahb", "beta_cap": "inf", "label": "AHB (beta=inf)", **landweber},
        ],
        "output": {"dir": "results/table2", "images": True},
    }


def _table3() -> Dict[str, Any]:
    tau, eta, kappa = TABLE3_TAU, TABLE3_ETA, 10.0
    landweber = {
        "tau": tau,
        "eta": eta,
        "mu0": 1.96 * (1.0 - eta - (1.0 + eta) / tau) / kappa,
        "mu1": 80.0,
        "step_rule": "adaptive",
    }
    return {
        "title": "table3-elliptic",
        "problem": {"name": "elliptic", "m": 64},
        "regularizer": {"name": "tv", "kappa": kappa, "pdhg_iters": 200},
        "noise": {
            "mode": "absolute",
            "levels": [0.005, 0.001, 0.0005, 0.0001, 0.00005],
            "seed": 0,
        },
        "methods": [
            {"name": "landweber", **landweber},
            {"name": "ahb", "beta_cap": 0.99, "label": "AHB (beta=0.99)", **landweber},
            {"name": "ahb", "beta_cap": "inf", "label": "AHB (beta=inf)", **landweber},
        ],
        "output": {"dir": "results/table3", "images": True},
    }
