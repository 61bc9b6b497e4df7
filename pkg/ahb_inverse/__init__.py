"""
ahb-inverse - Adaptive heavy ball iterative regularization for inverse problems.

Iterative solvers for ill-posed equations F(x) = y with noisy data, stopped by
the discrepancy principle:

Key Features:
    - Adaptive heavy ball (AHB) method with explicit step-size and momentum rules
    - Landweber-type, nu-method and Nesterov-accelerated Landweber baselines
    - Quadratic and quadratic + total variation regularizers (PDHG inner solver)
    - Built-in problems: Fredholm integral equation, 2-D tomography, elliptic
      coefficient identification
    - TOML experiment configurations, CSV/PGM outputs, Rich console tables

Example Usage:
    # Write an experiment template
    $ ahb init --problem tomography

    # Run it
    $ ahb run --config experiment.toml --jobs 4

    # Reproduce a built-in table
    $ ahb reproduce-table1 --out results/table1

API Usage:
    >>> from ahb_inverse import ExperimentRunner, ConfigLoader
    >>> runner = ExperimentRunner(ConfigLoader.builtin_table(1))
    >>> result = runner.run_experiment()
"""

__version__ = "0.1.0"

from .api import ExperimentRunner
from .core import ConfigLoader

__all__ = ["ExperimentRunner", "ConfigLoader", "__version__"]
