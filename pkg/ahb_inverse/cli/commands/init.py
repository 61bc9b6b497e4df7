"""Write an experiment configuration template."""

from pathlib import Path

import click

from ...core import ConfigLoader
from ..output import console, print_error, print_info, print_success

PROBLEM_SECTIONS = {
    "fredholm": """[problem]
name = "fredholm"
# Number of quadrature nodes on [0, 1]
n_nodes = 1000

[regularizer]
# "quadratic" (classical Landweber) or "tv" (image problems only)
name = "quadratic"
""",
    "tomography": """[problem]
name = "tomography"
rows = 64
cols = 64
n_angles = 30
n_rays = 95
# "parallel" or "fan"
geometry = "parallel"

[regularizer]
name = "tv"
kappa = 1.0
# PDHG iterations per conjugate-gradient evaluation
pdhg_iters = 70
""",
    "elliptic": """[problem]
name = "elliptic"
# Interior nodes per side of the unit square
m = 64

[regularizer]
name = "tv"
kappa = 10.0
pdhg_iters = 200
""",
}

NOISE_SECTION = {
    "fredholm": 'mode = "absolute"\nlevels = [0.01, 0.001]',
    "tomography": 'mode = "relative"\nlevels = [0.05, 0.01]',
    "elliptic": 'mode = "absolute"\nlevels = [0.001, 0.0001]',
}

METHOD_SECTION = {
    "fredholm": """[[methods]]
name = "landweber"
tau = 1.01
mu0 = 1.0
step_rule = "constant"

[[methods]]
name = "ahb"
tau = 1.01
mu0 = 0.0196
step_rule = "constant"
# Momentum cap; "inf" disables it
beta_cap = "inf"

[[methods]]
name = "nu"
nu = 3.0
tau = 1.01

[[methods]]
name = "nesterov"
alpha_shift = 3.0
tau = 1.01
""",
    "tomography": """[[methods]]
name = "landweber"
tau = 1.05
mu0 = 0.0942
mu1 = 100.0
step_rule = "adaptive"

[[methods]]
name = "ahb"
label = "AHB (beta=0.99)"
tau = 1.05
mu0 = 0.0942
mu1 = 100.0
step_rule = "adaptive"
beta_cap = 0.99
""",
    "elliptic": """[[methods]]
name = "landweber"
tau = 1.05
eta = 0.01
mu0 = 0.0055
mu1 = 80.0
step_rule = "adaptive"

[[methods]]
name = "ahb"
label = "AHB (beta=0.99)"
tau = 1.05
eta = 0.01
mu0 = 0.0055
mu1 = 80.0
step_rule = "adaptive"
beta_cap = 0.99
""",
}


def experiment_template(problem: str, title: str) -> str:
    """Commented TOML experiment configuration for one of the built-in problems."""
    return f"""# ahb experiment configuration

title = "{title}"

{PROBLEM_SECTIONS[problem]}
[noise]
# "absolute": ||y_delta - y|| = level; "relative": = level * ||y||
{NOISE_SECTION[problem]}
seed = 0
# Noise draws per level, seeds seed, seed + 1, ...
repeats = 1

[output]
dir = "results/{title}"
# PGM + CSV reconstructions for image problems
images = true
# System matrix as (row, col, value) text
export_matrix = false

[curves]
# Iterations of the exact-data (delta = 0) runs; 0 disables them
exact_iterations = 0

{METHOD_SECTION[problem]}"""


@click.command()
@click.option(
    "--problem",
    type=click.Choice(sorted(PROBLEM_SECTIONS)),
    default="fredholm",
    show_default=True,
    help="Problem the template is written for",
)
@click.option("--path", "path", default="experiment.toml", show_default=True, help="Output file")
@click.option("--force", is_flag=True, help="Overwrite an existing file")
@click.option("--global", "global_config", is_flag=True, help="Also write ~/.config/ahb/config.toml")
def init(problem, path, force, global_config):
    """Write an experiment configuration template."""
    config_file = Path(path)

    if config_file.exists() and not force:
        print_error(f"{config_file} already exists")
        console.print("\n💡 [dim]Use --force to overwrite, or edit the file directly[/]")
        return

    try:
        if force and config_file.exists():
            print_info(f"Overwriting {config_file}")

        config_file.parent.mkdir(parents=True, exist_ok=True)
        config_file.write_text(experiment_template(problem, config_file.stem))
        print_success(f"Created {config_file}")

        if global_config:
            created = ConfigLoader.create_default_global_config()
            print_success(f"Created {created}")

        console.print("\n[dim]Next steps:[/]")
        console.print(f"  1. Edit {config_file} to choose noise levels and methods")
        console.print(f"  2. Run [cyan]ahb check --config {config_file}[/] to validate it")
        console.print(f"  3. Run [cyan]ahb run --config {config_file}[/]\n")

    except Exception as e:
        print_error(f"Error creating config: {e}")
