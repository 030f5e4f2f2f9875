"""Subcommand dispatcher for tightscatter.

Usage:
    tightscatter wallfn     --a 2 --b 1 --order 9 --l1 3 --l2 1
    tightscatter scatter    --p1 "1+x^3" --p2 "1+y^2" --order 20
    tightscatter gw         --l1 2 --l2 2 --a 1 --b 1 --kmax 4
    tightscatter greedy     --a1 2 --a2 1 --l1 2 --l2 2
    tightscatter theta      --m0 -2 -1 --l1 2 --l2 2 --order 12
    tightscatter clustervar --k 5 --l1 2 --l2 2 --normalize
    tightscatter check      --sweep 3 --order 10
    tightscatter render     tiling --m 7 --n 4 --grading "u2=2" --output t.svg
    tightscatter run        --manifest jobs.yaml
"""

import argparse
import sys

COMMANDS = {
    "wallfn": "Wall function of one ray from tight gradings",
    "scatter": "Consistent completion of the initial lines",
    "gw": "Relative GW numbers from binomial initial data",
    "greedy": "Greedy element x[a1,a2]",
    "theta": "Theta function from broken lines",
    "clustervar": "Cluster variable x_k",
    "check": "Compare the closed formula with the oracle",
    "render": "Draw a grading tiling or a ray fan",
    "run": "Run a batch of jobs from a YAML manifest",
}


def command_main(name: str):
    """The main() of a subcommand, imported on demand."""
    if name in ("wallfn", "scatter", "gw"):
        from . import cli
        return {"wallfn": cli.wallfn_main, "scatter": cli.scatter_main, "gw": cli.gw_main}[name]
    if name in ("greedy", "theta", "clustervar"):
        from . import basis_cli
        return {
            "greedy": basis_cli.greedy_main,
            "theta": basis_cli.theta_main,
            "clustervar": basis_cli.clustervar_main,
        }[name]
    if name == "check":
        from .check_cli import main as check_main
        return check_main
    if name == "render":
        from .render_cli import main as render_main
        return render_main
    if name == "run":
        from .run_cli import main as run_main
        return run_main
    raise ValueError(f"Unknown command '{name}'. Valid: {sorted(COMMANDS)}")


def main(args=None):
    parser = argparse.ArgumentParser(
        prog="tightscatter",
        description="Rank-2 scattering diagrams from tight gradings, with cluster and GW tools.",
    )
    subparsers = parser.add_subparsers(dest="command")
    for name, help_text in COMMANDS.items():
        subparsers.add_parser(name, help=help_text, add_help=False)

    # Parse only the subcommand name, pass the rest on.
    parsed, remaining = parser.parse_known_args(args)

    if parsed.command is None or parsed.command not in COMMANDS:
        parser.print_help()
        sys.exit(2)

    command_main(parsed.command)(remaining)


if __name__ == "__main__":
    main()
