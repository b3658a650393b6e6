#!/usr/bin/env python3
"""Run the full verification suite and export the report plus field CSVs.

Thin wrapper over the CLI for the common "give me everything" invocation:

    python3 scripts/run_all_scenarios.py --out results/

Exit code follows the CLI (0 = every check passed).
"""

from __future__ import annotations

import argparse
import sys

from epsqp.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--out", default="results", help="output directory (default: results/)"
    )
    parser.add_argument(
        "--grid-n", type=int, default=None, help="override the grid resolution"
    )
    args = parser.parse_args()

    argv = ["run", "all", "--out", args.out, "--fields", "all"]
    if args.grid_n is not None:
        argv += ["--grid-n", str(args.grid_n)]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
