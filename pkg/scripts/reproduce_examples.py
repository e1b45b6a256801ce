"""Regenerate every worked example: meshes plus a closed-form comparison table.

    python3 scripts/reproduce_examples.py --out results --grid 32x64
"""

import argparse
import sys
from pathlib import Path

from neutral_modes.cli import CASES, run


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="results")
    p.add_argument("--grid", default="32x64")
    p.add_argument("--format", choices=("obj", "ply"), default="ply")
    args = p.parse_args(argv)
    worst = 0
    for case in CASES:
        print(f"== {case}")
        code = run(["reproduce", case, "--out", str(Path(args.out) / case), "--grid", args.grid,
                    "--format", args.format])
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
