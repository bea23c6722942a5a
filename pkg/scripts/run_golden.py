#!/usr/bin/env python3
"""Run every golden scenario into out/<name>/ and print a short summary.

Usage: python scripts/run_golden.py [--out DIR]
"""

import argparse
import sys
import time
from pathlib import Path

from noonsim.cli import run_scenario
from noonsim.scenario import load_scenario

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = [
    "table1_no_interaction",
    "table1_with_aperture",
    "fig5_hom_glass",
    "fig5_hom_aperture",
    "fig6_sweep",
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(ROOT / "out"), help="output root directory")
    args = parser.parse_args()

    worst = 0
    for name in GOLDEN:
        scenario = ROOT / "scenarios" / f"{name}.json"
        task = load_scenario(scenario).task
        out_dir = Path(args.out) / name
        print(f"=== {name} ({task}) -> {out_dir}")
        t0 = time.perf_counter()
        code = run_scenario(task, scenario, out_dir)
        print(f"    exit {code} in {time.perf_counter() - t0:.1f}s")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
