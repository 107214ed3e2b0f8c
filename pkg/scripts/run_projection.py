#!/usr/bin/env python3
"""Run the default committed-concentration projection and the equilibrium curve.

Writes out/projection/trajectory.csv (2017 start, no decarbonization, 2.4%/yr
wealth growth) and out/projection/committed_curve.csv, both plot-ready.
"""

import sys
from pathlib import Path

from enerscale.cli import main

OUT = Path(__file__).resolve().parent.parent / "out" / "projection"


def run() -> int:
    status = main(
        ["project", "--preset", "paper-2017", "--eta-c", "0", "--horizon", "40",
         "--out", str(OUT / "trajectory.csv")]
    )
    status |= main(
        ["project", "--preset", "paper-2017", "--curve", "--from-w", "500",
         "--to-w", "6000", "--points", "56", "--out", str(OUT / "committed_curve.csv")]
    )
    print(f"projection outputs written to {OUT}")
    return status


if __name__ == "__main__":
    sys.exit(run())
