#!/usr/bin/env python3
"""Reproduce all five summary tables into out/tables (CSV + aligned text)."""

import sys
from pathlib import Path

from enerscale.cli import main

OUT = Path(__file__).resolve().parent.parent / "out" / "tables"


def run() -> int:
    status = 0
    for table_id in (1, 2, 3, 4, 5):
        status |= main(["tables", "--table", str(table_id), "--out-dir", str(OUT)])
    print(f"tables written to {OUT}")
    return status


if __name__ == "__main__":
    sys.exit(run())
