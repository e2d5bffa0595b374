#!/usr/bin/env python3
"""Run the three shipped sweep configs and collect CSV/SVG outputs in results/."""

import sys
from pathlib import Path

from triheat.cli import cli_main

HERE = Path(__file__).resolve().parent
CONFIGS = ("transfer_curve.cfg", "output_curves.cfg", "coupling_gate_map.cfg")


def main() -> int:
    out_dir = HERE.parent / "results"
    out_dir.mkdir(exist_ok=True)
    threads = sys.argv[1] if len(sys.argv) > 1 else "1"
    for name in CONFIGS:
        stem = Path(name).stem
        code = cli_main([
            "sweep",
            "--config", str(HERE / name),
            "--out", str(out_dir / f"{stem}.csv"),
            "--plot", str(out_dir / f"{stem}.svg"),
            "--threads", threads,
        ])
        if code != 0:
            return code
    print(f"all sweeps done; outputs in {out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
