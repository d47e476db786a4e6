#!/usr/bin/env python3
"""Run every invariant check suite and write the reports to out/."""

import pathlib
import sys

from riemann_accel.cli import main

OUT = pathlib.Path(__file__).resolve().parents[1] / "out"
OUT.mkdir(exist_ok=True)

status = 0
for suite in ("geometry", "lyapunov", "shadowing", "reduction"):
    print(f"=== {suite} ===")
    status = max(status, main(["check", suite, "--out", str(OUT / f"check_{suite}.txt")]))
sys.exit(status)
