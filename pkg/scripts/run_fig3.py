#!/usr/bin/env python3
"""Step-size convergence of the integrator against a fine-step reference
(--paper-scale switches the reference to h_ref = 1e-5).  Writes out/fig3.csv
plus out/fig3.summary.csv with the per-step-size error peaks."""

import pathlib
import sys

from riemann_accel.cli import main

OUT = pathlib.Path(__file__).resolve().parents[1] / "out"
OUT.mkdir(exist_ok=True)
sys.exit(main(["fig3", "--out", str(OUT / "fig3.csv"), *sys.argv[1:]]))
