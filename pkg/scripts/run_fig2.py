#!/usr/bin/env python3
"""Leading-eigenvector problem on the unit sphere (desk scale by default;
pass --paper-scale for the 5000-dimensional version).  Writes out/fig2.csv."""

import pathlib
import sys

from riemann_accel.cli import main

OUT = pathlib.Path(__file__).resolve().parents[1] / "out"
OUT.mkdir(exist_ok=True)
sys.exit(main(["fig2", "--out", str(OUT / "fig2.csv"), *sys.argv[1:]]))
