#!/usr/bin/env python3
"""Hyperbolic toy problem: accelerated method vs gradient descent vs the
certified bound.  Writes out/fig1.csv."""

import pathlib
import sys

from riemann_accel.cli import main

OUT = pathlib.Path(__file__).resolve().parents[1] / "out"
OUT.mkdir(exist_ok=True)
sys.exit(main(["fig1", "--out", str(OUT / "fig1.csv"), *sys.argv[1:]]))
