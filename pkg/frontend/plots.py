#!/usr/bin/env python3
"""Render the three experiment figures from the CLI's CSV output.

This layer only draws what the CSV contains: gaps, bounds and errors are
taken verbatim from the file, never recomputed.

Usage:
    python plots.py --kind fig1 --in out/fig1.csv --out out/fig1.png
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

SCHEMAS = {
    "fig1": ["k", "t", "method", "gap", "bound"],
    "fig2": ["k", "method", "gap"],
    "fig3": ["h", "k", "t", "error"],
}


class PlotError(Exception):
    pass


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    kind: str
    out_path: str

    def __post_init__(self):
        if self.kind not in SCHEMAS:
            raise PlotError(f"unknown figure kind {self.kind!r}; choose from {sorted(SCHEMAS)}")


def load_rows(spec: FigureSpec) -> list[dict]:
    try:
        with open(spec.csv_path, encoding="utf-8") as f:
            lines = [line for line in f if not line.startswith("#")]
    except OSError as e:
        raise PlotError(f"cannot read {spec.csv_path}: {e}") from e
    if not lines:
        raise PlotError(f"{spec.csv_path} is empty")
    reader = csv.reader(lines)
    header = next(reader)
    expected = SCHEMAS[spec.kind]
    if header != expected:
        raise PlotError(
            f"{spec.csv_path} header {header} does not match the {spec.kind} "
            f"schema {expected}"
        )
    rows = [dict(zip(header, row)) for row in reader]
    if not rows:
        raise PlotError(f"{spec.csv_path} contains a header but no data rows")
    return rows


def build_figure(spec: FigureSpec, rows: list[dict]):
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    if spec.kind == "fig1":
        methods = sorted({r["method"] for r in rows})
        for method in methods:
            pts = [(float(r["t"]), float(r["gap"])) for r in rows if r["method"] == method]
            pts.sort()
            ax.semilogy([t for t, _ in pts], [g for _, g in pts], label=method)
        bound = sorted({
            (float(r["t"]), float(r["bound"]))
            for r in rows
            if float(r["t"]) > 0 and math.isfinite(float(r["bound"]))
        })
        if bound:
            ax.semilogy([t for t, _ in bound], [b for _, b in bound],
                        linestyle="--", color="black", label="bound")
        ax.set_xlabel("t")
        ax.set_ylabel("optimality gap")
    elif spec.kind == "fig2":
        methods = sorted({r["method"] for r in rows})
        for method in methods:
            pts = [(int(r["k"]), float(r["gap"])) for r in rows
                   if r["method"] == method and int(r["k"]) >= 1 and float(r["gap"]) > 0]
            pts.sort()
            ax.loglog([k for k, _ in pts], [g for _, g in pts], label=method)
        ax.set_xlabel("iteration k")
        ax.set_ylabel("optimality gap")
    else:  # fig3
        step_sizes = sorted({r["h"] for r in rows}, key=float, reverse=True)
        for h in step_sizes:
            pts = [(float(r["t"]), float(r["error"])) for r in rows if r["h"] == h]
            pts.sort()
            ts = [t for t, _ in pts]
            errs = [e for _, e in pts]
            (line,) = ax.plot(ts, errs, label=f"h={float(h):g}")
            peak_t, peak_e = max(pts, key=lambda te: te[1])
            ax.annotate(
                f"{peak_e:.3g}",
                xy=(peak_t, peak_e),
                xytext=(peak_t, peak_e * 1.05),
                fontsize=8,
                color=line.get_color(),
                ha="center",
            )
        ax.set_xlabel("t")
        ax.set_ylabel("distance to reference")
    ax.legend()
    ax.set_title(spec.kind)
    fig.tight_layout()
    return fig


def render(spec: FigureSpec) -> str:
    rows = load_rows(spec)  # raises before anything is written
    fig = build_figure(spec, rows)
    fig.savefig(spec.out_path, dpi=120)
    plt.close(fig)
    return spec.out_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kind", required=True, choices=sorted(SCHEMAS))
    parser.add_argument("--in", dest="csv_path", required=True)
    parser.add_argument("--out", dest="out_path", required=True)
    args = parser.parse_args(argv)
    try:
        path = render(FigureSpec(args.csv_path, args.kind, args.out_path))
    except PlotError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
