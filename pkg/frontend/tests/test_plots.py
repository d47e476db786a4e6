"""The plotting layer: schema validation, curve counts, idempotence."""

import hashlib
import math
import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1]))

from plots import FigureSpec, PlotError, build_figure, load_rows, main, render


def write(path, text):
    path.write_text(text, encoding="utf-8", newline="\n")
    return str(path)


FIG1_CSV = (
    "# fig1 seed=0 R=0.45\n"
    "k,t,method,gap,bound\n"
    + "".join(
        f"{k},{k * 0.1},{m},{1.0 / (k + 1)},{'inf' if k == 0 else 2.6 / (k * 0.1) ** 2}\n"
        for m in ("sirnag_I", "sirnag_II", "rgd")
        for k in range(5)
    )
)

FIG2_CSV = "k,method,gap\n" + "".join(
    f"{k},{m},{10.0 / (k + 1) ** (2 if m == 'sirnag' else 1)}\n"
    for m in ("sirnag", "rgd")
    for k in range(1, 30)
)

FIG3_CSV = "h,k,t,error\n" + "".join(
    f"{h},{k},{k * h},{h * math.sin(0.5 * k * h) ** 2}\n"
    for h in (0.2, 0.1)
    for k in range(int(4 / h) + 1)
)


def test_fig1_curve_count(tmp_path):
    csv_path = write(tmp_path / "fig1.csv", FIG1_CSV)
    spec = FigureSpec(csv_path, "fig1", str(tmp_path / "fig1.png"))
    fig = build_figure(spec, load_rows(spec))
    # three methods plus the bound curve
    assert len(fig.axes[0].lines) == 4
    labels = {line.get_label() for line in fig.axes[0].lines}
    assert labels == {"sirnag_I", "sirnag_II", "rgd", "bound"}


def test_fig2_curcalled_per_method(tmp_path):
    csv_path = write(tmp_path / "fig2.csv", FIG2_CSV)
    spec = FigureSpec(csv_path, "fig2", str(tmp_path / "fig2.png"))
    fig = build_figure(spec, load_rows(spec))
    assert len(fig.axes[0].lines) == 2
    assert {l.get_label() for l in fig.axes[0].lines} == {"sirnag", "rgd"}


def test_fig3_one_curve_per_h_with_peak_annotation(tmp_path):
    csv_path = write(tmp_path / "fig3.csv", FIG3_CSV)
    spec = FigureSpec(csv_path, "fig3", str(tmp_path / "fig3.png"))
    rows = load_rows(spec)
    fig = build_figure(spec, rows)
    ax = fig.axes[0]
    assert len(ax.lines) == 2
    assert {l.get_label() for l in ax.lines} == {"h=0.2", "h=0.1"}
    # annotations carry the per-curve maxima straight from the CSV
    annotated = {t.get_text() for t in ax.texts}
    for h in ("0.2", "0.1"):
        peak = max(float(r["error"]) for r in rows if r["h"] == h)
        assert f"{peak:.3g}" in annotated


def test_render_writes_file_and_is_idempotent(tmp_path):
    csv_path = write(tmp_path / "fig1.csv", FIG1_CSV)
    out = tmp_path / "fig1.png"
    before = hashlib.sha256(pathlib.Path(csv_path).read_bytes()).hexdigest()
    assert main(["--kind", "fig1", "--in", csv_path, "--out", str(out)]) == 0
    first = out.read_bytes()
    assert main(["--kind", "fig1", "--in", csv_path, "--out", str(out)]) == 0
    assert out.read_bytes() == first
    # rendering never touches the input
    assert hashlib.sha256(pathlib.Path(csv_path).read_bytes()).hexdigest() == before


def test_schema_mismatch_is_descriptive(tmp_path):
    csv_path = write(tmp_path / "bad.csv", "a,b,c\n1,2,3\n")
    out = tmp_path / "x.png"
    assert main(["--kind", "fig1", "--in", csv_path, "--out", str(out)]) == 1
    assert not out.exists()
    with pytest.raises(PlotError, match="schema"):
        load_rows(FigureSpec(csv_path, "fig1", str(out)))


def test_header_only_csv_writes_nothing(tmp_path):
    csv_path = write(tmp_path / "empty.csv", "k,t,method,gap,bound\n")
    out = tmp_path / "x.png"
    assert main(["--kind", "fig1", "--in", csv_path, "--out", str(out)]) == 1
    assert not out.exists()


def test_unknown_kind_rejected(tmp_path):
    with pytest.raises(PlotError):
        FigureSpec("x.csv", "fig9", "x.png")
