"""CSV rows and a minimal static SVG line plot."""
from __future__ import annotations

import csv
import io
import math
from typing import Iterable, Sequence

from . import __version__

COMPARE_COLUMNS = ("x0", "method", "rule", "truth", "y", "side", "in_extended_core", "error")
APPROX_COLUMNS = ("n_granules", "h", "method", "sup_error", "mean_error")


def fmt(v) -> str:
    """Render a cell; floats get 12 significant digits."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError(f"non-finite value in CSV output: {v}")
        return format(v, ".12g")
    return str(v)


def to_csv(columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def line_plot_svg(
    xs: Sequence[float],
    ys: Sequence[float],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    log_y: bool = True,
    width: int = 480,
    height: int = 320,
) -> str:
    if len(xs) != len(ys) or not xs:
        raise ValueError("need equally many x and y values, at least one")
    floor = 1e-16
    ty = [math.log10(max(y, floor)) for y in ys] if log_y else list(ys)
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ty), max(ty)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1, x_hi + 1
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1, y_hi + 1
    ml, mr, mt, mb = 60, 20, 30, 45
    pw, ph = width - ml - mr, height - mt - mb

    def px(x):
        return ml + (x - x_lo) / (x_hi - x_lo) * pw

    def py(y):
        return mt + (1 - (y - y_lo) / (y_hi - y_lo)) * ph

    pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ty))
    y_tick = (lambda v: f"1e{v:.1f}") if log_y else (lambda v: f"{v:.3g}")
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f"<!-- generator: flexinfer {__version__} -->",
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" stroke="black"/>',
        f'<polyline fill="none" stroke="steelblue" stroke-width="2" points="{pts}"/>',
    ]
    for x, y in zip(xs, ty):
        lines.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="3" fill="steelblue"/>')
        lines.append(
            f'<text x="{px(x):.2f}" y="{mt + ph + 15}" font-size="10" text-anchor="middle">{fmt(x)}</text>'
        )
    lines += [
        f'<text x="{ml - 5}" y="{py(y_hi):.2f}" font-size="10" text-anchor="end">{y_tick(y_hi)}</text>',
        f'<text x="{ml - 5}" y="{py(y_lo):.2f}" font-size="10" text-anchor="end">{y_tick(y_lo)}</text>',
        f'<text x="{width / 2:.0f}" y="18" font-size="13" text-anchor="middle">{_esc(title)}</text>',
        f'<text x="{ml + pw / 2:.0f}" y="{height - 8}" font-size="11" text-anchor="middle">{_esc(xlabel)}</text>',
        f'<text x="14" y="{mt + ph / 2:.0f}" font-size="11" text-anchor="middle" '
        f'transform="rotate(-90 14 {mt + ph / 2:.0f})">{_esc(ylabel)}</text>',
        "</svg>",
    ]
    return "\n".join(lines) + "\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def approx_svg(rows: Sequence[dict]) -> str:
    """Plot ``sup_error`` against ``n_granules`` from parsed approx-CSV rows."""
    xs = [float(r["n_granules"]) for r in rows]
    ys = [float(r["sup_error"]) for r in rows]
    method = rows[0]["method"] if rows else ""
    return line_plot_svg(
        xs, ys, title=f"sup error vs granules ({method})", xlabel="n granules", ylabel="sup error (log)"
    )


def read_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))
