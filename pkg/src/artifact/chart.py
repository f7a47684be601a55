"""Deterministic SVG charts of spectral sequence pages in Adams convention.

A class in ``E^{s,t}`` is drawn at ``(t - s, s)``.  Squares are Z[1/3]
summands, dots are Z/2 summands; a cell with more than three summands shows
a count badge instead.  A d_r is an arrow one step left and r steps up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html import escape
from typing import Mapping

from .abelian import FGAbelianGroup
from .config import ChartSpec
from .sseq import Page

__all__ = ["ChartData", "chart_from_page", "chart_from_groups", "render_chart", "render_svg"]


@dataclass
class ChartData:
    stems: tuple[int, int]
    filtrations: tuple[int, int]
    cells: dict[tuple[int, int], dict] = field(default_factory=dict)
    arrows: list[tuple[int, int, int, int, int]] = field(default_factory=list)
    title: str = ""

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "stems": list(self.stems),
            "filtrations": list(self.filtrations),
            "cells": [
                {"stem": x, "s": y, **c} for (x, y), c in sorted(self.cells.items())
            ],
            "arrows": [
                {"source": [x0, y0], "target": [x1, y1], "r": r} for x0, y0, x1, y1, r in self.arrows
            ],
        }


def _cell(g: FGAbelianGroup, labels: list[str]) -> dict:
    return {
        "free": g.free_rank,
        "torsion": list(g.invariant_factors),
        "group": g.pretty(),
        "labels": labels,
    }


def chart_from_page(spec: ChartSpec, page: Page) -> ChartData:
    """Collect the chart content of ``page`` over the spec's range."""
    w = page.window
    x0, x1 = spec.stems
    y0, y1 = spec.filtrations
    if y0 < 0 or y1 > w.s_max:
        raise ValueError(f"filtrations {spec.filtrations} exceed the computed range 0..{w.s_max}")

    def key(x: int, y: int) -> tuple[int, int, int]:
        if spec.mode == "integer-stems":
            return (x, 0, y)
        return (x + spec.band, x, y)

    for x in (x0, x1):
        k = key(x, 0)
        if not (w.a[0] <= k[0] <= w.a[1] and w.b[0] <= k[1] <= w.b[1]):
            raise ValueError(f"stem range {spec.stems} exceeds the computed window")
    data = ChartData(spec.stems, spec.filtrations, title=spec.title)
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            k = key(x, y)
            if not page.basis(k):
                continue
            g = page.group(k)
            if g.is_zero:
                continue
            data.cells[(x, y)] = _cell(g, [c.label for c in page.classes(k)])
    if spec.arrows and spec.mode == "integer-stems":
        for p in page.chain()[1:]:
            d = p.differential
            if d is None or d.is_zero:
                continue
            for x in range(x0, x1 + 1):
                for y in range(y0, y1 + 1):
                    if y + d.r <= y1 and x - 1 >= x0 and p.supports_differential(key(x, y)):
                        data.arrows.append((x, y, x - 1, y + d.r, d.r))
    return data


def chart_from_groups(
    spec: ChartSpec, groups: Mapping[tuple[int, int], FGAbelianGroup], arrows=()
) -> ChartData:
    """Chart data from a ``(stem, s) -> group`` map such as a slice E2."""
    data = ChartData(spec.stems, spec.filtrations, title=spec.title)
    for (x, y), g in sorted(groups.items()):
        if spec.stems[0] <= x <= spec.stems[1] and spec.filtrations[0] <= y <= spec.filtrations[1] and not g.is_zero:
            data.cells[(x, y)] = _cell(g, [])
    for x0, y0, x1, y1, r in sorted(set(map(tuple, arrows))):
        if all(spec.stems[0] <= x <= spec.stems[1] for x in (x0, x1)) and all(
            spec.filtrations[0] <= y <= spec.filtrations[1] for y in (y0, y1)
        ):
            data.arrows.append((x0, y0, x1, y1, r))
    return data


def render_svg(data: ChartData, cell: int = 28) -> str:
    x0, x1 = data.stems
    y0, y1 = data.filtrations
    margin = 40
    width = margin * 2 + (x1 - x0 + 1) * cell
    height = margin * 2 + (y1 - y0 + 1) * cell + 20

    def px(x: float) -> float:
        return margin + (x - x0) * cell + cell / 2

    def py(y: float) -> float:
        return margin + (y1 - y) * cell + cell / 2

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="9">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if data.title:
        out.append(f'<text x="{margin}" y="20" font-size="12">{escape(data.title)}</text>')
    out.append('<g stroke="#ddd" stroke-width="0.5">')
    for x in range(x0, x1 + 2):
        gx = margin + (x - x0) * cell
        out.append(f'<line x1="{gx}" y1="{margin}" x2="{gx}" y2="{margin + (y1 - y0 + 1) * cell}"/>')
    for y in range(y0, y1 + 2):
        gy = margin + (y - y0) * cell
        out.append(f'<line x1="{margin}" y1="{gy}" x2="{margin + (x1 - x0 + 1) * cell}" y2="{gy}"/>')
    out.append("</g>")
    out.append('<g fill="#444">')
    for x in range(x0, x1 + 1):
        if x % 2 == 0:
            out.append(f'<text x="{px(x):.1f}" y="{margin + (y1 - y0 + 1) * cell + 12}" text-anchor="middle">{x}</text>')
    for y in range(y0, y1 + 1):
        if y % 2 == 0:
            out.append(f'<text x="{margin - 6}" y="{py(y) + 3:.1f}" text-anchor="end">{y}</text>')
    out.append("</g>")
    for (x, y), c in sorted(data.cells.items()):
        cx, cy = px(x), py(y)
        n_free, n_tors = c["free"], len(c["torsion"])
        title = escape(c["group"] + (": " + ", ".join(c["labels"]) if c["labels"] else ""))
        out.append(f"<g><title>({x}, {y}) {title}</title>")
        if n_free + n_tors > 3:
            out.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="8" fill="none" stroke="black"/>')
            out.append(f'<text x="{cx:.1f}" y="{cy + 3:.1f}" text-anchor="middle">{n_free + n_tors}</text>')
        else:
            glyphs = ["free"] * n_free + ["tors"] * n_tors
            for i, kind in enumerate(glyphs):
                gx = cx + (i - (len(glyphs) - 1) / 2) * 7
                if kind == "free":
                    out.append(f'<rect x="{gx - 3:.1f}" y="{cy - 3:.1f}" width="6" height="6" fill="none" stroke="black"/>')
                else:
                    out.append(f'<circle cx="{gx:.1f}" cy="{cy:.1f}" r="2.5" fill="black"/>')
        out.append("</g>")
    colors = {2: "#999", 3: "#1f77b4", 5: "#2ca02c", 7: "#d62728"}
    for xs, ys, xt, yt, r in sorted(data.arrows):
        col = colors.get(r, "#9467bd")
        out.append(
            f'<line x1="{px(xs):.1f}" y1="{py(ys):.1f}" x2="{px(xt):.1f}" y2="{py(yt):.1f}" '
            f'stroke="{col}" stroke-width="0.8"><title>d{r}</title></line>'
        )
    ly = margin + (y1 - y0 + 1) * cell + 28
    out.append(
        f'<text x="{margin}" y="{ly}">square = Z[1/3], dot = Z/2, circled n = n summands; '
        f'arrows: d3 blue, d7 red</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_chart(spec: ChartSpec, page: Page) -> str:
    """SVG for ``page`` over the spec's range; identical inputs give identical bytes."""
    return render_svg(chart_from_page(spec, page), spec.cell)
