"""Ternary diagrams written as plain SVG text.

Vertex A (first component) sits bottom-left, B bottom-right and C at the
top. Output is byte-identical for identical input, so rendered plots can be
compared in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .errors import DimensionMismatch, SpecError
from .simplex import Composition, CompositionDataset, CompositionLike, as_composition

SQRT3_2 = math.sqrt(3.0) / 2.0
MARKERS = ("circle", "triangle", "square", "diamond")
_PALETTE = ("#d62728", "#2ca02c", "#1f77b4", "#9467bd", "#ff7f0e")


@dataclass(frozen=True)
class Canvas:
    width: float = 480.0
    height: float = 460.0
    margin: float = 40.0
    legend_height: float = 0.0

    @property
    def side(self) -> float:
        usable_h = self.height - 2 * self.margin - self.legend_height
        return min(self.width - 2 * self.margin, usable_h / SQRT3_2)


@dataclass(frozen=True)
class Overlay:
    label: str
    composition: Composition
    marker: str = "triangle"

    def __post_init__(self):
        object.__setattr__(self, "composition", as_composition(self.composition))
        if self.marker not in MARKERS:
            raise SpecError(f"unknown marker {self.marker!r}; choose from {MARKERS}")


@dataclass(frozen=True)
class TernaryPlotSpec:
    dataset: CompositionDataset
    overlays: tuple[Overlay, ...] = ()
    canvas: Canvas = field(default_factory=Canvas)
    vertex_labels: tuple[str, str, str] | None = None
    title: str = ""

    def __post_init__(self):
        if self.dataset.D != 3:
            raise SpecError(f"ternary plots need exactly 3 components, got {self.dataset.D}")
        object.__setattr__(self, "overlays", tuple(self.overlays))
        for ov in self.overlays:
            if ov.composition.D != 3:
                raise SpecError(f"overlay {ov.label!r} has {ov.composition.D} components")
        if self.vertex_labels is None:
            object.__setattr__(self, "vertex_labels", tuple(self.dataset.component_names))
        elif len(self.vertex_labels) != 3:
            raise SpecError("vertex_labels needs three entries")


def barycentric_to_unit(x: CompositionLike) -> tuple[float, float]:
    """Position inside the unit-side triangle A=(0,0), B=(1,0), C=(1/2, sqrt(3)/2)."""
    x = as_composition(x)
    if x.D != 3:
        raise DimensionMismatch(f"ternary coordinates need 3 parts, got {x.D}")
    _, b, c = x.parts
    return float(b + 0.5 * c), float(SQRT3_2 * c)


def barycentric_to_canvas(x: CompositionLike, canvas: Canvas = Canvas()) -> tuple[float, float]:
    """Pixel position of ``x``; the SVG y axis points down."""
    u, v = barycentric_to_unit(x)
    s = canvas.side
    left = (canvas.width - s) / 2.0
    bottom = canvas.height - canvas.margin - canvas.legend_height
    return left + s * u, bottom - s * v


def inside_triangle(u: float, v: float, tol: float = 1e-9) -> bool:
    """Half-plane test in unit coordinates."""
    return v >= -tol and SQRT3_2 * 2 * u - v >= -tol and SQRT3_2 * 2 * (1 - u) - v >= -tol


def _f(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def _glyph(marker: str, cx: float, cy: float, r: float, cls: str, color: str, extra: str = "") -> str:
    common = f'class="{cls}" fill="{color}" stroke="black" stroke-width="0.8"{extra}'
    if marker == "circle":
        return f'<circle {common} cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r)}"/>'
    if marker == "square":
        return f'<rect {common} x="{_f(cx - r)}" y="{_f(cy - r)}" width="{_f(2 * r)}" height="{_f(2 * r)}"/>'
    if marker == "triangle":
        pts = [(cx, cy - 1.2 * r), (cx - 1.1 * r, cy + 0.8 * r), (cx + 1.1 * r, cy + 0.8 * r)]
    else:
        pts = [(cx, cy - 1.3 * r), (cx + 1.3 * r, cy), (cx, cy + 1.3 * r), (cx - 1.3 * r, cy)]
    path = " ".join(f"{_f(a)},{_f(b)}" for a, b in pts)
    return f'<polygon {common} points="{path}"/>'


def render_ternary(spec: TernaryPlotSpec) -> str:
    """Render ``spec`` to an SVG 1.1 document.

    Data rows become ``circle.data-point`` elements and each overlay one
    element of class ``overlay-marker``; the legend uses ``legend-glyph``
    so it never inflates those counts.
    """
    n_ov = len(spec.overlays)
    canvas = spec.canvas
    if n_ov and canvas.legend_height == 0:
        canvas = Canvas(canvas.width, canvas.height + 18.0 * n_ov + 10.0, canvas.margin, 18.0 * n_ov + 10.0)
    W, Hh = canvas.width, canvas.height
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(W)}" '
        f'height="{_f(Hh)}" viewBox="0 0 {_f(W)} {_f(Hh)}" font-family="sans-serif">',
    ]
    if spec.title:
        out.append(f'<text x="{_f(W / 2)}" y="{_f(canvas.margin / 2)}" text-anchor="middle" font-size="14">{escape(spec.title)}</text>')

    verts = [barycentric_to_canvas(Composition._trusted(e), canvas) for e in np.eye(3)]
    outline = " ".join(f"{_f(a)},{_f(b)}" for a, b in verts)
    out.append(f'<polygon class="triangle" points="{outline}" fill="none" stroke="black" stroke-width="1.2"/>')
    for frac in (0.25, 0.5, 0.75):
        for k in range(3):
            p = np.zeros(3)
            q = np.zeros(3)
            p[k], q[k] = frac, frac
            p[(k + 1) % 3], q[(k + 2) % 3] = 1 - frac, 1 - frac
            (x1, y1), (x2, y2) = (barycentric_to_canvas(Composition._trusted(v), canvas) for v in (p, q))
            out.append(
                f'<line class="grid" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
                'stroke="#cccccc" stroke-width="0.5"/>'
            )
    (ax, ay), (bx, by), (cx, cy) = verts
    la, lb, lc = (escape(s) for s in spec.vertex_labels)
    out.append(f'<text class="vertex-label" x="{_f(ax)}" y="{_f(ay + 18)}" text-anchor="middle" font-size="12">{la}</text>')
    out.append(f'<text class="vertex-label" x="{_f(bx)}" y="{_f(by + 18)}" text-anchor="middle" font-size="12">{lb}</text>')
    out.append(f'<text class="vertex-label" x="{_f(cx)}" y="{_f(cy - 8)}" text-anchor="middle" font-size="12">{lc}</text>')

    out.append('<g class="data">')
    for rid, row in zip(spec.dataset.row_ids, spec.dataset.values):
        px, py = barycentric_to_canvas(Composition._trusted(row), canvas)
        out.append(
            f'<circle class="data-point" data-id={quoteattr(rid)} cx="{_f(px)}" cy="{_f(py)}" '
            'r="2.5" fill="#555555" fill-opacity="0.7"/>'
        )
    out.append("</g>")

    if n_ov:
        out.append('<g class="overlays">')
        for i, ov in enumerate(spec.overlays):
            px, py = barycentric_to_canvas(ov.composition, canvas)
            color = _PALETTE[i % len(_PALETTE)]
            out.append(_glyph(ov.marker, px, py, 5.0, "overlay-marker", color, f" data-label={quoteattr(ov.label)}"))
        out.append("</g>")
        out.append('<g class="legend">')
        y0 = Hh - canvas.legend_height + 8.0
        for i, ov in enumerate(spec.overlays):
            y = y0 + 18.0 * i
            color = _PALETTE[i % len(_PALETTE)]
            out.append(_glyph(ov.marker, canvas.margin + 6, y, 5.0, "legend-glyph", color))
            out.append(f'<text class="legend-label" x="{_f(canvas.margin + 18)}" y="{_f(y + 4)}" font-size="11">{escape(ov.label)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def three_means_spec(ds: CompositionDataset, result, title: str = "") -> TernaryPlotSpec:
    """Plot spec with the data and the three Frechet means of a selection result."""
    overlays = []
    if result.mean_lra is not None:
        overlays.append(Overlay("μ(0) closed geometric mean", result.mean_lra, "triangle"))
    overlays.append(Overlay(f"μ({result.alpha_hat:.3f}) alpha Frechet mean", result.mean_alpha, "square"))
    overlays.append(Overlay("μ(1) arithmetic mean", result.mean_rda, "diamond"))
    return TernaryPlotSpec(ds, tuple(overlays), title=title)
