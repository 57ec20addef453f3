"""Static SVG 1.1 rendering of a unit sphere with overlays."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .iso import OrthogonalityArc
from .norms import NormModel, sphere_points

SIZE = 480
MARGIN = 24


@dataclass
class Overlay:
    chords: list[tuple[np.ndarray, np.ndarray]] = field(default_factory=list)
    arcs: list[OrthogonalityArc] = field(default_factory=list)
    pairs: list[tuple[np.ndarray, np.ndarray]] = field(default_factory=list)


def _num(v: float) -> str:
    return f"{v:.4f}"


class _Frame:
    def __init__(self, extent: float):
        self.scale = (SIZE / 2 - MARGIN) / extent

    def __call__(self, p) -> tuple[str, str]:
        x, y = float(p[0]), float(p[1])
        # SVG y axis points down.
        return _num(SIZE / 2 + self.scale * x), _num(SIZE / 2 - self.scale * y)


def _boundary(norm: NormModel, n: int = 720) -> np.ndarray:
    if norm.is_polyhedral:
        return norm.polygon.vertex_array
    return sphere_points(norm, 2 * math.pi * np.arange(n) / n)


def _arc_points(norm: NormModel, start: float, width: float, n: int = 64) -> np.ndarray:
    return sphere_points(norm, start + width * np.linspace(0.0, 1.0, n))


def _polyline(frame: _Frame, pts: np.ndarray, **attrs: str) -> str:
    coords = " ".join(",".join(frame(p)) for p in pts)
    extra = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<polyline points="{coords}" {extra}/>'


def _line(frame: _Frame, a, b, **attrs: str) -> str:
    (x1, y1), (x2, y2) = frame(a), frame(b)
    extra = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {extra}/>'


def _dot(frame: _Frame, p, r: float, fill: str) -> str:
    cx, cy = frame(p)
    return f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{fill}"/>'


def render_svg(norm: NormModel, overlay: Overlay | None = None, title: str = "") -> str:
    """Unit sphere of ``norm`` with partner chords, A(x, eps) arcs and attainment pairs."""
    overlay = overlay or Overlay()
    bnd = _boundary(norm)
    frame = _Frame(1.08 * float(np.max(np.abs(bnd))))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{escape(title or repr(norm))}</title>",
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    half = SIZE / 2
    out.append(f'<line x1="0" y1="{_num(half)}" x2="{SIZE}" y2="{_num(half)}" stroke="#cccccc" stroke-width="0.5"/>')
    out.append(f'<line x1="{_num(half)}" y1="0" x2="{_num(half)}" y2="{SIZE}" stroke="#cccccc" stroke-width="0.5"/>')
    closed = np.vstack([bnd, bnd[:1]])
    out.append(_polyline(frame, closed, fill="none", stroke="black", stroke_width="1.5"))
    if norm.is_polyhedral:
        out.extend(_dot(frame, v, 2.5, "black") for v in bnd)

    for arc in overlay.arcs:
        for shift in (0.0, math.pi):
            pts = _arc_points(norm, arc.theta_right + shift, arc.width)
            out.append(_polyline(frame, pts, fill="none", stroke="#1f77b4", stroke_width="4", stroke_opacity="0.6"))
        out.append(_dot(frame, arc.x.to_array(), 3.5, "#1f77b4"))

    for x, y in overlay.chords:
        for s in (1, -1):
            out.append(_line(frame, x, s * np.asarray(y), stroke="#2ca02c", stroke_width="1"))
        out.append(_dot(frame, x, 3, "#2ca02c"))
        out.append(_dot(frame, y, 3, "#2ca02c"))

    for x, y in overlay.pairs:
        # Rays to x and y, dashed chord between them.
        for p in (x, y):
            out.append(_line(frame, (0.0, 0.0), p, stroke="#d62728", stroke_width="1"))
        out.append(_line(frame, x, y, stroke="#d62728", stroke_width="1", stroke_dasharray="4,3"))
        for p in (x, y):
            out.append(_dot(frame, p, 4, "#d62728"))

    out.append("</svg>")
    return "\n".join(out) + "\n"


def pairs_overlay(pairs: Sequence) -> list[tuple[np.ndarray, np.ndarray]]:
    return [(p.x.to_array(), p.y.to_array()) for p in pairs]
