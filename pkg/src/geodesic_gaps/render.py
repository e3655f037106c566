"""SVG pictures of the Poincare disk with the octagon and geodesic families."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from xml.sax.saxutils import quoteattr

from . import octagon as oct_
from .fuchsian import FuchsianGroup
from .hyperbolic_plane import Geodesic, Point
from .simple_geodesics import ArcSet, Family, clip_to_domain

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#17becf",
    "#bcbd22",
    "#7f7f7f",
    "#393b79",
    "#ad494a",
)
DASHES = ("", "6 3", "2 2", "8 3 2 3", "1 3")
DIAMETER_TOL = 1e-9


def style_of(style: int) -> tuple[str, str]:
    """Colour and dash pattern for a style id; colours cycle first."""
    if style < 0:
        raise ValueError("style ids are nonnegative")
    return PALETTE[style % len(PALETTE)], DASHES[(style // len(PALETTE)) % len(DASHES)]


@dataclass(frozen=True)
class Layer:
    arcsets: tuple[ArcSet, ...]
    style: int
    label: str = ""
    multiplicity: int = 0
    length: float = 0.0


@dataclass(frozen=True)
class Overlay:
    """Hyperbolic disk of the given radius about ``center``."""

    center: Point
    radius: float
    style: int = 0


@dataclass(frozen=True)
class DiskScene:
    sides: tuple[tuple[Point, Point], ...]
    layers: tuple[Layer, ...] = ()
    overlays: tuple[Overlay, ...] = ()
    size: int = 800
    margin: int = 20
    stroke: float = 1.2

    @property
    def scale(self) -> float:
        return (self.size - 2 * self.margin) / 2.0


def octagon_sides() -> tuple[tuple[Point, Point], ...]:
    vs = [Point.from_complex(v) for v in oct_.vertices()]
    # side k lies between vertices k-1 and k
    return tuple((vs[k - 1], vs[k]) for k in range(8))


def scene_from_families(
    families: list[Family],
    G: FuchsianGroup,
    overlays: list[Overlay] | None = None,
    size: int = 800,
) -> DiskScene:
    """One layer per family, styled by its index."""
    layers = []
    for i, fam in enumerate(families):
        arcsets = tuple(clip_to_domain(G, c) for c in fam.members)
        layers.append(Layer(arcsets, i, str(fam.half_trace), fam.multiplicity, fam.length))
    return DiskScene(octagon_sides(), tuple(layers), tuple(overlays or ()), size=size)


# --- drawing --------------------------------------------------------------------------


def _num(x: float) -> str:
    s = format(x, ".9g")
    return "0" if s == "-0" else s


def _screen(scene: DiskScene, z: complex) -> tuple[float, float]:
    c = scene.size / 2.0
    return c + scene.scale * z.real, c - scene.scale * z.imag


def geodesic_circle(p: complex, q: complex) -> tuple[complex, float] | None:
    """Circle orthogonal to the unit circle through ``p`` and ``q``, or ``None``
    when ``p``, ``q`` and the origin are collinear."""
    cross = p.real * q.imag - p.imag * q.real
    if abs(cross) <= DIAMETER_TOL * max(1e-300, abs(p) * abs(q)) or abs(p) < DIAMETER_TOL or abs(q) < DIAMETER_TOL:
        return None
    g = Geodesic.through(Point.from_complex(p), Point.from_complex(q))
    return g.circle()


def arc_path(scene: DiskScene, p: complex, q: complex) -> str:
    """Path data for the geodesic segment from ``p`` to ``q``."""
    x1, y1 = _screen(scene, p)
    x2, y2 = _screen(scene, q)
    circ = geodesic_circle(p, q)
    if circ is None:
        return f"M {_num(x1)} {_num(y1)} L {_num(x2)} {_num(y2)}"
    center, radius = circ
    cx, cy = _screen(scene, center)
    sweep = 1 if (x1 - cx) * (y2 - cy) - (y1 - cy) * (x2 - cx) > 0 else 0
    r = radius * scene.scale
    return f"M {_num(x1)} {_num(y1)} A {_num(r)} {_num(r)} 0 0 {sweep} {_num(x2)} {_num(y2)}"


def _element(scene: DiskScene, p: complex, q: complex, attrs: str) -> str:
    if geodesic_circle(p, q) is None:
        x1, y1 = _screen(scene, p)
        x2, y2 = _screen(scene, q)
        return f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}"{attrs}/>'
    return f'<path d="{arc_path(scene, p, q)}"{attrs}/>'


def disk_circle(center: Point, radius: float) -> tuple[complex, float]:
    """Euclidean center and radius of a hyperbolic disk."""
    z = center.z
    t = math.tanh(radius / 2.0)
    r2 = abs(z) ** 2
    den = 1.0 - r2 * t * t
    return z * (1.0 - t * t) / den, t * (1.0 - r2) / den


def emit_svg(scene: DiskScene) -> str:
    """SVG 1.1 document; identical scenes give identical text."""
    s = scene.size
    c = s / 2.0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<circle cx="{_num(c)}" cy="{_num(c)}" r="{_num(scene.scale)}" fill="none" stroke="black" stroke-width="1"/>',
        '<g id="domain" fill="none" stroke="black" stroke-width="1.5">',
    ]
    for a, b in scene.sides:
        out.append(_element(scene, a.z, b.z, ' class="side"'))
    out.append("</g>")
    for layer in scene.layers:
        colour, dash = style_of(layer.style)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(
            f'<g id="family-{layer.style}" class="family" fill="none" stroke="{colour}" '
            f'stroke-width="{_num(scene.stroke)}"{dash_attr} data-label={quoteattr(layer.label)}>'
        )
        for arcset in layer.arcsets:
            out.append(f"<g class=\"geodesic\" data-word={quoteattr(arcset.source)}>")
            for arc in arcset.arcs:
                out.append(_element(scene, arc.start.z, arc.end.z, ""))
            out.append("</g>")
        out.append("</g>")
    if scene.overlays:
        out.append('<g id="overlays" fill-opacity="0.35" stroke="none">')
        for ov in scene.overlays:
            colour, _ = style_of(ov.style)
            ctr, rad = disk_circle(ov.center, ov.radius)
            x, y = _screen(scene, ctr)
            out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{_num(rad * scene.scale)}" fill="{colour}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def legend(scene: DiskScene) -> str:
    """JSON text mapping style ids to family data."""
    entries = {}
    for layer in scene.layers:
        colour, dash = style_of(layer.style)
        entries[str(layer.style)] = {
            "colour": colour,
            "dash": dash,
            "half_trace": layer.label,
            "length": layer.length,
            "multiplicity": layer.multiplicity,
            "geodesics": len(layer.arcsets),
        }
    return json.dumps({"schema": 1, "styles": entries}, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

