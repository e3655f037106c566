import json
import math
import re
import xml.etree.ElementTree as ET

import pytest

from geodesic_gaps import render
from geodesic_gaps.exact import ExactTrace
from geodesic_gaps.hyperbolic_plane import Geodesic, Mobius, Point
from geodesic_gaps.simple_geodesics import Arc, ArcSet, families

SVG = "{http://www.w3.org/2000/svg}"
ARC_RE = re.compile(r"M (\S+) (\S+) A (\S+) (\S+) 0 0 ([01]) (\S+) (\S+)$")


@pytest.fixture(scope="module")
def two_families(G, short_classes):
    fams = families(short_classes, only_simple=True)
    assert [str(f.half_trace) for f in fams[:2]] == ["1+1√2", "3+2√2"]
    return fams[:2]


def svg_center(x1, y1, r, sweep, x2, y2):
    """Center of a small SVG arc from its endpoint form."""
    hx, hy = (x1 - x2) / 2, (y1 - y2) / 2
    d2 = hx * hx + hy * hy
    coef = math.sqrt(max(0.0, r * r - d2) / d2)
    if sweep == 0:
        coef = -coef
    return coef * hy + (x1 + x2) / 2, -coef * hx + (y1 + y2) / 2


def to_disk(scene, x, y):
    c = scene.size / 2
    return complex((x - c) / scene.scale, (c - y) / scene.scale)


def parse_arc(d):
    m = ARC_RE.match(d)
    assert m, d
    x1, y1, r, r2, sweep, x2, y2 = m.groups()
    assert r == r2
    return float(x1), float(y1), float(r), int(sweep), float(x2), float(y2)


def test_octagon_only_scene():
    scene = render.scene_from_families([], None)
    root = ET.fromstring(render.emit_svg(scene))
    assert root.tag == SVG + "svg" and root.get("version") == "1.1"
    domain = root.find(f"{SVG}g[@id='domain']")
    sides = domain.findall(f"{SVG}path")
    assert len(sides) == 8
    assert not root.findall(f".//{SVG}g[@class='family']")


def test_octagon_sides_are_orthogonal_arcs():
    scene = render.scene_from_families([], None)
    root = ET.fromstring(render.emit_svg(scene))
    for el in root.iter(SVG + "path"):
        x1, y1, r, sweep, x2, y2 = parse_arc(el.get("d"))
        cx, cy = svg_center(x1, y1, r, sweep, x2, y2)
        c = to_disk(scene, cx, cy)
        rad = r / scene.scale
        assert abs(abs(c) ** 2 - (1 + rad * rad)) < 1e-6 * (1 + rad * rad)


def test_systole_family_has_twelve_geodesics(G, two_families):
    scene = render.scene_from_families(two_families[:1], G)
    root = ET.fromstring(render.emit_svg(scene))
    groups = root.findall(f".//{SVG}g[@class='geodesic']")
    assert len(groups) == 12
    assert len({g.get("data-word") for g in groups}) == 12


def test_two_families_get_distinct_styles(G, two_families):
    scene = render.scene_from_families(two_families, G)
    assert [layer.style for layer in scene.layers] == [0, 1]
    root = ET.fromstring(render.emit_svg(scene))
    fams = root.findall(f".//{SVG}g[@class='family']")
    assert [f.get("id") for f in fams] == ["family-0", "family-1"]
    assert fams[0].get("stroke") != fams[1].get("stroke")


def test_arcs_orthogonal_and_endpoints_match(G, two_families):
    scene = render.scene_from_families(two_families, G)
    root = ET.fromstring(render.emit_svg(scene))
    drawn = []
    for g in root.iter(SVG + "g"):
        if g.get("class") == "geodesic":
            drawn.extend(g)
    arcs = [a for layer in scene.layers for s in layer.arcsets for a in s.arcs]
    assert len(drawn) == len(arcs)
    for el, arc in zip(drawn, arcs):
        if el.tag == SVG + "line":
            x1, y1, x2, y2 = (float(el.get(k)) for k in ("x1", "y1", "x2", "y2"))
        else:
            x1, y1, r, sweep, x2, y2 = parse_arc(el.get("d"))
            cx, cy = svg_center(x1, y1, r, sweep, x2, y2)
            c = to_disk(scene, cx, cy)
            rad = r / scene.scale
            assert abs(abs(c) ** 2 - (1 + rad * rad)) < 1e-6 * (1 + rad * rad)
            # the arc bulges toward the disk center, away from the circle's center
            mid = to_disk(scene, (x1 + x2) / 2, (y1 + y2) / 2)
            assert abs(mid - c) < rad + 1e-9
        sx, sy = render._screen(scene, arc.start.z)
        ex, ey = render._screen(scene, arc.end.z)
        assert math.hypot(x1 - sx, y1 - sy) < 0.5
        assert math.hypot(x2 - ex, y2 - ey) < 0.5


def test_arc_center_matches_geodesic_circle():
    scene = render.DiskScene(render.octagon_sides())
    p, q = 0.3 + 0.2j, -0.1 + 0.6j
    x1, y1, r, sweep, x2, y2 = parse_arc(render.arc_path(scene, p, q))
    center, radius = render.geodesic_circle(p, q)
    cx, cy = svg_center(x1, y1, r, sweep, x2, y2)
    assert abs(to_disk(scene, cx, cy) - center) < 1e-6
    assert abs(r / scene.scale - radius) < 1e-6


def test_diameter_emits_line():
    g = Geodesic.from_endpoints(-1 + 0j, 1 + 0j)
    arc = Arc(g, -0.5, 0.5, Point(-0.4, 0.0), Point(0.4, 0.0), Mobius.identity())
    layer = render.Layer((ArcSet((arc,), "x"),), 0)
    scene = render.DiskScene(render.octagon_sides(), (layer,))
    root = ET.fromstring(render.emit_svg(scene))
    geo = root.find(f".//{SVG}g[@class='geodesic']")
    assert [el.tag for el in geo] == [SVG + "line"]
    assert render.geodesic_circle(0.2j, -0.7j) is None
    assert render.arc_path(scene, 0.2j, -0.7j).startswith("M ") and " L " in render.arc_path(scene, 0.2j, -0.7j)


def test_emit_is_deterministic(G, two_families):
    a = render.emit_svg(render.scene_from_families(two_families, G))
    b = render.emit_svg(render.scene_from_families(two_families, G))
    assert a.encode() == b.encode()
    assert not re.search(r"(?<=[ \"])-0(?![\d.])", a)
    assert not re.search(r"\d[eE][-+]?\d", a)


def test_number_format_nine_digits():
    assert render._num(1 / 3) == "0.333333333"
    assert render._num(-0.0) == "0"
    assert render._num(400.0) == "400"


def test_style_cycle():
    assert render.style_of(0) == (render.PALETTE[0], "")
    assert render.style_of(12) == (render.PALETTE[0], render.DASHES[1])
    assert len({render.style_of(i) for i in range(60)}) == 60
    with pytest.raises(ValueError):
        render.style_of(-1)


def test_legend(G, two_families):
    scene = render.scene_from_families(two_families, G)
    doc = json.loads(render.legend(scene))
    assert doc["styles"]["0"]["half_trace"] == "1+1√2"
    assert doc["styles"]["0"]["multiplicity"] == 12
    assert doc["styles"]["1"]["half_trace"] == "3+2√2"
    assert doc["styles"]["1"]["geodesics"] == 12
    assert math.isclose(doc["styles"]["0"]["length"], 2 * math.acosh(float(ExactTrace(1, 1))), rel_tol=1e-12)


def test_disk_circle_matches_hyperbolic_disk():
    center, radius = Point(0.3, -0.2), 0.7
    c, r = render.disk_circle(center, radius)
    for k in range(16):
        theta = 2 * math.pi * k / 16
        p = Mobius.moving_to_origin(center).inverse()(math.tanh(radius / 2) * complex(math.cos(theta), math.sin(theta)))
        assert abs(abs(p - c) - r) < 1e-12


def test_overlay_drawn():
    scene = render.DiskScene(render.octagon_sides(), overlays=(render.Overlay(Point(0.0, 0.0), 0.5),))
    root = ET.fromstring(render.emit_svg(scene))
    circles = root.findall(f"{SVG}g[@id='overlays']/{SVG}circle")
    assert len(circles) == 1
    assert math.isclose(float(circles[0].get("r")), math.tanh(0.25) * scene.scale, rel_tol=1e-8)
