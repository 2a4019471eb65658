"""Tests for SVG diagrams: golden files, element counts and axes"""

import os
import re
import xml.etree.ElementTree as ET

import pytest

from models import DiagramSpec, Scenario
from services.kinematics import parse_velocity
from services.scenario import BUILTIN_SCENARIOS, simulate
from services.svg_service import layout_scenario, render_axes, render_scenario

GOLDEN_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "golden")
SVG = "{http://www.w3.org/2000/svg}"


def render(name, v, **spec):
    graph = simulate(BUILTIN_SCENARIOS[name]())
    return graph, render_scenario(graph, DiagramSpec(velocity=parse_velocity(v), **spec))


def read_golden(filename):
    with open(os.path.join(GOLDEN_DIR, filename), encoding="utf-8", newline="") as handle:
        return handle.read()


@pytest.mark.parametrize("name", sorted(BUILTIN_SCENARIOS))
@pytest.mark.parametrize("v,suffix", [("0", "v0"), ("10/3", "v10_3")])
def test_golden(name, v, suffix):
    _, svg = render(name, v)
    assert svg == read_golden(f"{name}_{suffix}.svg")


@pytest.mark.parametrize("name", sorted(BUILTIN_SCENARIOS))
@pytest.mark.parametrize("v", ["0", "3/10", "10/3", "-2"])
def test_rendering_is_deterministic(name, v):
    assert render(name, v)[1] == render(name, v)[1]


@pytest.mark.parametrize("name", sorted(BUILTIN_SCENARIOS))
@pytest.mark.parametrize("v", ["0", "10/3", "-0.5"])
def test_element_counts(name, v):
    graph, svg = render(name, v)
    root = ET.fromstring(svg)
    circles = root.iter(f"{SVG}circle")
    classes = [c.get("class") for c in circles]
    assert classes.count("flip") == graph.flip_count
    assert classes.count("no-flip") == len(graph.ghosts)
    photons = [line for line in root.iter(f"{SVG}line") if line.get("class") == "photon"]
    assert len(photons) == len(graph.photon_segments)
    worldlines = [g for g in root.iter(f"{SVG}g") if g.get("class") == "worldline"]
    assert len(worldlines) == len(graph.worldlines)


@pytest.mark.parametrize("name,flips,open_circles", [
    ("fig2", ["A", "R", "B"], []),
    ("fig3", ["A", "C"], ["R", "B", "D"]),
    ("fig4", ["A", "R", "D"], ["B", "C"]),
])
def test_markers(name, flips, open_circles):
    graph, _ = render(name, "0")
    diagram = layout_scenario(graph, DiagramSpec(velocity=parse_velocity(0)))
    assert [m.label for m in diagram.markers if m.kind == "flip"] == flips
    assert [m.label for m in diagram.markers if m.kind == "no-flip"] == open_circles


def test_excited_segments_are_dashed():
    _, svg = render("fig2", "0")
    for line in re.findall(r"<line [^>]*>", svg):
        dashed = 'stroke-dasharray="6 4"' in line
        assert dashed == ('class="state-e"' in line)


def test_superluminal_reorders_vertically():
    graph = simulate(BUILTIN_SCENARIOS["fig2"]())
    rest = {m.label: m.cy for m in layout_scenario(graph, DiagramSpec(velocity=parse_velocity(0))).markers}
    moving = {m.label: m.cy for m in layout_scenario(graph, DiagramSpec(velocity=parse_velocity("10/3"))).markers}
    # larger cy is lower on the canvas, i.e. earlier
    assert rest["A"] > rest["R"] > rest["B"]
    assert moving["R"] > moving["B"] > moving["A"]


def test_explicit_bounds_and_scale():
    graph = simulate(BUILTIN_SCENARIOS["fig2"]())
    diagram = layout_scenario(
        graph, DiagramSpec(velocity=parse_velocity(0), bounds=(0.0, 4.0, -3.0, 1.0), scale=10.0)
    )
    assert (diagram.width, diagram.height) == (40.0, 40.0)
    flip_a = next(m for m in diagram.markers if m.label == "A")
    assert (flip_a.cx, flip_a.cy) == (30.0, 40.0)


def lines_by_class(svg):
    root = ET.fromstring(svg)
    return {
        line.get("class"): tuple(float(line.get(k)) for k in ("x1", "y1", "x2", "y2"))
        for line in root.iter(f"{SVG}line")
    }


class TestAxes:
    def test_rest_frame_axes_coincide(self):
        lines = lines_by_class(render_axes(parse_velocity(0)))
        assert lines["axis-frame-t"] == lines["axis-rest-t"]
        assert lines["axis-frame-x"] == lines["axis-rest-x"]
        assert "light-ray" in lines

    def test_subluminal_axes_lean_toward_light_ray(self):
        svg = render_axes(parse_velocity("3/10"))
        lines = lines_by_class(svg)
        x1, y1, x2, y2 = lines["axis-frame-t"]
        # x = V t: over the full height the axis moves 0.3 of the way across
        assert (x2 - x1) / (y1 - y2) == pytest.approx(0.3, abs=1e-2)
        assert "t_V" in svg and "x_V" in svg

    def test_superluminal_axes_cross_the_light_ray(self):
        svg = render_axes(parse_velocity("10/3"))
        lines = lines_by_class(svg)
        x1, y1, x2, y2 = lines["axis-frame-t"]
        assert abs(x2 - x1) > abs(y1 - y2)
        x1, y1, x2, y2 = lines["axis-frame-x"]
        assert abs(y1 - y2) > abs(x2 - x1)
        assert "t\u0303" in svg and "x\u0303" in svg

    def test_canvas_size(self):
        root = ET.fromstring(render_axes(parse_velocity(0.5), scale=50))
        assert (root.get("width"), root.get("height")) == ("200.00", "200.00")

    def test_title_names_regime(self):
        assert "<title>Axes, V = 3.33333 (superluminal)</title>" in render_axes(parse_velocity("10/3"))


def test_empty_scenario_renders_on_default_canvas():
    graph = simulate(Scenario(actors=(), emissions=(), horizon=5.0))
    diagram = layout_scenario(graph, DiagramSpec(velocity=parse_velocity(0)))
    assert (diagram.width, diagram.height) == (240.0, 240.0)
    assert diagram.markers == ()
    root = ET.fromstring(render_scenario(graph, DiagramSpec(velocity=parse_velocity("10/3"))))
    assert list(root.iter(f"{SVG}circle")) == []
