"""Tests for the PDF narrative export"""

import pytest
from reportlab.graphics.shapes import Circle, Line, String
from reportlab.lib.units import mm

from models import DiagramSpec
from services.kinematics import parse_velocity
from services.pdf_service import MAX_DRAWING_HEIGHT, MAX_DRAWING_WIDTH, diagram_drawing, generate_narrative_pdf
from services.svg_service import layout_scenario


@pytest.mark.parametrize("v", [0, "10/3", -0.5])
def test_pdf_is_built(fig4_graph, v):
    buffer = generate_narrative_pdf(fig4_graph, v)
    data = buffer.getvalue()
    assert data.startswith(b"%PDF")
    assert data.rstrip().endswith(b"%%EOF")


def test_pdf_with_horizon_photons(fig2_graph):
    assert generate_narrative_pdf(fig2_graph, "10/3", title="Mirror").read(4) == b"%PDF"


def test_drawing_fits_the_page(fig3_graph):
    drawing = diagram_drawing(fig3_graph, parse_velocity("10/3"), scale=200.0)
    assert drawing.width <= MAX_DRAWING_WIDTH + 1e-6
    assert drawing.height <= MAX_DRAWING_HEIGHT + 1e-6


def test_small_drawing_keeps_its_size(fig2_graph):
    velocity = parse_velocity(0)
    diagram = layout_scenario(fig2_graph, DiagramSpec(velocity=velocity, scale=10.0))
    drawing = diagram_drawing(fig2_graph, velocity, scale=10.0)
    assert (drawing.width, drawing.height) == (diagram.width, diagram.height)
    assert drawing.width < 170 * mm


def test_drawing_contents(fig4_graph):
    velocity = parse_velocity(0)
    diagram = layout_scenario(fig4_graph, DiagramSpec(velocity=velocity))
    drawing = diagram_drawing(fig4_graph, velocity)

    circles = [shape for shape in drawing.contents if isinstance(shape, Circle)]
    labels = [shape.text for shape in drawing.contents if isinstance(shape, String)]
    lines = [shape for shape in drawing.contents if isinstance(shape, Line)]
    assert len(circles) == len(diagram.markers)
    assert labels == [marker.label for marker in diagram.markers]

    strokes = sum(len(strokes) for _, strokes in diagram.worldlines)
    assert len(lines) == strokes + len(diagram.photons)
    excited = sum(1 for _, ss in diagram.worldlines for s in ss if s.kind == "state-e")
    assert sum(1 for line in lines if line.strokeDashArray) == excited
