"""
PDF Narrative Export Service
Generates a one-page PDF with the spacetime diagram and the frame narrative table
"""

import io
import logging
from datetime import datetime

from reportlab.graphics.shapes import Circle, Drawing, Line, String
from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER
from reportlab.lib.pagesizes import A4
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import mm
from reportlab.platypus import (
    HRFlowable,
    Paragraph,
    SimpleDocTemplate,
    Spacer,
    Table,
    TableStyle,
)

from models import DiagramSpec, EventGraph, StateLabel
from services.kinematics import format_fixed, parse_velocity
from services.narrative import describe, narrative_report
from services.svg_service import FLIP_FILL, INK, PAPER, PHOTON, layout_scenario

logger = logging.getLogger(__name__)

# the diagram is shrunk to fit this box on the page
MAX_DRAWING_WIDTH = 170 * mm
MAX_DRAWING_HEIGHT = 110 * mm


def diagram_drawing(graph, velocity, scale=60.0):
    """Draw the same layout the SVG writer uses as a reportlab Drawing."""
    diagram = layout_scenario(graph, DiagramSpec(velocity=velocity, scale=scale))
    fit = min(1.0, MAX_DRAWING_WIDTH / diagram.width, MAX_DRAWING_HEIGHT / diagram.height)
    height = diagram.height * fit

    def point(x, y):
        # canvas y grows downward, PDF y grows upward
        return x * fit, height - y * fit

    drawing = Drawing(diagram.width * fit, height)
    for _, strokes in diagram.worldlines:
        for stroke in strokes:
            line = Line(*point(stroke.x1, stroke.y1), *point(stroke.x2, stroke.y2))
            line.strokeColor = colors.HexColor(INK)
            line.strokeWidth = 2
            if stroke.kind == f"state-{StateLabel.E.value}":
                line.strokeDashArray = [6, 4]
            drawing.add(line)

    for stroke in diagram.photons:
        line = Line(*point(stroke.x1, stroke.y1), *point(stroke.x2, stroke.y2))
        line.strokeColor = colors.HexColor(PHOTON)
        line.strokeWidth = 1
        drawing.add(line)

    for marker in diagram.markers:
        cx, cy = point(marker.cx, marker.cy)
        circle = Circle(cx, cy, 4)
        circle.strokeColor = colors.HexColor(INK)
        circle.fillColor = colors.HexColor(FLIP_FILL if marker.kind == "flip" else PAPER)
        drawing.add(circle)
        drawing.add(String(cx + 6, cy + 6, marker.label, fontName="Helvetica", fontSize=9))

    return drawing


def generate_narrative_pdf(graph: EventGraph, velocity, title="Frame narrative"):
    """Generate the narrative PDF and return it as a BytesIO buffer"""
    velocity = parse_velocity(velocity)
    narrative = narrative_report(graph, velocity)

    buffer = io.BytesIO()
    doc = SimpleDocTemplate(
        buffer,
        pagesize=A4,
        rightMargin=20 * mm,
        leftMargin=20 * mm,
        topMargin=20 * mm,
        bottomMargin=20 * mm,
        title=title,
    )

    elements = []
    styles = getSampleStyleSheet()

    title_style = ParagraphStyle(
        "NarrativeTitle",
        parent=styles["Heading1"],
        fontSize=20,
        textColor=colors.HexColor(INK),
        spaceAfter=6,
    )
    label_style = ParagraphStyle(
        "Label",
        parent=styles["Normal"],
        fontSize=9,
        textColor=colors.HexColor("#6F7287"),
    )
    value_style = ParagraphStyle(
        "Value",
        parent=styles["Normal"],
        fontSize=11,
        textColor=colors.HexColor(INK),
    )

    elements.append(Paragraph(title, title_style))
    elements.append(
        Paragraph(
            f"V = {velocity.value:g} ({velocity.regime.value}), horizon t = {graph.horizon:g}",
            label_style,
        )
    )
    elements.append(Spacer(1, 12))
    elements.append(diagram_drawing(graph, velocity))
    elements.append(Spacer(1, 12))
    elements.append(
        HRFlowable(width="100%", thickness=1, color=colors.HexColor("#E5E5E5"))
    )
    elements.append(Spacer(1, 12))

    # Narrative table
    elements.append(Paragraph("EVENTS IN FRAME ORDER", label_style))
    elements.append(Spacer(1, 6))

    rows = [["Event", "t_V", "x_V", "Emitted", "Absorbed", "Flip"]]
    for event, role, reading in zip(
        narrative.ordered_events, narrative.roles, narrative.flip_readings
    ):
        rows.append([
            event.id,
            format_fixed(event.t),
            format_fixed(event.x),
            str(role.emitted),
            str(role.absorbed),
            f"{reading.state_before.value} > {reading.state_after.value}",
        ])

    table = Table(rows, colWidths=[25 * mm, 30 * mm, 30 * mm, 25 * mm, 25 * mm, 25 * mm])
    table.setStyle(
        TableStyle(
            [
                ("FONTNAME", (0, 0), (-1, 0), "Helvetica-Bold"),
                ("TEXTCOLOR", (0, 0), (-1, -1), colors.HexColor(INK)),
                ("LINEBELOW", (0, 0), (-1, 0), 1, colors.HexColor("#E5E5E5")),
                ("ALIGN", (1, 0), (-1, -1), "RIGHT"),
                ("VALIGN", (0, 0), (-1, -1), "MIDDLE"),
            ]
        )
    )
    elements.append(table)
    elements.append(Spacer(1, 12))

    elements.append(Paragraph("READING", label_style))
    elements.append(Spacer(1, 4))
    elements.append(Paragraph(describe(narrative, graph), value_style))
    if narrative.horizon_sources or narrative.horizon_sinks:
        elements.append(Spacer(1, 4))
        elements.append(
            Paragraph(
                f"Photons from the horizon: {narrative.horizon_sources}; "
                f"into the horizon: {narrative.horizon_sinks}",
                value_style,
            )
        )
    elements.append(Spacer(1, 20))

    footer_style = ParagraphStyle(
        "Footer",
        parent=styles["Normal"],
        fontSize=8,
        textColor=colors.HexColor("#6F7287"),
        alignment=TA_CENTER,
    )
    elements.append(
        Paragraph(f"Generated {datetime.utcnow().strftime('%Y-%m-%d %H:%M')} UTC", footer_style)
    )

    doc.build(elements)
    buffer.seek(0)
    logger.info(f"Built narrative PDF for V={velocity.value} ({len(narrative.ordered_events)} events)")
    return buffer
