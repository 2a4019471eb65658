"""
Spacetime Diagram Rendering Service
Lays out worldlines, photon rays and flip markers of an EventGraph in any frame
and writes them as SVG 1.1 (t upward, x to the right).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from models import (
    DiagramSpec,
    EventGraph,
    FrameVelocity,
    Regime,
    SpacetimeEvent,
    StateLabel,
)
from services.kinematics import apply, make_transform, parse_velocity
from services.worldline import transform_polyline

logger = logging.getLogger(__name__)


INK = "#1E0A3C"
PHOTON = "#F05537"
FLIP_FILL = "#FFD500"
PAPER = "#FFFFFF"
MARKER_RADIUS = 5
LABEL_OFFSET = 7
DEFAULT_AXES_BOUNDS = (-2.0, 2.0, -2.0, 2.0)


@dataclass(frozen=True)
class Stroke:
    kind: str
    x1: float
    y1: float
    x2: float
    y2: float
    id: Optional[str] = None


@dataclass(frozen=True)
class Marker:
    kind: str
    id: str
    label: str
    cx: float
    cy: float


@dataclass(frozen=True)
class Diagram:
    """Canvas-space primitives shared by the SVG and PDF writers."""

    title: str
    width: float
    height: float
    worldlines: tuple[tuple[str, tuple[Stroke, ...]], ...]
    photons: tuple[Stroke, ...]
    markers: tuple[Marker, ...]


def _fmt(value: float) -> str:
    text = f"{value:.2f}"
    return "0.00" if text == "-0.00" else text


def _velocity_title(velocity: FrameVelocity) -> str:
    return f"Spacetime diagram, V = {velocity.value:g} ({velocity.regime.value})"


def _padded_bounds(points, margin: float) -> tuple[float, float, float, float]:
    if not points:
        return DEFAULT_AXES_BOUNDS
    ts = [p.t for p in points]
    xs = [p.x for p in points]
    t_low, t_high = min(ts), max(ts)
    x_low, x_high = min(xs), max(xs)
    t_pad = margin * (t_high - t_low) or 0.5
    x_pad = margin * (x_high - x_low) or 0.5
    return t_low - t_pad, t_high + t_pad, x_low - x_pad, x_high + x_pad


class _Canvas:
    def __init__(self, bounds, scale: float):
        self.t_min, self.t_max, self.x_min, self.x_max = bounds
        self.scale = scale
        self.width = (self.x_max - self.x_min) * scale
        self.height = (self.t_max - self.t_min) * scale

    def point(self, event: SpacetimeEvent) -> tuple[float, float]:
        return (event.x - self.x_min) * self.scale, (self.t_max - event.t) * self.scale


def layout_scenario(graph: EventGraph, spec: DiagramSpec) -> Diagram:
    transform = make_transform(spec.velocity)

    framed_worldlines = []
    for worldline in graph.worldlines:
        pieces = []
        for segment in worldline.segments:
            start, end = transform_polyline(
                transform,
                [
                    SpacetimeEvent(t=segment.t_start, x=worldline.position),
                    SpacetimeEvent(t=segment.t_end, x=worldline.position),
                ],
            )
            pieces.append((segment.state, start, end))
        framed_worldlines.append((worldline.actor_id, pieces))

    framed_photons = []
    for segment in graph.photon_segments:
        start, end = transform_polyline(transform, graph.segment_endpoints(segment))
        framed_photons.append((segment, start, end))

    framed_events = [apply(transform, event) for event in graph.events]
    framed_ghosts = [apply(transform, ghost) for ghost in graph.ghosts]

    bounds = spec.bounds
    if bounds is None:
        points = framed_events + framed_ghosts
        for _, pieces in framed_worldlines:
            for _, start, end in pieces:
                points.extend((start, end))
        for _, start, end in framed_photons:
            points.extend((start, end))
        bounds = _padded_bounds(points, spec.margin)
    canvas = _Canvas(bounds, spec.scale)

    worldlines = []
    for actor_id, pieces in framed_worldlines:
        strokes = []
        for state, start, end in pieces:
            (x1, y1), (x2, y2) = canvas.point(start), canvas.point(end)
            strokes.append(Stroke(f"state-{state.value}", x1, y1, x2, y2))
        worldlines.append((actor_id, tuple(strokes)))

    photons = []
    for segment, start, end in framed_photons:
        (x1, y1), (x2, y2) = canvas.point(start), canvas.point(end)
        photons.append(
            Stroke("photon", x1, y1, x2, y2, id=f"photon-{segment.from_event}-{segment.to_event}")
        )

    markers = []
    for event in framed_events:
        cx, cy = canvas.point(event)
        markers.append(Marker("flip", f"flip-{event.id}", event.id, cx, cy))
    for ghost in framed_ghosts:
        cx, cy = canvas.point(ghost)
        markers.append(Marker("no-flip", f"ghost-{ghost.id}", ghost.id, cx, cy))

    return Diagram(
        title=_velocity_title(spec.velocity),
        width=canvas.width,
        height=canvas.height,
        worldlines=tuple(worldlines),
        photons=tuple(photons),
        markers=tuple(markers),
    )


def _svg_open(title: str, width: float, height: float) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" height="{_fmt(height)}"'
        f' viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f"<title>{title}</title>",
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="{PAPER}"/>',
    ]


def _line(stroke: Stroke, extra: str = "") -> str:
    ident = f' id="{stroke.id}"' if stroke.id else ""
    return (
        f'<line class="{stroke.kind}"{ident} x1="{_fmt(stroke.x1)}" y1="{_fmt(stroke.y1)}"'
        f' x2="{_fmt(stroke.x2)}" y2="{_fmt(stroke.y2)}"{extra}/>'
    )


def diagram_to_svg(diagram: Diagram) -> str:
    out = _svg_open(diagram.title, diagram.width, diagram.height)

    out.append(f'<g class="worldlines" stroke="{INK}" stroke-width="2">')
    for actor_id, strokes in diagram.worldlines:
        out.append(f'<g class="worldline" id="worldline-{actor_id}">')
        for stroke in strokes:
            dashed = stroke.kind == f"state-{StateLabel.E.value}"
            out.append(_line(stroke, ' stroke-dasharray="6 4"' if dashed else ""))
        out.append("</g>")
    out.append("</g>")

    out.append(f'<g class="photons" stroke="{PHOTON}" stroke-width="1">')
    for stroke in diagram.photons:
        out.append(_line(stroke))
    out.append("</g>")

    out.append(f'<g class="markers" stroke="{INK}" stroke-width="1">')
    for marker in diagram.markers:
        fill = FLIP_FILL if marker.kind == "flip" else PAPER
        out.append(
            f'<circle class="{marker.kind}" id="{marker.id}" cx="{_fmt(marker.cx)}" cy="{_fmt(marker.cy)}"'
            f' r="{MARKER_RADIUS}" fill="{fill}"/>'
        )
    out.append("</g>")

    out.append(f'<g class="labels" font-family="Helvetica" font-size="12" fill="{INK}">')
    for marker in diagram.markers:
        out.append(
            f'<text x="{_fmt(marker.cx + LABEL_OFFSET)}" y="{_fmt(marker.cy - LABEL_OFFSET)}">{marker.label}</text>'
        )
    out.append("</g>")

    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_scenario(graph: EventGraph, spec: DiagramSpec) -> str:
    diagram = layout_scenario(graph, spec)
    logger.debug(
        f"Rendered {len(diagram.worldlines)} worldlines, {len(diagram.photons)} photons at V={spec.velocity.value}"
    )
    return diagram_to_svg(diagram)


def _clip_through_origin(dt: float, dx: float, bounds) -> Optional[tuple[SpacetimeEvent, SpacetimeEvent]]:
    """Clip the line s*(dt, dx) to the box (Liang-Barsky on a line through the origin)."""
    t_min, t_max, x_min, x_max = bounds
    low, high = float("-inf"), float("inf")
    for d, lo, hi in ((dt, t_min, t_max), (dx, x_min, x_max)):
        if abs(d) < 1e-15:
            if not lo <= 0.0 <= hi:
                return None
            continue
        a, b = sorted((lo / d, hi / d))
        low, high = max(low, a), min(high, b)
    if low >= high:
        return None
    return (
        SpacetimeEvent(t=low * dt, x=low * dx),
        SpacetimeEvent(t=high * dt, x=high * dx),
    )


def render_axes(
    velocity: FrameVelocity,
    bounds: Optional[tuple[float, float, float, float]] = None,
    scale: float = 100.0,
) -> str:
    """Rest axes, the frame axes x_V = 0 (x = V t) and t_V = 0 (t = V x), and the light ray x = t."""
    velocity = parse_velocity(velocity)
    bounds = bounds or DEFAULT_AXES_BOUNDS
    canvas = _Canvas(bounds, scale)
    superluminal = velocity.regime is Regime.SUPERLUMINAL
    t_label, x_label = ("t\u0303", "x\u0303") if superluminal else ("t_V", "x_V")

    # (class, direction (dt, dx), label at the far end)
    lines = [
        ("axis-rest-t", (1.0, 0.0), "t"),
        ("axis-rest-x", (0.0, 1.0), "x"),
        ("axis-frame-t", (1.0, velocity.value), t_label),
        ("axis-frame-x", (velocity.value, 1.0), x_label),
        ("light-ray", (1.0, 1.0), "x = t"),
    ]

    out = _svg_open(_velocity_title(velocity).replace("Spacetime diagram", "Axes"), canvas.width, canvas.height)
    labels = []
    out.append(f'<g class="axes" stroke="{INK}" stroke-width="1">')
    for kind, (dt, dx), label in lines:
        clipped = _clip_through_origin(dt, dx, bounds)
        if clipped is None:
            continue
        start, end = clipped
        (x1, y1), (x2, y2) = canvas.point(start), canvas.point(end)
        extra = ""
        if kind == "light-ray":
            extra = f' stroke="{PHOTON}"'
        elif kind.startswith("axis-frame"):
            extra = ' stroke-dasharray="6 4"'
        out.append(_line(Stroke(kind, x1, y1, x2, y2), extra))
        labels.append((label, x2, y2))
    out.append("</g>")
    out.append(f'<g class="labels" font-family="Helvetica" font-size="12" fill="{INK}">')
    for label, x, y in labels:
        out.append(f'<text x="{_fmt(x + 4)}" y="{_fmt(y + 12)}">{label}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
