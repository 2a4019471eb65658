"""
Frame narratives
Re-reads an EventGraph along the time coordinate of any observer: event order,
who emits and who absorbs, how each flip reads, and photons in flight.
"""

from __future__ import annotations

import logging

from models import (
    EPS_NULL,
    ActorKind,
    EventGraph,
    FlipReading,
    FrameEventRole,
    FrameNarrative,
    FrameVelocity,
    SpacetimeEvent,
    StateLabel,
    Traversal,
    Worldline,
)
from services.errors import NotAFlip, SimultaneousEndpoints, SliceOnEvent
from services.kinematics import apply, format_fixed, make_transform, parse_velocity
from services.worldline import traversal_order

logger = logging.getLogger(__name__)


def order_events(graph: EventGraph, velocity: FrameVelocity) -> list[SpacetimeEvent]:
    """Events in frame coordinates, sorted by (t_V, x_V, id)."""
    transform = make_transform(velocity)
    framed = [apply(transform, event) for event in graph.events]
    return sorted(framed, key=lambda ev: (ev.t, ev.x, ev.id))


def _segment_frame_times(graph: EventGraph, transform, segment):
    start, end = graph.segment_endpoints(segment)
    return apply(transform, start), apply(transform, end)


def _credit_segments(graph: EventGraph, velocity: FrameVelocity, eps_null: float):
    transform = make_transform(velocity)
    emitted = {event.id: 0 for event in graph.events}
    absorbed = {event.id: 0 for event in graph.events}
    horizon_sources = horizon_sinks = 0
    for segment in graph.photon_segments:
        start, end = _segment_frame_times(graph, transform, segment)
        if abs(end.t - start.t) <= eps_null:
            raise SimultaneousEndpoints(
                f"segment {segment.from_event}->{segment.to_event} has equal frame times under V={velocity.value}"
            )
        earlier, later = (start, end) if start.t < end.t else (end, start)
        if segment.reaches_horizon:
            # the photon runs into (or, read backwards, out of) the horizon
            if later is end:
                emitted[start.id] += 1
                horizon_sinks += 1
            else:
                absorbed[start.id] += 1
                horizon_sources += 1
            continue
        emitted[earlier.id] += 1
        absorbed[later.id] += 1
    return emitted, absorbed, horizon_sources, horizon_sinks


def event_roles(
    graph: EventGraph, velocity: FrameVelocity, eps_null: float = EPS_NULL
) -> list[FrameEventRole]:
    """Per-event emission/absorption counts, listed in frame order."""
    velocity = parse_velocity(velocity)
    emitted, absorbed, _, _ = _credit_segments(graph, velocity, eps_null)
    return [
        FrameEventRole(event.id, emitted[event.id], absorbed[event.id])
        for event in order_events(graph, velocity)
    ]


def flip_reading(
    graph: EventGraph, worldline: Worldline, event_id: str, velocity: FrameVelocity
) -> tuple[StateLabel, StateLabel]:
    """The (before, after) states of a flip as seen along the frame's time."""
    if event_id not in worldline.flips:
        raise NotAFlip(f"{event_id!r} is not a flip of {worldline.actor_id!r}")
    index = worldline.flips.index(event_id)
    before = worldline.segments[index].state
    after = worldline.segments[index + 1].state
    if traversal_order(worldline, parse_velocity(velocity)) is Traversal.REVERSED:
        before, after = after, before
    return before, after


def photon_count_at(
    graph: EventGraph, velocity: FrameVelocity, tau: float, eps_null: float = EPS_NULL
) -> int:
    """Number of photon segments in flight on the frame-time slice t_V = tau."""
    transform = make_transform(velocity)
    for event in graph.events:
        t_v = apply(transform, event).t
        if abs(t_v - tau) <= eps_null:
            raise SliceOnEvent(f"slice t_V={tau} passes through event {event.id} (t_V={t_v})")
    count = 0
    for segment in graph.photon_segments:
        start, end = _segment_frame_times(graph, transform, segment)
        low, high = sorted((start.t, end.t))
        if low < tau < high:
            count += 1
    return count


def narrative_report(
    graph: EventGraph, velocity: FrameVelocity, eps_null: float = EPS_NULL
) -> FrameNarrative:
    velocity = parse_velocity(velocity)
    ordered = order_events(graph, velocity)
    emitted, absorbed, sources, sinks = _credit_segments(graph, velocity, eps_null)
    roles = tuple(FrameEventRole(ev.id, emitted[ev.id], absorbed[ev.id]) for ev in ordered)

    readings = []
    for event in ordered:
        worldline = graph.worldline(graph.event(event.id).actor_id)
        before, after = flip_reading(graph, worldline, event.id, velocity)
        readings.append(FlipReading(event.id, before, after))

    logger.debug(
        f"V={velocity.value} ({velocity.regime.value}): order {' '.join(ev.id for ev in ordered)}"
    )
    return FrameNarrative(
        velocity=velocity,
        ordered_events=tuple(ordered),
        roles=roles,
        flip_readings=tuple(readings),
        horizon_sources=sources,
        horizon_sinks=sinks,
    )


_VERBS = {
    (1, 0): "emits",
    (0, 1): "absorbs",
    (1, 1): "reflects",
    (2, 0): "pair-emits",
    (0, 2): "pair-absorbs",
}


def passed_through(graph: EventGraph) -> list[str]:
    """TLAs that never flip although a photon crossed their position (excited, so transparent)."""
    crossed = []
    for worldline in graph.worldlines:
        if worldline.kind is not ActorKind.TLA or worldline.flips:
            continue
        for segment in graph.photon_segments:
            if not worldline.path.accepts(segment.direction):
                continue
            start, end = graph.segment_endpoints(segment)
            low, high = sorted((start.x, end.x))
            if low < worldline.position < high:
                crossed.append(worldline.actor_id)
                break
    return crossed


def describe(narrative: FrameNarrative, graph: EventGraph) -> str:
    """One-line reading, e.g. "R pair-emits; D absorbs; A absorbs; C never flips"."""
    parts = []
    for role in narrative.roles:
        verb = _VERBS.get((role.emitted, role.absorbed))
        if verb is None:
            verb = f"emits {role.emitted} and absorbs {role.absorbed}"
        parts.append(f"{role.event_id} {verb}")
    for actor_id in passed_through(graph):
        parts.append(f"{actor_id} never flips")
    return "; ".join(parts)


def render_narrative_tsv(narrative: FrameNarrative) -> str:
    """Tab-separated report, one event per line in frame order."""
    lines = ["event\tt_v\tx_v\temitted\tabsorbed\tflip"]
    for event, role, reading in zip(
        narrative.ordered_events, narrative.roles, narrative.flip_readings
    ):
        lines.append(
            f"{event.id}\t{format_fixed(event.t)}\t{format_fixed(event.x)}\t{role.emitted}\t{role.absorbed}"
            f"\t{reading.state_before.value}>{reading.state_after.value}"
        )
    return "\n".join(lines) + "\n"
