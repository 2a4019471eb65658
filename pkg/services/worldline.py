"""
Worldlines of actors at rest: state history, flips, and their image in any frame
"""

from __future__ import annotations

import logging
from typing import Iterable, Sequence

from models import (
    EPS_NULL,
    Actor,
    FrameTransform,
    FrameVelocity,
    SpacetimeEvent,
    StateLabel,
    StateSegment,
    Traversal,
    Worldline,
)
from services.errors import AtFlipBoundary, OutsideWorldline
from services.kinematics import apply, make_transform, transform_delta

logger = logging.getLogger(__name__)


def build_worldline(
    actor: Actor,
    start: float,
    horizon: float,
    flips: Sequence[tuple[float, str]] = (),
) -> Worldline:
    """Tile [start, horizon] with state segments, toggling the state at each flip time."""
    segments = []
    state = actor.initial_state
    t_start = start
    for t_flip, _ in flips:
        segments.append(StateSegment(t_start, t_flip, state))
        state = state.flipped()
        t_start = t_flip
    segments.append(StateSegment(t_start, horizon, state))
    return Worldline(
        actor_id=actor.actor_id,
        kind=actor.kind,
        position=actor.position,
        segments=tuple(segments),
        flips=tuple(event_id for _, event_id in flips),
        path=actor.path,
    )


def transform_polyline(
    transform: FrameTransform, points: Iterable[SpacetimeEvent]
) -> list[SpacetimeEvent]:
    # L_V is linear, so mapping the vertices maps every straight piece exactly.
    return [apply(transform, point) for point in points]


def worldline_vertices(worldline: Worldline) -> list[SpacetimeEvent]:
    """Rest-frame vertices: the start, every flip and the end of the worldline."""
    x = worldline.position
    vertices = [SpacetimeEvent(t=worldline.start, x=x, id=f"{worldline.actor_id}:start")]
    for t_flip, event_id in zip(worldline.flip_times, worldline.flips):
        vertices.append(SpacetimeEvent(t=t_flip, x=x, id=event_id, actor_id=worldline.actor_id))
    vertices.append(SpacetimeEvent(t=worldline.end, x=x, id=f"{worldline.actor_id}:end"))
    return vertices


def state_at(worldline: Worldline, t: float, eps_null: float = EPS_NULL) -> StateLabel:
    if t < worldline.start - eps_null or t > worldline.end + eps_null:
        raise OutsideWorldline(
            f"t={t} lies outside [{worldline.start}, {worldline.end}] of {worldline.actor_id}"
        )
    for t_flip, event_id in zip(worldline.flip_times, worldline.flips):
        if abs(t - t_flip) <= eps_null:
            raise AtFlipBoundary(f"{worldline.actor_id} flips at t={t_flip} (event {event_id})")
    for segment in worldline.segments:
        if segment.contains(t):
            return segment.state
    return worldline.segments[-1].state


def traversal_order(worldline: Worldline, velocity: FrameVelocity) -> Traversal:
    """Direction in which frame time runs along a constant-x worldline."""
    dt_v, _ = transform_delta(make_transform(velocity), 1.0, 0.0)
    return Traversal.FORWARD if dt_v > 0 else Traversal.REVERSED
