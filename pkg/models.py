"""
Domain Models for the frame kinematics engine
Frames, events, worldlines, photon segments and per-frame narratives
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from services.errors import NearLightSpeed


# Guard band around |V| = 1 and the lightlike / tie threshold on ds^2 and frame times.
EPS_REGIME = 1e-9
EPS_NULL = 1e-9

# Label used for photon segment ends that run into the simulation horizon.
HORIZON = "HORIZON"


class Regime(enum.Enum):
    SUBLUMINAL = "subluminal"
    SUPERLUMINAL = "superluminal"


class IntervalClass(enum.Enum):
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"


class StateLabel(enum.Enum):
    G = "g"
    E = "e"

    def flipped(self) -> "StateLabel":
        return StateLabel.E if self is StateLabel.G else StateLabel.G


class ActorKind(enum.Enum):
    TLA = "TLA"
    MIRROR = "MIRROR"


class Direction(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def sign(self) -> int:
        return 1 if self is Direction.PLUS else -1

    def reversed(self) -> "Direction":
        return Direction.MINUS if self is Direction.PLUS else Direction.PLUS


class Path(enum.Enum):
    """Which travelling photons an actor couples to (outgoing/return beam)."""

    BOTH = "both"
    PLUS = "+"
    MINUS = "-"

    def accepts(self, direction: Direction) -> bool:
        return self is Path.BOTH or self.value == direction.value

    def overlaps(self, other: "Path") -> bool:
        return Path.BOTH in (self, other) or self is other


class EventRole(enum.Enum):
    EMISSION = "emission"
    REFLECTION = "reflection"
    ABSORPTION = "absorption"


class Traversal(enum.Enum):
    FORWARD = "forward"
    REVERSED = "reversed"


@dataclass(frozen=True)
class FrameVelocity:
    """Frame velocity in units of c; never within EPS_REGIME of the light speed."""

    value: float

    def __post_init__(self):
        value = float(self.value)
        if not math.isfinite(value):
            raise NearLightSpeed(f"velocity must be finite, got {self.value!r}")
        if abs(1.0 - value * value) < EPS_REGIME:
            raise NearLightSpeed(
                f"|1 - V^2| < {EPS_REGIME:g} for V = {value!r}; the transformation is undefined at V = +-1"
            )
        object.__setattr__(self, "value", value)

    @property
    def regime(self) -> Regime:
        return Regime.SUBLUMINAL if abs(self.value) < 1.0 else Regime.SUPERLUMINAL

    def negated(self) -> "FrameVelocity":
        return FrameVelocity(-self.value)

    def to_dict(self):
        return {"value": self.value, "regime": self.regime.value}


@dataclass(frozen=True)
class FrameTransform:
    """Generalized Lorentz matrix L_V, rows ordered (t-row, x-row)."""

    velocity: FrameVelocity
    matrix: np.ndarray = field(compare=False, repr=False)

    @property
    def regime(self) -> Regime:
        return self.velocity.regime

    def to_dict(self):
        return {
            "velocity": self.velocity.value,
            "regime": self.regime.value,
            "matrix": self.matrix.tolist(),
            "determinant": float(np.linalg.det(self.matrix)),
        }


@dataclass(frozen=True)
class SpacetimeEvent:
    t: float
    x: float
    id: str = ""
    role: Optional[EventRole] = None
    actor_id: Optional[str] = None

    def to_dict(self):
        return {
            "id": self.id,
            "t": self.t,
            "x": self.x,
            "role": self.role.value if self.role else None,
            "actor_id": self.actor_id,
        }


@dataclass(frozen=True)
class StateSegment:
    t_start: float
    t_end: float
    state: StateLabel

    def contains(self, t: float) -> bool:
        return self.t_start <= t <= self.t_end

    def to_dict(self):
        return {"t_start": self.t_start, "t_end": self.t_end, "state": self.state.value}


@dataclass(frozen=True)
class Worldline:
    """An actor at rest at `position`, its state history and the flips between states."""

    actor_id: str
    kind: ActorKind
    position: float
    segments: tuple[StateSegment, ...]
    flips: tuple[str, ...] = ()
    path: Path = Path.BOTH

    @property
    def start(self) -> float:
        return self.segments[0].t_start

    @property
    def end(self) -> float:
        return self.segments[-1].t_end

    @property
    def flip_times(self) -> tuple[float, ...]:
        return tuple(seg.t_start for seg in self.segments[1:])

    def to_dict(self):
        return {
            "actor_id": self.actor_id,
            "kind": self.kind.value,
            "position": self.position,
            "path": self.path.value,
            "segments": [seg.to_dict() for seg in self.segments],
            "flips": list(self.flips),
        }


@dataclass(frozen=True)
class PhotonSegment:
    from_event: str
    to_event: str
    direction: Direction

    @property
    def reaches_horizon(self) -> bool:
        return self.to_event == HORIZON

    def to_dict(self):
        return {
            "from_event": self.from_event,
            "to_event": self.to_event,
            "direction": self.direction.value,
        }


@dataclass(frozen=True)
class Actor:
    actor_id: str
    kind: ActorKind
    position: float
    initial_state: StateLabel
    path: Path = Path.BOTH

    def to_dict(self):
        return {
            "actor_id": self.actor_id,
            "kind": self.kind.value,
            "position": self.position,
            "initial_state": self.initial_state.value,
            "path": self.path.value,
        }


@dataclass(frozen=True)
class Emission:
    actor_id: str
    t_emit: float
    direction: Direction

    def to_dict(self):
        return {"actor_id": self.actor_id, "t_emit": self.t_emit, "direction": self.direction.value}


# Worldlines start this long before the first emission (or t = 0).
WORLDLINE_MARGIN = 1.0


@dataclass(frozen=True)
class Scenario:
    actors: tuple[Actor, ...]
    emissions: tuple[Emission, ...]
    horizon: float

    @property
    def start(self) -> float:
        first = min((em.t_emit for em in self.emissions), default=0.0)
        return min(0.0, first) - WORLDLINE_MARGIN

    def actor(self, actor_id: str) -> Optional[Actor]:
        for actor in self.actors:
            if actor.actor_id == actor_id:
                return actor
        return None

    def to_dict(self):
        return {
            "actors": [a.to_dict() for a in self.actors],
            "emissions": [em.to_dict() for em in self.emissions],
            "horizon": self.horizon,
        }


@dataclass(frozen=True)
class EventGraph:
    """Frame-independent record of a process: flip events joined by photon segments."""

    events: tuple[SpacetimeEvent, ...]
    photon_segments: tuple[PhotonSegment, ...]
    worldlines: tuple[Worldline, ...]
    horizon: float
    # Would-be crossing points of actors that never flip (drawn as open circles).
    ghosts: tuple[SpacetimeEvent, ...] = ()

    def event(self, event_id: str) -> SpacetimeEvent:
        for ev in self.events:
            if ev.id == event_id:
                return ev
        raise KeyError(event_id)

    def worldline(self, actor_id: str) -> Optional[Worldline]:
        for wl in self.worldlines:
            if wl.actor_id == actor_id:
                return wl
        return None

    def segment_endpoints(self, segment: PhotonSegment) -> tuple[SpacetimeEvent, SpacetimeEvent]:
        start = self.event(segment.from_event)
        if segment.reaches_horizon:
            dt = self.horizon - start.t
            end = SpacetimeEvent(
                t=self.horizon, x=start.x + segment.direction.sign * dt, id=HORIZON
            )
        else:
            end = self.event(segment.to_event)
        return start, end

    @property
    def flip_count(self) -> int:
        return sum(len(wl.flips) for wl in self.worldlines)

    def to_dict(self):
        return {
            "events": [ev.to_dict() for ev in self.events],
            "photon_segments": [seg.to_dict() for seg in self.photon_segments],
            "worldlines": [wl.to_dict() for wl in self.worldlines],
            "horizon": self.horizon,
            "ghosts": [ev.to_dict() for ev in self.ghosts],
        }


@dataclass(frozen=True)
class FrameEventRole:
    event_id: str
    emitted: int
    absorbed: int

    def to_dict(self):
        return {"event_id": self.event_id, "emitted": self.emitted, "absorbed": self.absorbed}


@dataclass(frozen=True)
class FlipReading:
    event_id: str
    state_before: StateLabel
    state_after: StateLabel

    def to_dict(self):
        return {
            "event_id": self.event_id,
            "state_before": self.state_before.value,
            "state_after": self.state_after.value,
        }


@dataclass(frozen=True)
class FrameNarrative:
    """How one observer reads an EventGraph along its own time coordinate."""

    velocity: FrameVelocity
    ordered_events: tuple[SpacetimeEvent, ...]
    roles: tuple[FrameEventRole, ...]
    flip_readings: tuple[FlipReading, ...]
    horizon_sources: int = 0
    horizon_sinks: int = 0

    def role(self, event_id: str) -> FrameEventRole:
        for role in self.roles:
            if role.event_id == event_id:
                return role
        raise KeyError(event_id)

    def reading(self, event_id: str) -> FlipReading:
        for reading in self.flip_readings:
            if reading.event_id == event_id:
                return reading
        raise KeyError(event_id)

    @property
    def total_emitted(self) -> int:
        return sum(r.emitted for r in self.roles)

    @property
    def total_absorbed(self) -> int:
        return sum(r.absorbed for r in self.roles)

    def to_dict(self):
        return {
            "velocity": self.velocity.to_dict(),
            "ordered_events": [
                {"id": ev.id, "t_v": ev.t, "x_v": ev.x} for ev in self.ordered_events
            ],
            "roles": [r.to_dict() for r in self.roles],
            "flip_readings": [r.to_dict() for r in self.flip_readings],
            "horizon_sources": self.horizon_sources,
            "horizon_sinks": self.horizon_sinks,
        }


@dataclass(frozen=True)
class DiagramSpec:
    """Frame, canvas bounds (t_min, t_max, x_min, x_max) and scale of a spacetime diagram."""

    velocity: FrameVelocity
    bounds: Optional[tuple[float, float, float, float]] = None
    scale: float = 60.0
    margin: float = 0.15
