"""
Rest-frame simulation of photons, two-level atoms and mirrors
Emission, propagation at speed 1, reflection and absorption are played out in
rest-frame time and recorded as a frame-independent EventGraph.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Optional

from models import (
    EPS_NULL,
    HORIZON,
    Actor,
    ActorKind,
    Direction,
    Emission,
    EventGraph,
    EventRole,
    Path,
    PhotonSegment,
    Scenario,
    SpacetimeEvent,
    StateLabel,
)
from services.errors import InvalidScenario, SelfAbsorption, UnknownActor
from services.kinematics import format_fixed
from services.worldline import build_worldline

logger = logging.getLogger(__name__)


CANONICAL_HORIZON = 6.0


def canonical_fig2() -> Scenario:
    """A emits toward the mirror R, the reflected photon is absorbed by B on the return path."""
    return Scenario(
        actors=(
            Actor("A", ActorKind.TLA, 0.0, StateLabel.E),
            Actor("R", ActorKind.MIRROR, -2.0, StateLabel.G),
            Actor("B", ActorKind.TLA, -1.0, StateLabel.G, Path.PLUS),
        ),
        emissions=(Emission("A", 0.0, Direction.MINUS),),
        horizon=CANONICAL_HORIZON,
    )


def canonical_fig3() -> Scenario:
    """Detector C on the outgoing path absorbs the photon before it reaches the mirror."""
    return Scenario(
        actors=(
            Actor("A", ActorKind.TLA, 0.0, StateLabel.E),
            Actor("R", ActorKind.MIRROR, -2.0, StateLabel.G),
            Actor("B", ActorKind.TLA, -1.0, StateLabel.G, Path.PLUS),
            Actor("C", ActorKind.TLA, -1.0, StateLabel.G, Path.MINUS),
            Actor("D", ActorKind.TLA, -1.5, StateLabel.G, Path.PLUS),
        ),
        emissions=(Emission("A", 0.0, Direction.MINUS),),
        horizon=CANONICAL_HORIZON,
    )


def canonical_fig4() -> Scenario:
    """Detector D on the return path absorbs the reflected photon; C is left excited (transparent)."""
    return Scenario(
        actors=(
            Actor("A", ActorKind.TLA, 0.0, StateLabel.E),
            Actor("R", ActorKind.MIRROR, -2.0, StateLabel.G),
            Actor("B", ActorKind.TLA, -1.0, StateLabel.G, Path.PLUS),
            Actor("C", ActorKind.TLA, -1.0, StateLabel.E, Path.MINUS),
            Actor("D", ActorKind.TLA, -1.5, StateLabel.G, Path.PLUS),
        ),
        emissions=(Emission("A", 0.0, Direction.MINUS),),
        horizon=CANONICAL_HORIZON,
    )


BUILTIN_SCENARIOS = {
    "fig2": canonical_fig2,
    "fig3": canonical_fig3,
    "fig4": canonical_fig4,
}


def builtin_scenario(name: str) -> Scenario:
    try:
        return BUILTIN_SCENARIOS[name]()
    except KeyError:
        raise InvalidScenario(
            f"unknown builtin scenario {name!r}; choose one of {', '.join(sorted(BUILTIN_SCENARIOS))}"
        ) from None


def validate_scenario(scenario: Scenario) -> None:
    seen = {}
    for actor in scenario.actors:
        if actor.actor_id in seen:
            raise InvalidScenario(f"duplicate actor id {actor.actor_id!r}")
        if actor.actor_id == HORIZON:
            raise InvalidScenario(f"{HORIZON!r} is reserved")
        if actor.kind is ActorKind.MIRROR and actor.path is not Path.BOTH:
            raise InvalidScenario(f"mirror {actor.actor_id!r} reflects from both sides; drop its path")
        for other in seen.values():
            if other.position == actor.position and other.path.overlaps(actor.path):
                raise InvalidScenario(
                    f"actors {other.actor_id!r} and {actor.actor_id!r} share position {actor.position}"
                )
        seen[actor.actor_id] = actor

    emitted_at = set()
    for emission in scenario.emissions:
        actor = seen.get(emission.actor_id)
        if actor is None:
            raise InvalidScenario(f"emission from unknown actor {emission.actor_id!r}")
        if actor.kind is not ActorKind.TLA:
            raise InvalidScenario(f"only TLAs emit; {emission.actor_id!r} is a mirror")
        if emission.t_emit >= scenario.horizon:
            raise InvalidScenario(
                f"emission from {emission.actor_id!r} at t={emission.t_emit} is not before the horizon {scenario.horizon}"
            )
        key = (emission.actor_id, emission.t_emit)
        if key in emitted_at:
            raise InvalidScenario(f"{emission.actor_id!r} emits twice at t={emission.t_emit}")
        emitted_at.add(key)


@dataclass
class _Photon:
    from_event: str
    t0: float
    x0: float
    direction: Direction


@dataclass
class _Arrival:
    t: float
    actor: Actor
    photon: _Photon


def _reaches_at(photon: _Photon, actor: Actor, t: float, eps_null: float) -> bool:
    distance = (actor.position - photon.x0) * photon.direction.sign
    if distance <= eps_null or not actor.path.accepts(photon.direction):
        return False
    return abs(photon.t0 + distance - t) <= eps_null


def _next_arrival(
    photon: _Photon, actors, states, now: float, horizon: float, eps_null: float
) -> Optional[_Arrival]:
    """First actor ahead of the photon that interacts with it, given current states.

    Actors the photon already passed before `now` are behind it and skipped.
    """
    candidates = []
    for actor in actors:
        distance = (actor.position - photon.x0) * photon.direction.sign
        if distance <= eps_null:
            continue
        if actor.kind is ActorKind.TLA:
            if not actor.path.accepts(photon.direction):
                continue
            # excited atoms are transparent
            if states[actor.actor_id] is not StateLabel.G:
                continue
        t = photon.t0 + distance
        if t < now - eps_null:
            continue
        candidates.append(_Arrival(t, actor, photon))
    if not candidates:
        return None
    best = min(candidates, key=lambda a: a.t)
    if best.t >= horizon - eps_null:
        return None
    tied = [a.actor.actor_id for a in candidates if abs(a.t - best.t) <= eps_null]
    if len(tied) > 1:
        raise InvalidScenario(
            f"photon from {photon.from_event} reaches {', '.join(tied)} at the same time"
        )
    return best


def simulate(scenario: Scenario, eps_null: float = EPS_NULL) -> EventGraph:
    validate_scenario(scenario)
    logger.info(
        f"Simulating {len(scenario.actors)} actors, {len(scenario.emissions)} emissions, horizon {scenario.horizon}"
    )

    states = {actor.actor_id: actor.initial_state for actor in scenario.actors}
    flips = {actor.actor_id: [] for actor in scenario.actors}
    events: list[SpacetimeEvent] = []
    segments: list[PhotonSegment] = []
    in_flight: list[_Photon] = []
    pending = sorted(scenario.emissions, key=lambda em: (em.t_emit, em.actor_id))
    clock = scenario.start

    def record_flip(actor: Actor, t: float, role: EventRole) -> SpacetimeEvent:
        count = len(flips[actor.actor_id]) + 1
        event_id = actor.actor_id if count == 1 else f"{actor.actor_id}.{count}"
        event = SpacetimeEvent(t=t, x=actor.position, id=event_id, role=role, actor_id=actor.actor_id)
        flips[actor.actor_id].append((t, event_id))
        states[actor.actor_id] = states[actor.actor_id].flipped()
        events.append(event)
        logger.debug(f"{role.value} at {event_id} (t={t}, x={actor.position})")
        return event

    while True:
        arrivals = []
        for photon in in_flight:
            arrival = _next_arrival(photon, scenario.actors, states, clock, scenario.horizon, eps_null)
            if arrival is not None:
                arrivals.append(arrival)
        candidates = [a.t for a in arrivals] + [em.t_emit for em in pending[:1]]
        if not candidates:
            break
        now = min(candidates)
        clock = now

        arriving = sorted(
            (a for a in arrivals if a.t - now <= eps_null),
            key=lambda a: (a.actor.position, a.actor.actor_id),
        )
        emitting = [em for em in pending if em.t_emit - now <= eps_null]
        pending = [em for em in pending if em.t_emit - now > eps_null]

        targets = [a.actor.actor_id for a in arriving]
        if len(set(targets)) != len(targets):
            raise InvalidScenario(f"two photons reach the same actor at t={now}")
        for emission in emitting:
            emitter = scenario.actor(emission.actor_id)
            # an excited emitter is transparent, so check the geometry, not the targets
            passing = emission.actor_id in targets or any(
                _reaches_at(photon, emitter, now, eps_null) for photon in in_flight
            )
            if passing:
                raise SelfAbsorption(
                    f"a photon reaches {emission.actor_id!r} exactly at its emission time t={emission.t_emit}"
                )

        for emission in emitting:
            emitter = scenario.actor(emission.actor_id)
            if states[emitter.actor_id] is not StateLabel.E:
                raise InvalidScenario(
                    f"{emitter.actor_id!r} is not excited at its emission time t={emission.t_emit}"
                )
            event = record_flip(emitter, emission.t_emit, EventRole.EMISSION)
            in_flight.append(_Photon(event.id, event.t, event.x, emission.direction))

        for arrival in arriving:
            photon, actor = arrival.photon, arrival.actor
            in_flight.remove(photon)
            if actor.kind is ActorKind.MIRROR:
                event = record_flip(actor, arrival.t, EventRole.REFLECTION)
                segments.append(PhotonSegment(photon.from_event, event.id, photon.direction))
                in_flight.append(_Photon(event.id, event.t, event.x, photon.direction.reversed()))
            else:
                event = record_flip(actor, arrival.t, EventRole.ABSORPTION)
                segments.append(PhotonSegment(photon.from_event, event.id, photon.direction))

    for photon in in_flight:
        segments.append(PhotonSegment(photon.from_event, HORIZON, photon.direction))

    start = scenario.start
    worldlines = tuple(
        build_worldline(actor, start, scenario.horizon, flips[actor.actor_id])
        for actor in scenario.actors
    )
    crossings = ghost_crossings(scenario, eps_null)
    ghosts = []
    for actor in scenario.actors:
        if flips[actor.actor_id] or actor.actor_id not in crossings:
            continue
        t, x = crossings[actor.actor_id]
        ghosts.append(SpacetimeEvent(t=t, x=x, id=actor.actor_id, actor_id=actor.actor_id))
    logger.info(f"Simulation produced {len(events)} events and {len(segments)} photon segments")
    return EventGraph(
        events=tuple(events),
        photon_segments=tuple(segments),
        worldlines=worldlines,
        horizon=scenario.horizon,
        ghosts=tuple(ghosts),
    )


def ghost_crossings(scenario: Scenario, eps_null: float = EPS_NULL) -> dict[str, tuple[float, float]]:
    """Earliest point where each actor would meet a photon if every TLA were transparent."""
    crossings: dict[str, tuple[float, float]] = {}
    for emission in scenario.emissions:
        emitter = scenario.actor(emission.actor_id)
        t0, x0, direction = emission.t_emit, emitter.position, emission.direction
        while t0 < scenario.horizon - eps_null:
            ahead = []
            for actor in scenario.actors:
                distance = (actor.position - x0) * direction.sign
                if distance > eps_null and actor.path.accepts(direction):
                    ahead.append((distance, actor))
            ahead.sort(key=lambda item: (item[0], item[1].actor_id))
            mirror = next((item for item in ahead if item[1].kind is ActorKind.MIRROR), None)
            for distance, actor in ahead:
                if mirror is not None and distance > mirror[0]:
                    break
                t = t0 + distance
                if t >= scenario.horizon - eps_null:
                    break
                previous = crossings.get(actor.actor_id)
                if previous is None or t < previous[0]:
                    crossings[actor.actor_id] = (t, actor.position)
            if mirror is None:
                break
            t0, x0, direction = t0 + mirror[0], mirror[1].position, direction.reversed()
    return crossings


def mutual_exclusion_check(
    graph: EventGraph, c_id: str, d_id: str, require_present: bool = True
) -> bool:
    """True unless both detectors flipped."""
    flipped = []
    for actor_id in (c_id, d_id):
        worldline = graph.worldline(actor_id)
        if worldline is None:
            if require_present:
                raise UnknownActor(f"no actor {actor_id!r} in the event graph")
            flipped.append(False)
            continue
        if worldline.kind is not ActorKind.TLA:
            raise UnknownActor(f"{actor_id!r} is a mirror, not a detector TLA")
        flipped.append(bool(worldline.flips))
    return not all(flipped)


def canonical_json(graph: EventGraph) -> str:
    return json.dumps(graph.to_dict(), sort_keys=True, separators=(",", ":"))


def render_event_graph_tsv(graph: EventGraph) -> str:
    lines = []
    for event in graph.events:
        lines.append(f"event\t{event.id}\t{format_fixed(event.t)}\t{format_fixed(event.x)}\t{event.role.value}")
    for segment in graph.photon_segments:
        lines.append(
            f"photon\t{segment.from_event}\t{segment.to_event}\t{segment.direction.value}"
        )
    for worldline in graph.worldlines:
        flips = ",".join(worldline.flips) or "-"
        lines.append(f"worldline\t{worldline.actor_id}\t{worldline.kind.value}\t{format_fixed(worldline.position)}\t{flips}")
    return "\n".join(lines) + "\n"
