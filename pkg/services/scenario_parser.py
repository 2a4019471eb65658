"""
Scenario documents
Line-oriented text format, one statement per line, `#` starts a comment:

    actor <TLA|MIRROR> <id> at <x> state <g|e> [path <+|->]
    emit from <id> at <t> dir <+|->
    horizon <t>
"""

from __future__ import annotations

import logging
import math
import re

from models import Actor, ActorKind, Direction, Emission, Path, Scenario, StateLabel
from services.errors import InvalidScenario, ParseError, SemanticError
from services.scenario import validate_scenario

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\S+")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class _Line:
    """Tokens of one statement with their 1-based columns."""

    def __init__(self, lineno: int, text: str):
        self.lineno = lineno
        self.tokens = [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(text)]
        self.end_column = len(text.rstrip()) + 1

    def error(self, index: int, message: str) -> ParseError:
        column = self.tokens[index][1] if index < len(self.tokens) else self.end_column
        return ParseError(message, self.lineno, column)

    def word(self, index: int, expected: str) -> None:
        if index >= len(self.tokens) or self.tokens[index][0] != expected:
            raise self.error(index, f"expected '{expected}'")

    def choice(self, index: int, options: dict, what: str):
        if index >= len(self.tokens) or self.tokens[index][0] not in options:
            raise self.error(index, f"expected {what} ({'|'.join(options)})")
        return options[self.tokens[index][0]]

    def number(self, index: int, what: str) -> float:
        if index >= len(self.tokens):
            raise self.error(index, f"expected {what}")
        try:
            value = float(self.tokens[index][0])
        except ValueError:
            raise self.error(index, f"{what} must be a number") from None
        if not math.isfinite(value):
            raise self.error(index, f"{what} must be finite")
        return value

    def ident(self, index: int) -> str:
        if index >= len(self.tokens) or not _IDENT.match(self.tokens[index][0]):
            raise self.error(index, "expected an identifier")
        return self.tokens[index][0]

    def done(self, index: int) -> None:
        if index < len(self.tokens):
            raise self.error(index, f"unexpected '{self.tokens[index][0]}'")


_KINDS = {"TLA": ActorKind.TLA, "MIRROR": ActorKind.MIRROR}
_STATES = {"g": StateLabel.G, "e": StateLabel.E}
_DIRECTIONS = {"+": Direction.PLUS, "-": Direction.MINUS}
_PATHS = {"+": Path.PLUS, "-": Path.MINUS}


def parse_scenario(text: str) -> Scenario:
    actors: dict[str, Actor] = {}
    emissions: list[Emission] = []
    emission_counts: dict[str, int] = {}
    horizon = None

    for number, raw in enumerate(text.split("\n"), start=1):
        line = _Line(number, raw.split("#", 1)[0])
        if not line.tokens:
            continue
        keyword = line.tokens[0][0]

        if keyword == "actor":
            kind = line.choice(1, _KINDS, "actor kind")
            actor_id = line.ident(2)
            line.word(3, "at")
            position = line.number(4, "position")
            line.word(5, "state")
            state = line.choice(6, _STATES, "state")
            path = Path.BOTH
            if len(line.tokens) > 7:
                line.word(7, "path")
                path = line.choice(8, _PATHS, "path")
                line.done(9)
            if actor_id in actors:
                raise SemanticError(f"duplicate actor id {actor_id!r}", number)
            actors[actor_id] = Actor(actor_id, kind, position, state, path)

        elif keyword == "emit":
            line.word(1, "from")
            actor_id = line.ident(2)
            line.word(3, "at")
            t_emit = line.number(4, "emission time")
            line.word(5, "dir")
            direction = line.choice(6, _DIRECTIONS, "direction")
            line.done(7)
            actor = actors.get(actor_id)
            if actor is None:
                raise SemanticError(f"emission from undeclared actor {actor_id!r}", number)
            if actor.kind is not ActorKind.TLA:
                raise SemanticError(f"{actor_id!r} is a mirror and cannot emit", number)
            if emission_counts.get(actor_id, 0) == 0 and actor.initial_state is not StateLabel.E:
                raise SemanticError(f"emitter {actor_id!r} is not excited (state g)", number)
            emission_counts[actor_id] = emission_counts.get(actor_id, 0) + 1
            emissions.append(Emission(actor_id, t_emit, direction))

        elif keyword == "horizon":
            value = line.number(1, "horizon")
            line.done(2)
            if horizon is not None:
                raise SemanticError("horizon given twice", number)
            horizon = value

        else:
            raise line.error(0, f"unknown statement '{keyword}'")

    if horizon is None:
        raise SemanticError("missing horizon")

    scenario = Scenario(actors=tuple(actors.values()), emissions=tuple(emissions), horizon=horizon)
    try:
        validate_scenario(scenario)
    except InvalidScenario as e:
        raise SemanticError(str(e)) from e
    logger.debug(f"Parsed scenario with {len(scenario.actors)} actors")
    return scenario


def _format_number(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def serialize_scenario(scenario: Scenario) -> str:
    """Canonical document: actors, then emissions, then the horizon."""
    lines = []
    for actor in scenario.actors:
        line = (
            f"actor {actor.kind.value} {actor.actor_id} at {_format_number(actor.position)}"
            f" state {actor.initial_state.value}"
        )
        if actor.path is not Path.BOTH:
            line += f" path {actor.path.value}"
        lines.append(line)
    for emission in scenario.emissions:
        lines.append(
            f"emit from {emission.actor_id} at {_format_number(emission.t_emit)} dir {emission.direction.value}"
        )
    lines.append(f"horizon {_format_number(scenario.horizon)}")
    return "\n".join(lines) + "\n"


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as handle:
        return parse_scenario(handle.read())
