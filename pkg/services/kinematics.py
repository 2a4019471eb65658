"""
Generalized Lorentz transformations in 1+1 dimensions
Builds L_V for sub- and superluminal V, applies, inverts and composes it,
and evaluates the invariant interval in the rest frame and in any frame.
"""

from __future__ import annotations

import logging
import math
from dataclasses import replace
from fractions import Fraction
from typing import Union

import numpy as np

from models import (
    EPS_NULL,
    FrameTransform,
    FrameVelocity,
    IntervalClass,
    Regime,
    SpacetimeEvent,
)
from services.errors import DegenerateOrder

logger = logging.getLogger(__name__)


VelocityLike = Union[FrameVelocity, float, int, str]


def parse_velocity(value: VelocityLike) -> FrameVelocity:
    """Accept a FrameVelocity, a number, or a decimal/fraction string such as "10/3"."""
    if isinstance(value, FrameVelocity):
        return value
    if isinstance(value, str):
        try:
            number = float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a velocity: {value!r}") from e
        return FrameVelocity(number)
    return FrameVelocity(float(value))


def make_transform(velocity: VelocityLike) -> FrameTransform:
    """L_V = s / sqrt|1 - V^2| * [[1, -V], [-V, 1]], s = +1 for V < 1 and -1 for V > 1."""
    v = parse_velocity(velocity)
    sign = 1.0 if v.value < 1.0 else -1.0
    prefactor = sign / math.sqrt(abs(1.0 - v.value * v.value))
    matrix = prefactor * np.array([[1.0, -v.value], [-v.value, 1.0]], dtype=np.float64)
    matrix.setflags(write=False)
    return FrameTransform(velocity=v, matrix=matrix)


def transform_delta(transform: FrameTransform, dt: float, dx: float) -> tuple[float, float]:
    dt_v, dx_v = transform.matrix @ np.array([dt, dx], dtype=np.float64)
    return float(dt_v), float(dx_v)


def apply(transform: FrameTransform, event: SpacetimeEvent) -> SpacetimeEvent:
    t_v, x_v = transform_delta(transform, event.t, event.x)
    return replace(event, t=t_v, x=x_v)


def inverse(transform: FrameTransform) -> FrameTransform:
    return make_transform(transform.velocity.negated())


def compose(a: FrameTransform, b: FrameTransform) -> np.ndarray:
    """Raw matrix product; not asserted to be of the form L_W."""
    return a.matrix @ b.matrix


def interval_rest(e1: SpacetimeEvent, e2: SpacetimeEvent) -> float:
    dt = e2.t - e1.t
    dx = e2.x - e1.x
    return dt * dt - dx * dx


def interval_in_frame(delta: tuple[float, float], regime: Regime) -> float:
    dt_v, dx_v = delta
    if regime is Regime.SUBLUMINAL:
        return dt_v * dt_v - dx_v * dx_v
    return dx_v * dx_v - dt_v * dt_v


def frame_interval(e1: SpacetimeEvent, e2: SpacetimeEvent, velocity: VelocityLike) -> float:
    transform = make_transform(velocity)
    delta = transform_delta(transform, e2.t - e1.t, e2.x - e1.x)
    return interval_in_frame(delta, transform.regime)


def classify_value(ds2: float, eps_null: float = EPS_NULL) -> IntervalClass:
    if abs(ds2) <= eps_null:
        return IntervalClass.LIGHTLIKE
    return IntervalClass.TIMELIKE if ds2 > 0 else IntervalClass.SPACELIKE


def classify(e1: SpacetimeEvent, e2: SpacetimeEvent, eps_null: float = EPS_NULL) -> IntervalClass:
    return classify_value(interval_rest(e1, e2), eps_null)


def ordering_preserved(
    e1: SpacetimeEvent,
    e2: SpacetimeEvent,
    velocity: VelocityLike,
    eps_null: float = EPS_NULL,
) -> bool:
    """True iff the two events keep their t-order in the frame of `velocity`."""
    dt = e2.t - e1.t
    if abs(dt) <= eps_null:
        raise DegenerateOrder(f"events {e1.id or e1} and {e2.id or e2} share the same t")
    dt_v, _ = transform_delta(make_transform(velocity), dt, e2.x - e1.x)
    preserved = np.sign(dt) == np.sign(dt_v)
    if not preserved:
        logger.debug(f"t-order of {e1.id} and {e2.id} reversed under V={parse_velocity(velocity).value}")
    return bool(preserved)


def format_fixed(value: float, places: int = 6) -> str:
    text = f"{value:.{places}f}"
    # no "-0.000000" in reports
    if text.lstrip("-").strip("0.") == "":
        text = text.lstrip("-")
    return text
