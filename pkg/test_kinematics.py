"""Tests for the generalized Lorentz transformation and invariant intervals"""

import math
import random

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from models import EPS_REGIME, FrameVelocity, IntervalClass, Regime, SpacetimeEvent
from services.errors import DegenerateOrder, NearLightSpeed
from services.kinematics import (
    apply,
    classify,
    classify_value,
    compose,
    format_fixed,
    frame_interval,
    interval_in_frame,
    interval_rest,
    inverse,
    make_transform,
    ordering_preserved,
    parse_velocity,
    transform_delta,
)

K = 1 / math.sqrt(91)


def ev(t, x, id=""):
    return SpacetimeEvent(t=t, x=x, id=id)


velocities = st.floats(min_value=-5, max_value=5, allow_nan=False).filter(
    lambda v: abs(1 - v * v) >= 1e-3
)
subluminal = st.floats(min_value=-0.999, max_value=0.999)
coordinates = st.floats(min_value=-100, max_value=100, allow_nan=False)


def sample_velocity(rng, guard=1e-3):
    while True:
        v = rng.uniform(-5, 5)
        if abs(1 - v * v) >= guard:
            return v


class TestMakeTransform:
    def test_identity_at_rest(self):
        assert_allclose(make_transform(0).matrix, np.eye(2))

    def test_subluminal_prefactor(self):
        transform = make_transform("3/10")
        prefactor = 1 / math.sqrt(0.91)
        assert_allclose(transform.matrix, prefactor * np.array([[1, -0.3], [-0.3, 1]]), atol=1e-12)
        assert transform.matrix[0][0] == pytest.approx(1.048285, abs=1e-6)
        assert transform.regime is Regime.SUBLUMINAL

    def test_superluminal_prefactor_is_negative(self):
        transform = make_transform("10/3")
        expected = (-3 / math.sqrt(91)) * np.array([[1, -10 / 3], [-10 / 3, 1]])
        assert_allclose(transform.matrix, expected, atol=1e-12)
        assert transform.matrix[0][0] == pytest.approx(-0.314485, abs=1e-6)
        assert transform.regime is Regime.SUPERLUMINAL

    @pytest.mark.parametrize("v", [1, -1, 1 + EPS_REGIME / 4, "1/1"])
    def test_light_speed_rejected(self, v):
        with pytest.raises(NearLightSpeed):
            make_transform(v)

    def test_non_finite_rejected(self):
        with pytest.raises(NearLightSpeed):
            FrameVelocity(float("inf"))

    def test_below_minus_one_uses_positive_sign(self):
        transform = make_transform(-2)
        assert transform.matrix[0][0] > 0

    def test_matrix_is_read_only(self):
        transform = make_transform(0.5)
        with pytest.raises(ValueError):
            transform.matrix[0][0] = 2.0

    @pytest.mark.parametrize("v,det", [(0, 1), (0.3, 1), (-0.9, 1), (2, -1), (10 / 3, -1), (-4, -1)])
    def test_determinant_signature(self, v, det):
        assert np.linalg.det(make_transform(v).matrix) == pytest.approx(det, abs=1e-9)


class TestParseVelocity:
    def test_fraction_and_decimal(self):
        assert parse_velocity("10/3").value == pytest.approx(10 / 3)
        assert parse_velocity(" -0.5 ").value == -0.5
        assert parse_velocity(2).value == 2.0

    def test_passes_frame_velocity_through(self):
        velocity = FrameVelocity(0.25)
        assert parse_velocity(velocity) is velocity

    @pytest.mark.parametrize("text", ["abc", "1/0", ""])
    def test_bad_text(self, text):
        with pytest.raises(ValueError):
            parse_velocity(text)


class TestApply:
    def test_identity(self):
        event = apply(make_transform(0), ev(5, 2, "E"))
        assert (event.t, event.x, event.id) == (5, 2, "E")

    def test_subluminal_boost(self):
        event = apply(make_transform(0.3), ev(1, 0))
        assert_allclose((event.t, event.x), (1.048285, -0.314485), atol=1e-6)

    def test_superluminal_swaps_roles(self):
        event = apply(make_transform("10/3"), ev(1, 0))
        assert_allclose((event.t, event.x), (-0.314485, 1.048285), atol=1e-6)

    def test_canonical_frame_times(self):
        transform = make_transform("10/3")
        assert apply(transform, ev(2, -2)).t == pytest.approx(-26 * K, abs=1e-12)
        assert apply(transform, ev(3, -1)).t == pytest.approx(-19 * K, abs=1e-12)
        assert apply(transform, ev(2.5, -1.5)).t == pytest.approx(-22.5 * K, abs=1e-12)
        assert -26 * K == pytest.approx(-2.72554, abs=1e-5)


class TestInverseAndCompose:
    def test_inverse_at_rest(self):
        assert inverse(make_transform(0)) == make_transform(0)

    def test_round_trip_at_two(self):
        forward = make_transform(2)
        mapped = apply(forward, ev(1, 0))
        assert_allclose((mapped.t, mapped.x), (-0.577350, 1.154701), atol=1e-6)
        back = apply(inverse(forward), mapped)
        assert_allclose((back.t, back.x), (1, 0), atol=1e-12)

    def test_inverse_is_minus_v(self):
        transform = make_transform("10/3")
        assert inverse(transform).velocity.value == pytest.approx(-10 / 3)
        assert_allclose(compose(transform, inverse(transform)), np.eye(2), atol=1e-12)

    def test_velocity_addition(self):
        assert_allclose(
            compose(make_transform(0.5), make_transform(0.5)),
            make_transform(0.8).matrix,
            atol=1e-12,
        )

    def test_identity_compose(self):
        assert_allclose(compose(make_transform(0), make_transform(0)), np.eye(2))

    def test_inverse_law_sampled(self):
        rng = random.Random(1)
        for _ in range(1000):
            v = sample_velocity(rng)
            product = compose(make_transform(v), make_transform(-v))
            assert np.max(np.abs(product - np.eye(2))) < 1e-9


class TestInterval:
    @pytest.mark.parametrize("e2,expected", [((1, 0), 1), ((1, 1), 0), ((0, 3), -9)])
    def test_interval_rest(self, e2, expected):
        assert interval_rest(ev(0, 0), ev(*e2)) == expected

    def test_interval_in_frame_both_regimes(self):
        for v, regime in ((0.3, Regime.SUBLUMINAL), (10 / 3, Regime.SUPERLUMINAL)):
            delta = transform_delta(make_transform(v), 1, 0)
            assert interval_in_frame(delta, regime) == pytest.approx(1, abs=1e-12)

    @pytest.mark.parametrize("regime", list(Regime))
    def test_lightlike_delta(self, regime):
        assert interval_in_frame((2.5, 2.5), regime) == 0

    def test_frame_interval(self):
        assert frame_interval(ev(0, 0), ev(3, -1), "10/3") == pytest.approx(8, abs=1e-9)

    @pytest.mark.parametrize(
        "e2,cls",
        [((1, 0), IntervalClass.TIMELIKE), ((2, 2), IntervalClass.LIGHTLIKE), ((0, 1), IntervalClass.SPACELIKE)],
    )
    def test_classify(self, e2, cls):
        assert classify(ev(0, 0), ev(*e2)) is cls

    def test_classify_threshold(self):
        assert classify_value(5e-10) is IntervalClass.LIGHTLIKE
        assert classify_value(2e-9) is IntervalClass.TIMELIKE

    def test_interval_invariance_sampled(self):
        # 1000 event pairs, each checked in the same 100 frames
        rng = random.Random(7)
        transforms = [make_transform(sample_velocity(rng, guard=0.05)) for _ in range(100)]
        for _ in range(1000):
            e1 = ev(rng.uniform(-10, 10), rng.uniform(-10, 10))
            e2 = ev(rng.uniform(-10, 10), rng.uniform(-10, 10))
            rest = interval_rest(e1, e2)
            for transform in transforms:
                delta = transform_delta(transform, e2.t - e1.t, e2.x - e1.x)
                framed = interval_in_frame(delta, transform.regime)
                assert framed == pytest.approx(rest, rel=1e-9, abs=1e-9)


class TestOrdering:
    def test_rest(self):
        assert ordering_preserved(ev(0, 0), ev(1, 0), 0) is True

    def test_superluminal_reversal_witness(self):
        assert ordering_preserved(ev(0, 0, "A"), ev(2, -2, "R"), "10/3") is False
        assert ordering_preserved(ev(0, 0), ev(1, 0), "10/3") is False

    def test_degenerate(self):
        with pytest.raises(DegenerateOrder):
            ordering_preserved(ev(1, 0), ev(1, 5), 0.5)

    def test_subluminal_timelike_sampled(self):
        rng = random.Random(3)
        for _ in range(1000):
            v = rng.uniform(-0.999, 0.999)
            dt = rng.uniform(0.01, 10) * rng.choice((-1, 1))
            dx = rng.uniform(-0.99, 0.99) * abs(dt)
            assert ordering_preserved(ev(0, 0), ev(dt, dx), v)


@given(v=velocities, t=coordinates, x=coordinates)
def test_inverse_round_trip(v, t, x):
    transform = make_transform(v)
    back = apply(inverse(transform), apply(transform, ev(t, x)))
    assert back.t == pytest.approx(t, abs=1e-6)
    assert back.x == pytest.approx(x, abs=1e-6)


@given(v=velocities, dt=st.floats(min_value=-50, max_value=50).filter(lambda d: abs(d) > 1e-3))
def test_lightcone_preserved(v, dt):
    for dx in (dt, -dt):
        dt_v, dx_v = transform_delta(make_transform(v), dt, dx)
        assert abs(dx_v) == pytest.approx(abs(dt_v), rel=1e-9)


@settings(max_examples=200)
@given(v=velocities, t1=coordinates, x1=coordinates, t2=coordinates, x2=coordinates)
def test_classification_frame_independent(v, t1, x1, t2, x2):
    e1, e2 = ev(t1, x1), ev(t2, x2)
    rest = interval_rest(e1, e2)
    assume(abs(rest) > 1e-3)
    assert classify_value(frame_interval(e1, e2, v)) is classify(e1, e2)


@given(v=subluminal, dt=st.floats(min_value=0.01, max_value=10), ratio=st.floats(min_value=-0.99, max_value=0.99))
def test_subluminal_order_invariance(v, dt, ratio):
    assert ordering_preserved(ev(0, 0), ev(dt, ratio * dt), v)


@pytest.mark.parametrize(
    "value,text", [(0.0, "0.000000"), (-1e-9, "0.000000"), (-2.7255406, "-2.725541"), (1.5, "1.500000")]
)
def test_format_fixed(value, text):
    assert format_fixed(value) == text
