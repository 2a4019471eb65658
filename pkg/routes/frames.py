"""
Frame Routes - Lorentz transformations and intervals
"""

from flask import Blueprint, current_app, jsonify

from models import FrameVelocity
from routes.common import error_response, request_data
from schemas import (
    IntervalRequestSchema,
    OrderingRequestSchema,
    TransformRequestSchema,
    VelocityRequestSchema,
)
from services.kinematics import (
    apply,
    classify_value,
    frame_interval,
    interval_rest,
    make_transform,
    ordering_preserved,
)


frames_bp = Blueprint('frames', __name__)


@frames_bp.route('/matrix', methods=['GET'])
def get_matrix():
    """Matrix, regime and determinant of L_V"""
    try:
        data = request_data(VelocityRequestSchema())
        transform = make_transform(FrameVelocity(data['v']))
        return jsonify(transform.to_dict()), 200
    except Exception as e:
        return error_response(e)


@frames_bp.route('/transform', methods=['POST'])
def transform_events():
    """Map rest-frame events into the frame moving at V"""
    try:
        data = request_data(TransformRequestSchema())
        transform = make_transform(FrameVelocity(data['v']))
        events = [apply(transform, event) for event in data['events']]
        return jsonify({
            'velocity': transform.velocity.to_dict(),
            'events': [{'id': ev.id, 't': ev.t, 'x': ev.x} for ev in events],
        }), 200
    except Exception as e:
        return error_response(e)


@frames_bp.route('/interval', methods=['POST'])
def interval():
    """Invariant interval in the rest frame, and in the frame of V when given"""
    try:
        data = request_data(IntervalRequestSchema())
        eps_null = current_app.config['KINEMATICS_EPS_NULL']
        ds2 = interval_rest(data['e1'], data['e2'])
        result = {'ds2_rest': ds2, 'class': classify_value(ds2, eps_null).value}
        if data['v'] is not None:
            velocity = FrameVelocity(data['v'])
            result['ds2_frame'] = frame_interval(data['e1'], data['e2'], velocity)
            result['regime'] = velocity.regime.value
        return jsonify(result), 200
    except Exception as e:
        return error_response(e)


@frames_bp.route('/classify', methods=['POST'])
def classify_pair():
    try:
        data = request_data(IntervalRequestSchema())
        ds2 = interval_rest(data['e1'], data['e2'])
        interval_class = classify_value(ds2, current_app.config['KINEMATICS_EPS_NULL'])
        return jsonify({'class': interval_class.value}), 200
    except Exception as e:
        return error_response(e)


@frames_bp.route('/ordering', methods=['POST'])
def ordering():
    """Whether two events keep their time order in the frame of V"""
    try:
        data = request_data(OrderingRequestSchema())
        preserved = ordering_preserved(
            data['e1'], data['e2'], FrameVelocity(data['v']),
            current_app.config['KINEMATICS_EPS_NULL'],
        )
        return jsonify({'preserved': preserved}), 200
    except Exception as e:
        return error_response(e)
