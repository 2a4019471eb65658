"""
Scenario Routes - simulation, frame narratives and photon slices
"""

from flask import Blueprint, current_app, jsonify

from models import FrameVelocity
from routes.common import error_response, graph_from, request_data
from schemas import (
    FrameRequestSchema,
    MutualExclusionRequestSchema,
    ScenarioRequestSchema,
    SliceRequestSchema,
)
from services.errors import InvalidScenario
from services.narrative import describe, narrative_report, photon_count_at
from services.scenario import BUILTIN_SCENARIOS, builtin_scenario, mutual_exclusion_check
from services.scenario_parser import serialize_scenario


scenarios_bp = Blueprint('scenarios', __name__)


@scenarios_bp.route('/builtin', methods=['GET'])
def list_builtin():
    return jsonify({'scenarios': sorted(BUILTIN_SCENARIOS)}), 200


@scenarios_bp.route('/builtin/<name>', methods=['GET'])
def get_builtin(name):
    """A canonical scenario as data and as a scenario document"""
    try:
        if name not in BUILTIN_SCENARIOS:
            return jsonify({'error': 'not_found', 'message': f'No builtin scenario {name!r}'}), 404
        scenario = builtin_scenario(name)
        return jsonify({
            'name': name,
            'scenario': scenario.to_dict(),
            'document': serialize_scenario(scenario),
        }), 200
    except Exception as e:
        return error_response(e)


@scenarios_bp.route('/simulate', methods=['POST'])
def simulate_scenario():
    """Run a scenario in the rest frame and return its event graph"""
    try:
        graph = graph_from(request_data(ScenarioRequestSchema()))
        return jsonify({
            'graph': graph.to_dict(),
            'flip_count': graph.flip_count,
        }), 200
    except Exception as e:
        return error_response(e)


@scenarios_bp.route('/narrative', methods=['POST'])
def frame_narrative():
    """Read the event graph along the time of the frame moving at V"""
    try:
        data = request_data(FrameRequestSchema())
        graph = graph_from(data)
        narrative = narrative_report(
            graph, FrameVelocity(data['v']), current_app.config['KINEMATICS_EPS_NULL']
        )
        result = narrative.to_dict()
        result['description'] = describe(narrative, graph)
        return jsonify(result), 200
    except Exception as e:
        return error_response(e)


@scenarios_bp.route('/slice', methods=['POST'])
def photon_slice():
    """Photons in flight on the slice t_V = tau"""
    try:
        data = request_data(SliceRequestSchema())
        graph = graph_from(data)
        count = photon_count_at(
            graph, FrameVelocity(data['v']), data['tau'],
            current_app.config['KINEMATICS_EPS_NULL'],
        )
        return jsonify({'v': data['v'], 'tau': data['tau'], 'photons': count}), 200
    except Exception as e:
        return error_response(e)


@scenarios_bp.route('/mutual-exclusion', methods=['POST'])
def mutual_exclusion():
    try:
        data = request_data(MutualExclusionRequestSchema())
        if data['c'] == data['d']:
            raise InvalidScenario('the two detectors must be different actors')
        graph = graph_from(data)
        exclusive = mutual_exclusion_check(
            graph, data['c'], data['d'], require_present=data['require_present']
        )
        return jsonify({'c': data['c'], 'd': data['d'], 'exclusive': exclusive}), 200
    except Exception as e:
        return error_response(e)
