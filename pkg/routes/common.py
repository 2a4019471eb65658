"""
Shared route helpers
"""

from flask import current_app, jsonify, request
from marshmallow import ValidationError

from services.errors import KinematicsError
from services.scenario import builtin_scenario, simulate
from services.scenario_parser import parse_scenario


def request_data(schema):
    """Validate the JSON body (or the query string for GET) against a marshmallow schema."""
    if request.method == 'GET':
        return schema.load(request.args.to_dict())
    return schema.load(request.get_json(silent=True) or {})


def scenario_from(data):
    if data.get('builtin') is not None:
        return builtin_scenario(data['builtin'])
    return parse_scenario(data['document'])


def graph_from(data):
    scenario = scenario_from(data)
    return simulate(scenario, current_app.config['KINEMATICS_EPS_NULL'])


def error_response(error):
    """Map validation, domain and unexpected errors to a JSON response."""
    if isinstance(error, ValidationError):
        return jsonify({'error': 'validation_error', 'messages': error.messages}), 400
    if isinstance(error, KinematicsError):
        current_app.logger.info(f"{error.code}: {error}")
        return jsonify(error.to_dict()), 422
    current_app.logger.exception(f"Unhandled error: {error}")
    return jsonify({'error': 'internal_error', 'message': str(error)}), 500
