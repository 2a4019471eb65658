"""
Render Routes - SVG spacetime diagrams
"""

from flask import Blueprint, Response, current_app

from models import DiagramSpec, FrameVelocity
from routes.common import error_response, graph_from, request_data
from schemas import AxesRequestSchema, RenderRequestSchema
from services.svg_service import render_axes, render_scenario


render_bp = Blueprint('render', __name__)

SVG_MIMETYPE = 'image/svg+xml'


@render_bp.route('/axes', methods=['GET'])
def axes():
    """Rest axes, frame axes and the light ray for V"""
    try:
        data = request_data(AxesRequestSchema())
        svg = render_axes(FrameVelocity(data['v']), scale=data['scale'])
        return Response(svg, mimetype=SVG_MIMETYPE)
    except Exception as e:
        return error_response(e)


@render_bp.route('/scenario', methods=['POST'])
def scenario():
    """Spacetime diagram of a scenario in the frame of V"""
    try:
        data = request_data(RenderRequestSchema())
        graph = graph_from(data)
        spec = DiagramSpec(
            velocity=FrameVelocity(data['v']),
            scale=data['scale'] or current_app.config['DIAGRAM_SCALE'],
            margin=current_app.config['DIAGRAM_MARGIN'],
        )
        return Response(render_scenario(graph, spec), mimetype=SVG_MIMETYPE)
    except Exception as e:
        return error_response(e)
