"""
Export Routes - TSV/PDF downloads of frame narratives
"""

from datetime import datetime
from io import BytesIO

from flask import Blueprint, current_app, send_file

from models import FrameVelocity
from routes.common import error_response, graph_from, request_data
from schemas import FrameRequestSchema
from services.narrative import narrative_report, render_narrative_tsv
from services.pdf_service import generate_narrative_pdf


export_bp = Blueprint('export', __name__)


def _download_name(data, extension):
    source = data['builtin'] or 'scenario'
    velocity = str(data['v']).replace('.', '_').replace('-', 'm')
    return f'narrative-{source}-v{velocity}-{datetime.utcnow().strftime("%Y-%m-%d")}.{extension}'


@export_bp.route('/narrative.tsv', methods=['GET', 'POST'])
def export_narrative_tsv():
    """Export a frame narrative as TSV"""
    try:
        data = request_data(FrameRequestSchema())
        graph = graph_from(data)
        narrative = narrative_report(
            graph, FrameVelocity(data['v']), current_app.config['KINEMATICS_EPS_NULL']
        )
        output = render_narrative_tsv(narrative)

        return send_file(
            BytesIO(output.encode('utf-8')),
            mimetype='text/tab-separated-values',
            as_attachment=True,
            download_name=_download_name(data, 'tsv'),
        )
    except Exception as e:
        return error_response(e)


@export_bp.route('/narrative.pdf', methods=['GET', 'POST'])
def export_narrative_pdf():
    """Export a frame narrative with its diagram as PDF"""
    try:
        data = request_data(FrameRequestSchema())
        graph = graph_from(data)
        title = f"Frame narrative: {data['builtin']}" if data['builtin'] else 'Frame narrative'
        buffer = generate_narrative_pdf(graph, FrameVelocity(data['v']), title=title)

        return send_file(
            buffer,
            mimetype='application/pdf',
            as_attachment=True,
            download_name=_download_name(data, 'pdf'),
        )
    except Exception as e:
        return error_response(e)
