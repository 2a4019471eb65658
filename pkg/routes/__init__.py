"""
Routes Module
"""

from routes.frames import frames_bp
from routes.scenarios import scenarios_bp
from routes.render import render_bp
from routes.export import export_bp

__all__ = [
    'frames_bp',
    'scenarios_bp',
    'render_bp',
    'export_bp'
]
