"""
Photon Kinematics Backend - Flask Application
Generalized Lorentz transformations, thought-experiment simulation and diagrams
"""

import logging
import os

from dotenv import load_dotenv
from flask import Flask

from extensions import cors

# Load environment variables
load_dotenv()


def create_app(config_overrides=None):
    """Application factory pattern"""
    app = Flask(__name__)

    # Configuration
    app.config['SECRET_KEY'] = os.environ.get('SECRET_KEY', 'dev-secret-key')
    app.config['KINEMATICS_EPS_NULL'] = float(os.environ.get('KINEMATICS_EPS_NULL', 1e-9))
    app.config['DIAGRAM_SCALE'] = float(os.environ.get('DIAGRAM_SCALE', 60.0))
    app.config['DIAGRAM_MARGIN'] = float(os.environ.get('DIAGRAM_MARGIN', 0.15))
    app.config['FRONTEND_URL'] = os.environ.get('FRONTEND_URL', 'http://localhost:5173')
    app.config['LOG_LEVEL'] = os.environ.get('LOG_LEVEL', 'INFO').upper()
    if config_overrides:
        app.config.update(config_overrides)

    logging.basicConfig(level=app.config['LOG_LEVEL'])
    app.logger.setLevel(app.config['LOG_LEVEL'])

    # Initialize extensions
    cors.init_app(app, resources={r"/api/*": {
        "origins": [app.config['FRONTEND_URL']],
        "allow_headers": ["Content-Type"],
        "methods": ["GET", "POST", "OPTIONS"]
    }})

    # Register blueprints
    from routes.frames import frames_bp
    from routes.scenarios import scenarios_bp
    from routes.render import render_bp
    from routes.export import export_bp

    app.register_blueprint(frames_bp, url_prefix='/api/frames')
    app.register_blueprint(scenarios_bp, url_prefix='/api/scenarios')
    app.register_blueprint(render_bp, url_prefix='/api/render')
    app.register_blueprint(export_bp, url_prefix='/api/export')

    # Command line: `flask --app app kinematics ...`
    from cli import cli
    app.cli.add_command(cli, 'kinematics')

    # Error handlers
    @app.errorhandler(404)
    def not_found(error):
        return {'error': 'Resource not found'}, 404

    @app.errorhandler(405)
    def method_not_allowed(error):
        return {'error': 'Method not allowed'}, 405

    @app.errorhandler(422)
    def unprocessable_entity(error):
        app.logger.info(f"422 Error: {error}")
        return {'error': 'Unprocessable entity', 'message': str(error)}, 422

    @app.errorhandler(500)
    def internal_error(error):
        app.logger.error(f"500 Error: {error}")
        return {'error': 'Internal server error'}, 500

    # Health check
    @app.route('/api/health')
    def health_check():
        return {'status': 'ok', 'message': 'Kinematics API is running'}

    # Root endpoint to prevent 404s
    @app.route('/')
    def root():
        return {'status': 'ok', 'message': 'Photon kinematics backend is running. Access API at /api'}

    return app


# Create app instance
app = create_app()


if __name__ == '__main__':
    app.run(host='0.0.0.0', port=5000, debug=os.environ.get('FLASK_ENV') == 'development')
