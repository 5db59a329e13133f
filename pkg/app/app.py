import logging
import os

from flask import Flask

from app.cli import register_commands
from app.routes.error_handler import handle_all_unhandled_exceptions
from app.routes.fields_route import fields_bp
from app.routes.verification_route import verification_bp


def create_app() -> Flask:
    """
    Creates and configures the Flask application.

    This function creates a new Flask application, configures it from a
    configuration file, sets up logging, registers blueprints and the
    command line interface. Also sets up a global error handler for
    unhandled exceptions.

    :returns: The configured Flask application.
    """

    verification_api = Flask(__name__)
    verification_api.config.from_pyfile('config.py')
    verification_api.errorhandler(Exception)(
            handle_all_unhandled_exceptions)

    setup_logging(verification_api)
    register_blueprints(verification_api)
    register_commands(verification_api)

    return verification_api


def setup_logging(verification_api: Flask) -> None:
    """
    Sets up logging for the Flask application.

    This function sets up logging for the Flask application. If LOG_TO_STDOUT
    is enabled in the configuration, it sets up logging to stdout. Otherwise,
    it configures logging to a file.

    :param verification_api: The Flask application.
    """

    log_level = verification_api.config.get('LOG_LEVEL', 'INFO').upper()
    log_format = verification_api.config.get(
            'LOG_FORMAT',
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    if verification_api.config.get('LOG_TO_STDOUT'):
        handler: logging.Handler = logging.StreamHandler()
    else:
        log_dir = verification_api.config.get('LOG_DIR', 'logs')
        os.makedirs(log_dir, exist_ok=True)
        handler = logging.FileHandler(verification_api.config.get(
                'LOG_FILE', os.path.join(log_dir, 'app.log')))
    handler.setLevel(log_level)
    handler.setFormatter(logging.Formatter(log_format))

    root_logger = logging.getLogger()
    if not any(__same_handler(existing, handler)
               for existing in root_logger.handlers):
        root_logger.addHandler(handler)
    root_logger.setLevel(log_level)


def register_blueprints(verification_api: Flask) -> None:
    """
    Registers blueprints for the Flask application.

    :param verification_api: The Flask application.
    """

    verification_api.register_blueprint(
            verification_bp, url_prefix='/api/verification')
    verification_api.register_blueprint(
            fields_bp, url_prefix='/api/fields')


def __same_handler(first: logging.Handler, second: logging.Handler) -> bool:
    # one handler per destination when the factory runs more than once
    if type(first) is not type(second):
        return False
    return getattr(first, 'baseFilename', None) == getattr(
            second, 'baseFilename', None)


if __name__ == "__main__":
    app = create_app()
    app.run(debug=True)
