import logging

from flask import jsonify, request
from werkzeug.exceptions import HTTPException

from app.utilities.exceptions import error_payload
from app.utilities.status_codes import StatusCodes


def handle_all_unhandled_exceptions(exception):
    """
    Handle all unhandled exceptions.

    This function logs the exception and returns a JSON error with a status
    code: 404 for unknown URLs, 405 for unsupported methods, 422 for an
    arithmetic inconsistency that escaped a route, 500 for anything else.

    :param exception: The unhandled exception.
    :returns: A tuple containing a JSON response and a status code.
    """

    requester_ip = request.remote_addr

    if isinstance(exception, HTTPException):
        if exception.code == StatusCodes.NOT_FOUND:
            logging.error(f'{requester_ip} - URL not found: {request.url}')
            return jsonify({'error': 'NOT_FOUND'}), StatusCodes.NOT_FOUND
        if exception.code == StatusCodes.METHOD_NOT_ALLOWED:
            logging.warning(f'{requester_ip} - {request.method} not allowed '
                            f'on {request.url}')
            return (jsonify({'error': 'METHOD_NOT_ALLOWED'}),
                    StatusCodes.METHOD_NOT_ALLOWED)

    if isinstance(exception, ArithmeticError):
        logging.error(f'{requester_ip} - {exception}')
        return (jsonify(error_payload(exception)),
                StatusCodes.UNPROCESSABLE_ENTITY)

    logging.critical(f'{requester_ip} - ' + str(exception))
    return (jsonify({'error': 'INTERNAL_SERVER_ERROR'}),
            StatusCodes.INTERNAL_SERVER_ERROR)
