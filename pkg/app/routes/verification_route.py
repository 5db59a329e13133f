import logging

from flask import Blueprint, Response, jsonify, request

from app.services.conditions_service import check_conditions
from app.services.survey_service import run_verification
from app.utilities.exceptions import error_payload
from app.utilities.status_codes import StatusCodes

verification_bp = Blueprint('verification', __name__)


@verification_bp.route('/', methods=['GET'])
def get_verification() -> tuple[Response, int]:
    """
    Get the full verification report of a prime pair.

    This function reads the primes p and q from the query string and runs
    every check that applies to the pair. A pair outside both condition
    classes gives a report without claims.

    :returns: A tuple containing the response and the status code.
    """

    requester_ip = request.remote_addr

    try:
        p, q = __prime_args()
        report = run_verification(p, q)
    except ValueError as exception:
        logging.warning(f'{requester_ip} - {error_payload(exception)}')
        return jsonify(error_payload(exception)), StatusCodes.BAD_REQUEST
    except ArithmeticError as exception:
        logging.error(f'{requester_ip} - {error_payload(exception)}')
        return (jsonify(error_payload(exception)),
                StatusCodes.UNPROCESSABLE_ENTITY)

    logging.info(f'{requester_ip} - Responded with verification of '
                 f'({p}, {q}).')
    return jsonify(report.to_dict()), StatusCodes.OK


@verification_bp.route('/conditions', methods=['GET'])
def get_conditions() -> tuple[Response, int]:
    """
    Get the condition class of a prime pair.

    :returns: A tuple containing the response and the status code.
    """

    requester_ip = request.remote_addr

    try:
        p, q = __prime_args()
        conditions = check_conditions(p, q)
    except ValueError as exception:
        logging.warning(f'{requester_ip} - {error_payload(exception)}')
        return jsonify(error_payload(exception)), StatusCodes.BAD_REQUEST

    logging.info(f'{requester_ip} - Responded with conditions of '
                 f'({p}, {q}).')
    return jsonify(conditions.to_dict()), StatusCodes.OK


def __prime_args() -> tuple[int, int]:
    try:
        return int(request.args['p']), int(request.args['q'])
    except (KeyError, ValueError):
        raise ValueError({'error': 'INVALID_PRIME_PAIR',
                          'expected': 'integer query parameters p and q'})
