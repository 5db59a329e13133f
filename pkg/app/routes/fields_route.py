import logging

from flask import Blueprint, Response, jsonify, request

from app.services.field_queries_service import class_number_summary, \
    fsu_summary, split_summary, tower_summary
from app.utilities.exceptions import error_payload
from app.utilities.status_codes import StatusCodes

fields_bp = Blueprint('fields', __name__)


@fields_bp.route('/classnum', methods=['GET'])
def get_class_number() -> tuple[Response, int]:
    """
    Get the class group and fundamental unit of Q(√d).

    :returns: A tuple containing the response and the status code.
    """

    return __respond('class number', lambda: class_number_summary(
            __int_arg('d')))


@fields_bp.route('/fsu', methods=['GET'])
def get_fsu() -> tuple[Response, int]:
    """
    Get a fundamental system of units of a real multiquadratic field.

    The radicands are given as a comma separated list, for example
    ``?radicands=2,5,31``.

    :returns: A tuple containing the response and the status code.
    """

    return __respond('FSU', lambda: fsu_summary(__int_list_arg('radicands')))


@fields_bp.route('/split', methods=['GET'])
def get_splitting() -> tuple[Response, int]:
    """
    Get the decomposition of p in Q(ζ_{2^(n+2)}) or its real subfield.

    :returns: A tuple containing the response and the status code.
    """

    return __respond('splitting', lambda: split_summary(
            __int_arg('p'), __int_arg('level'),
            request.args.get('plus', 'false').lower() in ('1', 'true')))


@fields_bp.route('/tower', methods=['GET'])
def get_tower() -> tuple[Response, int]:
    """
    Get the splitting of p through the layers F_n and F_n⁺ of a pair.

    :returns: A tuple containing the response and the status code.
    """

    return __respond('tower', lambda: tower_summary(
            __int_arg('p'), __int_arg('q'), __int_arg('levels')))


def __respond(subject, compute) -> tuple[Response, int]:
    requester_ip = request.remote_addr

    try:
        result = compute()
    except ValueError as exception:
        logging.warning(f'{requester_ip} - {error_payload(exception)}')
        return jsonify(error_payload(exception)), StatusCodes.BAD_REQUEST
    except ArithmeticError as exception:
        logging.error(f'{requester_ip} - {error_payload(exception)}')
        return (jsonify(error_payload(exception)),
                StatusCodes.UNPROCESSABLE_ENTITY)

    logging.info(f'{requester_ip} - Responded with {subject}.')
    return jsonify(result), StatusCodes.OK


def __int_arg(name: str) -> int:
    try:
        return int(request.args[name])
    except (KeyError, ValueError):
        raise ValueError({'error': 'INVALID_PARAMETER', 'parameter': name})


def __int_list_arg(name: str) -> list[int]:
    try:
        return [int(value) for value in request.args[name].split(',')]
    except (KeyError, ValueError):
        raise ValueError({'error': 'INVALID_PARAMETER', 'parameter': name})
