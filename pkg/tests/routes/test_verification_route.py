from unittest.mock import patch

from app.models.report import Verdict, VerificationReport
from tests.utilities.test_status_codes import StatusCodes


@patch('app.routes.verification_route.run_verification')
def test_get_verification_success(mock_run, app_with_client):
    _, test_client = app_with_client
    report = VerificationReport((5, 31), 'condition 1')
    report.add('unit_index', Verdict.VERIFIED, True, expected=64, actual=64)
    mock_run.return_value = report

    response = test_client.get('/api/verification/?p=5&q=31')
    assert response.status_code == StatusCodes.OK
    assert response.json['pair'] == [5, 31]
    assert response.json['verdicts'][0]['name'] == 'unit_index'
    mock_run.assert_called_once_with(5, 31)


def test_get_verification_out_of_family(app_with_client):
    _, test_client = app_with_client

    response = test_client.get('/api/verification/?p=11&q=13')
    assert response.status_code == StatusCodes.OK
    assert response.json['condition'] == 'out of family'
    assert response.json['verdicts'] == []


def test_get_verification_missing_parameters(app_with_client):
    _, test_client = app_with_client

    response = test_client.get('/api/verification/?p=5')
    assert response.status_code == StatusCodes.BAD_REQUEST
    assert response.json['error'] == 'INVALID_PRIME_PAIR'


def test_get_verification_not_prime(app_with_client):
    _, test_client = app_with_client

    response = test_client.get('/api/verification/?p=9&q=31')
    assert response.status_code == StatusCodes.BAD_REQUEST
    assert response.json['error'] == 'NOT_AN_ODD_PRIME'


@patch('app.routes.verification_route.run_verification')
def test_get_verification_arithmetic_error(mock_run, app_with_client):
    _, test_client = app_with_client
    mock_run.side_effect = ArithmeticError({'error': 'NO_SYSTEM_MATCHES'})

    response = test_client.get('/api/verification/?p=5&q=31')
    assert response.status_code == StatusCodes.UNPROCESSABLE_ENTITY
    assert response.json['error'] == 'NO_SYSTEM_MATCHES'


def test_get_conditions(app_with_client):
    _, test_client = app_with_client

    response = test_client.get('/api/verification/conditions?p=5&q=7')
    assert response.status_code == StatusCodes.OK
    assert response.json['condition'] == 'condition 2'
    assert response.json['legendre']['p_over_q'] == -1


def test_post_not_allowed(app_with_client):
    _, test_client = app_with_client

    response = test_client.post('/api/verification/conditions')
    assert response.status_code == StatusCodes.METHOD_NOT_ALLOWED
    assert response.json['error'] == 'METHOD_NOT_ALLOWED'


def test_unknown_url(app_with_client):
    _, test_client = app_with_client

    response = test_client.get('/api/verification/unknown/path')
    assert response.status_code == StatusCodes.NOT_FOUND
    assert response.json['error'] == 'NOT_FOUND'


@patch('app.routes.verification_route.check_conditions')
def test_unexpected_error(mock_check, app_with_client):
    _, test_client = app_with_client
    mock_check.side_effect = RuntimeError('Unexpected')

    response = test_client.get('/api/verification/conditions?p=5&q=7')
    assert response.status_code == StatusCodes.INTERNAL_SERVER_ERROR
    assert response.json['error'] == 'INTERNAL_SERVER_ERROR'


@patch('app.routes.verification_route.run_verification')
def test_get_verification_error_without_payload(mock_run, app_with_client):
    _, test_client = app_with_client
    mock_run.side_effect = ValueError()

    response = test_client.get('/api/verification/?p=5&q=31')
    assert response.status_code == StatusCodes.BAD_REQUEST
    assert response.json == {'error': 'INVALID_REQUEST', 'message': ''}

    mock_run.side_effect = ArithmeticError()
    response = test_client.get('/api/verification/?p=5&q=31')
    assert response.status_code == StatusCodes.UNPROCESSABLE_ENTITY
    assert response.json['error'] == 'INVALID_REQUEST'
