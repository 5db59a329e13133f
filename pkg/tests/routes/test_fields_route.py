from unittest.mock import patch

from tests.utilities.test_status_codes import StatusCodes


def test_get_class_number(app_with_client):
    _, test_client = app_with_client

    response = test_client.get('/api/fields/classnum?d=-5')
    assert response.status_code == StatusCodes.OK
    assert response.json['h'] == 2
    assert response.json['discriminant'] == -20


def test_get_class_number_not_squarefree(app_with_client):
    _, test_client = app_with_client

    response = test_client.get('/api/fields/classnum?d=12')
    assert response.status_code == StatusCodes.BAD_REQUEST
    assert response.json['error'] == 'NOT_SQUAREFREE'


def test_get_fsu(app_with_client):
    _, test_client = app_with_client

    response = test_client.get('/api/fields/fsu?radicands=2,5')
    assert response.status_code == StatusCodes.OK
    assert response.json['q_index'] == 2
    assert response.json['h2'] == '1'


def test_get_fsu_invalid_parameter(app_with_client):
    _, test_client = app_with_client

    response = test_client.get('/api/fields/fsu?radicands=2,x')
    assert response.status_code == StatusCodes.BAD_REQUEST
    assert response.json == {'error': 'INVALID_PARAMETER',
                             'parameter': 'radicands'}


def test_get_splitting(app_with_client):
    _, test_client = app_with_client

    response = test_client.get('/api/fields/split?p=5&level=2')
    assert response.status_code == StatusCodes.OK
    assert response.json['splitting']['f'] == 4

    response = test_client.get('/api/fields/split?p=5&level=2&plus=true')
    assert response.json['field']['real'] is True
    assert response.json['splitting']['g'] == 1


@patch('app.routes.fields_route.tower_summary')
def test_get_tower(mock_tower, app_with_client):
    _, test_client = app_with_client
    mock_tower.return_value = {'pair': [5, 31], 'layers': []}

    response = test_client.get('/api/fields/tower?p=5&q=31&levels=3')
    assert response.status_code == StatusCodes.OK
    mock_tower.assert_called_once_with(5, 31, 3)


@patch('app.routes.fields_route.tower_summary')
def test_get_tower_arithmetic_error(mock_tower, app_with_client):
    _, test_client = app_with_client
    mock_tower.side_effect = ArithmeticError(
            {'error': 'DECOMPOSITION_LAW_VIOLATED'})

    response = test_client.get('/api/fields/tower?p=5&q=31&levels=3')
    assert response.status_code == StatusCodes.UNPROCESSABLE_ENTITY
    assert response.json['error'] == 'DECOMPOSITION_LAW_VIOLATED'


def test_get_tower_missing_levels(app_with_client):
    _, test_client = app_with_client

    response = test_client.get('/api/fields/tower?p=5&q=31')
    assert response.status_code == StatusCodes.BAD_REQUEST
    assert response.json['parameter'] == 'levels'


@patch('app.routes.fields_route.class_number_summary')
def test_get_class_number_error_without_payload(mock_summary,
                                                app_with_client):
    _, test_client = app_with_client
    mock_summary.side_effect = ValueError()

    response = test_client.get('/api/fields/classnum?d=5')
    assert response.status_code == StatusCodes.BAD_REQUEST
    assert response.json == {'error': 'INVALID_REQUEST', 'message': ''}
