import pytest

from app.app import create_app


def pytest_configure(config):
    config.addinivalue_line(
            'markers', 'slow: full-range sweeps, deselect with -m "not slow"')


@pytest.fixture(scope='function')
def app_with_client(tmp_path):
    flask_app = create_app()
    flask_app.config.update({
        'TESTING': True,
        'REPORT_DIR': str(tmp_path),
        'NO_COLOR': True,
    })

    with flask_app.test_client() as testing_client:
        yield flask_app, testing_client
