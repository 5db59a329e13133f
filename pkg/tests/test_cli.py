import json
import os
from unittest.mock import patch

from app.cli import CLAIM_FAILED, USAGE_ERROR
from app.models.report import SurveyResult, Verdict, VerificationReport


def passing_report():
    report = VerificationReport((5, 31), 'condition 1')
    report.add('unit_index', Verdict.VERIFIED, True)
    return report


@patch('app.cli.run_verification')
def test_verify_json(mock_run, app_with_client):
    app, _ = app_with_client
    mock_run.return_value = passing_report()

    result = app.test_cli_runner().invoke(args=[
            'verify', '--p', '5', '--q', '31', '--json', '--timestamp', 'off'])
    assert result.exit_code == 0
    document = json.loads(result.output)
    assert document['pair'] == [5, 31]
    assert 'timestamp' not in document


@patch('app.cli.run_verification')
def test_verify_timestamp(mock_run, app_with_client):
    app, _ = app_with_client
    mock_run.return_value = passing_report()

    result = app.test_cli_runner().invoke(args=[
            'verify', '--p', '5', '--q', '31', '--json'])
    assert 'timestamp' in json.loads(result.output)


@patch('app.cli.run_verification')
def test_verify_failed_claim(mock_run, app_with_client):
    app, _ = app_with_client
    report = passing_report()
    report.add('norm_tables', Verdict.VERIFIED, False)
    mock_run.return_value = report

    result = app.test_cli_runner().invoke(args=[
            'verify', '--p', '5', '--q', '31', '--timestamp', 'off'])
    assert result.exit_code == CLAIM_FAILED
    assert 'norm_tables' in result.output


def test_verify_invalid_prime(app_with_client):
    app, _ = app_with_client

    result = app.test_cli_runner().invoke(args=[
            'verify', '--p', '9', '--q', '31'])
    assert result.exit_code == USAGE_ERROR
    assert 'NOT_AN_ODD_PRIME' in result.output


@patch('app.cli.run_verification')
def test_verify_writes_report(mock_run, app_with_client):
    app, _ = app_with_client
    mock_run.return_value = passing_report()

    result = app.test_cli_runner().invoke(args=[
            'verify', '--p', '5', '--q', '31', '--markdown',
            '--output', 'pair.md', '--timestamp', 'off'])
    assert result.exit_code == 0
    path = os.path.join(app.config['REPORT_DIR'], 'pair.md')
    with open(path, encoding='utf-8') as report_file:
        assert report_file.read().startswith('| pair |')


@patch('app.cli.survey')
def test_survey_command(mock_survey, app_with_client):
    app, _ = app_with_client
    mock_survey.return_value = SurveyResult(50, '1', (passing_report(),))

    result = app.test_cli_runner().invoke(args=[
            'survey', '--bound', '50', '--cond', '1', '--format', 'json',
            '--timestamp', 'off'])
    assert result.exit_code == 0
    assert json.loads(result.output)['pairs'] == 1
    mock_survey.assert_called_once_with(50, '1', None)


def test_survey_command_invalid_condition(app_with_client):
    app, _ = app_with_client

    result = app.test_cli_runner().invoke(args=['survey', '--cond', '3'])
    assert result.exit_code == USAGE_ERROR


def test_classnum_command(app_with_client):
    app, _ = app_with_client

    result = app.test_cli_runner().invoke(args=['classnum', '--d', '155'])
    assert result.exit_code == 0
    assert json.loads(result.output)['unit']['x'] == '249'


def test_fsu_command(app_with_client):
    app, _ = app_with_client

    result = app.test_cli_runner().invoke(args=['fsu', '--radicands', '2,5'])
    assert result.exit_code == 0
    assert json.loads(result.output)['q_index'] == 2


def test_fsu_command_invalid_radicand(app_with_client):
    app, _ = app_with_client

    result = app.test_cli_runner().invoke(args=['fsu', '--radicands', '2,4'])
    assert result.exit_code == USAGE_ERROR


def test_split_command(app_with_client):
    app, _ = app_with_client

    result = app.test_cli_runner().invoke(args=[
            'split', '--p', '5', '--level', '2', '--plus'])
    assert result.exit_code == 0
    assert json.loads(result.output)['splitting']['f'] == 4


@patch('app.cli.tower_summary')
def test_tower_command(mock_tower, app_with_client):
    app, _ = app_with_client
    mock_tower.return_value = {'pair': [5, 31], 'layers': []}

    result = app.test_cli_runner().invoke(args=[
            'tower', '--p', '5', '--q', '31'])
    assert result.exit_code == 0
    mock_tower.assert_called_once_with(5, 31, 4)
