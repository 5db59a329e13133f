import os
from unittest.mock import patch

import pytest

from app.repositories.report_repository import load_report, save_report


def test_save_and_load_report(tmp_path):
    path = save_report('| pair |\n', 'survey.md', str(tmp_path))
    assert path == os.path.join(str(tmp_path), 'survey.md')
    assert load_report(path) == '| pair |\n'


def test_save_report_keeps_explicit_directory(tmp_path):
    target = os.path.join(str(tmp_path), 'nested', 'report.json')
    path = save_report('{}\n', target, '/unused')
    assert path == target
    assert os.path.exists(target)


@patch('app.repositories.report_repository.open', create=True)
def test_save_report_os_error(mock_open, tmp_path):
    mock_open.side_effect = OSError('Disk full')

    with pytest.raises(OSError) as exception_info:
        save_report('{}\n', 'report.json', str(tmp_path))
    assert exception_info.value.args[0]['error'] == 'COULD_NOT_WRITE_REPORT'


def test_load_missing_report(tmp_path):
    with pytest.raises(OSError) as exception_info:
        load_report(os.path.join(str(tmp_path), 'missing.json'))
    assert exception_info.value.args[0]['error'] == 'COULD_NOT_READ_REPORT'
