import pytest

from app.services.field_queries_service import class_number_summary, \
    fsu_summary, split_summary, tower_summary


def test_class_number_summary_real_field():
    summary = class_number_summary(155)
    assert summary['discriminant'] == 620
    assert summary['unit'] == {'d': 155, 'x': '249', 'y': '20', 'norm': 1}


def test_class_number_summary_imaginary_field():
    summary = class_number_summary(-5)
    assert summary['discriminant'] == -20
    assert summary['h'] == 2
    assert 'unit' not in summary


def test_fsu_summary():
    summary = fsu_summary([5, 31])
    assert summary['q_index'] == 2
    assert summary['field']['radicands'] == [5, 31]
    assert len(summary['generators']) == 3


def test_split_summary():
    summary = split_summary(5, 2)
    assert summary['field']['conductor'] == 16
    assert summary['splitting']['g'] == 2
    assert split_summary(5, 2, real=True)['splitting']['g'] == 1


def test_tower_summary():
    summary = tower_summary(5, 31, 2)
    assert summary['pair'] == [5, 31]
    assert [layer['level'] for layer in summary['layers']] == [1, 2]
    assert summary['layers'][1]['F_n']['splitting']['g'] == 4
    assert summary['layers'][1]['F_n+']['splitting']['g'] == 2
    assert summary['layers'][0]['pi']['pi'] == '2'


def test_tower_summary_level_below_one():
    with pytest.raises(ValueError) as exception_info:
        tower_summary(5, 31, 0)
    assert exception_info.value.args[0]['error'] == 'LEVEL_BELOW_ONE'
