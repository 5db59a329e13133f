import random
from fractions import Fraction

import pytest

from app.models.multiquadratic import MQElement, MQField, RealInterval, \
    SignPattern, squarefree_product


def random_element(mq_field, generator):
    return MQElement(mq_field, tuple(
            Fraction(generator.randint(-20, 20), generator.randint(1, 5))
            for _ in range(mq_field.degree)))


def test_squarefree_product():
    assert squarefree_product(10, 15) == 6
    assert squarefree_product(5, 31) == 155
    assert squarefree_product(7, 7) == 1


def test_field_basis_is_indexed_by_masks():
    mq_field = MQField((2, 5, 31))
    assert mq_field.radicals == (1, 2, 5, 10, 31, 62, 155, 310)
    assert mq_field.degree == 8
    assert mq_field.rank == 3
    assert mq_field.subfield() == MQField((2, 5))


def test_field_rejects_invalid_radicands():
    with pytest.raises(ValueError) as exception_info:
        MQField((2, 12))
    assert exception_info.value.args[0]['error'] == 'NOT_SQUAREFREE'

    with pytest.raises(ValueError) as exception_info:
        MQField((2, 3, 6))
    assert exception_info.value.args[0]['error'] == 'DEPENDENT_RADICANDS'

    with pytest.raises(ValueError) as exception_info:
        MQField((2, 3, 5, 7))
    assert exception_info.value.args[0]['error'] == 'TOO_MANY_RADICANDS'


def test_from_radicands_drops_dependent_radicands():
    assert MQField.from_radicands(2, 3, 6) == MQField((2, 3))
    assert MQField.from_radicands(5, 31, 155, 2) == MQField((5, 31, 2))


def test_mask_of_and_contains():
    mq_field = MQField((2, 5))
    assert mq_field.mask_of(10) == 3
    assert mq_field.contains(MQField((10,)))
    assert not mq_field.contains(MQField((3,)))

    with pytest.raises(ValueError) as exception_info:
        mq_field.mask_of(3)
    assert exception_info.value.args[0]['error'] == 'RADICAL_NOT_IN_FIELD'


def test_patterns_start_with_identity():
    patterns = list(MQField((2, 5)).patterns())
    assert len(patterns) == 4
    assert patterns[0] == SignPattern.identity(2)


def test_sign_pattern():
    mq_field = MQField((2, 5, 31))
    pattern = SignPattern.flipping(mq_field, [5])
    assert pattern.signs == (1, -1, 1)
    assert pattern.sign_of(mq_field.mask_of(10)) == -1
    assert pattern.sign_of(mq_field.mask_of(310)) == -1
    assert pattern.sign_of(mq_field.mask_of(62)) == 1
    assert pattern.compose(pattern) == SignPattern.identity(3)

    with pytest.raises(ValueError) as exception_info:
        SignPattern.flipping(mq_field, [3])
    assert exception_info.value.args[0]['error'] == 'UNKNOWN_RADICAND'

    with pytest.raises(ValueError):
        SignPattern((1, 0))


def test_radical_products():
    mq_field = MQField((2, 5))
    sqrt2 = MQElement.radical(mq_field, 2)
    sqrt10 = MQElement.radical(mq_field, 10)
    assert sqrt2 * sqrt10 == MQElement.radical(mq_field, 5, 2)
    assert sqrt2 * sqrt2 == MQElement.rational(mq_field, 2)


def test_unit_inverse():
    mq_field = MQField((2,))
    unit = MQElement.radical(mq_field, 2) + 1
    assert unit * (1 - MQElement.radical(mq_field, 2)) == \
        MQElement.rational(mq_field, -1)
    assert unit.inverse() == MQElement.radical(mq_field, 2) - 1
    assert unit ** -2 * unit ** 2 == MQElement.one(mq_field)


def test_field_axioms_on_random_elements():
    generator = random.Random(20240101)
    mq_field = MQField((2, 5, 31))
    for _ in range(1000):
        first, second, third = (random_element(mq_field, generator)
                                for _ in range(3))
        assert first * (second + third) == first * second + first * third
        assert (first * second) * third == first * (second * third)
        assert first * second == second * first
        if not first.is_zero():
            assert first * first.inverse() == MQElement.one(mq_field)


def test_division_by_zero():
    mq_field = MQField((2,))
    with pytest.raises(ZeroDivisionError):
        MQElement.zero(mq_field).inverse()
    with pytest.raises(ZeroDivisionError):
        MQElement.one(mq_field) / 0


def test_field_mismatch():
    with pytest.raises(ValueError) as exception_info:
        MQElement.one(MQField((2,))) + MQElement.one(MQField((3,)))
    assert exception_info.value.args[0]['error'] == 'FIELD_MISMATCH'


def test_split_and_join_top():
    mq_field = MQField((5, 31))
    element = MQElement.radical(mq_field, 5, 5) \
        + MQElement.radical(mq_field, 31, 2)
    alpha, beta = element.split_top()
    assert alpha == MQElement.radical(MQField((5,)), 5, 5)
    assert beta == MQElement.rational(MQField((5,)), 2)
    assert MQElement.join_top(mq_field, alpha, beta) == element

    sqrt155 = MQElement.radical(mq_field, 155)
    alpha, beta = sqrt155.split_top()
    assert alpha.is_zero()
    assert beta == MQElement.radical(MQField((5,)), 5)


def test_coerce():
    element = MQElement.radical(MQField((155,)), 155, 20) + 249
    lifted = element.coerce(MQField((5, 31)))
    assert lifted.coords == (249, 0, 0, 20)

    with pytest.raises(ValueError):
        element.coerce(MQField((2, 5)))


def test_element_text():
    mq_field = MQField((5, 31))
    root = MQElement.radical(mq_field, 5, 5) \
        + MQElement.radical(mq_field, 31, 2)
    assert str(root) == '5*sqrt(5) + 2*sqrt(31)'
    assert str(1 - MQElement.radical(mq_field, 5)) == '1 - 1*sqrt(5)'
    assert str(MQElement.zero(mq_field)) == '0'
    assert root.to_dict() == {
        'radicands': [5, 31],
        'coordinates': {'5': '5', '31': '2'},
        'expression': '5*sqrt(5) + 2*sqrt(31)'
    }


def test_coordinate_count_mismatch():
    with pytest.raises(ValueError) as exception_info:
        MQElement(MQField((2,)), (Fraction(1),))
    assert exception_info.value.args[0]['error'] == \
        'COORDINATE_COUNT_MISMATCH'


def test_real_interval():
    interval = RealInterval(Fraction(1), Fraction(3, 2))
    assert interval.contains(Fraction(5, 4))
    assert interval.is_positive()
    assert not interval.is_negative()
    assert interval.width == Fraction(1, 2)
    assert interval.overlaps(RealInterval(Fraction(3, 2), Fraction(2)))
    assert not interval.overlaps(RealInterval(Fraction(2), Fraction(3)))
