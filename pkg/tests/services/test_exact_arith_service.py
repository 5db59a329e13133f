import random
from fractions import Fraction
from unittest.mock import patch

import pytest

from app.models.multiquadratic import MQElement, MQField, SignPattern
from app.services.exact_arith_service import apply_automorphism, embed, \
    exact_sqrt, field_norm, is_totally_positive, mq_mul, rational_sqrt, \
    sign_at, signature, sqrt_in_field

FIELD = MQField((5, 31))


def eps_155():
    return MQElement.rational(FIELD, 249) \
        + MQElement.radical(FIELD, 155, 20)


def test_mq_mul():
    sqrt5 = MQElement.radical(FIELD, 5)
    sqrt31 = MQElement.radical(FIELD, 31)
    assert mq_mul(sqrt5, sqrt31) == MQElement.radical(FIELD, 155)


def test_apply_automorphism():
    pattern = SignPattern.flipping(FIELD, [5])
    image = apply_automorphism(eps_155(), pattern)
    assert image == MQElement.rational(FIELD, 249) \
        - MQElement.radical(FIELD, 155, 20)
    assert image * eps_155() == MQElement.one(FIELD)


def test_automorphism_pattern_mismatch():
    with pytest.raises(ValueError) as exception_info:
        apply_automorphism(eps_155(), SignPattern((1,)))
    assert exception_info.value.args[0]['error'] == 'PATTERN_MISMATCH'


def test_embed_encloses_value():
    sqrt2 = MQElement.radical(MQField((2,)), 2)
    interval = embed(sqrt2, SignPattern.identity(1), 128)
    assert interval.lower * interval.lower <= 2 <= \
        interval.upper * interval.upper
    assert interval.width < Fraction(1, 10 ** 30)


def test_embed_rejects_low_precision():
    with pytest.raises(ValueError) as exception_info:
        embed(eps_155(), SignPattern.identity(2), 32)
    assert exception_info.value.args[0]['error'] == 'PRECISION_TOO_LOW'


def test_sign_of_tiny_conjugate():
    conjugate = MQElement.rational(FIELD, 249) \
        - MQElement.radical(FIELD, 155, 20)
    assert sign_at(conjugate, SignPattern.identity(2)) == 1
    assert sign_at(-conjugate, SignPattern.identity(2)) == -1
    assert sign_at(MQElement.zero(FIELD), SignPattern.identity(2)) == 0


@patch('app.config.EMBED_MAX_PRECISION', 64)
@patch('app.config.EMBED_START_PRECISION', 64)
def test_sign_precision_exhausted():
    mq_field = MQField((2,))
    tiny = (MQElement.radical(mq_field, 2) - 1) ** 40
    with pytest.raises(ArithmeticError) as exception_info:
        sign_at(tiny, SignPattern.identity(1))
    assert exception_info.value.args[0]['error'] == 'PRECISION_EXHAUSTED'


def test_signature():
    sqrt5 = MQElement.radical(FIELD, 5)
    assert signature(sqrt5) == (0, 0, 1, 1)
    assert signature(eps_155()) == (0, 0, 0, 0)
    assert is_totally_positive(eps_155())
    assert not is_totally_positive(sqrt5)
    assert not is_totally_positive(MQElement.zero(FIELD))


def test_field_norm():
    assert field_norm(eps_155()) == 1
    assert field_norm(MQElement.radical(FIELD, 5)) == 25
    assert field_norm(MQElement.radical(MQField((2,)), 2) + 1) == -1


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-4)) is None


def test_sqrt_of_eps_155():
    root = sqrt_in_field(eps_155())
    assert root == MQElement.radical(FIELD, 5, 5) \
        + MQElement.radical(FIELD, 31, 2)
    assert root * root == eps_155()


def test_sqrt_normalizes_sign():
    mq_field = MQField((2,))
    square = (1 - MQElement.radical(mq_field, 2)) ** 2
    assert sqrt_in_field(square) == 1 - MQElement.radical(mq_field, 2)


def test_sqrt_rejects_non_squares():
    mq_field = MQField((5,))
    assert sqrt_in_field(MQElement.rational(mq_field, 2)) is None
    assert sqrt_in_field(MQElement.rational(mq_field, -4)) is None
    assert sqrt_in_field(MQElement.rational(mq_field, 5)) == \
        MQElement.radical(mq_field, 5)


def test_sqrt_of_zero():
    with pytest.raises(ValueError) as exception_info:
        sqrt_in_field(MQElement.zero(FIELD))
    assert exception_info.value.args[0]['error'] == \
        'ZERO_HAS_NO_CANONICAL_ROOT'


def test_exact_sqrt_skips_positivity():
    mq_field = MQField((2,))
    assert exact_sqrt(MQElement.rational(mq_field, -1)) is None
    assert exact_sqrt(MQElement.rational(mq_field, 8)) == \
        MQElement.radical(mq_field, 2, 2)


def test_sqrt_recovers_random_squares():
    generator = random.Random(31)
    mq_field = MQField((2, 5, 31))
    for _ in range(500):
        element = MQElement(mq_field, tuple(
                Fraction(generator.randint(-9, 9), generator.randint(1, 3))
                for _ in range(mq_field.degree)))
        if element.is_zero():
            continue
        root = sqrt_in_field(element * element)
        assert root in (element, -element)
        assert root * root == element * element


def test_automorphism_matches_embedding():
    generator = random.Random(155)
    mq_field = MQField((2, 5, 31))
    identity = SignPattern.identity(mq_field.rank)
    for _ in range(200):
        element = MQElement(mq_field, tuple(
                Fraction(generator.randint(-9, 9), generator.randint(1, 3))
                for _ in range(mq_field.degree)))
        for pattern in mq_field.patterns():
            image = embed(apply_automorphism(element, pattern), identity, 128)
            assert image.overlaps(embed(element, pattern, 128))
