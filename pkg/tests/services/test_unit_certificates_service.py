from fractions import Fraction

import pytest

from app.models.quadratic import QuadUnit
from app.services.quadratic_fields_service import fundamental_unit
from app.services.survey_service import qualifying_pairs
from app.services.unit_certificates_service import check_lemma_a5, \
    classify_decomposition, expected_branch, lemma_radicands, \
    verify_lemma_families
from app.utilities.exceptions import OutOfFamilyError


def test_certificate_of_eps_155():
    certificate = classify_decomposition(fundamental_unit(155), (5, 31))
    assert (certificate.u, certificate.v) == (10, 62)
    assert (certificate.s, certificate.t) == (5, 2)
    assert certificate.multiplier == 1
    assert certificate.radicands == (5, 31)
    assert certificate.sqrt_form == 'sqrt(eps_155) = 5*sqrt(5) + 2*sqrt(31)'
    assert certificate.relation == 1
    assert all(passed for _, passed in certificate.checks)


def test_certificate_with_multiplier_two():
    certificate = classify_decomposition(fundamental_unit(31), (5, 31))
    assert (certificate.u, certificate.v) == (1, 31)
    assert certificate.multiplier == 2
    assert str(certificate.root) == '39 + 7*sqrt(31)'


def test_classify_rejects_foreign_radicand():
    with pytest.raises(ValueError) as exception_info:
        classify_decomposition(fundamental_unit(3), (5, 31))
    assert exception_info.value.args[0]['error'] == \
        'RADICAND_NOT_OVER_PRIMES'


def test_classify_rejects_norm_minus_one():
    with pytest.raises(ValueError) as exception_info:
        classify_decomposition(fundamental_unit(2), (5, 31))
    assert exception_info.value.args[0]['error'] == 'LEMMA_INAPPLICABLE'


def test_lemma_a5_holds_for_eps_155():
    verdict = check_lemma_a5(fundamental_unit(155))
    assert verdict.holds
    assert [witness for _, _, witness in verdict.quantities] == \
        [5, 31, 31, 5]


def test_lemma_a5_detects_squares():
    verdict = check_lemma_a5(QuadUnit(2, Fraction(3), Fraction(2), 1))
    assert not verdict.holds
    assert verdict.to_dict()['quantities'][1]['witness'] == 1


def test_lemma_radicands():
    assert lemma_radicands(5, 31) == (310, 155, 62, 31)
    assert lemma_radicands(3, 23) == (69, 138, 23, 46, 3, 6)


def test_expected_branch():
    assert expected_branch(5, 31, 155) == (10, 62)
    assert expected_branch(3, 23, 6) == (6, 1)
    with pytest.raises(ValueError) as exception_info:
        expected_branch(5, 31, 7)
    assert exception_info.value.args[0]['error'] == 'RADICAND_NOT_COVERED'


def test_verify_lemma_families():
    certificates = verify_lemma_families(5, 31)
    assert [certificate.d for certificate in certificates] == \
        [310, 155, 62, 31]
    assert len(verify_lemma_families(3, 23)) == 6


def test_verify_lemma_families_out_of_family():
    with pytest.raises(OutOfFamilyError) as exception_info:
        verify_lemma_families(5, 7)
    assert exception_info.value.args[0]['error'] == \
        'CONDITIONS_NOT_SATISFIED'


@pytest.mark.parametrize('p, q', qualifying_pairs(500, '1'))
def test_lemma_families_up_to_500(p, q):
    certificates = verify_lemma_families(p, q)
    assert [certificate.d for certificate in certificates] == \
        list(lemma_radicands(p, q))
    for certificate in certificates:
        assert (certificate.u, certificate.v) == \
            expected_branch(p, q, certificate.d)
        assert abs(certificate.relation) == certificate.multiplier
        root = certificate.root
        assert root * root == \
            certificate.unit.element(root.field) * certificate.multiplier
        assert all(passed for _, passed in certificate.checks)
