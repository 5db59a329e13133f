from fractions import Fraction

import pytest

from app.models.iwasawa import KidaInput
from app.models.report import Verdict
from app.services.iwasawa_service import fukuda_propagate, kida_lambda, \
    pi_layer, predict_structure, rank_from_lambda, verify_real_tower_parity
from app.utilities.exceptions import AssumptionNotSetError, \
    InconsistentRanksError, OutOfFamilyError


def test_pi_layer():
    layer = pi_layer(3)
    assert layer.expression == '2+sqrt(2+sqrt(2))'
    assert layer.value.lower > Fraction(384, 100)
    assert layer.value.upper < Fraction(385, 100)
    assert layer.field.degree == 8
    assert layer.field.is_real()

    assert pi_layer(1).value.contains(2)


def test_pi_layer_level_below_one():
    with pytest.raises(ValueError) as exception_info:
        pi_layer(0)
    assert exception_info.value.args[0]['error'] == 'LEVEL_BELOW_ONE'


def test_kida_lambda():
    assert kida_lambda(KidaInput(1, 1, 1, 2, (2,) * 4, (2,) * 2, True)) == 3
    assert kida_lambda(KidaInput(5, 0, 0, 1, (), (), True)) == 5
    assert kida_lambda(KidaInput(1, 1, 1, 2, (), (), True)) == 1


def test_kida_lambda_needs_mu_assumption():
    with pytest.raises(AssumptionNotSetError) as exception_info:
        kida_lambda(KidaInput(1, 1, 1, 2))
    assert exception_info.value.args[0]['error'] == 'MU_ASSUMPTION_NOT_SET'


def test_fukuda_propagate():
    inference = fukuda_propagate({1: 0, 2: 0})
    assert (inference.stable_from, inference.stable_rank) == (1, 0)
    assert inference.rank_at(10) == 0

    inference = fukuda_propagate({4: 3, 3: 3})
    assert (inference.stable_from, inference.stable_rank) == (3, 3)

    inference = fukuda_propagate({1: 1, 2: 2})
    assert inference.stable_from is None
    assert inference.rank_at(3) is None


def test_fukuda_propagate_is_idempotent():
    inference = fukuda_propagate({1: 0, 2: 0, 5: 0})
    assert fukuda_propagate(inference.observed) == inference


def test_fukuda_propagate_rejects_bad_input():
    with pytest.raises(ValueError) as exception_info:
        fukuda_propagate({})
    assert exception_info.value.args[0]['error'] == 'NO_RANKS'

    with pytest.raises(ValueError) as exception_info:
        fukuda_propagate({1: -1})
    assert exception_info.value.args[0]['error'] == 'NEGATIVE_RANK'

    with pytest.raises(InconsistentRanksError) as exception_info:
        fukuda_propagate({1: 0, 2: 0, 3: 1})
    assert exception_info.value.args[0]['error'] == \
        'RANK_CHANGED_AFTER_STABILIZATION'


def test_rank_from_lambda():
    hypotheses = {'mu_zero': True, 'elementary': True}
    assert rank_from_lambda(3, 3, **hypotheses).exact
    assert rank_from_lambda(3, 5, **hypotheses).value == 3
    assert not rank_from_lambda(3, 1, **hypotheses).exact
    assert rank_from_lambda(0, 0, **hypotheses).exact
    with pytest.raises(ValueError):
        rank_from_lambda(-1, 2, **hypotheses)


def test_rank_from_lambda_without_hypotheses():
    with pytest.raises(AssumptionNotSetError) as exception_info:
        rank_from_lambda(3, 5)
    assert exception_info.value.args[0]['error'] == 'MU_ASSUMPTION_NOT_SET'

    with pytest.raises(AssumptionNotSetError) as exception_info:
        rank_from_lambda(3, 5, mu_zero=True)
    assert exception_info.value.args[0]['error'] == \
        'ELEMENTARY_ASSUMPTION_NOT_SET'



def test_real_tower_parity():
    parity = verify_real_tower_parity(5, 31)
    assert (parity.h2_base, parity.h2_layer_one) == (1, 1)
    assert parity.totally_ramified
    assert parity.trivial
    assert parity.inference.stable_rank == 0


def test_predict_structure_q_seven_mod_sixteen():
    report = predict_structure(3, 23)
    assert report.lambda_minus == 3
    assert report.structure == 'Z2^3'
    assert report.no_finite_part
    assert report.kida.e_list == (2, 2, 2, 2)
    assert report.kida.e_plus_list == (2, 2)
    assert str(report.rank_sequence[1]) == '<= 3'
    assert str(report.rank_sequence[3]) == '3'
    verdicts = {assumption.name: assumption.verdict
                for assumption in report.assumptions}
    assert verdicts['A_n(F) = A_n^-(F)'] is Verdict.VERIFIED
    assert verdicts['mu^-(Q(sqrt(23), i)) = 0'] is Verdict.ASSUMED


def test_predict_structure_other_residues():
    report = predict_structure(5, 31)
    assert report.q_mod_16 == 15
    assert report.lambda_minus == 'not determined'
    assert report.structure == 'undetermined'
    assert report.kida is None


def test_predict_structure_out_of_family():
    with pytest.raises(OutOfFamilyError):
        predict_structure(11, 13)
