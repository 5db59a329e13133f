import logging
from fractions import Fraction
from typing import Mapping

from mpmath import libmp
from mpmath.ctx_iv import MPIntervalContext

from app import config
from app.models.iwasawa import Assumption, IwasawaReport, KidaInput, \
    ParityCheck, RankClaim, RankInference, TowerLayer
from app.models.multiquadratic import MQField, RealInterval
from app.models.report import Verdict
from app.services.abelian_splitting_service import field_for, \
    layer_splitting, split_prime
from app.services.conditions_service import check_conditions
from app.services.wada_fsu_service import multiquadratic_fsu
from app.utilities.exceptions import AssumptionNotSetError, \
    InconsistentRanksError, OutOfFamilyError

CITED_LAMBDA_BASE = 1


def pi_layer(level: int) -> TowerLayer:
    """
    Describe the n-th layer of the cyclotomic Z₂-extension of Q.

    :param level: The layer n ≥ 1.
    :returns: π_n as a nested radical with an interval enclosure, and the
              layer as an abelian field of degree 2^n.
    :raises ValueError: If the level is below 1.
    """

    if level < 1:
        raise ValueError({'error': 'LEVEL_BELOW_ONE', 'level': level})

    context = MPIntervalContext()
    context.prec = config.EMBED_START_PRECISION
    value = context.mpf(2)
    expression = '2'
    for _ in range(level - 1):
        value = 2 + context.sqrt(value)
        expression = f'2+sqrt({expression})'

    lower, upper = value._mpi_
    enclosure = RealInterval(Fraction(*libmp.to_rational(lower)),
                             Fraction(*libmp.to_rational(upper)))
    return TowerLayer(level, expression, enclosure,
                      field_for((), level, real=True))


def kida_lambda(kida: KidaInput) -> int:
    """
    Evaluate Kida's formula for λ⁻ of the top field.

    This function computes
    λ⁻(top) = degree·(λ⁻(base) − δ(base)) + Σ(e − 1) − Σ(e⁺ − 1) + δ(top).

    :param kida: The formula data.
    :returns: λ⁻ of the top field.
    :raises AssumptionNotSetError: If μ⁻ of the base is not assumed zero.
    """

    if not kida.mu_base_zero:
        raise AssumptionNotSetError({'error': 'MU_ASSUMPTION_NOT_SET'})
    return (kida.degree * (kida.lambda_base - kida.delta_base)
            + sum(index - 1 for index in kida.e_list)
            - sum(index - 1 for index in kida.e_plus_list)
            + kida.delta_top)


def fukuda_propagate(ranks: Mapping[int, int]) -> RankInference:
    """
    Complete a rank sequence of a totally ramified Z₂-extension.

    This function finds the earliest level r with rank(r) = rank(r+1);
    the rank is then constant from r on. Running it on its own output
    gives the same inference.

    :param ranks: Observed 2-ranks by level.
    :returns: The completed inference, without stabilization when no two
              consecutive ranks agree.
    :raises ValueError: If no rank is given or a rank is negative.
    :raises InconsistentRanksError: If an observed rank differs from the
                                    stable one after stabilization.
    """

    if not ranks:
        raise ValueError({'error': 'NO_RANKS'})
    if any(rank < 0 for rank in ranks.values()):
        raise ValueError({'error': 'NEGATIVE_RANK'})

    observed = dict(sorted(ranks.items()))
    stable_from = next((level for level in observed
                        if observed.get(level + 1) == observed[level]), None)
    if stable_from is None:
        return RankInference(observed)

    stable_rank = observed[stable_from]
    for level, rank in observed.items():
        if level > stable_from and rank != stable_rank:
            raise InconsistentRanksError({
                'error': 'RANK_CHANGED_AFTER_STABILIZATION',
                'stable_from': stable_from, 'level': level,
                'expected': stable_rank, 'actual': rank})
    return RankInference(observed, stable_from, stable_rank)


def rank_from_lambda(lambda_value: int, level: int, *, mu_zero: bool = False,
                     elementary: bool = False) -> RankClaim:
    """
    Bound the 2-rank of A_n by λ.

    For an elementary Λ-module with μ = 0 in a totally ramified tower the
    rank equals λ once n ≥ λ; below that only rank ≤ λ is claimed. Both
    hypotheses are asserted by the caller.

    :param lambda_value: The λ-invariant.
    :param level: The layer n.
    :param mu_zero: Whether μ = 0 is assumed.
    :param elementary: Whether lim A_n is assumed an elementary Λ-module.
    :returns: The rank claim.
    :raises ValueError: If λ or n is negative.
    :raises AssumptionNotSetError: If either hypothesis is not asserted.
    """

    if lambda_value < 0 or level < 0:
        raise ValueError({'error': 'NEGATIVE_ARGUMENT'})
    if not mu_zero:
        raise AssumptionNotSetError({'error': 'MU_ASSUMPTION_NOT_SET'})
    if not elementary:
        raise AssumptionNotSetError(
                {'error': 'ELEMENTARY_ASSUMPTION_NOT_SET'})
    return RankClaim(lambda_value, lambda_value == 0 or level >= lambda_value)


def verify_real_tower_parity(p: int, q: int) -> ParityCheck:
    """
    Check that the 2-class groups of the real tower of Q(√p, √q) vanish.

    This function computes h₂ of Q(√p, √q) and of Q(√2, √p, √q) by the
    class number formula, checks that the primes above 2 are totally
    ramified in the real tower, and propagates the ranks.

    :param p: The first prime.
    :param q: The second prime.
    :returns: The check with its rank inference.
    """

    base = multiquadratic_fsu(MQField.from_radicands(p, q))
    layer_one = multiquadratic_fsu(MQField.from_radicands(2, p, q))
    counts = {split_prime(field_for((p, q), level, real=True), 2).g
              for level in range(config.TOWER_LEVELS + 1)}

    h2_base, h2_layer_one = int(base.h2), int(layer_one.h2)
    ranks = {level: 0 for level, h2 in enumerate((h2_base, h2_layer_one))
             if h2 == 1}
    inference = fukuda_propagate(ranks) if ranks else RankInference({})
    return ParityCheck((p, q), h2_base, h2_layer_one, len(counts) == 1,
                       inference)


def predict_structure(p: int, q: int) -> IwasawaReport:
    """
    Predict the structure of A_∞ for F = Q(√p, √q, i).

    This function always decides the finite part from the real tower. When
    q ≡ 7 (mod 16) it feeds the splitting of p in F_n and F_n⁺ to Kida's
    formula over K = Q(√q, i), whose λ⁻ = 1 is a cited constant, and
    derives the rank sequence.

    :param p: The first prime.
    :param q: The second prime.
    :returns: The prediction with its assumptions.
    :raises OutOfFamilyError: If the pair satisfies neither condition.
    """

    conditions = check_conditions(p, q)
    if not conditions.in_family:
        raise OutOfFamilyError({'error': 'PAIR_OUT_OF_FAMILY',
                                'pair': [p, q]})

    parity = verify_real_tower_parity(p, q)
    assumptions = [
        Assumption('A_n(F) = A_n^-(F)',
                   Verdict.VERIFIED if parity.trivial else Verdict.ASSUMED,
                   f'h2 of the real layers: {parity.h2_base}, '
                   f'{parity.h2_layer_one}'),
        Assumption('A_inf^-(F) has no finite submodule', Verdict.ASSUMED,
                   'cited for CM fields with trivial plus part')
    ]

    if conditions.q_mod_16 != 7:
        logging.info(f'({p}, {q}): q = {q} mod 16 is {conditions.q_mod_16}, '
                     f'structure undetermined.')
        return IwasawaReport((p, q), conditions.label, conditions.q_mod_16,
                             parity.trivial, 'not determined',
                             'undetermined', {}, tuple(assumptions))

    kida = __kida_input(p, q)
    lambda_value = kida_lambda(kida)
    top = max(lambda_value, config.TOWER_LEVELS)
    # both hypotheses are listed below as ASSUMED
    rank_sequence = {level: rank_from_lambda(lambda_value, level,
                                             mu_zero=kida.mu_base_zero,
                                             elementary=True)
                     for level in range(1, top + 1)}
    assumptions += [
        Assumption(f'lambda^-(Q(sqrt({q}), i)) = {CITED_LAMBDA_BASE}',
                   Verdict.CONSISTENT, 'cited, q = 7 mod 16'),
        Assumption(f'mu^-(Q(sqrt({q}), i)) = 0', Verdict.ASSUMED),
        Assumption('A_inf(F) is an elementary Lambda-module',
                   Verdict.ASSUMED)
    ]
    logging.info(f'({p}, {q}): lambda^- = {lambda_value}.')
    return IwasawaReport((p, q), conditions.label, conditions.q_mod_16,
                         parity.trivial, lambda_value,
                         f'Z2^{lambda_value}', rank_sequence,
                         tuple(assumptions), kida)


def __kida_input(p: int, q: int) -> KidaInput:
    """
    Ramification of p in F_∞/K_∞ and F_∞⁺/K_∞⁺, read at a stable layer.
    """

    level = max(config.TOWER_LEVELS, 1)
    top = layer_splitting(p, q, level).splitting
    top_plus = layer_splitting(p, q, level, real=True).splitting
    base = split_prime(field_for((q,), level), p)
    base_plus = split_prime(field_for((q,), level, real=True), p)

    delta_base = int(field_for((q,), 0).contains_fourth_roots())
    delta_top = int(field_for((p, q), 0).contains_fourth_roots())
    return KidaInput(CITED_LAMBDA_BASE, delta_base, delta_top, 2,
                     (top.e // base.e,) * top.g,
                     (top_plus.e // base_plus.e,) * top_plus.g, True)

