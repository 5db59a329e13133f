import json
import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any, Callable, Optional, Sequence

from sympy import primerange

from app import config
from app.models.certificate import DecompositionCertificate
from app.models.report import SurveyResult, Verdict, VerificationReport
from app.services.abelian_splitting_service import field_for, \
    layer_splitting, split_prime, unramified_over_real_subfield
from app.services.conditions_service import check_conditions
from app.services.exact_arith_service import field_norm
from app.services.iwasawa_service import predict_structure
from app.services.quadratic_fields_service import fundamental_unit, h2_of
from app.services.unit_certificates_service import check_lemma_a5, \
    lemma_radicands, verify_lemma_families
from app.services.wada_fsu_service import biquadratic_fsu, \
    exponent_vector, is_saturated, norm_table_checks, \
    published_biquadratic_fsus, published_lattice_check, same_unit_group, \
    square_exponent_patterns, triquadratic_fsu
from app.utilities.exceptions import error_payload

CONDITIONS = ('1', '2', 'both')
FORMATS = ('text', 'json', 'markdown')


def run_verification(p: int, q: int) -> VerificationReport:
    """
    Verify every computable claim about the prime pair (p, q).

    This function runs the unit certificates, the class numbers and the
    unit groups for condition (1) pairs, and the splitting and Iwasawa
    checks for both condition classes. A failing check becomes a failed
    claim carrying its error payload; the remaining checks still run.

    :param p: The first prime.
    :param q: The second prime.
    :returns: The report; empty with condition ``out of family`` when the
              pair satisfies neither condition.
    :raises ValueError: If p or q is not an odd prime, or p = q.
    """

    conditions = check_conditions(p, q)
    report = VerificationReport((p, q), conditions.label)
    if not conditions.in_family:
        logging.info(f'({p}, {q}) is out of family.')
        return report

    if conditions.cond1:
        certificates = __guarded(report, 'unit_certificates',
                                 __check_certificates, p, q) or ()
        __guarded(report, 'h2_table', __check_h2_table, p, q)
        __guarded(report, 'biquadratic_fsus',
                  partial(__check_biquadratic, certificates=certificates),
                  p, q)
        __guarded(report, 'triquadratic_fsu', __check_triquadratic, p, q)
    __guarded(report, 'splitting', __check_splitting, p, q)
    __guarded(report, 'iwasawa', __check_iwasawa, p, q)

    logging.info(f'({p}, {q}): {len(report.verdicts)} claims, '
                 f'{len(report.failures())} failed.')
    return report


def qualifying_pairs(bound: int, condition: str = 'both') -> list[tuple]:
    """
    Enumerate the pairs (p, q) with p, q ≤ bound in the chosen classes.

    :param bound: The largest prime allowed.
    :param condition: ``1``, ``2`` or ``both``.
    :returns: The pairs in increasing (p, q) order.
    """

    if condition not in CONDITIONS:
        raise ValueError({'error': 'INVALID_CONDITION',
                          'condition': condition})
    primes = list(primerange(3, bound + 1))
    pairs = []
    for p in primes:
        for q in primes:
            if p == q:
                continue
            conditions = check_conditions(p, q)
            if conditions.cond1 and condition in ('1', 'both') or \
                    conditions.cond2 and condition in ('2', 'both'):
                pairs.append((p, q))
    return pairs


def survey(bound: int, condition: str = 'both',
           jobs: Optional[int] = None) -> SurveyResult:
    """
    Verify all qualifying pairs up to a bound.

    :param bound: The largest prime allowed, at least 10.
    :param condition: ``1``, ``2`` or ``both``.
    :param jobs: Number of worker processes, SURVEY_JOBS by default.
    :returns: The reports ordered by (p, q).
    :raises ValueError: If the bound is below 10 or the condition is
                        unknown.
    """

    if bound < 10:
        raise ValueError({'error': 'BOUND_TOO_SMALL', 'bound': bound})
    pairs = qualifying_pairs(bound, condition)
    workers = jobs or config.SURVEY_JOBS
    logging.info(f'Surveying {len(pairs)} pairs up to {bound} with '
                 f'{workers} workers.')

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            reports = list(executor.map(run_verification,
                                        [p for p, _ in pairs],
                                        [q for _, q in pairs]))
    else:
        reports = [run_verification(p, q) for p, q in pairs]
    reports.sort(key=lambda report: report.pair)
    return SurveyResult(bound, condition, tuple(reports))


def format_report(document: dict, output_format: str) -> str:
    """
    Render a report or survey dictionary.

    :param document: ``to_dict()`` of a report or a survey.
    :param output_format: ``text``, ``json`` or ``markdown``.
    :returns: The rendered document, identical for identical input.
    :raises ValueError: If the format is unknown.
    """

    if output_format == 'json':
        return json.dumps(document, indent=2, sort_keys=True,
                          ensure_ascii=False) + '\n'
    if output_format not in FORMATS:
        raise ValueError({'error': 'INVALID_FORMAT', 'format': output_format})

    reports = document.get('reports', [document])
    markdown = output_format == 'markdown'
    lines = []
    if 'reports' in document:
        title = (f'Survey up to {document["bound"]}, condition '
                 f'{document["condition"]}: {document["pairs"]} pairs, '
                 f'{document["failures"]} failed claims')
        lines += [f'# {title}' if markdown else title, '']
    if markdown:
        lines += ['| pair | condition | q(K) | lambda | structure | '
                  'claims | failed |',
                  '|---|---|---|---|---|---|---|']
    for report in reports:
        verdicts = report['verdicts']
        failed = [claim['name'] for claim in verdicts if not claim['passed']]
        cells = [f'({report["pair"][0]}, {report["pair"][1]})',
                 report['condition'],
                 str(report['fsu'].get('q_index', '-')),
                 str(report['iwasawa'].get('lambda', '-')),
                 report['iwasawa'].get('structure', '-'),
                 str(len(verdicts)), ', '.join(failed) or '-']
        lines.append('| ' + ' | '.join(cells) + ' |' if markdown
                     else '  '.join(cells))
    if 'timestamp' in document:
        lines += ['', f'generated {document["timestamp"]}']
    return '\n'.join(lines) + '\n'


def __guarded(report: VerificationReport, name: str,
              check: Callable[..., Any], p: int, q: int) -> Any:
    try:
        return check(report, p, q)
    except (ArithmeticError, ValueError) as exception:
        logging.error(f'({p}, {q}) - {name} failed: {exception}')
        report.add(name, Verdict.VERIFIED, False, **error_payload(exception))
        return None


def __check_certificates(report: VerificationReport, p: int,
                         q: int) -> list[DecompositionCertificate]:
    certificates = verify_lemma_families(p, q)
    report.certificates = [certificate.to_dict()
                           for certificate in certificates]
    report.add('unit_decompositions', Verdict.VERIFIED, True,
               units=[certificate.d for certificate in certificates])

    eliminations = [(certificate.d, label) for certificate in certificates
                    for label, holds in certificate.checks if not holds]
    report.add('legendre_eliminations', Verdict.VERIFIED, not eliminations,
               failed=eliminations)

    squares = [d for d in lemma_radicands(p, q)
               if not check_lemma_a5(fundamental_unit(d)).holds]
    report.add('units_not_squares', Verdict.VERIFIED, not squares,
               failed=squares)
    return certificates


def __check_h2_table(report: VerificationReport, p: int, q: int) -> None:
    expected = __published_h2s(p, q)
    computed = {radicand: h2_of(radicand) for radicand in expected}
    report.h2_table = {str(radicand): h2
                       for radicand, h2 in computed.items()}
    mismatches = [radicand for radicand in expected
                  if computed[radicand] != expected[radicand]]
    report.add('h2_table', Verdict.VERIFIED, not mismatches,
               mismatches=mismatches)


def __check_biquadratic(
        report: VerificationReport, p: int, q: int,
        certificates: Sequence[DecompositionCertificate] = ()) -> None:
    indices = {}
    mismatches = []
    for radicands, generators in published_biquadratic_fsus(p, q):
        result = biquadratic_fsu(*radicands, certificates=certificates)
        published = [exponent_vector(result.field, exponents)
                     for exponents in generators]
        indices[str(list(radicands))] = result.q_index
        if not same_unit_group(result.exponent_vectors(), published):
            mismatches.append(list(radicands))
    report.add('biquadratic_fsus', Verdict.VERIFIED, not mismatches,
               q_indices=indices, mismatches=mismatches)


def __check_triquadratic(report: VerificationReport, p: int, q: int) -> None:
    result = triquadratic_fsu(p, q)
    report.fsu = {
        'generators': [generator.label for generator in result.generators],
        'q_index': result.q_index,
        'h2': str(result.h2),
        'square_patterns': [
            {'exponents': list(exponents), 'sign': sign}
            for exponents, sign in square_exponent_patterns(p, q)]
    }

    expected_index = 2 ** 6 if p % 8 == 5 else 2 ** 8
    report.add('unit_index', Verdict.VERIFIED,
               result.q_index == expected_index, expected=expected_index,
               actual=result.q_index)
    report.add('class_number_odd', Verdict.VERIFIED, result.h2 == 1,
               h2=str(result.h2))
    non_units = [generator.label for generator in result.generators
                 if abs(field_norm(generator.element)) != 1]
    report.add('generators_are_units', Verdict.VERIFIED, not non_units,
               failed=non_units)
    report.add('fsu_saturated', Verdict.VERIFIED, is_saturated(result))

    agrees, missing = published_lattice_check(p, q, result)
    report.add('published_fsu', Verdict.VERIFIED, agrees, missing=missing)

    failed_norms = [check.to_dict() for check in norm_table_checks(p, q)
                    if not check.matches]
    report.add('norm_tables', Verdict.VERIFIED, not failed_norms,
               failed=failed_norms)


def __check_splitting(report: VerificationReport, p: int, q: int) -> None:
    levels = range(1, config.TOWER_LEVELS + 1)
    cyclotomic = [(split_prime(field_for((), level), p),
                   split_prime(field_for((), level, real=True), p))
                  for level in levels]
    report.add('cyclotomic_splitting', Verdict.VERIFIED, all(
            full.g == 2 and full.e == 1 and real.g == 1
            for full, real in cyclotomic))

    top = layer_splitting(p, q, config.TOWER_LEVELS)
    top_plus = layer_splitting(p, q, config.TOWER_LEVELS, real=True)
    report.splitting = {'F_n': top.to_dict(), 'F_n+': top_plus.to_dict()}
    report.add('layer_splitting', Verdict.VERIFIED,
               (top.splitting.g, top.splitting.e) == (4, 2)
               and (top_plus.splitting.g, top_plus.splitting.e) == (2, 2),
               g=top.splitting.g, g_plus=top_plus.splitting.g)

    ramified = [level for level in levels
                if not unramified_over_real_subfield(p, q, level)]
    report.add('cm_extension_unramified', Verdict.VERIFIED, not ramified,
               ramified_levels=ramified)


def __check_iwasawa(report: VerificationReport, p: int, q: int) -> None:
    prediction = predict_structure(p, q)
    report.iwasawa = prediction.to_dict()
    assumed = any(assumption.verdict is Verdict.ASSUMED
                  for assumption in prediction.assumptions)
    report.add('no_finite_part',
               Verdict.ASSUMED if assumed else Verdict.VERIFIED,
               prediction.no_finite_part)
    if prediction.kida is not None:
        report.add('lambda_minus', Verdict.VERIFIED,
                   prediction.lambda_minus == 3,
                   actual=prediction.lambda_minus)
        report.add('rank_from_level_3', Verdict.VERIFIED, all(
                claim.exact and claim.value == 3
                for level, claim in prediction.rank_sequence.items()
                if level >= 3))
    for assumption in prediction.assumptions:
        if assumption.verdict is not Verdict.VERIFIED:
            report.add(assumption.name, assumption.verdict, True,
                       detail=assumption.detail)


def __published_h2s(p: int, q: int) -> dict[int, int]:
    if p % 8 == 5:
        return {2: 1, p: 1, q: 1, 2 * q: 1, 2 * p: 2, p * q: 2,
                2 * p * q: 2}
    return {2: 1, p: 1, q: 1, 2 * q: 1, 2 * p: 1, p * q: 1, 2 * p * q: 2}
