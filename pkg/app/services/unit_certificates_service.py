import logging
from fractions import Fraction
from typing import Optional

from sympy import integer_nthroot, multiplicity, primefactors
from sympy.ntheory.factor_ import core

from app.models.certificate import A5Verdict, DecompositionCertificate
from app.models.multiquadratic import MQElement, MQField
from app.models.quadratic import QuadUnit
from app.services.conditions_service import check_conditions, legendre
from app.services.quadratic_fields_service import fundamental_unit
from app.utilities.exceptions import LemmaViolationError, OutOfFamilyError


def check_lemma_a5(unit: QuadUnit) -> A5Verdict:
    """
    Test that 2(x+1), 2(x−1), 2d(x+1) and 2d(x−1) are not rational squares.

    This function attaches to every quantity the squarefree part of its
    numerator times denominator; the quantity is a square exactly when that
    witness is 1.

    :param unit: A quadratic unit of norm +1.
    :returns: The four quantities with their witnesses.
    :raises ValueError: If the unit has norm −1.
    """

    if unit.norm != 1:
        raise ValueError({'error': 'LEMMA_INAPPLICABLE', 'd': unit.d,
                          'norm': unit.norm})

    x, d = unit.x, unit.d
    quantities = (('2(x+1)', 2 * (x + 1)), ('2(x-1)', 2 * (x - 1)),
                  ('2d(x+1)', 2 * d * (x + 1)), ('2d(x-1)', 2 * d * (x - 1)))
    return A5Verdict(unit, tuple(
            (label, value, int(core(value.numerator * value.denominator)))
            for label, value in quantities))


def classify_decomposition(
        unit: QuadUnit, primes: tuple[int, int]) -> DecompositionCertificate:
    """
    Find the factorization system satisfied by a norm +1 unit.

    This function writes X + c = u·s² and X − c = v·t², where X = x and
    c = 1 for integral units and X = 2x, c = 2 when d ≡ 1 (mod 4). The
    cofactors u, v are the products of the primes of {2, p, q} dividing
    X ± c to an odd power; what remains must be a perfect square. The
    certificate root s√u + t√v (divided by √2 when u and v are even, and
    by 2 at half-integer scale) is squared back exactly, and the Legendre
    eliminations of the factorization are recomputed.

    :param unit: A quadratic unit of norm +1 whose radicand factors over
                 {2, p, q}.
    :param primes: The pair (p, q).
    :returns: The certificate.
    :raises ValueError: If the unit has norm −1 or its radicand involves
                        other primes.
    :raises LemmaViolationError: If no system matches or the certificate
                                 fails its exact check.
    """

    if unit.norm != 1:
        raise ValueError({'error': 'LEMMA_INAPPLICABLE', 'd': unit.d,
                          'norm': unit.norm})
    allowed = (2,) + tuple(primes)
    if not set(primefactors(unit.d)) <= set(allowed):
        raise ValueError({'error': 'RADICAND_NOT_OVER_PRIMES', 'd': unit.d,
                          'primes': list(allowed)})

    scale = 2 if unit.d % 4 == 1 else 1
    scaled_x = int(unit.x * scale)
    plus, minus = scaled_x + scale, scaled_x - scale
    u, s = __square_cofactor(plus, allowed)
    v, t = __square_cofactor(minus, allowed)
    if s is None or t is None:
        raise LemmaViolationError({'error': 'NO_SYSTEM_MATCHES',
                                   'd': unit.d, 'x': str(unit.x),
                                   'primes': list(allowed)})
    if plus * minus != scale * scale * (unit.x * unit.x - 1):
        raise LemmaViolationError({'error': 'INCONSISTENT_FACTORIZATION',
                                   'd': unit.d})

    halved = u % 2 == 0 and v % 2 == 0
    first, second = (u // 2, v // 2) if halved else (u, v)
    multiplier = 2 * scale // (2 if halved else 1)
    c1, c2 = Fraction(s), Fraction(t)
    if multiplier == 4:
        c1, c2, multiplier = c1 / 2, c2 / 2, 1

    root_field = MQField.from_radicands(
            *[radicand for radicand in (first, second) if radicand > 1])
    root = (MQElement.radical(root_field, first, c1)
            + MQElement.radical(root_field, second, c2))
    if root * root != unit.element(root_field) * multiplier:
        raise LemmaViolationError({'error': 'CERTIFICATE_DOES_NOT_SQUARE',
                                   'd': unit.d, 'root': str(root)})

    relation = first * c1 * c1 - second * c2 * c2
    if relation != multiplier:
        raise LemmaViolationError({'error': 'PELL_RELATION_FAILED',
                                   'd': unit.d, 'relation': str(relation)})

    checks = __legendre_eliminations(u, v, 2 * scale)
    return DecompositionCertificate(unit, scale, u, v, s, t,
                                    (first, second), (c1, c2), multiplier,
                                    relation, checks, root)


def lemma_radicands(p: int, q: int) -> tuple[int, ...]:
    """
    List the radicands whose units the decomposition lemmas describe.

    :param p: A prime ≡ 3 or 5 (mod 8).
    :param q: A prime ≡ 7 (mod 8).
    :returns: ε_{2pq}, ε_{pq}, ε_{2q}, ε_q radicands, plus ε_p and ε_{2p}
              when p ≡ 3 (mod 8).
    """

    if p % 8 == 5:
        return 2 * p * q, p * q, 2 * q, q
    return p * q, 2 * p * q, q, 2 * q, p, 2 * p


def expected_branch(p: int, q: int, d: int) -> tuple[int, int]:
    """
    Return the cofactors (u, v) the decomposition lemmas assert for ε_d.

    :param p: A prime ≡ 3 or 5 (mod 8).
    :param q: A prime ≡ 7 (mod 8).
    :param d: One of :func:`lemma_radicands`.
    :returns: The expected pair (u, v).
    :raises ValueError: If d is not covered by the lemmas.
    """

    if p % 8 == 5:
        branches = {2 * p * q: (p, 2 * q), p * q: (2 * p, 2 * q),
                    2 * q: (1, 2 * q), q: (1, q)}
    else:
        branches = {p * q: (p, q), 2 * p * q: (p, 2 * q), q: (1, q),
                    2 * q: (1, 2 * q), p: (p, 1), 2 * p: (2 * p, 1)}
    try:
        return branches[d]
    except KeyError:
        raise ValueError({'error': 'RADICAND_NOT_COVERED', 'd': d})


def verify_lemma_families(p: int, q: int) -> list[DecompositionCertificate]:
    """
    Certify every unit described by the decomposition lemmas for (p, q).

    :param p: The first prime of a condition (1) pair.
    :param q: The second prime of a condition (1) pair.
    :returns: One certificate per unit, in the lemma order.
    :raises OutOfFamilyError: If (p, q) does not satisfy condition (1).
    :raises LemmaViolationError: If a unit has norm −1 or follows a branch
                                 other than the asserted one.
    """

    conditions = check_conditions(p, q)
    if not conditions.cond1:
        raise OutOfFamilyError({'error': 'CONDITIONS_NOT_SATISFIED',
                                'pair': [p, q],
                                'condition': conditions.label})

    certificates = []
    for d in lemma_radicands(p, q):
        unit = fundamental_unit(d)
        if unit.norm != 1:
            raise LemmaViolationError({'error': 'UNEXPECTED_NORM', 'd': d})
        certificate = classify_decomposition(unit, (p, q))
        expected = expected_branch(p, q, d)
        if (certificate.u, certificate.v) != expected:
            raise LemmaViolationError({
                'error': 'UNEXPECTED_BRANCH', 'd': d,
                'expected': list(expected),
                'actual': [certificate.u, certificate.v]})
        certificates.append(certificate)

    logging.info(f'Certified {len(certificates)} units for ({p}, {q}).')
    return certificates


def __square_cofactor(value: int,
                      primes: tuple[int, ...]) -> tuple[int, Optional[int]]:
    cofactor = 1
    for prime in primes:
        if multiplicity(prime, value) % 2:
            cofactor *= prime
    root, exact = integer_nthroot(value // cofactor, 2)
    return cofactor, int(root) if exact else None


def __legendre_eliminations(
        u: int, v: int, gap: int) -> tuple[tuple[str, bool], ...]:
    """
    Recompute the symbol conditions forced by u·s² − v·t² = gap.

    For an odd prime ℓ dividing v, u·s² ≡ gap (mod ℓ) forces
    (gap·u/ℓ) = 1; for ℓ dividing u, (−gap·v/ℓ) = 1.
    """

    checks = []
    for prime in primefactors(v):
        if prime != 2:
            checks.append((f'({gap * u}/{prime}) = 1',
                           legendre(gap * u, prime) == 1))
    for prime in primefactors(u):
        if prime != 2:
            checks.append((f'({-gap * v}/{prime}) = 1',
                           legendre(-gap * v, prime) == 1))
    return tuple(checks)
