import logging
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from sympy import divisors
from sympy.ntheory.factor_ import core

from app.models.quadratic import BinaryQuadraticForm, FormClassGroup, \
    QuadUnit


@lru_cache(maxsize=None)
def fundamental_unit(d: int) -> QuadUnit:
    """
    Compute the fundamental unit of the real quadratic field Q(√d).

    This function runs the PQa continued-fraction algorithm on √d when
    d ≢ 1 (mod 4), and on (1 + √d)/2 otherwise. The first return of Q to
    its starting value closes the period; the convergent before it is the
    fundamental unit and the parity of the period gives its norm.

    :param d: A squarefree integer greater than 1.
    :returns: The smallest unit greater than 1 of the ring of integers.
    :raises ValueError: If d is not squarefree or not greater than 1.
    """

    __check_radicand(d)

    root = isqrt(d)
    half_integral = d % 4 == 1
    p, q = (1, 2) if half_integral else (0, 1)
    start = q

    previous_a, current_a = 0, 1
    previous_b, current_b = 1, 0
    step = 0
    while True:
        partial = (p + root) // q
        previous_a, current_a = current_a, partial * current_a + previous_a
        previous_b, current_b = current_b, partial * current_b + previous_b
        p = partial * q - p
        q = (d - p * p) // q
        step += 1
        if q == start:
            break

    norm = -1 if step % 2 else 1
    if half_integral:
        x = Fraction(2 * current_a - current_b, 2)
        y = Fraction(current_b, 2)
    else:
        x, y = Fraction(current_a), Fraction(current_b)

    logging.debug(f'Fundamental unit of Q(sqrt({d})) found after {step} '
                  f'steps, norm {norm}.')
    return QuadUnit(d, x, y, norm)


@lru_cache(maxsize=None)
def class_group(discriminant: int) -> FormClassGroup:
    """
    Compute the form class group of a discriminant.

    This function enumerates reduced forms. For a negative discriminant
    every reduced primitive positive definite form is its own class. For a
    positive discriminant the reduced forms split into rho-cycles, one per
    narrow class; the wide class number is halved when the fundamental
    unit has norm +1, which is the case exactly when no form of the
    principal cycle has leading coefficient −1.

    :param discriminant: An integer ≡ 0 or 1 (mod 4), not a square.
    :returns: The class group data.
    :raises ValueError: If the discriminant is invalid.
    """

    if discriminant % 4 not in (0, 1) or (
            discriminant >= 0 and isqrt(discriminant) ** 2 == discriminant):
        raise ValueError({'error': 'INVALID_DISCRIMINANT',
                          'discriminant': discriminant})

    if discriminant < 0:
        forms = __definite_reduced_forms(discriminant)
        h = len(forms)
        return FormClassGroup(discriminant, tuple(forms), h, h, h & -h,
                              False)

    cycles = __indefinite_cycles(discriminant)
    principal = __principal_form(discriminant)
    principal_cycle = next(cycle for cycle in cycles if principal in cycle)
    norm_negative = any(form.a == -1 for form in principal_cycle)

    h_narrow = len(cycles)
    h = h_narrow if norm_negative else h_narrow // 2
    logging.debug(f'Discriminant {discriminant}: h+={h_narrow}, h={h}.')
    return FormClassGroup(discriminant,
                          tuple(cycle[0] for cycle in cycles),
                          h_narrow, h, h & -h, norm_negative)


def fundamental_discriminant(d: int) -> int:
    """
    Return the discriminant of Q(√d): d if d ≡ 1 (mod 4), else 4d.

    :param d: A squarefree integer other than 0 and 1.
    :returns: The fundamental discriminant.
    :raises ValueError: If d is 0, 1 or not squarefree.
    """

    if d in (0, 1) or core(abs(d)) != abs(d):
        raise ValueError({'error': 'NOT_SQUAREFREE', 'd': d})
    return d if d % 4 == 1 else 4 * d


def h2_of(d: int) -> int:
    """
    Return the 2-class number of the quadratic field Q(√d).

    :param d: A squarefree integer other than 0 and 1.
    :returns: The largest power of 2 dividing the class number.
    """

    return class_group(fundamental_discriminant(d)).h2


def __check_radicand(d: int) -> None:
    if d <= 1 or core(d) != d:
        raise ValueError({'error': 'NOT_SQUAREFREE', 'd': d})


def __definite_reduced_forms(discriminant: int) -> list[BinaryQuadraticForm]:
    forms = []
    for a in range(1, isqrt(-discriminant // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - discriminant) % (4 * a):
                continue
            form = BinaryQuadraticForm(a, b, (b * b - discriminant) // (4 * a))
            if form.is_reduced() and form.is_primitive():
                forms.append(form)
    return forms


def __indefinite_cycles(
        discriminant: int) -> list[list[BinaryQuadraticForm]]:
    root = isqrt(discriminant)
    reduced = set()
    for b in range(1, root + 1):
        if (b - discriminant) % 2:
            continue
        product = (discriminant - b * b) // 4
        for divisor in divisors(product):
            for a in (divisor, -divisor):
                form = BinaryQuadraticForm(a, b, -product // a)
                if form.is_reduced() and form.is_primitive():
                    reduced.add(form)

    cycles = []
    remaining = set(reduced)
    while remaining:
        start = min(remaining, key=BinaryQuadraticForm.to_list)
        cycle = [start]
        form = start.rho()
        while form != start:
            if form not in remaining:
                raise ArithmeticError({'error': 'BROKEN_REDUCTION_CYCLE',
                                       'discriminant': discriminant,
                                       'form': form.to_list()})
            cycle.append(form)
            form = form.rho()
        remaining.difference_update(cycle)
        cycles.append(cycle)
    return cycles


def __principal_form(discriminant: int) -> BinaryQuadraticForm:
    root = isqrt(discriminant)
    b = root if (root - discriminant) % 2 == 0 else root - 1
    return BinaryQuadraticForm(1, b, (b * b - discriminant) // 4)
