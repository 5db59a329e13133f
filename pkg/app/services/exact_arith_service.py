import logging
from fractions import Fraction
from typing import Optional

from mpmath import libmp
from mpmath.ctx_iv import MPIntervalContext
from sympy import integer_nthroot

from app import config
from app.models.multiquadratic import MQElement, MQField, RealInterval, \
    SignPattern

MIN_PRECISION = 64


def mq_mul(first: MQElement, second: MQElement) -> MQElement:
    """
    Multiply two elements of the same multiquadratic field.

    :param first: The left factor.
    :param second: The right factor.
    :returns: The exact product.
    :raises ValueError: If the elements live in different fields.
    """

    return first * second


def apply_automorphism(element: MQElement,
                       pattern: SignPattern) -> MQElement:
    """
    Apply the automorphism √dᵢ ↦ sᵢ√dᵢ to an element.

    This function flips the sign of every coordinate whose basis radical
    involves an odd number of negated radicands.

    :param element: The element to transform.
    :param pattern: One sign per radicand of the element's field.
    :returns: The image of the element.
    :raises ValueError: If the pattern does not match the field.
    """

    __check_pattern(element.field, pattern)
    return MQElement(element.field, tuple(
            value * pattern.sign_of(mask)
            for mask, value in enumerate(element.coords)))


def embed(element: MQElement, pattern: SignPattern,
          precision: int) -> RealInterval:
    """
    Enclose the real image of an element under one embedding.

    This function evaluates the element with interval arithmetic at the
    given working precision, sending each √dᵢ to sᵢ√dᵢ. The returned
    interval always contains the exact value.

    :param element: The element to evaluate.
    :param pattern: The embedding, one sign per radicand.
    :param precision: The working precision in bits, at least 64.
    :returns: A rigorous enclosure with rational endpoints.
    :raises ValueError: If the precision is below 64 bits or the pattern
                        does not match the field.
    """

    if precision < MIN_PRECISION:
        raise ValueError({'error': 'PRECISION_TOO_LOW',
                          'precision': precision})
    __check_pattern(element.field, pattern)

    if element.is_zero():
        return RealInterval(Fraction(0), Fraction(0))

    context = MPIntervalContext()
    context.prec = precision
    total = context.mpf(0)
    for mask, value in enumerate(element.coords):
        if not value:
            continue
        radical = element.field.radicals[mask]
        term = context.mpf(value.numerator) / context.mpf(value.denominator)
        if radical != 1:
            term = term * context.sqrt(context.mpf(radical))
        total += pattern.sign_of(mask) * term

    lower, upper = total._mpi_
    return RealInterval(Fraction(*libmp.to_rational(lower)),
                        Fraction(*libmp.to_rational(upper)))


def sign_at(element: MQElement, pattern: SignPattern) -> int:
    """
    Decide the sign of an element under one embedding.

    This function doubles the working precision, starting from
    EMBED_START_PRECISION, until the enclosure excludes zero.

    :param element: The element to inspect.
    :param pattern: The embedding.
    :returns: -1, 0 or 1.
    :raises ArithmeticError: If EMBED_MAX_PRECISION is exhausted.
    """

    if element.is_zero():
        return 0

    precision = config.EMBED_START_PRECISION
    while precision <= config.EMBED_MAX_PRECISION:
        interval = embed(element, pattern, precision)
        if interval.is_positive():
            return 1
        if interval.is_negative():
            return -1
        logging.debug(f'Sign undecided at {precision} bits, escalating.')
        precision *= 2

    raise ArithmeticError({'error': 'PRECISION_EXHAUSTED',
                           'precision': config.EMBED_MAX_PRECISION})


def signature(element: MQElement) -> tuple[int, ...]:
    """
    Compute the sign bits of an element under all embeddings.

    :param element: A nonzero element.
    :returns: One bit per embedding in the order of
              :meth:`MQField.patterns`, 1 where the image is negative.
    """

    return tuple(int(sign_at(element, pattern) < 0)
                 for pattern in element.field.patterns())


def is_totally_positive(element: MQElement) -> bool:
    return not element.is_zero() and not any(signature(element))


def field_norm(element: MQElement) -> Fraction:
    """
    Compute the absolute norm of an element.

    This function multiplies the element by all of its conjugates; the
    result is an exact rational.

    :param element: The element.
    :returns: The norm down to Q.
    """

    product = MQElement.one(element.field)
    for pattern in element.field.patterns():
        product = product * apply_automorphism(element, pattern)
    return product.coords[0]


def rational_sqrt(value: Fraction) -> Optional[Fraction]:
    """
    Take the square root of a rational number when it is rational.

    :param value: A rational number.
    :returns: The nonnegative square root, or None.
    """

    if value < 0:
        return None
    numerator, numerator_exact = integer_nthroot(value.numerator, 2)
    denominator, denominator_exact = integer_nthroot(value.denominator, 2)
    if numerator_exact and denominator_exact:
        return Fraction(int(numerator), int(denominator))
    return None


def sqrt_in_field(element: MQElement) -> Optional[MQElement]:
    """
    Extract a square root of an element inside its own field.

    This function first rejects elements that are negative under some
    embedding, then descends through the tower Q ⊂ Q(√d₁) ⊂ ... exactly.
    A returned root is always squared back and compared exactly, and is
    normalized so that its first nonzero coordinate is positive.

    :param element: A nonzero element.
    :returns: The normalized square root, or None if the element is not a
              square in its field.
    :raises ValueError: If the element is zero.
    """

    if element.is_zero():
        raise ValueError({'error': 'ZERO_HAS_NO_CANONICAL_ROOT'})
    if any(signature(element)):
        return None
    return exact_sqrt(element)


def exact_sqrt(element: MQElement) -> Optional[MQElement]:
    """
    Extract a square root by exact descent, without a positivity filter.

    The root is found by splitting off the top radicand and solving for
    the square root in the subfield, recursively down to Q, where
    :func:`rational_sqrt` decides. No rational is reconstructed from a
    numeric approximation, so no denominator bound or precision schedule
    is involved.

    :param element: A nonzero element.
    :returns: The normalized square root, or None.
    :raises ArithmeticError: If a candidate fails the exact squaring check.
    """

    root = __descend(element)
    if root is None:
        return None
    if root * root != element:
        raise ArithmeticError({'error': 'SQUARE_ROOT_CHECK_FAILED',
                               'element': str(element)})
    leading = next(value for value in root.coords if value)
    return -root if leading < 0 else root


def __descend(element: MQElement) -> Optional[MQElement]:
    """
    Square root of α + β√d from square roots in the subfield.

    If u² = (α + c)/2 with c² = α² − dβ², then u + (β/2u)√d squares to
    α + β√d.
    """

    mq_field = element.field
    if element.is_zero():
        return element
    if mq_field.rank == 0:
        root = rational_sqrt(element.coords[0])
        return None if root is None else MQElement.rational(mq_field, root)

    top = mq_field.radicands[-1]
    alpha, beta = element.split_top()
    zero = MQElement.zero(alpha.field)

    if beta.is_zero():
        root = __descend(alpha)
        if root is not None:
            return MQElement.join_top(mq_field, root, zero)
        root = __descend(alpha * Fraction(1, top))
        if root is not None:
            return MQElement.join_top(mq_field, zero, root)
        return None

    norm_root = __descend(alpha * alpha - beta * beta * top)
    if norm_root is None:
        return None
    for half in ((alpha + norm_root) * Fraction(1, 2),
                 (alpha - norm_root) * Fraction(1, 2)):
        if half.is_zero():
            continue
        lower = __descend(half)
        if lower is None:
            continue
        upper = beta / (lower * 2)
        return MQElement.join_top(mq_field, lower, upper)
    return None


def __check_pattern(mq_field: MQField, pattern: SignPattern) -> None:
    if len(pattern.signs) != mq_field.rank:
        raise ValueError({'error': 'PATTERN_MISMATCH',
                          'radicands': list(mq_field.radicands),
                          'signs': list(pattern.signs)})
