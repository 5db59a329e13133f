import logging
from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm
from typing import Iterable, Optional, Sequence

from sympy import Matrix, Rational

from app.models.certificate import DecompositionCertificate
from app.models.multiquadratic import MQElement, MQField, SignPattern, \
    squarefree_product
from app.models.unit_group import FsuResult, NormCheck, TrackedUnit
from app.services.conditions_service import check_conditions
from app.services.exact_arith_service import apply_automorphism, \
    exact_sqrt, signature, sqrt_in_field
from app.services.quadratic_fields_service import fundamental_unit, h2_of
from app.utilities.exceptions import OutOfFamilyError

Exponents = dict[int, Fraction]

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def biquadratic_fsu(
        d1: int, d2: int,
        certificates: Sequence[DecompositionCertificate] = ()) -> FsuResult:
    """
    Compute a fundamental system of units of Q(√d1, √d2).

    This function starts from the fundamental units of the three quadratic
    subfields and adjoins square roots until no {0,1}-product of the
    generators, with either sign, is a square. Certificates of the form
    √ε_d = c₁√A + c₂√B whose root lives in the field are checked to lie in
    the resulting unit group.

    :param d1: A squarefree radicand.
    :param d2: A squarefree radicand independent of d1.
    :param certificates: Optional square-root certificates to cross-check.
    :returns: The FSU, the unit index and the 2-class number.
    :raises ValueError: If the radicands do not span a biquadratic field.
    :raises ArithmeticError: If a certified root is missing from the unit
                             group.
    """

    mq_field = MQField.from_radicands(d1, d2)
    if mq_field.rank != 2:
        raise ValueError({'error': 'NOT_BIQUADRATIC', 'radicands': [d1, d2]})

    result = multiquadratic_fsu(mq_field)
    vectors = result.exponent_vectors()
    for certificate in certificates:
        if certificate.multiplier != 1 or not mq_field.contains(
                certificate.root.field):
            continue
        target = exponent_vector(mq_field, {certificate.d: HALF})
        if not lattice_contains(vectors, target):
            raise ArithmeticError({'error': 'CERTIFICATE_NOT_IN_UNIT_GROUP',
                                   'd': certificate.d,
                                   'radicands': [d1, d2]})
    return result


def triquadratic_fsu(p: int, q: int) -> FsuResult:
    """
    Compute a fundamental system of units of K = Q(√2, √p, √q).

    :param p: The first prime of a condition (1) pair.
    :param q: The second prime of a condition (1) pair.
    :returns: The FSU of K with q(K) and h₂(K).
    :raises OutOfFamilyError: If (p, q) does not satisfy condition (1).
    """

    conditions = check_conditions(p, q)
    if not conditions.cond1:
        raise OutOfFamilyError({'error': 'CONDITIONS_NOT_SATISFIED',
                                'pair': [p, q],
                                'condition': conditions.label})
    return multiquadratic_fsu(MQField((2, p, q)))


@lru_cache(maxsize=None)
def multiquadratic_fsu(mq_field: MQField) -> FsuResult:
    """
    Compute a fundamental system of units by Wada's descent.

    This function handles real fields of degree 2, 4 and 8. A degree 8
    field starts from the union of the FSUs of its three biquadratic
    subfields containing the first radicand, reduced to a basis; a degree
    4 field starts from its three quadratic units. Both are then
    saturated. The unit index is 1/|det| of the exponent matrix.

    :param mq_field: A real multiquadratic field.
    :returns: The FSU with unit index and class-number-formula 2-part.
    """

    if mq_field.rank == 0:
        raise ValueError({'error': 'NO_UNITS_OF_INFINITE_ORDER'})

    provenance: list[str] = []
    if mq_field.rank == 1:
        basis = [quadratic_unit(mq_field, mq_field.radicands[0])]
    elif mq_field.rank == 2:
        basis = [quadratic_unit(mq_field, radical)
                 for radical in mq_field.radicals[1:]]
        provenance.append('start: quadratic units')
    else:
        first, second, third = mq_field.radicands
        union: list[TrackedUnit] = []
        for other in (second, third, squarefree_product(second, third)):
            subfield = MQField.from_radicands(first, other)
            sub_result = multiquadratic_fsu(subfield)
            provenance.append(f'subfield {list(subfield.radicands)}: '
                              f'q={sub_result.q_index}')
            union += [__lift(mq_field, generator)
                      for generator in sub_result.generators]
        basis = __reduce_to_basis(union)
        provenance.append(f'start: basis of {len(union)} subfield units')

    basis, adjoined = __saturate(mq_field, basis)
    provenance += [f'adjoined {label}' for label in adjoined]

    q_index = __unit_index([unit.exponents for unit in basis])
    subfield_h2s = tuple(h2_of(radical) for radical in mq_field.radicals[1:])
    h2 = class_number_formula(mq_field, q_index, subfield_h2s)
    logging.info(f'FSU of {list(mq_field.radicands)}: q={q_index}, h2={h2}.')
    return FsuResult(mq_field, tuple(basis), q_index, subfield_h2s, h2,
                     tuple(provenance))


def norm_to_subfield(unit: MQElement, pattern: SignPattern) -> MQElement:
    """
    Compute the relative norm u^(1+σ) = u·σ(u).

    :param unit: An element of a multiquadratic field.
    :param pattern: The automorphism σ.
    :returns: The norm, which lies in the fixed field of σ.
    """

    return unit * apply_automorphism(unit, pattern)


def class_number_formula(mq_field: MQField, q_index: int,
                         subfield_h2s: Sequence[int]) -> Fraction:
    """
    Evaluate h₂(K) = q(K)·∏h₂(kᵢ) / 2^v for a real multiquadratic field.

    This function uses v = t(2^(t−1) − 1) for a field of degree 2^t, so
    1/4 for biquadratic and 1/2⁹ for triquadratic fields. A non-integral
    result means the unit index is inconsistent.

    :param mq_field: The field.
    :param q_index: The unit index.
    :param subfield_h2s: One 2-class number per quadratic subfield.
    :returns: The exact value of the formula.
    :raises ValueError: If the number of subfield values is wrong.
    """

    if len(subfield_h2s) != mq_field.degree - 1:
        raise ValueError({'error': 'WRONG_NUMBER_OF_SUBFIELDS',
                          'expected': mq_field.degree - 1,
                          'actual': len(subfield_h2s)})
    rank = mq_field.rank
    exponent = rank * (2 ** (rank - 1) - 1)
    product = reduce(lambda first, second: first * second, subfield_h2s, 1)
    return Fraction(q_index * product, 2 ** exponent)


def quadratic_unit(mq_field: MQField, radical: int) -> TrackedUnit:
    """The fundamental unit of Q(√radical) as a tracked unit of the field."""
    unit = fundamental_unit(radical)
    return TrackedUnit(unit.element(mq_field),
                       exponent_vector(mq_field, {radical: Fraction(1)}),
                       f'eps_{radical}')


def exponent_vector(mq_field: MQField,
                    exponents: Exponents) -> tuple[Fraction, ...]:
    """
    Write an exponent map as a vector indexed by the field's radicals.

    :param mq_field: The field.
    :param exponents: Map from radical r to the exponent of ε_r.
    :returns: One coordinate per radical other than 1, in basis order.
    :raises ValueError: If a radical does not belong to the field.
    """

    vector = [Fraction(0)] * (mq_field.degree - 1)
    for radical, value in exponents.items():
        vector[mq_field.mask_of(radical) - 1] = Fraction(value)
    return tuple(vector)


def is_saturated(result: FsuResult) -> bool:
    """Whether no nontrivial ±{0,1}-product of the generators is a square."""
    return next(iter(__square_products(result.field, result.generators)),
                None) is None


def materialize_unit(mq_field: MQField, exponents: Exponents,
                     label: str) -> Optional[TrackedUnit]:
    """
    Build the unit with a given exponent vector by repeated square roots.

    This function raises the quadratic units to 2^k times the exponents,
    where 2^k is the largest denominator, then takes k square roots,
    trying both signs at every step.

    :param mq_field: The field.
    :param exponents: Map from radical r to the exponent of ε_r.
    :param label: The name of the unit.
    :returns: The unit, or None if it does not exist in the field.
    """

    depth = max(value.denominator for value in exponents.values())
    depth = depth.bit_length() - 1
    product = MQElement.one(mq_field)
    for radical, value in exponents.items():
        power = value * 2 ** depth
        product = product * fundamental_unit(radical).element(mq_field) \
            ** int(power)

    candidates = [product]
    for _ in range(depth):
        roots = []
        for candidate in candidates:
            for sign in (1, -1):
                root = sqrt_in_field(candidate * sign)
                if root is not None:
                    roots.append(root)
        candidates = roots
    if not candidates:
        return None
    return TrackedUnit(candidates[0], exponent_vector(mq_field, exponents),
                       label)


def lattice_contains(basis: Sequence[Sequence[Fraction]],
                     vector: Sequence[Fraction]) -> bool:
    """
    Test whether a vector is an integral combination of basis vectors.

    :param basis: Linearly independent rational row vectors spanning the
                  whole space.
    :param vector: The vector to test.
    :returns: True if the coordinates of ``vector`` are all integers.
    """

    matrix = __matrix(basis)
    solution = matrix.T.solve(__matrix([vector]).T)
    return all(entry.is_integer for entry in solution)


def same_unit_group(computed: Sequence[Sequence[Fraction]],
                    published: Sequence[Sequence[Fraction]]) -> bool:
    """
    Compare two full-rank exponent lattices for equality.

    :param computed: The computed exponent vectors.
    :param published: The published exponent vectors.
    :returns: True if both lattices coincide.
    """

    if len(computed) != len(published):
        return False
    if abs(__matrix(computed).det()) != abs(__matrix(published).det()):
        return False
    return all(lattice_contains(computed, vector) for vector in published)


def published_fsu(p: int, q: int) -> list[tuple[str, Exponents]]:
    """
    Return the published FSU of Q(√2, √p, √q) for a condition (1) pair.

    :param p: A prime ≡ 3 or 5 (mod 8).
    :param q: A prime ≡ 7 (mod 8).
    :returns: Pairs (label, exponents over the quadratic units).
    """

    if p % 8 == 5:
        return [
            ('eps_2', {2: Fraction(1)}),
            (f'eps_{p}', {p: Fraction(1)}),
            (f'sqrt(eps_{q})', {q: HALF}),
            (f'sqrt(eps_{2 * q})', {2 * q: HALF}),
            (f'sqrt(eps_{p * q})', {p * q: HALF}),
            (f'sqrt(eps_2*eps_{p}*eps_{2 * p})',
             {2: HALF, p: HALF, 2 * p: HALF}),
            (f'root4(eps_{2 * q}*eps_{p * q}*eps_{2 * p * q})',
             {2 * q: QUARTER, p * q: QUARTER, 2 * p * q: QUARTER})
        ]
    return [
        ('eps_2', {2: Fraction(1)}),
        (f'sqrt(eps_{q})', {q: HALF}),
        (f'sqrt(eps_{2 * q})', {2 * q: HALF}),
        (f'sqrt(eps_{p})', {p: HALF}),
        (f'sqrt(eps_{2 * p * q})', {2 * p * q: HALF}),
        (f'root4(eps_{2 * q}*eps_{p * q}*eps_{2 * p * q})',
         {2 * q: QUARTER, p * q: QUARTER, 2 * p * q: QUARTER}),
        (f'root4(eps_2^2*eps_{q}*eps_{2 * q}*eps_{p}*eps_{2 * p})',
         {2: HALF, q: QUARTER, 2 * q: QUARTER, p: QUARTER, 2 * p: QUARTER})
    ]


def published_biquadratic_fsus(
        p: int, q: int) -> list[tuple[tuple[int, int], list[Exponents]]]:
    """
    Return the published FSUs of the three biquadratic subfields ∋ √2.

    :param p: A prime ≡ 3 or 5 (mod 8).
    :param q: A prime ≡ 7 (mod 8).
    :returns: Pairs (radicands, exponent maps of the generators).
    """

    one = Fraction(1)
    real_q = ((2, q), [{2: one}, {q: HALF}, {2 * q: HALF}])
    mixed = ((2, p * q), [{2: one}, {p * q: one},
                          {p * q: HALF, 2 * p * q: HALF}])
    if p % 8 == 5:
        real_p = ((2, p), [{2: one}, {p: one},
                           {2: HALF, p: HALF, 2 * p: HALF}])
        return [real_p, real_q, mixed]
    real_p = ((2, p), [{2: one}, {p: HALF}, {2 * p: HALF}])
    return [real_q, real_p, mixed]


def published_lattice_check(p: int, q: int,
                            result: FsuResult) -> tuple[bool, list[str]]:
    """
    Compare a computed FSU of Q(√2, √p, √q) with the published one.

    This function checks lattice equality and also materializes every
    published generator, including the fourth roots, inside the field.

    :param p: The first prime.
    :param q: The second prime.
    :param result: The computed FSU.
    :returns: Whether the groups agree, and the labels of published
              generators that could not be built in the field.
    """

    published = published_fsu(p, q)
    vectors = [exponent_vector(result.field, exponents)
               for _, exponents in published]
    missing = [label for label, exponents in published
               if materialize_unit(result.field, exponents, label) is None]
    agrees = same_unit_group(result.exponent_vectors(), vectors)
    return agrees and not missing, missing


def norm_table_checks(p: int, q: int) -> list[NormCheck]:
    """
    Recompute every published relative norm of Q(√2, √p, √q).

    :param p: The first prime of a condition (1) pair.
    :param q: The second prime of a condition (1) pair.
    :returns: One check per table entry.
    """

    mq_field = MQField((2, p, q))
    units, tables = __norm_tables(p, q)
    built = {label: materialize_unit(mq_field, exponents, label)
             for label, exponents in units.items()}

    checks = []
    for automorphism, flipped, rows in tables:
        pattern = SignPattern.flipping(mq_field, flipped)
        for label, sign, expected in rows:
            unit = built[label]
            text = __expected_text(sign, expected)
            if unit is None:
                checks.append(NormCheck(automorphism, label, text, False,
                                        None))
                continue
            value = norm_to_subfield(unit.element, pattern)
            target = __product(mq_field, expected)
            found = 1 if value == target else -1 if value == -target \
                else None
            matches = found is not None and (sign is None or found == sign)
            checks.append(NormCheck(automorphism, label, text, matches,
                                    found))
    return checks


def square_exponent_patterns(p: int,
                             q: int) -> list[tuple[tuple[int, ...], int]]:
    """
    List the {0,1}-products of the descent candidates that are squares.

    The candidates are the six units multiplied together when descending
    from the biquadratic subfields to Q(√2, √p, √q); their order is the
    order of :func:`descent_candidates`.

    :param p: The first prime of a condition (1) pair.
    :param q: The second prime of a condition (1) pair.
    :returns: Pairs (exponent tuple, sign) for which sign·product is a
              square in the field.
    """

    mq_field = MQField((2, p, q))
    units = [materialize_unit(mq_field, exponents, label)
             for label, exponents in descent_candidates(p, q)]
    present = [unit for unit in units if unit is not None]
    if len(present) != len(units):
        raise ArithmeticError({'error': 'CANDIDATE_NOT_IN_FIELD',
                               'pair': [p, q]})
    return [(tuple(combination >> index & 1 for index in range(len(present))),
             sign)
            for combination, sign, _ in __square_products(mq_field, present)]


def descent_candidates(p: int, q: int) -> list[tuple[str, Exponents]]:
    """The units whose products are tested when descending to K."""
    shared = [(f'sqrt(eps_{q})', {q: HALF}),
              (f'sqrt(eps_{2 * q})', {2 * q: HALF})]
    pair = (f'sqrt(eps_{p * q}*eps_{2 * p * q})',
            {p * q: HALF, 2 * p * q: HALF})
    if p % 8 == 5:
        return ([('eps_2', {2: Fraction(1)}), (f'eps_{p}', {p: Fraction(1)})]
                + shared + [pair,
                            (f'sqrt(eps_2*eps_{p}*eps_{2 * p})',
                             {2: HALF, p: HALF, 2 * p: HALF})])
    return ([('eps_2', {2: Fraction(1)})] + shared
            + [(f'sqrt(eps_{p})', {p: HALF}),
               (f'sqrt(eps_{2 * p})', {2 * p: HALF}), pair])


def __norm_tables(p: int, q: int):
    """
    Published norm tables: named units and rows (unit, sign, expected).

    A sign of None means the table only fixes the value up to sign.
    """

    one, two = Fraction(1), Fraction(2)
    if p % 8 == 5:
        units = {
            'eps_2': {2: one}, 'eps_p': {p: one},
            'sqrt(eps_q)': {q: HALF}, 'sqrt(eps_2q)': {2 * q: HALF},
            'sqrt(eps_pq)': {p * q: HALF},
            'sqrt(eps_2pq)': {2 * p * q: HALF},
            'sqrt(eps_2*eps_p*eps_2p)': {2: HALF, p: HALF, 2 * p: HALF}
        }
        tables = [
            ('1+tau_2', {p}, [
                ('eps_2', 1, {2: two}), ('eps_p', -1, {}),
                ('sqrt(eps_q)', 1, {q: one}),
                ('sqrt(eps_2q)', 1, {2 * q: one}),
                ('sqrt(eps_pq)', -1, {}), ('sqrt(eps_2pq)', -1, {}),
                ('sqrt(eps_2*eps_p*eps_2p)', None, {2: one})]),
            ('1+tau_1', {2}, [
                ('eps_2', -1, {}), ('eps_p', 1, {p: two}),
                ('sqrt(eps_q)', -1, {q: one}), ('sqrt(eps_2q)', -1, {}),
                ('sqrt(eps_pq)', 1, {p * q: one}),
                ('sqrt(eps_2pq)', -1, {}),
                ('sqrt(eps_2*eps_p*eps_2p)', None, {p: one})]),
            ('1+tau_1*tau_3', {2, q}, [
                ('eps_2', -1, {}), ('eps_p', 1, {p: two}),
                ('sqrt(eps_q)', -1, {}),
                ('sqrt(eps_2q)', -1, {2 * q: one}),
                ('sqrt(eps_pq)', 1, {}),
                ('sqrt(eps_2pq)', -1, {2 * p * q: one})])
        ]
        return units, tables

    units = {
        'eps_2': {2: one}, 'sqrt(eps_q)': {q: HALF},
        'sqrt(eps_2q)': {2 * q: HALF}, 'sqrt(eps_p)': {p: HALF},
        'sqrt(eps_2p)': {2 * p: HALF},
        'sqrt(eps_pq*eps_2pq)': {p * q: HALF, 2 * p * q: HALF}
    }
    tables = [
        ('1+tau_1', {2}, [
            ('eps_2', -1, {}), ('sqrt(eps_q)', -1, {q: one}),
            ('sqrt(eps_2q)', -1, {}), ('sqrt(eps_p)', -1, {p: one}),
            ('sqrt(eps_2p)', 1, {}),
            ('sqrt(eps_pq*eps_2pq)', -1, {p * q: one})]),
        ('1+tau_3', {p}, [
            ('eps_2', 1, {2: two}), ('sqrt(eps_q)', 1, {q: one}),
            ('sqrt(eps_2q)', 1, {2 * q: one}), ('sqrt(eps_p)', -1, {}),
            ('sqrt(eps_2p)', -1, {}), ('sqrt(eps_pq*eps_2pq)', 1, {})]),
        ('1+tau_1*tau_2', {2, q}, [
            ('eps_2', -1, {}), ('sqrt(eps_q)', -1, {}),
            ('sqrt(eps_2q)', -1, {2 * q: one}),
            ('sqrt(eps_p)', -1, {p: one}), ('sqrt(eps_2p)', 1, {}),
            ('sqrt(eps_pq*eps_2pq)', -1, {2 * p * q: one})])
    ]
    return units, tables


def __expected_text(sign: Optional[int], expected: Exponents) -> str:
    product = '*'.join(f'eps_{radical}' if value == 1
                       else f'eps_{radical}^{value}'
                       for radical, value in expected.items()) or '1'
    prefix = {None: '±', 1: '', -1: '-'}[sign]
    return f'{prefix}{product}'


def __product(mq_field: MQField, exponents: Exponents) -> MQElement:
    product = MQElement.one(mq_field)
    for radical, value in exponents.items():
        product = product * fundamental_unit(radical).element(mq_field) \
            ** int(value)
    return product


def __lift(mq_field: MQField, unit: TrackedUnit) -> TrackedUnit:
    subfield = unit.element.field
    exponents = {subfield.radicals[index + 1]: value
                 for index, value in enumerate(unit.exponents) if value}
    return TrackedUnit(unit.element.coerce(mq_field),
                       exponent_vector(mq_field, exponents), unit.label)


def __is_torsion(element: MQElement) -> bool:
    return element.is_rational() and abs(element.coords[0]) == 1


def __reduce_to_basis(units: list[TrackedUnit]) -> list[TrackedUnit]:
    """
    Extract a basis of the group generated by ``units``.

    Integer row reduction on the exponent vectors; every row operation is
    mirrored on the unit elements. Rows reduced to zero must be ±1.
    """

    units = list(units)
    scale = lcm(*(value.denominator for unit in units
                  for value in unit.exponents))
    rows = [[int(value * scale) for value in unit.exponents]
            for unit in units]

    rank = 0
    for column in range(len(rows[0])):
        while True:
            nonzero = [index for index in range(rank, len(rows))
                       if rows[index][column]]
            if len(nonzero) <= 1:
                break
            pivot = min(nonzero, key=lambda index: abs(rows[index][column]))
            for index in nonzero:
                if index == pivot:
                    continue
                factor = rows[index][column] // rows[pivot][column]
                rows[index] = [value - factor * other for value, other
                               in zip(rows[index], rows[pivot])]
                units[index] = units[index].times(
                        units[pivot].power(-factor))
        if nonzero:
            index = nonzero[0]
            rows[rank], rows[index] = rows[index], rows[rank]
            units[rank], units[index] = units[index], units[rank]
            rank += 1

    for unit in units[rank:]:
        if not __is_torsion(unit.element):
            raise ArithmeticError({'error': 'DEPENDENT_UNIT_NOT_TORSION',
                                   'label': unit.label})
    return units[:rank]


def __square_products(mq_field: MQField, units: Sequence[TrackedUnit]):
    """
    Yield (combination, sign, root) for every square ±∏ of a subset.

    Subsets are bit masks in increasing order. Only products that are
    totally positive or totally negative under the real embeddings are
    handed to the exact square root.
    """

    signatures = [int(''.join(map(str, signature(unit.element))), 2)
                  for unit in units]
    all_negative = (1 << mq_field.degree) - 1
    for combination in range(1, 1 << len(units)):
        members = [index for index in range(len(units))
                   if combination >> index & 1]
        bits = 0
        for index in members:
            bits ^= signatures[index]
        if bits not in (0, all_negative):
            continue
        sign = 1 if bits == 0 else -1
        product = MQElement.rational(mq_field, sign)
        for index in members:
            product = product * units[index].element
        root = exact_sqrt(product)
        if root is not None:
            yield combination, sign, root


def __saturate(mq_field: MQField, basis: Iterable[TrackedUnit]
               ) -> tuple[list[TrackedUnit], list[str]]:
    basis = list(basis)
    adjoined: list[str] = []
    while True:
        found = next(iter(__square_products(mq_field, basis)), None)
        if found is None:
            return basis, adjoined
        combination, sign, root = found
        members = [index for index in range(len(basis))
                   if combination >> index & 1]
        exponents = tuple(
                sum((basis[index].exponents[position] for index in members),
                    Fraction(0)) / 2
                for position in range(len(basis[0].exponents)))
        prefix = '-' if sign < 0 else ''
        label = 'sqrt(' + prefix + '*'.join(
                basis[index].label for index in members) + ')'
        basis[members[-1]] = TrackedUnit(root, exponents, label)
        adjoined.append(label)
        logging.debug(f'Adjoined {label} in {list(mq_field.radicands)}.')


def __unit_index(vectors: Sequence[Sequence[Fraction]]) -> int:
    determinant = abs(__matrix(vectors).det())
    index = 1 / determinant
    if not index.is_integer or int(index) & (int(index) - 1):
        raise ArithmeticError({'error': 'UNIT_INDEX_NOT_POWER_OF_TWO',
                               'index': str(index)})
    return int(index)


def __matrix(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    return Matrix([[Rational(value.numerator, value.denominator)
                    for value in row] for row in rows])
