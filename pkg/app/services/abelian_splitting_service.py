import logging
from functools import lru_cache
from math import gcd, lcm
from typing import Optional, Sequence

from sympy import isprime, multiplicity, primefactors, primerange, \
    totient
from sympy.functions.combinatorial.numbers import kronecker_symbol

from app import config
from app.models.abelian_field import AbelianField, LayerSplitting, \
    SplittingData
from app.services.conditions_service import check_conditions
from app.services.quadratic_fields_service import fundamental_discriminant
from app.utilities.exceptions import OutOfFamilyError


def field_for(radicands: Sequence[int], level: Optional[int] = None,
              real: bool = False) -> AbelianField:
    """
    Encode Q(√d₁, …, √dₖ, ζ_{2^(n+2)}) as a conductor and subgroup.

    This function takes M as the lcm of the fundamental discriminants of
    the radicands and of 2^(n+2), and H as the residues mod M on which
    every quadratic character is 1 and which are ≡ 1 (mod 2^(n+2)). With
    ``real`` the maximal real subfield is returned, whose subgroup is
    H·{±1}.

    :param radicands: Squarefree integers other than 0 and 1; negative
                      radicands are allowed.
    :param level: The cyclotomic level n, or None for no roots of unity.
    :param real: Whether to take the maximal real subfield.
    :returns: The abelian field.
    :raises ValueError: If a radicand is invalid, the level is negative or
                        the conductor is too large.
    """

    if level is not None and level < 0:
        raise ValueError({'error': 'NEGATIVE_LEVEL', 'level': level})
    return __field_for(tuple(radicands), level, real)


def kronecker_character(discriminant: int) -> tuple[int, ...]:
    """
    Tabulate the quadratic character of a fundamental discriminant.

    :param discriminant: A fundamental discriminant D.
    :returns: χ_D(a) for a = 0, …, |D| − 1.
    """

    return __character_table(discriminant)


def split_prime(field: AbelianField, prime: int) -> SplittingData:
    """
    Compute the decomposition (e, f, g) of a rational prime.

    This function writes M = M₀·ℓ^v with ℓ ∤ M₀. The ramification index is
    the index of H ∩ ker((Z/M)* → (Z/M₀)*) in that kernel, the residue
    degree is the order of ℓ in (Z/M₀)* modulo the image of H, and g
    follows from e·f·g = [K:Q].

    :param field: The abelian field.
    :param prime: A rational prime.
    :returns: The splitting data.
    :raises ValueError: If ``prime`` is not prime.
    """

    if not isprime(prime):
        raise ValueError({'error': 'NOT_A_PRIME', 'prime': prime})

    conductor = field.conductor
    valuation = multiplicity(prime, conductor)
    cofactor = conductor // prime ** valuation

    inertia_size = int(totient(prime ** valuation))
    inertia_in_h = sum(1 for residue in field.subgroup
                       if residue % cofactor == 1 % cofactor)
    e = inertia_size // inertia_in_h

    image = {residue % cofactor for residue in field.subgroup}
    f = 1
    power = prime % cofactor
    while power not in image:
        power = power * prime % cofactor
        f += 1

    degree = field.degree
    return SplittingData(prime, e, f, degree // (e * f), degree)


def layer_splitting(p: int, q: int, level: int,
                    real: bool = False) -> LayerSplitting:
    """
    Compute the splitting of p in the layer F_n = Q(√p, √q, ζ_{2^(n+2)}).

    This function also measures, over levels 1 to max(n, TOWER_LEVELS),
    the first level from which the number of primes above p is constant.

    :param p: The first prime of the pair.
    :param q: The second prime of the pair.
    :param level: The layer n ≥ 1.
    :param real: Whether to use F_n⁺ instead of F_n.
    :returns: The splitting of p with its stabilization threshold.
    :raises OutOfFamilyError: If the pair satisfies neither condition.
    :raises ValueError: If the level is below 1.
    """

    __check_pair(p, q)
    if level < 1:
        raise ValueError({'error': 'LEVEL_BELOW_ONE', 'level': level})

    top = max(level, config.TOWER_LEVELS)
    counts = {n: split_prime(field_for((p, q), n, real), p).g
              for n in range(1, top + 1)}
    threshold = top
    while threshold > 1 and counts[threshold - 1] == counts[top]:
        threshold -= 1

    splitting = split_prime(field_for((p, q), level, real), p)
    logging.debug(f'p={p} in F_{level}{"+" if real else ""} of ({p}, {q}): '
                  f'{splitting}, stable from {threshold}.')
    return LayerSplitting((p, q), level, real, splitting, threshold)


def unramified_over_real_subfield(p: int, q: int, level: int) -> bool:
    """
    Check that F_n/F_n⁺ is unramified at every finite prime.

    Only primes dividing the conductor can ramify, so the ramification
    indices of those primes are compared in both fields.

    :param p: The first prime of the pair.
    :param q: The second prime of the pair.
    :param level: The layer n.
    :returns: True if every ramification index agrees.
    """

    field = field_for((p, q), level)
    real_field = field_for((p, q), level, real=True)
    for prime in primefactors(field.conductor):
        if split_prime(field, prime).e != split_prime(real_field, prime).e:
            logging.info(f'F_{level}/F_{level}+ ramifies at {prime} for '
                         f'({p}, {q}).')
            return False
    return True


def cyclotomic_splitting_sweep(bound: int, max_level: int) -> list[dict]:
    """
    Check the splitting of p ≡ 3, 5 (mod 8) in Q(ζ_{2^(n+2)}) and its real
    subfield.

    :param bound: Primes below ``bound`` are swept.
    :param max_level: Levels 1 to ``max_level`` are swept.
    :returns: One entry per (prime, level) with a ``passed`` flag, true
              when p splits into two unramified primes in the cyclotomic
              field and is inert in its real subfield.
    """

    results = []
    for prime in primerange(3, bound):
        if prime % 8 not in (3, 5):
            continue
        for level in range(1, max_level + 1):
            full = split_prime(field_for((), level), prime)
            real = split_prime(field_for((), level, real=True), prime)
            results.append({
                'prime': prime,
                'level': level,
                'cyclotomic': full.to_dict(),
                'real': real.to_dict(),
                'passed': (full.g == 2 and full.e == 1 and real.g == 1
                           and real.e == 1)
            })
    return results


@lru_cache(maxsize=None)
def __field_for(radicands: tuple[int, ...], level: Optional[int],
                real: bool) -> AbelianField:
    discriminants = [fundamental_discriminant(radicand)
                     for radicand in radicands]
    two_power = 2 ** (level + 2) if level is not None else 1
    conductor = lcm(two_power, *(abs(discriminant)
                                 for discriminant in discriminants))
    if totient(conductor) >= config.MAX_CONDUCTOR_TOTIENT:
        raise ValueError({'error': 'CONDUCTOR_TOO_LARGE',
                          'conductor': conductor})

    tables = [(abs(discriminant), __character_table(discriminant))
              for discriminant in discriminants]
    subgroup = set()
    for residue in range(1 % two_power, conductor, two_power):
        if gcd(residue, conductor) != 1:
            continue
        if all(table[residue % modulus] == 1 for modulus, table in tables):
            subgroup.add(residue % conductor)
    if real:
        subgroup |= {-residue % conductor for residue in subgroup}
    return AbelianField(conductor, frozenset(subgroup))


@lru_cache(maxsize=None)
def __character_table(discriminant: int) -> tuple[int, ...]:
    modulus = abs(discriminant)
    return tuple(int(kronecker_symbol(discriminant, residue))
                 if gcd(residue, modulus) == 1 else 0
                 for residue in range(modulus))


def __check_pair(p: int, q: int) -> None:
    conditions = check_conditions(p, q)
    if not conditions.in_family:
        raise OutOfFamilyError({'error': 'PAIR_OUT_OF_FAMILY',
                                'pair': [p, q]})
