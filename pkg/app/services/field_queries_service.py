from typing import Sequence

from app.models.multiquadratic import MQField
from app.services.abelian_splitting_service import field_for, \
    layer_splitting, split_prime
from app.services.iwasawa_service import pi_layer
from app.services.quadratic_fields_service import class_group, \
    fundamental_discriminant, fundamental_unit
from app.services.wada_fsu_service import multiquadratic_fsu


def class_number_summary(d: int) -> dict:
    """
    Summarize the class group of Q(√d) and, for d > 1, its fundamental
    unit.

    :param d: A squarefree integer other than 0 and 1.
    :returns: The discriminant, class numbers and unit as a dictionary.
    :raises ValueError: If d is not squarefree.
    """

    group = class_group(fundamental_discriminant(d))
    summary = {'d': d, **group.to_dict()}
    if d > 1:
        summary['unit'] = fundamental_unit(d).to_dict()
    return summary


def fsu_summary(radicands: Sequence[int]) -> dict:
    """
    Summarize a fundamental system of units of Q(√d₁, …, √dₖ).

    :param radicands: One to three squarefree integers greater than 1.
    :returns: The FSU as a dictionary.
    :raises ValueError: If the radicands do not define a real field.
    """

    return multiquadratic_fsu(MQField.from_radicands(*radicands)).to_dict()


def split_summary(prime: int, level: int, real: bool = False) -> dict:
    """
    Summarize the splitting of a prime in Q(ζ_{2^(n+2)}) or its real
    subfield.

    :param prime: A rational prime.
    :param level: The level n ≥ 0.
    :param real: Whether to use the maximal real subfield.
    :returns: The field and the decomposition as a dictionary.
    """

    field = field_for((), level, real)
    return {'field': field.to_dict(),
            'splitting': split_prime(field, prime).to_dict()}


def tower_summary(p: int, q: int, levels: int) -> dict:
    """
    Summarize the splitting of p in F_n and F_n⁺ for n = 1, …, levels.

    :param p: The first prime of an in-family pair.
    :param q: The second prime.
    :param levels: The number of layers, at least 1.
    :returns: One entry per layer with π_n and both splittings.
    :raises ValueError: If ``levels`` is below 1.
    """

    if levels < 1:
        raise ValueError({'error': 'LEVEL_BELOW_ONE', 'level': levels})
    return {
        'pair': [p, q],
        'layers': [{
            'level': level,
            'pi': pi_layer(level).to_dict(),
            'F_n': layer_splitting(p, q, level).to_dict(),
            'F_n+': layer_splitting(p, q, level, real=True).to_dict()
        } for level in range(1, levels + 1)]
    }
