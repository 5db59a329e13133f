from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import totient


@dataclass(frozen=True)
class AbelianField:
    """
    Represents an abelian number field by its conductor and subgroup.

    The field is the fixed field of H inside Q(ζ_M), so its Galois group
    is (Z/M)*/H.

    :ivar conductor: A modulus M such that the field lies in Q(ζ_M).
    :ivar subgroup: The residues mod M forming H.
    :ivar generators: Generators of H, for display.
    """

    conductor: int
    subgroup: frozenset[int]
    generators: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if 1 % self.conductor not in self.subgroup:
            raise ValueError({'error': 'SUBGROUP_WITHOUT_IDENTITY',
                              'conductor': self.conductor})
        if len(self.subgroup) > 1 and any(
                first * second % self.conductor not in self.subgroup
                for first in self.generators for second in self.subgroup):
            raise ValueError({'error': 'SUBGROUP_NOT_CLOSED',
                              'conductor': self.conductor})

    @classmethod
    def from_generators(cls, conductor: int,
                        generators: tuple[int, ...]) -> AbelianField:
        """
        Build the field fixed by the subgroup generated by ``generators``.

        :param conductor: The modulus M.
        :param generators: Residues coprime to M.
        :returns: The abelian field.
        :raises ValueError: If a generator is not a unit mod M.
        """

        for generator in generators:
            if gcd(generator, conductor) != 1:
                raise ValueError({'error': 'GENERATOR_NOT_A_UNIT',
                                  'conductor': conductor,
                                  'generator': generator})
        subgroup = {1 % conductor}
        frontier = list(subgroup)
        while frontier:
            element = frontier.pop()
            for generator in generators:
                image = element * generator % conductor
                if image not in subgroup:
                    subgroup.add(image)
                    frontier.append(image)
        return cls(conductor, frozenset(subgroup),
                   tuple(generator % conductor for generator in generators))

    @property
    def degree(self) -> int:
        return int(totient(self.conductor)) // len(self.subgroup)

    def is_real(self) -> bool:
        return (-1) % self.conductor in self.subgroup

    def contains_fourth_roots(self) -> bool:
        """Whether i lies in the field, i.e. H fixes the character mod 4."""
        return self.conductor % 4 == 0 and all(
                residue % 4 == 1 for residue in self.subgroup)

    def to_dict(self) -> dict:
        return {
            'conductor': self.conductor,
            'degree': self.degree,
            'subgroup_order': len(self.subgroup),
            'generators': list(self.generators),
            'real': self.is_real()
        }


@dataclass(frozen=True)
class SplittingData:
    """
    Represents the decomposition of a rational prime in an abelian field.

    :ivar prime: The rational prime.
    :ivar e: The ramification index.
    :ivar f: The residue degree.
    :ivar g: The number of primes above ``prime``.
    :ivar degree: The degree of the field, equal to e·f·g.
    """

    prime: int
    e: int
    f: int
    g: int
    degree: int

    def __post_init__(self) -> None:
        if self.e * self.f * self.g != self.degree:
            raise ArithmeticError({'error': 'DECOMPOSITION_LAW_VIOLATED',
                                   'prime': self.prime, 'e': self.e,
                                   'f': self.f, 'g': self.g,
                                   'degree': self.degree})

    def to_dict(self) -> dict:
        return {
            'prime': self.prime,
            'e': self.e,
            'f': self.f,
            'g': self.g,
            'degree': self.degree
        }


@dataclass(frozen=True)
class LayerSplitting:
    """
    Represents the splitting of p in a layer of the cyclotomic Z₂-tower.

    :ivar pair: The prime pair (p, q).
    :ivar level: The layer n.
    :ivar real: Whether the layer is the maximal real subfield F_n⁺.
    :ivar splitting: The decomposition of p.
    :ivar threshold: The level from which g is constant.
    """

    pair: tuple[int, int]
    level: int
    real: bool
    splitting: SplittingData
    threshold: int

    def to_dict(self) -> dict:
        return {
            'pair': list(self.pair),
            'level': self.level,
            'field': 'F_n+' if self.real else 'F_n',
            'splitting': self.splitting.to_dict(),
            'threshold': self.threshold
        }
