from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Iterator, Union

from sympy.ntheory.factor_ import core

Scalar = Union[int, Fraction]

MAX_RADICANDS = 3


def squarefree_product(first: int, second: int) -> int:
    """
    Multiply two squarefree integers and drop the square part.

    :param first: A squarefree positive integer.
    :param second: A squarefree positive integer.
    :returns: The squarefree part of ``first * second``.
    """

    common = gcd(first, second)
    return (first // common) * (second // common)


@dataclass(frozen=True)
class MQField:
    """
    Represents a real multiquadratic field Q(√d₁, ..., √d_t), t ≤ 3.

    The basis is indexed by bit masks: bit j of a mask selects d_{j+1}, and
    the basis element of a mask is the square root of the squarefree part
    of the product of the selected radicands. Mask 0 is the rational 1.

    :ivar radicands: The squarefree radicands, all greater than 1.
    :ivar radicals: The squarefree radical of each basis mask.
    """

    radicands: tuple[int, ...]
    radicals: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.radicands) > MAX_RADICANDS:
            raise ValueError({'error': 'TOO_MANY_RADICANDS',
                              'radicands': list(self.radicands)})

        radicals = [1]
        for radicand in self.radicands:
            if radicand <= 1 or core(radicand) != radicand:
                raise ValueError({'error': 'NOT_SQUAREFREE',
                                  'radicand': radicand})
            radicals += [squarefree_product(radical, radicand)
                         for radical in radicals]

        if len(set(radicals)) != len(radicals):
            raise ValueError({'error': 'DEPENDENT_RADICANDS',
                              'radicands': list(self.radicands)})

        object.__setattr__(self, 'radicals', tuple(radicals))

    @classmethod
    def from_radicands(cls, *radicands: int) -> MQField:
        """
        Build a field, dropping radicands already generated by earlier ones.

        :param radicands: Squarefree integers greater than 1.
        :returns: The field generated by the square roots of the radicands.
        :raises ValueError: If a radicand is not squarefree or not > 1.
        """

        kept: list[int] = []
        for radicand in radicands:
            candidate = cls(tuple(kept))
            if core(radicand) != radicand or radicand <= 1:
                raise ValueError({'error': 'NOT_SQUAREFREE',
                                  'radicand': radicand})
            if radicand not in candidate.radicals:
                kept.append(radicand)
        return cls(tuple(kept))

    @property
    def degree(self) -> int:
        return len(self.radicals)

    @property
    def rank(self) -> int:
        return len(self.radicands)

    def subfield(self) -> MQField:
        """The field generated by all radicands except the last one."""
        return MQField(self.radicands[:-1])

    def mask_of(self, radical: int) -> int:
        """
        Find the basis mask whose radical is ``radical``.

        :param radical: A squarefree positive integer.
        :returns: The mask of the basis element √radical.
        :raises ValueError: If √radical does not lie in the field.
        """

        try:
            return self.radicals.index(radical)
        except ValueError:
            raise ValueError({'error': 'RADICAL_NOT_IN_FIELD',
                              'radical': radical,
                              'radicands': list(self.radicands)})

    def contains(self, other: MQField) -> bool:
        return set(other.radicals) <= set(self.radicals)

    def patterns(self) -> Iterator[SignPattern]:
        """Iterate over the 2^t embeddings, the all-plus pattern first."""
        for signs in product((1, -1), repeat=self.rank):
            yield SignPattern(signs)

    def to_dict(self) -> dict:
        return {
            'radicands': list(self.radicands),
            'degree': self.degree,
            'basis': list(self.radicals)
        }


@dataclass(frozen=True)
class SignPattern:
    """
    Represents the automorphism (or real embedding) sending √dᵢ to ±√dᵢ.

    :ivar signs: One sign per radicand of the field the pattern acts on.
    """

    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(sign not in (1, -1) for sign in self.signs):
            raise ValueError({'error': 'INVALID_SIGN_PATTERN',
                              'signs': list(self.signs)})

    @classmethod
    def identity(cls, rank: int) -> SignPattern:
        return cls((1,) * rank)

    @classmethod
    def flipping(cls, mq_field: MQField,
                 flipped: Iterable[int]) -> SignPattern:
        """
        Build the pattern negating the square roots of the given radicands.

        :param mq_field: The field the pattern acts on.
        :param flipped: Radicands of the field whose square roots change
                        sign.
        :returns: The corresponding sign pattern.
        :raises ValueError: If a flipped value is not a radicand of the
                            field.
        """

        flipped_set = set(flipped)
        unknown = flipped_set - set(mq_field.radicands)
        if unknown:
            raise ValueError({'error': 'UNKNOWN_RADICAND',
                              'radicands': sorted(unknown)})
        return cls(tuple(-1 if radicand in flipped_set else 1
                         for radicand in mq_field.radicands))

    def compose(self, other: SignPattern) -> SignPattern:
        if len(self.signs) != len(other.signs):
            raise ValueError({'error': 'PATTERN_MISMATCH'})
        return SignPattern(tuple(first * second for first, second
                                 in zip(self.signs, other.signs)))

    def sign_of(self, mask: int) -> int:
        """The sign picked up by the basis element of ``mask``."""
        sign = 1
        for index, value in enumerate(self.signs):
            if mask >> index & 1:
                sign *= value
        return sign

    def to_dict(self) -> dict:
        return {'signs': list(self.signs)}


@dataclass(frozen=True)
class MQElement:
    """
    Represents an element of a multiquadratic field.

    :ivar field: The field the element lives in.
    :ivar coords: One exact rational coordinate per basis radical, indexed
                  by mask.
    """

    field: MQField
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.field.degree:
            raise ValueError({'error': 'COORDINATE_COUNT_MISMATCH',
                              'expected': self.field.degree,
                              'actual': len(self.coords)})
        object.__setattr__(self, 'coords',
                           tuple(Fraction(value) for value in self.coords))

    @classmethod
    def zero(cls, mq_field: MQField) -> MQElement:
        return cls(mq_field, (Fraction(0),) * mq_field.degree)

    @classmethod
    def rational(cls, mq_field: MQField, value: Scalar) -> MQElement:
        return cls(mq_field,
                   (Fraction(value),) + (Fraction(0),) * (mq_field.degree - 1))

    @classmethod
    def one(cls, mq_field: MQField) -> MQElement:
        return cls.rational(mq_field, 1)

    @classmethod
    def radical(cls, mq_field: MQField, radical: int,
                coefficient: Scalar = 1) -> MQElement:
        """The element ``coefficient * √radical`` of ``mq_field``."""
        coords = [Fraction(0)] * mq_field.degree
        coords[mq_field.mask_of(radical)] = Fraction(coefficient)
        return cls(mq_field, tuple(coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def coerce(self, target: MQField) -> MQElement:
        """
        Rewrite the element in a field containing its own field.

        :param target: A multiquadratic field containing ``self.field``.
        :returns: The same number expressed on the basis of ``target``.
        :raises ValueError: If ``target`` does not contain the element.
        """

        if target == self.field:
            return self
        coords = [Fraction(0)] * target.degree
        for mask, value in enumerate(self.coords):
            if value:
                coords[target.mask_of(self.field.radicals[mask])] = value
        return MQElement(target, tuple(coords))

    def split_top(self) -> tuple[MQElement, MQElement]:
        """
        Write the element as α + β√d over the subfield, d the last radicand.

        :returns: The pair (α, β) of subfield elements.
        """

        subfield = self.field.subfield()
        half = subfield.degree
        top = self.field.radicands[-1]
        alpha = self.coords[:half]
        beta = tuple(self.coords[mask + half]
                     / gcd(subfield.radicals[mask], top)
                     for mask in range(half))
        return MQElement(subfield, alpha), MQElement(subfield, beta)

    @staticmethod
    def join_top(mq_field: MQField, alpha: MQElement,
                 beta: MQElement) -> MQElement:
        """Inverse of :meth:`split_top`: build α + β√d in ``mq_field``."""
        top = mq_field.radicands[-1]
        subfield = alpha.field
        upper = tuple(value * gcd(subfield.radicals[mask], top)
                      for mask, value in enumerate(beta.coords))
        return MQElement(mq_field, alpha.coords + upper)

    def inverse(self) -> MQElement:
        """
        Invert the element exactly.

        This function inverts through the tower of quadratic extensions:
        (α + β√d)⁻¹ = (α − β√d) / (α² − dβ²), recursing into the subfield
        for the norm.

        :returns: The multiplicative inverse.
        :raises ZeroDivisionError: If the element is zero.
        """

        if self.is_zero():
            raise ZeroDivisionError({'error': 'DIVISION_BY_ZERO'})
        if self.field.rank == 0:
            return MQElement.rational(self.field, 1 / self.coords[0])

        alpha, beta = self.split_top()
        top = self.field.radicands[-1]
        norm_inverse = (alpha * alpha - beta * beta * top).inverse()
        return MQElement.join_top(self.field, alpha * norm_inverse,
                                  -(beta * norm_inverse))

    def __check_field(self, other: MQElement) -> None:
        if other.field != self.field:
            raise ValueError({'error': 'FIELD_MISMATCH',
                              'left': list(self.field.radicands),
                              'right': list(other.field.radicands)})

    def __add__(self, other: Union[MQElement, Scalar]) -> MQElement:
        if not isinstance(other, MQElement):
            other = MQElement.rational(self.field, other)
        self.__check_field(other)
        return MQElement(self.field, tuple(
                first + second
                for first, second in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> MQElement:
        return MQElement(self.field, tuple(-value for value in self.coords))

    def __sub__(self, other: Union[MQElement, Scalar]) -> MQElement:
        return self + (-other)

    def __rsub__(self, other: Scalar) -> MQElement:
        return -self + other

    def __mul__(self, other: Union[MQElement, Scalar]) -> MQElement:
        if not isinstance(other, MQElement):
            factor = Fraction(other)
            return MQElement(self.field,
                             tuple(value * factor for value in self.coords))

        self.__check_field(other)
        radicals = self.field.radicals
        result = [Fraction(0)] * self.field.degree
        for left_mask, left in enumerate(self.coords):
            if not left:
                continue
            for right_mask, right in enumerate(other.coords):
                if not right:
                    continue
                common = gcd(radicals[left_mask], radicals[right_mask])
                result[left_mask ^ right_mask] += left * right * common
        return MQElement(self.field, tuple(result))

    __rmul__ = __mul__

    def __truediv__(self, other: Union[MQElement, Scalar]) -> MQElement:
        if isinstance(other, MQElement):
            return self * other.inverse()
        if other == 0:
            raise ZeroDivisionError({'error': 'DIVISION_BY_ZERO'})
        return self * (1 / Fraction(other))

    def __pow__(self, exponent: int) -> MQElement:
        if exponent < 0:
            return self.inverse() ** -exponent
        result = MQElement.one(self.field)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __str__(self) -> str:
        terms = []
        for mask, value in enumerate(self.coords):
            if not value:
                continue
            radical = self.field.radicals[mask]
            terms.append(str(value) if radical == 1
                         else f'{value}*sqrt({radical})')
        return ' + '.join(terms).replace('+ -', '- ') if terms else '0'

    def to_dict(self) -> dict:
        return {
            'radicands': list(self.field.radicands),
            'coordinates': {str(radical): str(value) for radical, value
                            in zip(self.field.radicals, self.coords)
                            if value},
            'expression': str(self)
        }


@dataclass(frozen=True)
class RealInterval:
    """
    Represents a closed real interval with exact rational endpoints.

    :ivar lower: The lower endpoint.
    :ivar upper: The upper endpoint.
    """

    lower: Fraction
    upper: Fraction

    def contains(self, value: Scalar) -> bool:
        return self.lower <= value <= self.upper

    def overlaps(self, other: RealInterval) -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def is_positive(self) -> bool:
        return self.lower > 0

    def is_negative(self) -> bool:
        return self.upper < 0

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def to_dict(self) -> dict:
        return {'lower': float(self.lower), 'upper': float(self.upper)}
