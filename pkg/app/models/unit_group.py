from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from app.models.multiquadratic import MQElement, MQField


@dataclass(frozen=True)
class TrackedUnit:
    """
    Represents a unit together with its exponent vector.

    The exponent vector expresses the unit, up to sign, as a product of
    the fundamental units of the quadratic subfields, one coordinate per
    nonzero basis mask of the field.

    :ivar element: The unit.
    :ivar exponents: Rational exponents over ε_r, r running through the
                     field's radicals other than 1.
    :ivar label: A readable name, e.g. ``sqrt(eps_2*eps_5*eps_10)``.
    """

    element: MQElement
    exponents: tuple[Fraction, ...]
    label: str

    def times(self, other: TrackedUnit) -> TrackedUnit:
        return TrackedUnit(
                self.element * other.element,
                tuple(first + second for first, second
                      in zip(self.exponents, other.exponents)),
                f'{self.label}*{other.label}')

    def power(self, exponent: int) -> TrackedUnit:
        if exponent == 1:
            return self
        return TrackedUnit(self.element ** exponent,
                           tuple(value * exponent for value in self.exponents),
                           f'({self.label})^{exponent}')

    def exponent_map(self) -> dict[int, Fraction]:
        radicals = self.element.field.radicals[1:]
        return {radical: value for radical, value
                in zip(radicals, self.exponents) if value}

    def to_dict(self) -> dict:
        return {
            'label': self.label,
            'exponents': {str(radical): str(value) for radical, value
                          in self.exponent_map().items()},
            'element': self.element.to_dict()
        }


@dataclass(frozen=True)
class FsuResult:
    """
    Represents a fundamental system of units of a real multiquadratic field.

    :ivar field: The field.
    :ivar generators: 2^t − 1 units generating the unit group modulo ±1.
    :ivar q_index: The unit index q(K), a power of 2.
    :ivar subfield_h2s: 2-class numbers of the quadratic subfields, in
                        basis order.
    :ivar h2: The 2-class number given by the class number formula.
    :ivar provenance: What each descent step contributed.
    """

    field: MQField
    generators: tuple[TrackedUnit, ...]
    q_index: int
    subfield_h2s: tuple[int, ...]
    h2: Fraction
    provenance: tuple[str, ...]

    def exponent_vectors(self) -> list[tuple[Fraction, ...]]:
        return [generator.exponents for generator in self.generators]

    def to_dict(self) -> dict:
        return {
            'field': self.field.to_dict(),
            'generators': [generator.label for generator in self.generators],
            'exponents': [generator.to_dict()['exponents']
                          for generator in self.generators],
            'q_index': self.q_index,
            'subfield_h2s': dict(zip(map(str, self.field.radicals[1:]),
                                     self.subfield_h2s)),
            'h2': str(self.h2),
            'provenance': list(self.provenance)
        }


@dataclass(frozen=True)
class NormCheck:
    """
    Represents one entry of a relative norm table.

    :ivar automorphism: The automorphism name, e.g. ``1+tau_1``.
    :ivar unit: The unit label.
    :ivar expected: The published value, e.g. ``-eps_31``; ``±`` when the
                    sign is not published.
    :ivar matches: Whether the exact norm equals the published value.
    :ivar sign: The sign found in front of the expected product, when the
                product matches up to sign.
    """

    automorphism: str
    unit: str
    expected: str
    matches: bool
    sign: Optional[int]

    def to_dict(self) -> dict:
        return {
            'automorphism': self.automorphism,
            'unit': self.unit,
            'expected': self.expected,
            'matches': self.matches,
            'sign': self.sign
        }
