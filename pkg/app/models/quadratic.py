from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from app.models.multiquadratic import MQElement, MQField


@dataclass(frozen=True)
class QuadUnit:
    """
    Represents a unit x + y√d of a real quadratic field.

    :ivar d: The squarefree radicand, greater than 1.
    :ivar x: The rational coordinate, an integer or a half-integer.
    :ivar y: The coordinate on √d, an integer or a half-integer.
    :ivar norm: x² − d·y², either 1 or -1.
    """

    d: int
    x: Fraction
    y: Fraction
    norm: int

    def __post_init__(self) -> None:
        if self.x * self.x - self.d * self.y * self.y != self.norm:
            raise ValueError({'error': 'NOT_A_UNIT', 'd': self.d,
                              'x': str(self.x), 'y': str(self.y)})
        if self.d % 4 != 1 and (self.x.denominator != 1
                                or self.y.denominator != 1):
            raise ValueError({'error': 'HALF_INTEGER_COORDINATES',
                              'd': self.d})

    @property
    def is_half_integral(self) -> bool:
        return self.x.denominator == 2

    def element(self, mq_field: MQField | None = None) -> MQElement:
        """
        Express the unit as an element of a multiquadratic field.

        :param mq_field: A field containing √d, Q(√d) by default.
        :returns: The unit as a field element.
        """

        target = mq_field or MQField((self.d,))
        return (MQElement.rational(target, self.x)
                + MQElement.radical(target, self.d, self.y))

    def to_dict(self) -> dict:
        return {
            'd': self.d,
            'x': str(self.x),
            'y': str(self.y),
            'norm': self.norm
        }


@dataclass(frozen=True)
class BinaryQuadraticForm:
    """
    Represents the binary quadratic form a·X² + b·XY + c·Y².
    """

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        """
        Check reduction.

        Definite forms are reduced when |b| ≤ a ≤ c (b ≥ 0 on a tie);
        indefinite forms when 0 < b < √D and √D − b < 2|a| < √D + b.
        """

        discriminant = self.discriminant
        if discriminant < 0:
            if not abs(self.b) <= self.a <= self.c:
                return False
            return self.b >= 0 or (abs(self.b) != self.a
                                   and self.a != self.c)
        root = isqrt(discriminant)
        return (1 <= self.b <= root
                and root + 1 <= 2 * abs(self.a) + self.b
                and 2 * abs(self.a) - self.b <= root)

    def rho(self) -> BinaryQuadraticForm:
        """The next reduced form of the cycle of an indefinite form."""
        root = isqrt(self.discriminant)
        modulus = 2 * abs(self.c)
        b = root - (root + self.b) % modulus
        return BinaryQuadraticForm(
                self.c, b, (b * b - self.discriminant) // (4 * self.c))

    def to_list(self) -> list[int]:
        return [self.a, self.b, self.c]


@dataclass(frozen=True)
class FormClassGroup:
    """
    Represents the form class group of a discriminant.

    :ivar discriminant: The discriminant, ≡ 0 or 1 (mod 4), not a square.
    :ivar representatives: One reduced form per narrow class (the first
                           form of each cycle when positive).
    :ivar h_narrow: The narrow class number.
    :ivar h: The wide class number.
    :ivar h2: The largest power of 2 dividing ``h``.
    :ivar principal_norm_negative: Whether the principal cycle contains a
                                   form with a = −1, i.e. N(ε) = −1.
    """

    discriminant: int
    representatives: tuple[BinaryQuadraticForm, ...]
    h_narrow: int
    h: int
    h2: int
    principal_norm_negative: bool

    def to_dict(self) -> dict:
        return {
            'discriminant': self.discriminant,
            'representatives': [form.to_list()
                                for form in self.representatives],
            'h_narrow': self.h_narrow,
            'h': self.h,
            'h2': self.h2
        }
