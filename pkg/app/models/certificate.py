from dataclasses import dataclass
from fractions import Fraction

from app.models.multiquadratic import MQElement
from app.models.quadratic import QuadUnit


@dataclass(frozen=True)
class DecompositionCertificate:
    """
    Represents a square-root certificate of a norm +1 quadratic unit.

    With X = x (integer scale) or X = 2x (half-integer scale) and gap
    c = 1 or 2, the certificate records X + c = u·s² and X − c = v·t², and
    the root r = c₁√A + c₂√B with r² = multiplier·ε.

    :ivar unit: The unit ε = x + y√d.
    :ivar scale: 1 or 2, the factor applied to x.
    :ivar u: Squarefree cofactor of X + c.
    :ivar v: Squarefree cofactor of X − c.
    :ivar s: Square root of (X + c)/u.
    :ivar t: Square root of (X − c)/v.
    :ivar radicands: The pair (A, B) carrying the root.
    :ivar coefficients: The pair (c₁, c₂) of the root.
    :ivar multiplier: 1 or 2.
    :ivar relation: A·c₁² − B·c₂², equal to the multiplier.
    :ivar checks: Named Legendre-symbol consistency checks.
    :ivar root: The root as a field element.
    """

    unit: QuadUnit
    scale: int
    u: int
    v: int
    s: int
    t: int
    radicands: tuple[int, int]
    coefficients: tuple[Fraction, Fraction]
    multiplier: int
    relation: Fraction
    checks: tuple[tuple[str, bool], ...]
    root: MQElement

    @property
    def d(self) -> int:
        return self.unit.d

    @property
    def branch(self) -> str:
        x = 'x' if self.scale == 1 else '2x'
        gap = self.scale
        return (f'{x}+{gap} = {self.u}*{self.s}^2, '
                f'{x}-{gap} = {self.v}*{self.t}^2')

    @property
    def sqrt_form(self) -> str:
        target = (f'eps_{self.d}' if self.multiplier == 1
                  else f'{self.multiplier}*eps_{self.d}')
        return f'sqrt({target}) = {self.root}'

    @property
    def pell_relation(self) -> str:
        first, second = self.radicands
        c1, c2 = self.coefficients
        return f'{self.relation} = {first}*({c1})^2 - {second}*({c2})^2'

    def to_dict(self) -> dict:
        return {
            'd': self.d,
            'unit': self.unit.to_dict(),
            'branch': self.branch,
            'cofactors': [self.u, self.v],
            'roots': [self.s, self.t],
            'sqrt_form': self.sqrt_form,
            'pell_relation': self.pell_relation,
            'checks': {label: passed for label, passed in self.checks}
        }


@dataclass(frozen=True)
class A5Verdict:
    """
    Represents the non-square test of 2(x±1) and 2d(x±1) for a unit.

    :ivar unit: The tested unit.
    :ivar quantities: Triples (label, value, squarefree witness); a value
                      is a rational square iff its witness is 1.
    """

    unit: QuadUnit
    quantities: tuple[tuple[str, Fraction, int], ...]

    @property
    def holds(self) -> bool:
        return all(witness != 1 for _, _, witness in self.quantities)

    def to_dict(self) -> dict:
        return {
            'unit': self.unit.to_dict(),
            'holds': self.holds,
            'quantities': [{'label': label, 'value': str(value),
                            'witness': witness}
                           for label, value, witness in self.quantities]
        }
