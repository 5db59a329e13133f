from dataclasses import dataclass, field
from typing import Optional, Union

from app.models.abelian_field import AbelianField
from app.models.multiquadratic import RealInterval
from app.models.report import Verdict


@dataclass(frozen=True)
class TowerLayer:
    """
    Represents the n-th layer Q(√π_n) of the cyclotomic Z₂-extension of Q.

    :ivar level: The layer n ≥ 1.
    :ivar expression: π_n as a nested radical, π₁ = 2 and
                      π_n = 2 + √π_{n−1}.
    :ivar value: A rigorous enclosure of π_n.
    :ivar field: Q(ζ_{2^(n+2)})⁺, which equals Q(√π_n).
    """

    level: int
    expression: str
    value: RealInterval
    field: AbelianField

    def to_dict(self) -> dict:
        return {
            'level': self.level,
            'pi': self.expression,
            'value': self.value.to_dict(),
            'field': self.field.to_dict()
        }


@dataclass(frozen=True)
class KidaInput:
    """
    Represents the data of Kida's formula for a 2-extension of CM fields.

    :ivar lambda_base: λ⁻ of the base field.
    :ivar delta_base: 1 if the base Z₂-extension contains i, else 0.
    :ivar delta_top: 1 if the top Z₂-extension contains i, else 0.
    :ivar degree: The degree of the top over the base Z₂-extension.
    :ivar e_list: Ramification indices of the primes not above 2 of the
                  top CM tower.
    :ivar e_plus_list: The same for the maximal real subfields.
    :ivar mu_base_zero: Whether μ⁻ of the base is assumed to vanish.
    """

    lambda_base: int
    delta_base: int
    delta_top: int
    degree: int
    e_list: tuple[int, ...] = ()
    e_plus_list: tuple[int, ...] = ()
    mu_base_zero: bool = False

    def __post_init__(self) -> None:
        if self.degree < 1 or self.degree & (self.degree - 1):
            raise ValueError({'error': 'DEGREE_NOT_POWER_OF_TWO',
                              'degree': self.degree})
        if {self.delta_base, self.delta_top} - {0, 1}:
            raise ValueError({'error': 'INVALID_DELTA'})
        if any(index < 1 for index in self.e_list + self.e_plus_list):
            raise ValueError({'error': 'INVALID_RAMIFICATION_INDEX'})

    def to_dict(self) -> dict:
        return {
            'lambda_base': self.lambda_base,
            'delta_base': self.delta_base,
            'delta_top': self.delta_top,
            'degree': self.degree,
            'e_list': list(self.e_list),
            'e_plus_list': list(self.e_plus_list),
            'mu_base_zero': self.mu_base_zero
        }


@dataclass(frozen=True)
class RankClaim:
    """
    Represents a claimed 2-rank: exact, or only an upper bound.
    """

    value: int
    exact: bool

    def __str__(self) -> str:
        return str(self.value) if self.exact else f'<= {self.value}'


@dataclass(frozen=True)
class RankInference:
    """
    Represents a rank sequence completed by the stabilization rule.

    :ivar observed: The ranks that were given, by level.
    :ivar stable_from: The first level of two equal consecutive ranks.
    :ivar stable_rank: The rank from ``stable_from`` on.
    """

    observed: dict[int, int]
    stable_from: Optional[int] = None
    stable_rank: Optional[int] = None

    def rank_at(self, level: int) -> Optional[int]:
        if level in self.observed:
            return self.observed[level]
        if self.stable_from is not None and level >= self.stable_from:
            return self.stable_rank
        return None

    def as_map(self, up_to: int) -> dict[int, int]:
        if not self.observed:
            return {}
        levels = range(min(self.observed), up_to + 1)
        ranks = {level: self.rank_at(level) for level in levels}
        return {level: rank for level, rank in ranks.items()
                if rank is not None}

    def to_dict(self) -> dict:
        return {
            'observed': {str(level): rank
                         for level, rank in sorted(self.observed.items())},
            'stable_from': self.stable_from,
            'stable_rank': self.stable_rank
        }


@dataclass(frozen=True)
class Assumption:
    name: str
    verdict: Verdict
    detail: str = ''

    def to_dict(self) -> dict:
        return {'name': self.name, 'verdict': self.verdict.value,
                'detail': self.detail}


@dataclass(frozen=True)
class ParityCheck:
    """
    Represents the check that the real tower of Q(√p, √q) has odd class
    numbers.

    :ivar pair: The prime pair.
    :ivar h2_base: h₂(Q(√p, √q)).
    :ivar h2_layer_one: h₂(Q(√2, √p, √q)).
    :ivar totally_ramified: Whether the number of primes above 2 is the
                            same in every checked layer.
    :ivar inference: The completed rank sequence of the 2-class groups.
    """

    pair: tuple[int, int]
    h2_base: int
    h2_layer_one: int
    totally_ramified: bool
    inference: RankInference

    @property
    def trivial(self) -> bool:
        return (self.h2_base == 1 and self.h2_layer_one == 1
                and self.totally_ramified)

    def to_dict(self) -> dict:
        return {
            'pair': list(self.pair),
            'h2_base': self.h2_base,
            'h2_layer_one': self.h2_layer_one,
            'totally_ramified': self.totally_ramified,
            'trivial': self.trivial,
            'inference': self.inference.to_dict()
        }


@dataclass(frozen=True)
class IwasawaReport:
    """
    Represents the predicted structure of A_∞ for F = Q(√p, √q, i).

    :ivar pair: The prime pair.
    :ivar condition: The condition class label.
    :ivar q_mod_16: q modulo 16.
    :ivar no_finite_part: Whether A_∞(F) has no finite Λ-submodule.
    :ivar lambda_minus: λ⁻(F), or ``not determined``.
    :ivar structure: ``Z2^λ`` or ``undetermined``.
    :ivar rank_sequence: Claimed 2-ranks of A_n(F) by level.
    :ivar assumptions: Named hypotheses with their status.
    :ivar kida: The data fed to Kida's formula, when it was applied.
    """

    pair: tuple[int, int]
    condition: str
    q_mod_16: int
    no_finite_part: bool
    lambda_minus: Union[int, str]
    structure: str
    rank_sequence: dict[int, RankClaim] = field(default_factory=dict)
    assumptions: tuple[Assumption, ...] = ()
    kida: Optional[KidaInput] = None

    def to_dict(self) -> dict:
        return {
            'pair': list(self.pair),
            'condition': self.condition,
            'q_mod_16': self.q_mod_16,
            'no_finite_part': self.no_finite_part,
            'lambda': self.lambda_minus,
            'structure': self.structure,
            'rank_sequence': {str(level): str(claim) for level, claim
                              in sorted(self.rank_sequence.items())},
            'assumptions': [assumption.to_dict()
                            for assumption in self.assumptions],
            'kida': self.kida.to_dict() if self.kida else None
        }
