from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional


class Verdict(str, Enum):
    """
    Epistemic status of a claim.

    VERIFIED claims were computed exactly, CONSISTENT claims match a cited
    constant that is not recomputed, ASSUMED claims are hypotheses carried
    as flags.
    """

    VERIFIED = 'VERIFIED'
    CONSISTENT = 'CONSISTENT'
    ASSUMED = 'ASSUMED'


@dataclass(frozen=True)
class Claim:
    """
    Represents one checked statement of a verification run.

    :ivar name: A short identifier, e.g. ``unit_index``.
    :ivar verdict: The epistemic status.
    :ivar passed: Whether the check succeeded.
    :ivar detail: Expected and actual values, or the error payload.
    """

    name: str
    verdict: Verdict
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'verdict': self.verdict.value,
            'passed': self.passed,
            'detail': self.detail
        }


@dataclass
class VerificationReport:
    """
    Represents the full verification of one prime pair.

    Sections that do not apply to the pair stay empty. Claims are appended
    in the order the checks run.
    """

    pair: tuple[int, int]
    condition: str
    certificates: list[dict] = field(default_factory=list)
    fsu: dict = field(default_factory=dict)
    h2_table: dict = field(default_factory=dict)
    splitting: dict = field(default_factory=dict)
    iwasawa: dict = field(default_factory=dict)
    verdicts: list[Claim] = field(default_factory=list)
    timestamp: Optional[str] = None

    @property
    def in_family(self) -> bool:
        return self.condition != 'out of family'

    @property
    def passed(self) -> bool:
        return all(claim.passed for claim in self.verdicts)

    def failures(self) -> list[Claim]:
        return [claim for claim in self.verdicts if not claim.passed]

    def add(self, name: str, verdict: Verdict, passed: bool,
            **detail: Any) -> Claim:
        claim = Claim(name, verdict, passed, detail)
        self.verdicts.append(claim)
        return claim

    def to_dict(self) -> dict:
        report = {
            'pair': list(self.pair),
            'condition': self.condition,
            'certificates': self.certificates,
            'fsu': self.fsu,
            'h2_table': self.h2_table,
            'splitting': self.splitting,
            'iwasawa': self.iwasawa,
            'verdicts': [claim.to_dict() for claim in self.verdicts]
        }
        if self.timestamp is not None:
            report['timestamp'] = self.timestamp
        return report


@dataclass(frozen=True)
class SurveyResult:
    """
    Represents a batch verification over all qualifying pairs.

    :ivar bound: Both primes are at most ``bound``.
    :ivar condition: Which condition classes were enumerated.
    :ivar reports: One report per pair, ordered by (p, q).
    """

    bound: int
    condition: str
    reports: tuple[VerificationReport, ...]

    @property
    def failures(self) -> int:
        return sum(len(report.failures()) for report in self.reports)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            'bound': self.bound,
            'condition': self.condition,
            'pairs': len(self.reports),
            'failures': self.failures,
            'reports': [report.to_dict() for report in self.reports]
        }
