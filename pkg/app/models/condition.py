from dataclasses import dataclass


@dataclass(frozen=True)
class ConditionClass:
    """
    Represents the condition class of a prime pair (p, q).

    Condition (1): q ≡ 7 (mod 8), (p/q) = 1 and (2/p) = −1.
    Condition (2): q ≡ 7 (mod 8), p ≡ 5 (mod 8) and (p/q) = −1.

    :ivar p: The first prime.
    :ivar q: The second prime.
    :ivar cond1: Whether condition (1) holds.
    :ivar cond2: Whether condition (2) holds.
    :ivar p_mod_8: p modulo 8.
    :ivar q_mod_8: q modulo 8.
    :ivar q_mod_16: q modulo 16.
    :ivar legendre_p_q: The Legendre symbol (p/q).
    :ivar legendre_2_p: The Legendre symbol (2/p).
    :ivar remark_agrees: Whether the shortcut "q ≡ 7 (mod 8) and
                         p ≡ 3, 5 (mod 8)" gives the same answer as
                         condition (1) for this pair.
    """

    p: int
    q: int
    cond1: bool
    cond2: bool
    p_mod_8: int
    q_mod_8: int
    q_mod_16: int
    legendre_p_q: int
    legendre_2_p: int
    remark_agrees: bool

    @property
    def label(self) -> str:
        if self.cond1:
            return 'condition 1'
        if self.cond2:
            return 'condition 2'
        return 'out of family'

    @property
    def in_family(self) -> bool:
        return self.cond1 or self.cond2

    def to_dict(self) -> dict:
        return {
            'pair': [self.p, self.q],
            'condition': self.label,
            'cond1': self.cond1,
            'cond2': self.cond2,
            'residues': {'p_mod_8': self.p_mod_8, 'q_mod_8': self.q_mod_8,
                         'q_mod_16': self.q_mod_16},
            'legendre': {'p_over_q': self.legendre_p_q,
                         'two_over_p': self.legendre_2_p},
            'remark_agrees': self.remark_agrees
        }
