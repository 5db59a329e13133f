from sympy import isprime

from app.models.condition import ConditionClass


def legendre(a: int, p: int) -> int:
    """
    Compute the Legendre symbol (a/p).

    This function uses Euler's criterion, a^((p-1)/2) mod p.

    :param a: Any integer.
    :param p: An odd prime.
    :returns: -1, 0 or 1.
    :raises ValueError: If p is not an odd prime.
    """

    if p == 2 or not isprime(p):
        raise ValueError({'error': 'NOT_AN_ODD_PRIME', 'p': p})

    residue = pow(a, (p - 1) // 2, p)
    return -1 if residue == p - 1 else residue


def check_conditions(p: int, q: int) -> ConditionClass:
    """
    Classify a pair of distinct odd primes.

    :param p: The first prime.
    :param q: The second prime, the one ≡ 7 (mod 8) in both families.
    :returns: The condition flags, residues and Legendre symbols.
    :raises ValueError: If p or q is not an odd prime, or p = q.
    """

    for value in (p, q):
        if value == 2 or not isprime(value):
            raise ValueError({'error': 'NOT_AN_ODD_PRIME', 'value': value})
    if p == q:
        raise ValueError({'error': 'PRIMES_NOT_DISTINCT', 'pair': [p, q]})

    p_over_q = legendre(p, q)
    two_over_p = legendre(2, p)
    q_is_seven = q % 8 == 7

    cond1 = q_is_seven and p_over_q == 1 and two_over_p == -1
    cond2 = q_is_seven and p % 8 == 5 and p_over_q == -1
    remark = q_is_seven and p % 8 in (3, 5)

    return ConditionClass(p, q, cond1, cond2, p % 8, q % 8, q % 16,
                          p_over_q, two_over_p, remark == cond1)
