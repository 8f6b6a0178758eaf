"""Prime tables shared by the Euler-product and Diophantine machinery."""

from functools import lru_cache

import numpy as np

DEFAULT_SIEVE_BOUND = 10**6


@lru_cache(maxsize=16)
def _sieve(bound: int) -> tuple:
    if bound < 2:
        return ()
    mask = np.ones(bound + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, int(bound**0.5) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return tuple(int(p) for p in np.flatnonzero(mask))


def primes_upto(bound) -> list:
    """All primes p <= bound, ascending."""
    bound = int(bound)
    if bound < 2:
        return []
    table = _sieve(max(bound, 1000))
    out = []
    for p in table:
        if p > bound:
            break
        out.append(p)
    return out


def primes_between(lo, hi) -> list:
    """Primes p with lo < p <= hi."""
    return [p for p in primes_upto(hi) if p > lo]


def prime_zeta_tail(exponent: float, v: float, cutoff: int = DEFAULT_SIEVE_BOUND) -> float:
    """Sum_{p > v} p^{-exponent}, primes truncated at `cutoff`.

    The omitted remainder is below cutoff^(1-exponent)/((exponent-1)*log(cutoff))
    for exponent > 1, negligible at the exponents (> 1) used here.
    """
    if exponent <= 1:
        raise ValueError("prime zeta tail requires exponent > 1")
    ps = np.array(primes_between(v, cutoff), dtype=float)
    return float(np.sum(ps ** (-exponent)))
