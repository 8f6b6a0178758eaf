"""Exact construction and evaluation of Dirichlet characters mod q.

Characters are built from the cyclic decomposition of (Z/qZ)*: a primitive
root for each odd prime-power factor, the generator 3 for modulus 4, and the
pair {-1, 5} for higher powers of two.  Character values are stored as exact
rational angles (a Fraction k/n standing for e^{2 pi i k/n}); floating point
enters only when a value is requested as a complex number.
"""

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import DomainError

__all__ = [
    "DirichletCharacter",
    "enumerate_characters",
    "char_value",
    "character_from_id",
]


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character mod q with exact root-of-unity values.

    value_table[i] is the rational angle of chi(i+1), or None when
    gcd(i+1, q) > 1 (where chi vanishes).  `index` is the lexicographic
    position of the character among all characters mod q, ordered by the
    exponents of the generator images; index 0 is always the principal
    character.
    """

    modulus: int
    value_table: tuple  # tuple[Optional[Fraction]]
    order: int
    principal: bool
    index: int

    @property
    def label(self) -> str:
        return f"{self.modulus}:{self.index}"

    def angle(self, n: int) -> Optional[Fraction]:
        """Exact angle of chi(n) as a Fraction in [0, 1), or None if chi(n)=0."""
        return self.value_table[(n - 1) % self.modulus]

    def __call__(self, n: int) -> complex:
        return char_value(self, n)

    def conjugate(self) -> "DirichletCharacter":
        table = tuple(None if a is None else (-a) % 1 for a in self.value_table)
        for chi in enumerate_characters(self.modulus):
            if chi.value_table == table:
                return chi
        raise AssertionError("conjugate character not found")  # pragma: no cover

    @property
    def is_real(self) -> bool:
        return all(a is None or a.denominator <= 2 for a in self.value_table)


def _primitive_root(pk: int, p: int) -> int:
    """A generator of (Z/p^k Z)* for odd prime p."""
    phi = pk - pk // p
    factors = set()
    n = phi
    f = 2
    while f * f <= n:
        while n % f == 0:
            factors.add(f)
            n //= f
        f += 1
    if n > 1:
        factors.add(n)
    for g in range(2, pk):
        if math.gcd(g, pk) != 1:
            continue
        if all(pow(g, phi // ell, pk) != 1 for ell in factors):
            return g
    raise AssertionError("no primitive root found")  # pragma: no cover


def _factorize(q: int):
    out = []
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _component_generators(q: int):
    """Generators of (Z/qZ)* as CRT-lifted residues, with their orders."""
    gens = []
    for p, e in _factorize(q):
        pk = p**e
        rest = q // pk
        local = []
        if p == 2:
            if e == 2:
                local = [(3, 2)]
            elif e >= 3:
                local = [(pk - 1, 2), (5, 2 ** (e - 2))]
            # e == 1: trivial unit group, no generator
        else:
            local = [(_primitive_root(pk, p), pk - pk // p)]
        for g, m in local:
            if rest == 1:
                gens.append((g % q, m))
            else:
                # lift to a residue that is g mod p^e and 1 mod q/p^e
                inv = pow(pk, -1, rest)
                lifted = (g * rest * pow(rest, -1, pk) + pk * inv) % q
                gens.append((lifted, m))
    return gens


@lru_cache(maxsize=256)
def _group_data(q: int):
    gens = _component_generators(q)
    orders = tuple(m for _, m in gens)
    # discrete logs of every unit w.r.t. the generator tuple
    dlog = {}
    for exps in itertools.product(*[range(m) for m in orders]):
        r = 1
        for (g, _), e in zip(gens, exps):
            r = r * pow(g, e, q) % q
        dlog[r] = exps
    return orders, dlog


@lru_cache(maxsize=64)
def enumerate_characters(q: int) -> tuple:
    """All phi(q) Dirichlet characters mod q, in lexicographic generator-image
    order (so the ordering, and hence the "q:index" labels, is reproducible)."""
    if q < 1:
        raise DomainError(f"modulus must be positive, got {q}")
    orders, dlog = _group_data(q)
    exponent = math.lcm(*orders) if orders else 1
    chars = []
    for idx, imgs in enumerate(itertools.product(*[range(m) for m in orders])):
        table = [None] * q
        for r, exps in dlog.items():
            num = sum(e * k * (exponent // m) for e, k, m in zip(exps, imgs, orders))
            table[r - 1] = Fraction(num % exponent, exponent)
        order = math.lcm(*[m // math.gcd(m, k) for m, k in zip(orders, imgs)]) if orders else 1
        principal = all(k == 0 for k in imgs)
        chars.append(
            DirichletCharacter(q, tuple(table), order, principal, idx)
        )
    return tuple(chars)


def char_value(chi: DirichletCharacter, n: int) -> complex:
    """chi(n) as a complex double; n is reduced mod q first."""
    ang = chi.value_table[(n - 1) % chi.modulus]
    if ang is None:
        return 0j
    return cmath.exp(2j * cmath.pi * float(ang))


def character_from_id(label: str) -> DirichletCharacter:
    """Resolve a "q:index" label, e.g. "4:1" for the nonprincipal character mod 4."""
    try:
        q_str, idx_str = label.split(":")
        q, idx = int(q_str), int(idx_str)
    except ValueError as exc:
        raise DomainError(f"malformed character id {label!r}; expected 'q:index'") from exc
    chars = enumerate_characters(q)
    if not 0 <= idx < len(chars):
        raise DomainError(f"character index {idx} out of range for modulus {q} (phi={len(chars)})")
    return chars[idx]
