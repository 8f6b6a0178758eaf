import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfapprox.characters import (
    char_value,
    character_from_id,
    enumerate_characters,
)
from selfapprox.errors import DomainError


def euler_phi(q):
    return sum(1 for n in range(1, q + 1) if math.gcd(n, q) == 1)


def test_modulus_one_is_zeta_coefficient_stream():
    chars = enumerate_characters(1)
    assert len(chars) == 1
    chi = chars[0]
    assert chi.principal
    assert all(char_value(chi, n) == 1 for n in range(1, 20))


def test_mod_four_characters():
    chars = enumerate_characters(4)
    assert len(chars) == 2
    chi = chars[1]
    assert not chi.principal
    assert char_value(chi, 1) == 1
    assert abs(char_value(chi, 3) + 1) < 1e-15
    assert char_value(chi, 2) == 0 and char_value(chi, 4) == 0


def test_mod_five_characters():
    chars = enumerate_characters(5)
    assert len(chars) == 4
    allowed = {1 + 0j, -1 + 0j, 1j, -1j, 0j}
    for chi in chars:
        assert chi.order in (1, 2, 4)
        for n in range(1, 6):
            v = char_value(chi, n)
            assert min(abs(v - w) for w in allowed) < 1e-14


@pytest.mark.parametrize("q", [1, 2, 3, 4, 8, 9, 12, 16, 24, 36, 45, 60, 100])
def test_counts_and_uniqueness(q):
    chars = enumerate_characters(q)
    assert len(chars) == euler_phi(q)
    assert sum(c.principal for c in chars) == 1
    assert len({c.value_table for c in chars}) == len(chars)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 15, 16, 21, 40, 63])
def test_orthogonality(q):
    for chi in enumerate_characters(q):
        total = sum(char_value(chi, n) for n in range(1, q + 1))
        if chi.principal:
            assert abs(total - euler_phi(q)) < 1e-10
        else:
            assert abs(total) < 1e-12


def test_vanishing_exactly_on_non_units():
    for q in (4, 6, 12, 18):
        for chi in enumerate_characters(q):
            for n in range(1, q + 1):
                if math.gcd(n, q) > 1:
                    assert char_value(chi, n) == 0
                else:
                    assert abs(abs(char_value(chi, n)) - 1) < 1e-14


def test_periodicity_and_reduction():
    chi = character_from_id("4:1")
    assert abs(char_value(chi, 7) + 1) < 1e-15  # 7 = 3 mod 4
    for n in (-5, 11, 103):
        assert abs(char_value(chi, n) - char_value(chi, n % 4)) < 1e-15
    chi0 = enumerate_characters(5)[0]
    assert abs(char_value(chi0, 12) - 1) < 1e-15
    assert char_value(chi, 8) == 0  # multiple of q


@settings(max_examples=200, deadline=None)
@given(
    q=st.integers(min_value=1, max_value=60),
    m=st.integers(min_value=1, max_value=500),
    n=st.integers(min_value=1, max_value=500),
)
def test_complete_multiplicativity(q, m, n):
    for chi in enumerate_characters(q):
        lhs = char_value(chi, m * n)
        rhs = char_value(chi, m) * char_value(chi, n)
        assert abs(lhs - rhs) < 1e-12


def test_value_table_entries_are_exact_angles():
    chi = enumerate_characters(5)[1]
    angles = {a for a in chi.value_table if a is not None}
    assert all(isinstance(a, Fraction) and 0 <= a < 1 for a in angles)
    assert chi.angle(1) == 0


def test_lexicographic_labels_stable():
    chi = character_from_id("4:1")
    assert chi.label == "4:1" and not chi.principal
    assert character_from_id("4:0").principal


def test_bad_inputs():
    with pytest.raises(DomainError):
        enumerate_characters(0)
    with pytest.raises(DomainError):
        character_from_id("4-1")
    with pytest.raises(DomainError):
        character_from_id("4:2")


def test_conjugate_character():
    for chi in enumerate_characters(5):
        bar = chi.conjugate()
        for n in range(1, 6):
            assert abs(char_value(bar, n) - char_value(chi, n).conjugate()) < 1e-14
