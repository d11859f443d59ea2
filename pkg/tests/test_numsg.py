"""Numerical monoid layer: normalization, Frobenius numbers, Apery sets, and
factorization enumeration, each checked against a definitional oracle."""

import random
from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest

from puiseux import numsg
from puiseux.errors import NegativeValue, NotAMember, TrivialMonoid


def brute_members(gens, limit):
    """Reachability oracle: all monoid elements up to limit."""
    reachable = bytearray(limit + 1)
    reachable[0] = 1
    for n in range(1, limit + 1):
        reachable[n] = any(n >= g and reachable[n - g] for g in gens)
    return reachable


def brute_frobenius(gens):
    """Largest non-member, by scanning past a run of len(min(gens)) members."""
    if 1 in gens:
        return None
    bound = max(gens) ** 2  # generous; a full run of min(gens) hits earlier
    table = brute_members(gens, bound)
    last_gap = None
    for n in range(bound + 1):
        if not table[n]:
            last_gap = n
    return last_gap


def coprime_pairs(bound):
    for a in range(2, bound + 1):
        for b in range(a + 1, bound + 1):
            if gcd(a, b) == 1:
                yield a, b


def test_normalize_scales_to_coprime_integers():
    n = numsg.normalize([Fraction(3, 2), Fraction(5, 2)])
    assert n.gens == (3, 5) and n.scale == 2
    n = numsg.normalize([Fraction(3, 7), Fraction(5, 7)])
    assert n.gens == (3, 5) and n.scale == 7
    n = numsg.normalize([7])
    assert n.gens == (1,) and n.scale == Fraction(1, 7)
    n = numsg.normalize([4, 6])
    assert n.gens == (2, 3) and n.scale == Fraction(1, 2)
    n = numsg.normalize([Fraction(2, 3), Fraction(4, 5)])
    assert n.gens == (5, 6) and n.scale == Fraction(15, 2)


def test_normalize_drops_redundant_generators():
    n = numsg.normalize([3, 5, 8, 11])
    assert n.gens == (3, 5)
    assert str(n) == "<3, 5>"


def test_normalize_rejects_bad_input():
    with pytest.raises(TrivialMonoid):
        numsg.normalize([])
    with pytest.raises(NegativeValue):
        numsg.normalize([0, 0])
    with pytest.raises(NegativeValue):
        numsg.normalize([3, -5])


def test_member_against_oracle():
    rng = random.Random(6)
    for _ in range(40):
        gens = tuple(sorted(rng.sample(range(2, 30), rng.randrange(2, 4))))
        n = numsg.normalize(list(gens))
        table = brute_members(n.gens, 150)
        for x in range(151):
            assert numsg.member(n, x) == bool(table[x])


def test_frobenius_matches_brute_scan():
    for a, b in coprime_pairs(18):
        n = numsg.normalize([a, b])
        assert numsg.frobenius(n) == brute_frobenius((a, b))
    n3 = numsg.normalize([6, 9, 20])
    assert numsg.frobenius(n3) == brute_frobenius((6, 9, 20)) == 43


def test_frobenius_two_generator_closed_form():
    for a, b in coprime_pairs(18):
        assert numsg.frobenius(numsg.normalize([a, b])) == a * b - a - b


def test_frobenius_of_all_integers_is_none():
    assert numsg.frobenius(numsg.normalize([1])) is None
    assert numsg.frobenius(numsg.normalize([2, 3])) == 1


def test_apery_definition():
    n = numsg.normalize([3, 5])
    assert numsg.apery(n, 3) == [0, 10, 5]
    rng = random.Random(7)
    for _ in range(20):
        gens = tuple(sorted(rng.sample(range(2, 25), rng.randrange(2, 4))))
        nm = numsg.normalize(list(gens))
        m = nm.gens[rng.randrange(len(nm.gens))]
        ap = numsg.apery(nm, m)
        assert len(ap) == m
        for residue, least in enumerate(ap):
            assert least % m == residue
            assert numsg.member(nm, least)
            if least >= m:
                assert not numsg.member(nm, least - m)
    with pytest.raises(NotAMember):
        numsg.apery(n, 4)


def test_factorizations_match_unpruned_oracle():
    rng = random.Random(8)
    for _ in range(30):
        gens = tuple(sorted(rng.sample(range(2, 20), rng.randrange(1, 4))))
        n = numsg.normalize(list(gens))
        x = rng.randrange(0, 80)
        fast = numsg.factorizations(n, x)
        assert fast == sorted(fast)
        assert set(fast) == set(numsg.oracle_factorizations(n, x))
        for vec in fast:
            assert sum(c * g for c, g in zip(vec, n.gens)) == x
        expected_lengths = sorted({sum(v) for v in fast})
        assert numsg.lengths(n, x) == expected_lengths


def test_equal_length_pair_is_a_real_equal_length_collision():
    for gens in combinations(range(2, 21), 3):
        try:
            n = numsg.normalize(list(gens))
        except TrivialMonoid:
            continue
        if len(n.gens) < 3:
            continue
        x, z1, z2 = numsg.equal_length_pair(n)
        assert z1 != z2
        assert sum(z1) == sum(z2)
        for z in (z1, z2):
            assert sum(c * g for c, g in zip(z, n.gens)) == x
    with pytest.raises(NotAMember):
        numsg.equal_length_pair(numsg.normalize([3, 5]))


def test_hfm_pair_lengths_differ():
    for gens in combinations(range(2, 16), 2):
        n = numsg.normalize(list(gens))
        if len(n.gens) < 2:
            continue
        x, z1, z2 = numsg.hfm_pair(n)
        assert sum(z1) != sum(z2)
        for z in (z1, z2):
            assert sum(c * g for c, g in zip(z, n.gens)) == x
