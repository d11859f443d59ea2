"""Atom sets, membership decisions, factorization enumeration, and the
canonical prime-reciprocal expansion.

Brute-force oracles: numerical-monoid reachability for finitely generated
cases, exhaustive enumeration of canonical expansions for uniqueness, and
direct evaluation (sum of count * atom) for every enumerated vector."""

import random
from fractions import Fraction
from itertools import product

import pytest

from puiseux import numsg
from puiseux.errors import (
    NonSquarefreeDenominator,
    NotAMember,
    UnsupportedQuery,
    ValidationError,
)
from puiseux.factor import (
    EmptySet,
    FiniteList,
    IntervalRats,
    PowersOf,
    PrimeFracs,
    ReciprocalPrimes,
    ScaledAtoms,
    atoms,
    factorizations,
    is_atom,
    lengths,
    member_bounded,
    pr_decompose,
    pr_stats,
    zs_bounded,
)
from puiseux.model import parse

F = Fraction


def assert_sound(x, fz):
    assert fz.vectors == sorted(fz.vectors)
    for vec in fz.vectors:
        assert len(vec) == len(fz.basis)
        assert all(c >= 0 for c in vec)
        assert sum(c * b for c, b in zip(vec, fz.basis)) == x


# ── atom descriptors ───────────────────────────────────────────────────────


def test_atoms_finite_gen():
    desc = atoms(parse("<3, 5>"))
    assert desc == FiniteList((F(3), F(5)))
    assert desc.count() == 2
    assert desc.contains(F(3)) and not desc.contains(F(8)) and not desc.contains(F(1))
    assert atoms(parse("<2, 4, 5>")) == FiniteList((F(2), F(5)))
    assert atoms(parse("N")) == FiniteList((F(1),))
    assert atoms(parse("S(3)")) == FiniteList((F(1),))


def test_atoms_cyclic():
    desc = atoms(parse("S(5/2)"))
    assert isinstance(desc, PowersOf)
    assert desc.contains(F(1)) and desc.contains(F(25, 4))
    assert not desc.contains(F(5, 3)) and not desc.contains(F(2))
    assert desc.sample(3) == [F(1), F(5, 2), F(25, 4)]
    assert desc.count() is None
    assert isinstance(atoms(parse("S(2/3)")), PowersOf)
    assert atoms(parse("S(1/2)")) == EmptySet()


def test_atoms_tail_interval():
    desc = atoms(parse("T(2)"))
    assert desc == IntervalRats(F(2), F(4))
    assert desc.contains(F(2)) and desc.contains(F(7, 2))
    assert not desc.contains(F(4)) and not desc.contains(F(1))
    assert desc.count() is None


def test_atoms_prime_families():
    pr = atoms(parse("PR"))
    assert isinstance(pr, ReciprocalPrimes)
    assert pr.contains(F(1, 7)) and not pr.contains(F(1, 6)) and not pr.contains(F(1, 4))
    assert pr.sample(3) == [F(1, 2), F(1, 3), F(1, 5)]
    pf = atoms(parse("PF"))
    assert isinstance(pf, PrimeFracs)
    for good in (F(1, 2), F(2, 3), F(4, 5), F(6, 7)):
        assert pf.contains(good)
    assert not pf.contains(F(3, 4)) and not pf.contains(F(5, 6))
    idm = atoms(parse("ID"))
    for good in (F(10, 3), F(6, 5), F(50, 7), F(12, 11), F(170, 13), F(18, 17)):
        assert idm.contains(good)
    assert not idm.contains(F(6, 7)) and not idm.contains(F(10, 5))


def test_atoms_finite_atom_example():
    assert atoms(parse("FA(2, 3, 5)")) == FiniteList((F(2), F(3)))
    assert atoms(parse("FA(3, 2, 5)")) == FiniteList((F(3), F(4)))
    assert atoms(parse("FA(4, 3, 5)")) == FiniteList((F(4), F(6), F(7)))
    assert atoms(parse("FA(2, 3, 7)")) == FiniteList((F(2), F(3)))


def test_atoms_scale_transport():
    assert atoms(parse("2 * <3, 5>")) == FiniteList((F(6), F(10)))
    assert atoms(parse("3 * T(2)")) == IntervalRats(F(6), F(12))
    scaled_pr = atoms(parse("2 * PR"))
    assert isinstance(scaled_pr, ScaledAtoms)
    assert scaled_pr.contains(F(2, 7)) and scaled_pr.contains(F(2, 3))
    assert not scaled_pr.contains(F(1, 3))
    assert scaled_pr.sample(2) == [F(1), F(2, 3)]


def test_atoms_union():
    assert isinstance(atoms(parse("PR union T(1)")), ReciprocalPrimes)
    assert atoms(parse("PF union ID")) is None
    assert atoms(parse("PF union T(2)")) is None
    # a rescaled tail union anchors at threshold 1 and transports back
    desc = atoms(parse("2 * (PR union T(1))"))
    assert isinstance(desc, ScaledAtoms)
    assert desc.contains(F(2, 7)) and not desc.contains(F(1, 7))
    assert desc.sample(2) == [F(1), F(2, 3)]


# ── membership ─────────────────────────────────────────────────────────────


def in_finite_gen(nm, x):
    y = F(x) * nm.scale
    return y.denominator == 1 and numsg.member(nm, int(y))


def test_member_finite_gen_matches_reachability():
    rng = random.Random(16)
    for _ in range(25):
        gens = sorted(rng.sample(range(2, 20), rng.randrange(1, 4)))
        m = parse("<" + ", ".join(str(g) for g in gens) + ">")
        nm = numsg.normalize([F(g) for g in gens])
        for x in range(0, 60):
            verdict, _ = member_bounded(m, F(x))
            assert verdict == ("yes" if in_finite_gen(nm, x) else "no")
        verdict, _ = member_bounded(m, F(7, 2))
        assert verdict == "no"


def test_member_cyclic_matches_power_window():
    for text, r, caps in [("S(2/3)", F(2, 3), (40, 3)), ("S(5/2)", F(5, 2), (40, 3))]:
        m = parse(text)
        b = r.denominator
        for num in range(0, caps[0]):
            for k in range(0, caps[1] + 1):
                x = F(num, b**k)
                verdict, _ = member_bounded(m, x)
                depth = k + 1 if r < 1 else 12
                vectors = zs_bounded(m, x, depth)
                assert verdict == ("yes" if vectors else "no"), (text, x)


def test_member_prime_families_known_values():
    pf = parse("PF")
    for x, expected in [
        (F(1, 2), "yes"),
        (F(1), "yes"),
        (F(7, 6), "yes"),
        (F(1, 3), "no"),
        (F(1, 6), "no"),
        (F(5, 6), "no"),
        (F(31, 15), "no"),
    ]:
        verdict, witness = member_bounded(pf, x)
        assert verdict == expected, x
        if expected == "yes" and x != 0:
            assert witness
    idm = parse("ID")
    for x, expected in [
        (F(6, 5), "yes"),
        (F(10, 3), "yes"),
        (F(68, 15), "yes"),
        (F(12, 5), "yes"),
        (F(8, 5), "no"),
        (F(2, 3), "no"),
        (F(1), "no"),
        (F(31, 15), "no"),
    ]:
        verdict, _ = member_bounded(idm, x)
        assert verdict == expected, x


def test_member_random_atom_sums():
    rng = random.Random(17)
    cases = {
        "PR": [F(1, p) for p in (2, 3, 5, 7, 11, 13)],
        "PF": [F(p - 1, p) for p in (2, 3, 5, 7, 11)],
        "ID": [F(10, 3), F(6, 5), F(50, 7), F(12, 11)],
        "S(2/3)": [F(2, 3) ** k for k in range(6)],
        "S(5/2)": [F(5, 2) ** k for k in range(6)],
        "FA(2, 3, 5)": [F(2), F(3)] + [F(5, 3**k) for k in range(4)],
        "PF union ID": [F(1, 2), F(6, 5)],
    }
    for text, pool in cases.items():
        m = parse(text)
        for _ in range(40):
            x = sum(rng.choice(pool) for _ in range(rng.randrange(1, 5)))
            verdict, _ = member_bounded(m, x)
            assert verdict == "yes", (text, x)


def test_member_union_exact_filtering():
    m = parse("PF union ID")
    for x, expected in [(F(1, 6), "no"), (F(7, 6), "yes"), (F(5, 6), "no")]:
        verdict, _ = member_bounded(m, x)
        assert verdict == expected, x
    # cross-part sum: in neither part alone, found by the split search
    verdict, witness = member_bounded(m, F(17, 10))
    assert verdict == "yes" and witness
    # ruling this out needs joint reasoning; "unknown" is the honest verdict
    verdict, _ = member_bounded(m, F(31, 15))
    assert verdict == "unknown"
    tail = parse("PR union T(1)")
    for x, expected in [(F(1, 4), "no"), (F(9, 4), "yes"), (F(1, 5), "yes"), (F(1, 6), "no")]:
        verdict, _ = member_bounded(tail, x)
        assert verdict == expected, x


def test_is_atom():
    assert is_atom(parse("PR"), F(1, 7)) == "yes"
    assert is_atom(parse("PR"), F(5, 6)) == "no"
    assert is_atom(parse("PR"), F(1)) == "no"
    assert is_atom(parse("T(1)"), F(3, 2)) == "yes"
    assert is_atom(parse("T(1)"), F(2)) == "no"
    assert is_atom(parse("S(2/3)"), F(4, 9)) == "yes"
    assert is_atom(parse("S(2/3)"), F(2)) == "no"
    assert is_atom(parse("<3, 5>"), F(3)) == "yes"
    assert is_atom(parse("<3, 5>"), F(8)) == "no"
    assert is_atom(parse("<3, 5>"), F(4)) == "no"
    assert is_atom(parse("FA(2, 3, 5)"), F(5, 3)) == "no"
    assert is_atom(parse("PR union T(1)"), F(1, 7)) == "yes"
    assert is_atom(parse("PF union ID"), F(23, 6), depth=12) == "no"


# ── prime-reciprocal expansion ─────────────────────────────────────────────


def test_pr_decompose_canonical_example():
    dec = pr_decompose(F(59, 30))
    assert dec.integer_part == 0
    assert dec.coeffs == ((2, 1), (3, 2), (5, 4))
    assert dec.to_text() == "1/2 + 2/3 + 4/5"
    assert dec.value() == F(59, 30)
    assert dec.length() == 7
    assert dec.to_json() == {"n": 0, "coeffs": {"2": 1, "3": 2, "5": 4}}
    assert pr_stats(F(59, 30)) == (0, 7)
    assert pr_decompose(F(3)).coeffs == ()
    assert pr_decompose(F(0)).integer_part == 0


def test_pr_decompose_errors():
    with pytest.raises(NonSquarefreeDenominator):
        pr_decompose(F(1, 4))
    with pytest.raises(NotAMember):
        pr_decompose(F(1, 6))
    with pytest.raises(NotAMember):
        pr_decompose(F(-1, 2))


def test_pr_round_trip_random_members():
    rng = random.Random(18)
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    for _ in range(300):
        support = rng.sample(primes, rng.randrange(0, 5))
        coeffs = {p: rng.randrange(1, p) for p in support}
        n = rng.randrange(0, 4)
        x = F(n) + sum((F(a, p) for p, a in coeffs.items()), F(0))
        dec = pr_decompose(x)
        assert dec.integer_part == n
        assert dec.coeffs_dict() == coeffs
        assert all(0 <= a <= p - 1 for p, a in dec.coeffs)


@pytest.mark.parametrize("d", [6, 30, 210])
def test_pr_expansion_unique_exhaustively(d):
    primes = [p for p in (2, 3, 5, 7) if d % p == 0]
    seen = {}
    for n in range(3):
        for alphas in product(*(range(p) for p in primes)):
            x = F(n) + sum((F(a, p) for a, p in zip(alphas, primes)), F(0))
            key = x
            assert key not in seen, (d, x, seen[key], (n, alphas))
            seen[key] = (n, alphas)
            dec = pr_decompose(x)
            assert dec.integer_part == n
            assert dec.coeffs_dict() == {p: a for a, p in zip(alphas, primes) if a}


def test_pr_stats_monotone_under_addition():
    rng = random.Random(19)
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]

    def random_member(allow_zero):
        support = rng.sample(primes, rng.randrange(0, 4))
        x = F(rng.randrange(0, 3)) + sum((F(rng.randrange(1, p), p) for p in support), F(0))
        if not allow_zero and x == 0:
            return F(1, 2)
        return x

    for _ in range(200):
        y = random_member(allow_zero=True)
        z = random_member(allow_zero=False)
        x = y + z
        ny, sy = pr_stats(y)
        nx, sx = pr_stats(x)
        assert ny <= nx
        if ny == nx:
            assert sy < sx


# ── factorization enumeration ──────────────────────────────────────────────


def test_zs_bounded_ledger_example():
    assert zs_bounded(parse("S(2/3)"), 2, 2) == [(0, 1, 3), (0, 3, 0), (2, 0, 0)]


def test_zs_bounded_powers_are_unit_vectors():
    for text, r, top in [("S(2/3)", F(2, 3), 5), ("S(5/2)", F(5, 2), 7)]:
        m = parse(text)
        for j in range(top):
            vecs = zs_bounded(m, r**j, 10)
            unit = tuple(1 if i == j else 0 for i in range(11))
            assert vecs == [unit], (text, j)


def test_zs_bounded_homomorphism():
    rng = random.Random(20)
    for text, r in [("S(2/3)", F(2, 3)), ("S(5/2)", F(5, 2)), ("S(3/5)", F(3, 5))]:
        m = parse(text)
        for _ in range(25):
            depth = rng.randrange(0, 7)
            x = F(rng.randrange(0, 12), rng.choice([1, r.denominator, r.denominator**2]))
            vecs = zs_bounded(m, x, depth)
            assert vecs == sorted(vecs)
            for vec in vecs:
                assert sum(c * r**k for k, c in enumerate(vec)) == x


def test_zs_bounded_validation():
    with pytest.raises(ValidationError):
        zs_bounded(parse("S(3)"), 2, 4)
    with pytest.raises(ValidationError):
        zs_bounded(parse("S(2/3)"), 2, -1)
    assert zs_bounded(parse("S(2/3)"), F(0), 2) == [(0, 0, 0)]
    assert zs_bounded(parse("S(2/3)"), F(-1), 2) == []
    assert zs_bounded(parse("S(2/3)"), F(1, 5), 6) == []


def test_factorizations_frozen_examples():
    fz = factorizations(parse("PR"), F(59, 30))
    assert fz.basis == [F(1, 2), F(1, 3), F(1, 5)]
    assert fz.vectors == [(1, 2, 4)] and fz.complete
    fz = factorizations(parse("PR"), F(5, 6))
    assert fz.vectors == [(1, 1)] and fz.complete
    fz = factorizations(parse("PR"), F(3, 2), max_prime=7)
    assert fz.basis == [F(1, 2), F(1, 3), F(1, 5), F(1, 7)]
    assert fz.vectors == [(1, 0, 0, 7), (1, 0, 5, 0), (1, 3, 0, 0), (3, 0, 0, 0)]
    assert not fz.complete and "p <= 7" in fz.note
    fz = factorizations(parse("PF"), F(7, 6))
    assert fz.basis == [F(1, 2), F(2, 3)] and fz.vectors == [(1, 1)] and fz.complete
    fz = factorizations(parse("ID"), F(68, 15))
    assert fz.basis == [F(10, 3), F(6, 5)] and fz.vectors == [(1, 1)] and fz.complete
    fz = factorizations(parse("<3, 5>"), F(15))
    assert fz.vectors == [(0, 3), (5, 0)] and fz.complete


def test_factorizations_are_sound_sums():
    rng = random.Random(21)
    pr, pf, idm = parse("PR"), parse("PF"), parse("ID")
    for _ in range(40):
        m, pool = rng.choice(
            [
                (pr, [F(1, p) for p in (2, 3, 5, 7, 11)]),
                (pf, [F(p - 1, p) for p in (2, 3, 5, 7)]),
                (idm, [F(10, 3), F(6, 5), F(50, 7)]),
            ]
        )
        x = sum(rng.choice(pool) for _ in range(rng.randrange(1, 4)))
        fz = factorizations(m, x, max_prime=13)
        assert fz.vectors, (m, x)
        assert_sound(x, fz)


def test_factorizations_finite_gen_matches_oracle():
    rng = random.Random(22)
    for _ in range(20):
        gens = sorted(rng.sample(range(2, 16), rng.randrange(2, 4)))
        nm = numsg.normalize([F(g) for g in gens])
        x = rng.randrange(0, 70)
        m = parse("<" + ", ".join(map(str, gens)) + ">")
        try:
            fz = factorizations(m, F(x))
        except NotAMember:
            assert not in_finite_gen(nm, x)
            continue
        y = int(F(x) * nm.scale)
        assert set(fz.vectors) == set(numsg.oracle_factorizations(nm, y))
        assert_sound(F(x), fz)


def test_factorizations_no_atom_factorization_note():
    fz = factorizations(parse("FA(2, 3, 5)"), F(5, 3))
    assert fz.vectors == [] and fz.complete
    assert "no factorization" in fz.note
    fz = factorizations(parse("FA(2, 3, 5)"), F(7))
    assert fz.vectors == [(2, 1)] and fz.complete


def test_factorizations_dense_tail():
    fz = factorizations(parse("T(1)"), F(3, 2))
    assert fz.basis == [F(3, 2)] and fz.vectors == [(1,)] and fz.complete
    fz = factorizations(parse("T(1)"), F(2))
    assert fz.basis == [F(1)] and fz.vectors == [(2,)] and fz.complete
    with pytest.raises(UnsupportedQuery):
        factorizations(parse("T(1)"), F(5, 2))
    with pytest.raises(NotAMember):
        factorizations(parse("T(1)"), F(1, 2))


def test_factorizations_cyclic_completeness():
    fz = factorizations(parse("S(5/2)"), F(5, 2), depth=6)
    assert fz.complete and fz.vectors == [(0, 1, 0, 0, 0, 0, 0)]
    fz = factorizations(parse("S(5/2)"), F(5, 2), depth=1)
    assert not fz.complete
    fz = factorizations(parse("S(2/3)"), F(2), depth=2)
    assert not fz.complete and fz.vectors == [(0, 1, 3), (0, 3, 0), (2, 0, 0)]


def test_factorizations_scale_transport():
    fz = factorizations(parse("2 * PR"), F(5, 3))
    base = factorizations(parse("PR"), F(5, 6))
    assert fz.vectors == base.vectors
    assert fz.basis == [2 * b for b in base.basis]
    assert_sound(F(5, 3), fz)


def test_factorizations_errors():
    with pytest.raises(NotAMember):
        factorizations(parse("PR"), F(1, 4))
    with pytest.raises(NotAMember):
        factorizations(parse("PR"), F(-1))
    with pytest.raises(NotAMember):
        factorizations(parse("<3, 5>"), F(4))
    with pytest.raises(UnsupportedQuery):
        factorizations(parse("PF union ID"), F(7, 6))


def test_lengths():
    assert lengths(parse("T(1)"), F(7, 2)).values == [2, 3]
    assert lengths(parse("T(1)"), F(99)).values == list(range(50, 100))
    assert lengths(parse("T(1)"), F(3, 2)).values == [1]
    assert lengths(parse("<3, 5>"), F(15)).values == [3, 5]
    assert lengths(parse("PR"), F(59, 30)).values == [7]
    assert lengths(parse("2 * T(1)"), F(7)).values == [2, 3]
    assert lengths(parse("FA(2, 3, 5)"), F(5, 3)).values == []
    with pytest.raises(NotAMember):
        lengths(parse("T(1)"), F(1, 2))
    with pytest.raises(UnsupportedQuery):
        lengths(parse("PF union ID"), F(7, 6))
    assert lengths(parse("S(2/3)"), F(2), depth=2).values == [2, 3, 4]
    assert not lengths(parse("S(2/3)"), F(2), depth=2).complete
