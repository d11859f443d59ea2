"""Numerical monoid core.

A numerical monoid is an additive submonoid of N0 with finite complement;
equivalently ⟨g_1,…,g_k⟩ with gcd(g_i) = 1.  Any finitely generated monoid
of nonnegative rationals is isomorphic to one: multiply by the lcm of the
generator denominators, divide by the gcd of what remains.  ``scale`` keeps
that multiplier so results can be carried back to the original coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from . import kernels
from .errors import NegativeValue, NotAMember, TrivialMonoid

FactorizationVector = tuple[int, ...]


@dataclass(frozen=True)
class NumericalMonoid:
    gens: tuple[int, ...]  # minimal generating system, ascending, gcd 1
    scale: Fraction = Fraction(1)  # N = scale * (original monoid)

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.gens) + ">"


_TABLES: dict[tuple[int, ...], bytearray] = {}


def _table(gens: tuple[int, ...], need: int) -> bytearray:
    t = _TABLES.get(gens)
    if t is None or len(t) <= need:
        size = max(need, 4 * gens[0] * gens[-1], 64)
        t = kernels.member_table(gens, size)
        _TABLES[gens] = t
    return t


def _minimalize(ints: Sequence[int]) -> tuple[int, ...]:
    """Drop generators representable by the smaller ones."""
    kept: list[int] = []
    for g in sorted(set(ints)):
        if not kept or not _table(tuple(kept), g)[g]:
            kept.append(g)
    return tuple(kept)


def normalize(gens: Iterable[Fraction | int]) -> NumericalMonoid:
    """Carry positive rational generators into a normalized NumericalMonoid."""
    rats = [Fraction(g) for g in gens]
    if not rats:
        raise TrivialMonoid("no generators")
    if any(g <= 0 for g in rats):
        raise NegativeValue("generators must be positive")
    ell = lcm(*(g.denominator for g in rats))
    ints = [int(g * ell) for g in rats]
    g0 = gcd(*ints)
    minimal = _minimalize([n // g0 for n in ints])
    return NumericalMonoid(minimal, Fraction(ell, g0))


def member(n: NumericalMonoid, x: int) -> bool:
    if x < 0:
        return False
    return bool(_table(n.gens, x)[x])


def frobenius(n: NumericalMonoid) -> int | None:
    """Largest integer outside the monoid; None for N0 itself.

    Scans for a run of min(gens) consecutive members: beyond the first such
    run every integer is reachable by adding copies of min(gens), so the
    Frobenius number is the gap right before it.  No closed-form bound is
    assumed; the scan window doubles until the run appears.
    """
    a1 = n.gens[0]
    if a1 == 1:
        return None
    limit = 4 * a1 * n.gens[-1]
    while True:
        t = _table(n.gens, limit)
        run = 0
        for i in range(limit + 1):
            run = run + 1 if t[i] else 0
            if run == a1:
                return i - a1  # i - a1 + 1 starts the run; the gap sits before it
        limit *= 2


def apery(n: NumericalMonoid, m: int) -> list[int]:
    """Least monoid element in each residue class mod m, indexed by residue."""
    if m <= 0 or not member(n, m):
        raise NotAMember(f"{m} is not a nonzero element of {n}")
    out = []
    for residue in range(m):
        x = residue
        while not member(n, x):
            x += m
        out.append(x)
    return out


def factorizations(n: NumericalMonoid, x: int) -> list[FactorizationVector]:
    """All factorization vectors of x over the minimal generators, ascending lex."""
    if x < 0:
        return []
    return kernels.factorizations_kernel(n.gens, x)


def lengths(n: NumericalMonoid, x: int) -> list[int]:
    return sorted({sum(v) for v in factorizations(n, x)})


def oracle_factorizations(n: NumericalMonoid, x: int) -> list[FactorizationVector]:
    """Unpruned reference enumeration (see kernels.oracle_grid); tests only."""
    if x < 0:
        return []
    return kernels.oracle_grid(n.gens, x)


def equal_length_pair(n: NumericalMonoid) -> tuple[int, FactorizationVector, FactorizationVector]:
    """Two distinct equal-length factorizations of one element.

    For minimal generators a1 < a2 < a3, pick m, n0 with
    m*(a2 - a1) = n0*(a3 - a2) in lowest terms; then
    m*a1 + n0*a3 = (m + n0)*a2 gives the pair.  Needs >= 3 generators.
    """
    if len(n.gens) < 3:
        raise NotAMember("need at least three minimal generators")
    a1, a2, a3 = n.gens[:3]
    d1, d2 = a2 - a1, a3 - a2
    g = gcd(d1, d2)
    m, n0 = d2 // g, d1 // g
    x = m * a1 + n0 * a3
    z1 = [0] * len(n.gens)
    z2 = [0] * len(n.gens)
    z1[0], z1[2] = m, n0
    z2[1] = m + n0
    return x, tuple(z1), tuple(z2)


def hfm_pair(n: NumericalMonoid) -> tuple[int, FactorizationVector, FactorizationVector]:
    """Two factorizations of a1*a2 with different lengths (a2 vs a1 copies)."""
    if len(n.gens) < 2:
        raise NotAMember("need at least two minimal generators")
    a1, a2 = n.gens[:2]
    z1 = [0] * len(n.gens)
    z2 = [0] * len(n.gens)
    z1[0] = a2
    z2[1] = a1
    return a1 * a2, tuple(z1), tuple(z2)
