"""Atoms, membership, factorizations, and the canonical decomposition in the
prime-reciprocal monoid.

Atom sets are symbolic descriptors (finite lists, power families, rational
intervals, named infinite families) so that exact atom queries never require
enumeration.  Membership is decided exactly for every single family; only
genuine unions of incomparable families can answer "unknown".  Factorization
enumeration is exact where the monoid is a finite factorization monoid and
explicitly windowed where the full set is infinite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union as TyUnion

from . import numsg
from .errors import (
    NonSquarefreeDenominator,
    NotAMember,
    UnsupportedQuery,
    ValidationError,
)
from .exact import (
    Rat,
    factorize_int,
    is_prime,
    is_squarefree,
    nth_prime,
    prime_index,
    primes_upto,
)
from .kernels import factorizations_kernel, member_table
from .model import (
    CyclicSemiring,
    DenseTail,
    FiniteAtomExample,
    FiniteGen,
    IncreasingDenom,
    MonoidExpr,
    PrimeFracIncreasing,
    PrimeReciprocal,
    Scale,
    TriState,
    Union,
    scaled,
    tail_split,
)

_KERNEL_LIMIT = 2**62  # compiled kernel uses 64-bit integers


def _run_kernel(gens: tuple[int, ...], target: int) -> list[tuple[int, ...]]:
    if target >= _KERNEL_LIMIT or any(g >= _KERNEL_LIMIT for g in gens):
        from . import _kernels_py

        return _kernels_py.factorizations_kernel(gens, target)
    return factorizations_kernel(gens, target)


# ── atom descriptors ───────────────────────────────────────────────────────


@dataclass(frozen=True)
class FiniteList:
    values: tuple[Rat, ...]

    def __post_init__(self):
        ordered = tuple(sorted(set(self.values)))
        object.__setattr__(self, "values", ordered)

    def contains(self, x: Rat) -> bool:
        return x in self.values

    def count(self) -> Optional[int]:
        return len(self.values)

    def sample(self, k: int) -> list[Rat]:
        return list(self.values[:k])

    def to_text(self) -> str:
        return "{" + ", ".join(str(v) for v in self.values) + "}"


@dataclass(frozen=True)
class PowersOf:
    ratio: Rat

    def contains(self, x: Rat) -> bool:
        if x <= 0:
            return False
        a, b = self.ratio.numerator, self.ratio.denominator
        e = _power_exponent(a, x.numerator)
        return e is not None and b**e == x.denominator

    def count(self) -> Optional[int]:
        return None

    def sample(self, k: int) -> list[Rat]:
        return [self.ratio**n for n in range(k)]

    def to_text(self) -> str:
        return f"{{({self.ratio})^n : n >= 0}}"


@dataclass(frozen=True)
class IntervalRats:
    lo: Rat
    hi: Rat

    def contains(self, x: Rat) -> bool:
        return self.lo <= x < self.hi

    def count(self) -> Optional[int]:
        return None

    def sample(self, k: int) -> list[Rat]:
        return [self.lo + (self.hi - self.lo) * i / k for i in range(k)]

    def to_text(self) -> str:
        return f"[{self.lo}, {self.hi}) ∩ Q"


@dataclass(frozen=True)
class ReciprocalPrimes:
    def contains(self, x: Rat) -> bool:
        return x.numerator == 1 and is_prime(x.denominator)

    def count(self) -> Optional[int]:
        return None

    def sample(self, k: int) -> list[Rat]:
        return [Fraction(1, nth_prime(i)) for i in range(1, k + 1)]

    def to_text(self) -> str:
        return "{1/p : p prime}"


@dataclass(frozen=True)
class PrimeFracs:
    def contains(self, x: Rat) -> bool:
        gap = 1 - x
        return 0 < x < 1 and gap.numerator == 1 and is_prime(gap.denominator)

    def count(self) -> Optional[int]:
        return None

    def sample(self, k: int) -> list[Rat]:
        return [Fraction(nth_prime(i) - 1, nth_prime(i)) for i in range(1, k + 1)]

    def to_text(self) -> str:
        return "{(p-1)/p : p prime}"


def _increasing_denom_atom(p: int) -> Fraction:
    """The atom with denominator p: (p^2+1)/p at even prime index, (p+1)/p at
    odd prime index; the index-1 prime 2 is never used."""
    if prime_index(p) % 2 == 0:
        return Fraction(p * p + 1, p)
    return Fraction(p + 1, p)


@dataclass(frozen=True)
class IncreasingDenomAtoms:
    def contains(self, x: Rat) -> bool:
        d = x.denominator
        if d <= 2 or not is_prime(d):
            return False
        return x == _increasing_denom_atom(d)

    def count(self) -> Optional[int]:
        return None

    def sample(self, k: int) -> list[Rat]:
        return [_increasing_denom_atom(nth_prime(i)) for i in range(2, k + 2)]

    def to_text(self) -> str:
        return "{(p^2+1)/p at even prime index, (p+1)/p at odd prime index : p odd prime}"


@dataclass(frozen=True)
class EmptySet:
    def contains(self, x: Rat) -> bool:
        return False

    def count(self) -> Optional[int]:
        return 0

    def sample(self, k: int) -> list[Rat]:
        return []

    def to_text(self) -> str:
        return "{}"


@dataclass(frozen=True)
class ScaledAtoms:
    factor: Rat
    inner: "AtomsDesc"

    def contains(self, x: Rat) -> bool:
        return self.inner.contains(x / self.factor)

    def count(self) -> Optional[int]:
        return self.inner.count()

    def sample(self, k: int) -> list[Rat]:
        return [self.factor * v for v in self.inner.sample(k)]

    def to_text(self) -> str:
        return f"{self.factor} * {self.inner.to_text()}"


AtomsDesc = TyUnion[
    FiniteList,
    PowersOf,
    IntervalRats,
    ReciprocalPrimes,
    PrimeFracs,
    IncreasingDenomAtoms,
    EmptySet,
    ScaledAtoms,
]


def _power_exponent(base: int, value: int) -> Optional[int]:
    if value == 1:
        return 0
    if base == 1:
        return None
    e = 0
    cur = 1
    while cur < value:
        cur *= base
        e += 1
    return e if cur == value else None


def atoms(m: MonoidExpr) -> Optional[AtomsDesc]:
    """Symbolic atom set; None when no settled description exists (unions
    beyond the reciprocal-primes-with-tail case)."""
    if isinstance(m, FiniteGen):
        nm = numsg.normalize(list(m.gens))
        return FiniteList(tuple(Fraction(g) / nm.scale for g in nm.gens))
    if isinstance(m, CyclicSemiring):
        r = m.ratio
        if r.denominator == 1:
            return FiniteList((Fraction(1),))  # S_r = N0
        if r.numerator == 1:
            return EmptySet()  # each power divides the previous one: antimatter
        return PowersOf(r)
    if isinstance(m, PrimeReciprocal):
        return ReciprocalPrimes()
    if isinstance(m, DenseTail):
        return IntervalRats(m.threshold, 2 * m.threshold)
    if isinstance(m, PrimeFracIncreasing):
        return PrimeFracs()
    if isinstance(m, IncreasingDenom):
        return IncreasingDenomAtoms()
    if isinstance(m, FiniteAtomExample):
        ints = [Fraction(k) for k in range(m.m, 2 * m.m) if k != m.q]
        return FiniteList(tuple(ints))
    if isinstance(m, Scale):
        return _rescale_atoms(m.factor, atoms(m.inner))
    if isinstance(m, Union):
        rest, tail = tail_split(m)
        if tail is not None and tail.threshold != 1:
            # anchor the tail at 1 (an isomorphism) and transport the atoms back
            anchored = scaled(Fraction(1) / tail.threshold, m)
            return _rescale_atoms(tail.threshold, atoms(anchored))
        if (
            tail is not None
            and tail.threshold == 1
            and len(rest) == 1
            and isinstance(rest[0], PrimeReciprocal)
        ):
            # atoms 1/p survive below the tail; every tail element x splits
            # as 1/p + (x - 1/p) with x - 1/p still at or above the threshold
            return ReciprocalPrimes()
        return None
    raise TypeError(f"not a MonoidExpr: {m!r}")


def _rescale_atoms(factor: Fraction, inner: Optional[AtomsDesc]) -> Optional[AtomsDesc]:
    if inner is None:
        return None
    if factor == 1:
        return inner
    if isinstance(inner, FiniteList):
        return FiniteList(tuple(factor * v for v in inner.values))
    if isinstance(inner, IntervalRats):
        return IntervalRats(factor * inner.lo, factor * inner.hi)
    if isinstance(inner, EmptySet):
        return inner
    if isinstance(inner, ScaledAtoms):
        return ScaledAtoms(factor * inner.factor, inner.inner)
    return ScaledAtoms(factor, inner)


# ── membership ─────────────────────────────────────────────────────────────


def member_bounded(m: MonoidExpr, x: Rat, depth: int = 8) -> tuple[TriState, Optional[str]]:
    """Tri-state membership with a witness string on "yes".

    Every single family is decided exactly; "no" always rests on an order,
    valuation, or residue obstruction, never on search exhaustion.  Unions of
    several non-tail parts can return "unknown" because cross-part sums have
    no general decision procedure.
    """
    x = Fraction(x)
    if x < 0:
        return "no", None
    if x == 0:
        return "yes", "0 is the empty sum"
    if isinstance(m, FiniteGen):
        return _member_finite(m, x)
    if isinstance(m, CyclicSemiring):
        return _member_cyclic(m.ratio, x)
    if isinstance(m, PrimeReciprocal):
        try:
            dec = pr_decompose(x)
        except (NonSquarefreeDenominator, NotAMember):
            return "no", None
        return "yes", f"{x} = {dec.to_text()}"
    if isinstance(m, DenseTail):
        if x >= m.threshold:
            return "yes", f"{x} >= {m.threshold}"
        return "no", None
    if isinstance(m, PrimeFracIncreasing):
        return _member_prime_frac(x)
    if isinstance(m, IncreasingDenom):
        return _member_increasing_denom(x)
    if isinstance(m, FiniteAtomExample):
        return _member_finite_atom(m, x)
    if isinstance(m, Scale):
        verdict, witness = member_bounded(m.inner, x / m.factor, depth)
        if witness is not None:
            witness = f"{x} = {m.factor} * ({x / m.factor}); {witness}"
        return verdict, witness
    if isinstance(m, Union):
        return _member_union(m, x, depth)
    raise TypeError(f"not a MonoidExpr: {m!r}")


def _member_finite(m: FiniteGen, x: Fraction) -> tuple[TriState, Optional[str]]:
    nm = numsg.normalize(list(m.gens))
    y = x * nm.scale
    if y.denominator != 1 or not numsg.member(nm, int(y)):
        return "no", None
    vec = _run_kernel(nm.gens, int(y))[0]
    mins = [Fraction(g) / nm.scale for g in nm.gens]
    terms = [f"{c}*({g})" for c, g in zip(vec, mins) if c]
    return "yes", f"{x} = " + (" + ".join(terms) if terms else "0")


def _member_cyclic(r: Fraction, x: Fraction) -> tuple[TriState, Optional[str]]:
    """Exact membership in ⟨r^n : n in N0⟩.

    Any representation carry-normalizes (d(r) copies of r^{k+1} trade for
    n(r) copies of r^k) to one with coefficients below d(r) at every positive
    power, and the deepest nonzero coefficient then pins the denominator, so
    the canonical coefficients are forced residue by residue from the deepest
    power down.  The element is a member iff the leftover constant term is a
    nonnegative integer.
    """
    a, b = r.numerator, r.denominator
    d = x.denominator
    depth_needed = 0
    if d > 1:
        if b == 1:
            return "no", None
        b_primes = factorize_int(b)
        for p, e in factorize_int(d).items():
            if p not in b_primes:
                return "no", None  # valuation obstruction at p
            depth_needed = max(depth_needed, -(-e // b_primes[p]))
    coeffs: dict[int, int] = {}
    y = x
    for k in range(depth_needed, 0, -1):
        t = y * b**k
        c = int(t) * pow(a, -k, b) % b if b > 1 else 0
        if c:
            coeffs[k] = c
        y -= c * r**k
    if y.denominator != 1 or y < 0:
        return "no", None  # residue chain leaves no nonnegative constant term
    if y:
        coeffs[0] = int(y)
    terms = []
    for k in sorted(coeffs):
        c = coeffs[k]
        if k == 0:
            terms.append(f"{c}*1")
        elif k == 1:
            terms.append(f"{c}*({r})")
        else:
            terms.append(f"{c}*({r})^{k}")
    return "yes", f"{x} = " + " + ".join(terms)


def _member_prime_frac(x: Fraction) -> tuple[TriState, Optional[str]]:
    """Exact membership in ⟨(p-1)/p⟩: residues at primes of the denominator
    are forced; the integer remainder is absorbed by extra copies of 1/2 taken
    two at a time, so membership reduces to the remainder being >= 0."""
    d = x.denominator
    if not is_squarefree(d):
        return "no", None
    coeffs: dict[int, int] = {}
    rem = x
    for p in sorted(factorize_int(d)):
        alpha = -x.numerator * pow(d // p, -1, p) % p
        if alpha:
            coeffs[p] = alpha
            rem -= alpha * Fraction(p - 1, p)
    if rem < 0:
        return "no", None  # forced residues already exceed x
    assert rem.denominator == 1
    if rem:
        coeffs[2] = coeffs.get(2, 0) + 2 * int(rem)
    terms = [f"{coeffs[p]}*({p - 1}/{p})" for p in sorted(coeffs)]
    return "yes", f"{x} = " + (" + ".join(terms) if terms else "0")


def _member_increasing_denom(x: Fraction) -> tuple[TriState, Optional[str]]:
    """Exact membership in the increasing-denominator example: one atom per
    odd prime, residues forced at denominator primes, and the integer
    remainder must land in the numerical monoid of whole-atom multiples."""
    d = x.denominator
    coeffs: dict[int, int] = {}
    rem = x
    for p, e in factorize_int(d).items():
        if p == 2 or e > 1:
            return "no", None  # denominators are odd and squarefree
    for p in sorted(factorize_int(d)):
        # the atom numerator is ≡ 1 mod p in both index cases
        alpha = x.numerator * pow(d // p, -1, p) % p
        if alpha:
            coeffs[p] = alpha
            rem -= alpha * _increasing_denom_atom(p)
    if rem < 0:
        return "no", None
    assert rem.denominator == 1
    target = int(rem)
    if target:
        # unforced copies come p at a time, so the remainder must lie in the
        # numerical monoid of the integer steps p * atom_p; the step sequence
        # is not monotone in p, but every step is at least p + 1
        steps: list[tuple[int, int]] = []
        for p in _odd_primes():
            if p > target:
                break
            step = int(p * _increasing_denom_atom(p))
            if step <= target:
                steps.append((p, step))
        ints = tuple(s for _, s in steps)
        if not ints or not member_table(ints, target)[target]:
            return "no", None
        vec = _run_kernel(ints, target)[0]
        for (p, _), count in zip(steps, vec):
            if count:
                coeffs[p] = coeffs.get(p, 0) + count * p
    terms = [f"{coeffs[p]}*({_increasing_denom_atom(p)})" for p in sorted(coeffs)]
    return "yes", f"{x} = " + (" + ".join(terms) if terms else "0")


def _odd_primes():
    i = 2
    while True:
        yield nth_prime(i)
        i += 1


def _member_finite_atom(m: FiniteAtomExample, x: Fraction) -> tuple[TriState, Optional[str]]:
    """Exact membership in the finitely-many-atoms example.

    Every element is s + q*v with s = 0 or an integer >= m (the consecutive
    integer generators cover all of Z>=m) and v >= 0 with a p-power
    denominator.  For v > 0 the numerator of x - s must be divisible by q,
    which pins s to a single residue class mod q.
    """
    d = x.denominator
    for p in factorize_int(d):
        if p != m.p:
            return "no", None
    if d == 1 and x >= m.m:
        return "yes", f"{x} = {int(x)} (a sum of the integer generators)"
    s_mod = x.numerator * pow(d, -1, m.q) % m.q
    candidates = []
    if s_mod == 0:
        candidates.append(0)
    first = s_mod if s_mod >= m.m else s_mod + ((m.m - s_mod + m.q - 1) // m.q) * m.q
    candidates.append(first)
    for s in candidates:
        t = x - s
        if t > 0:
            return "yes", f"{x} = {s} + {m.q} * ({t / m.q})"
    return "no", None


def _min_positive(m: MonoidExpr) -> Optional[Fraction]:
    """A positive lower bound on the nonzero elements, or None when positive
    elements get arbitrarily small."""
    if isinstance(m, FiniteGen):
        return min(m.gens)
    if isinstance(m, CyclicSemiring):
        return Fraction(1) if m.ratio >= 1 else None
    if isinstance(m, DenseTail):
        return m.threshold
    if isinstance(m, PrimeFracIncreasing):
        return Fraction(1, 2)
    if isinstance(m, IncreasingDenom):
        return Fraction(6, 5)
    if isinstance(m, Scale):
        inner = _min_positive(m.inner)
        return None if inner is None else m.factor * inner
    if isinstance(m, Union):
        bounds = [_min_positive(p) for p in (m.left, m.right)]
        return None if None in bounds else min(bounds)
    return None  # PrimeReciprocal and FiniteAtomExample reach down to 0


def _member_union(m: Union, x: Fraction, depth: int) -> tuple[TriState, Optional[str]]:
    rest, tail = tail_split(m)
    if tail is not None and x >= tail.threshold:
        return "yes", f"{x} >= {tail.threshold}, inside the dense tail"
    # below the tail threshold the tail contributes only 0, and so does any
    # part whose smallest positive element already exceeds x
    live = [part for part in rest if not (b := _min_positive(part)) or b <= x]
    if not live:
        return "no", None
    if len(live) == 1:
        return member_bounded(live[0], x, depth)
    for part in live:
        verdict, witness = member_bounded(part, x, depth)
        if verdict == "yes":
            return "yes", witness
    # parts can contribute jointly: try splitting off a small verified
    # element of one part and deciding the remainder in another
    for donor in live:
        desc = atoms(donor)
        if desc is None:
            continue
        for a in desc.sample(depth):
            if a <= 0:
                continue
            for k in range(1, int(x / a) + 1):
                remainder = x - k * a
                for other in live:
                    if other is donor:
                        continue
                    verdict, _ = member_bounded(other, remainder, depth)
                    if verdict == "yes":
                        return "yes", f"{x} = {k} * {a} + {remainder}"
    # absence from each part alone proves nothing about joint sums
    return "unknown", None


def is_atom(m: MonoidExpr, x: Rat, depth: int = 8) -> TriState:
    """Atom test against the symbolic atom set, with a bounded two-summand
    search fallback for unions lacking one."""
    x = Fraction(x)
    if x <= 0:
        return "no"
    verdict, _ = member_bounded(m, x, depth)
    if verdict == "no":
        return "no"
    desc = atoms(m)
    if desc is not None:
        return "yes" if desc.contains(x) else "no"
    if verdict == "yes":
        for u in _summand_candidates(m, x, depth):
            if 0 < u < x:
                left, _ = member_bounded(m, u, depth)
                right, _ = member_bounded(m, x - u, depth)
                if left == "yes" and right == "yes":
                    return "no"
    return "unknown"


def _summand_candidates(m: MonoidExpr, x: Fraction, depth: int) -> list[Fraction]:
    out = [x / 2]
    if isinstance(m, Union):
        for part in m.left, m.right:
            desc = atoms(part) if not isinstance(part, Union) else None
            if desc is not None:
                out.extend(desc.sample(depth))
            out.extend(_summand_candidates(part, x, depth) if isinstance(part, Union) else [])
    return out


# ── prime-reciprocal decomposition ─────────────────────────────────────────


@dataclass(frozen=True)
class PrDecomp:
    """x = integer_part + sum alpha_p / p with 0 <= alpha_p <= p-1, the unique
    such expansion (allowing alpha_p = p would alias (n, p) with (n+1, 0))."""

    integer_part: int
    coeffs: tuple[tuple[int, int], ...]

    def coeffs_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def value(self) -> Fraction:
        return Fraction(self.integer_part) + sum(
            (Fraction(a, p) for p, a in self.coeffs), Fraction(0)
        )

    def length(self) -> int:
        return self.integer_part + sum(a for _, a in self.coeffs)

    def to_text(self) -> str:
        terms = []
        if self.integer_part:
            terms.append(str(self.integer_part))
        terms.extend(f"{a}/{p}" for p, a in self.coeffs)
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {
            "n": self.integer_part,
            "coeffs": {str(p): a for p, a in self.coeffs},
        }


def pr_decompose(x: Rat) -> PrDecomp:
    """Canonical expansion of a member of ⟨1/p : p prime⟩.

    The coefficient at p is the unique alpha in [0, p-1] with alpha/p matching
    x modulo the p-integral rationals; what remains must be a nonnegative
    integer or x was never a member.
    """
    x = Fraction(x)
    if x < 0:
        raise NotAMember(f"{x} is negative")
    d = x.denominator
    if not is_squarefree(d):
        raise NonSquarefreeDenominator(f"denominator {d} has a repeated prime factor")
    coeffs = []
    rest = x
    for p in sorted(factorize_int(d)):
        alpha = x.numerator * pow(d // p, -1, p) % p
        coeffs.append((p, alpha))
        rest -= Fraction(alpha, p)
    assert rest.denominator == 1
    if rest < 0:
        raise NotAMember(
            f"{x} is not in the monoid: the forced coefficients sum to {x - rest}, "
            f"overshooting by {-rest}"
        )
    return PrDecomp(int(rest), tuple(coeffs))


def pr_stats(x: Rat) -> tuple[int, int]:
    """(integer part, coefficient sum) of the canonical expansion; both are
    monotone under divisibility in the monoid."""
    dec = pr_decompose(x)
    return dec.integer_part, sum(a for _, a in dec.coeffs)


# ── factorization enumeration ──────────────────────────────────────────────


@dataclass
class Factorizations:
    """Count-vectors over an explicit atom basis, ascending lexicographic.

    complete is False when the enumeration was windowed (power depth or prime
    bound) and deeper factorizations may exist outside it.
    """

    basis: list[Rat]
    vectors: list[tuple[int, ...]]
    complete: bool
    note: str = ""


@dataclass
class Lengths:
    values: list[int]
    complete: bool
    note: str = ""


def zs_bounded(m: CyclicSemiring, x: Rat, depth: int) -> list[tuple[int, ...]]:
    """All factorizations of x over the atom window r^0..r^depth, ascending
    lexicographic.  A window, not a completeness claim: for r < 1 the carry
    identity n(r)*r^k = d(r)*r^{k+1} can push factorizations ever deeper."""
    if not isinstance(m, CyclicSemiring) or m.ratio.denominator == 1:
        raise ValidationError("power-window factorizations need a non-integer ratio")
    if depth < 0:
        raise ValidationError("depth must be nonnegative")
    x = Fraction(x)
    if x < 0:
        return []
    if x == 0:
        return [(0,) * (depth + 1)]
    a, b = m.ratio.numerator, m.ratio.denominator
    target = x * b**depth
    if target.denominator != 1:
        return []
    gens = tuple(a**k * b ** (depth - k) for k in range(depth + 1))
    return _run_kernel(gens, int(target))


def factorizations(
    m: MonoidExpr, x: Rat, depth: int = 8, max_prime: int = 100
) -> Factorizations:
    """Z(x) over the family's atoms: exact for finite factorization families,
    windowed (and flagged incomplete) where Z(x) is infinite."""
    x = Fraction(x)
    if x < 0:
        raise NotAMember(f"{x} is negative")
    if x == 0:
        return Factorizations([], [()], True)
    if isinstance(m, FiniteGen):
        nm = numsg.normalize(list(m.gens))
        y = x * nm.scale
        if y.denominator != 1 or not numsg.member(nm, int(y)):
            raise NotAMember(f"{x} is not in {m.gens}")
        basis = [Fraction(g) / nm.scale for g in nm.gens]
        return Factorizations(basis, _run_kernel(nm.gens, int(y)), True)
    if isinstance(m, CyclicSemiring):
        r = m.ratio
        if r.denominator == 1:
            if x.denominator != 1:
                raise NotAMember(f"{x} is not a nonnegative integer")
            return Factorizations([Fraction(1)], [(int(x),)], True)
        verdict, _ = _member_cyclic(r, x)
        if verdict == "no":
            raise NotAMember(f"{x} is not in the cyclic semiring of {r}")
        vectors = zs_bounded(m, x, depth)
        if r > 1:
            complete = r**depth > x  # higher powers exceed x outright
        else:
            complete = False
        note = "" if complete else f"atom window r^0..r^{depth}"
        return Factorizations([r**k for k in range(depth + 1)], vectors, complete, note)
    if isinstance(m, PrimeReciprocal):
        return _pr_factorizations(x, max_prime)
    if isinstance(m, DenseTail):
        r = m.threshold
        if x < r:
            raise NotAMember(f"{x} is below the tail threshold {r}")
        if x < 2 * r:
            return Factorizations([x], [(1,)], True)  # x is itself an atom
        if x == 2 * r:
            return Factorizations([r], [(2,)], True)
        raise UnsupportedQuery(
            f"{x} > {2 * r} admits a continuum of atom splittings; lengths stay finite"
        )
    if isinstance(m, PrimeFracIncreasing):
        return _prime_frac_factorizations(x)
    if isinstance(m, IncreasingDenom):
        return _increasing_denom_factorizations(x)
    if isinstance(m, FiniteAtomExample):
        verdict, _ = _member_finite_atom(m, x)
        if verdict == "no":
            raise NotAMember(f"{x} is not a member")
        desc = atoms(m)
        assert isinstance(desc, FiniteList)
        ints = tuple(int(v) for v in desc.values)
        if x.denominator != 1 or not member_table(ints, max(int(x), 1))[int(x)]:
            return Factorizations(
                list(desc.values), [], True, "a member with no factorization into atoms"
            )
        return Factorizations(list(desc.values), _run_kernel(ints, int(x)), True)
    if isinstance(m, Scale):
        inner = factorizations(m.inner, x / m.factor, depth, max_prime)
        inner.basis = [m.factor * v for v in inner.basis]
        return inner
    if isinstance(m, Union):
        raise UnsupportedQuery("factorizations over a union are not supported")
    raise TypeError(f"not a MonoidExpr: {m!r}")


def _residue_enumerate(
    x: Fraction, atom_of: dict[int, Fraction], primes: list[int]
) -> list[dict[int, int]]:
    """All nonnegative solutions of sum c_p * atom_p = x where c_p is free in
    one residue class mod p (forced by the denominator) and the atoms are
    indexed by primes.  Largest prime first keeps the branching shallow."""
    order = sorted(primes, reverse=True)

    def rec(i: int, t: Fraction) -> list[dict[int, int]]:
        if t < 0:
            return []
        if i == len(order):
            return [{}] if t == 0 else []
        p = order[i]
        atom = atom_of[p]
        if t.denominator % p == 0:
            # p cannot divide the numerator too, so the forced residue is nonzero
            base = (
                t.numerator
                * pow(t.denominator // p, -1, p)
                * pow((atom * p).numerator % p, -1, p)
            ) % p
        else:
            base = 0
        out = []
        c = base
        while c * atom <= t:
            for rest in rec(i + 1, t - c * atom):
                if c:
                    rest = {p: c, **rest}
                out.append(rest)
            c += p
        return out

    return rec(0, x)


def _pr_factorizations(x: Fraction, max_prime: int) -> Factorizations:
    try:
        dec = pr_decompose(x)
    except (NonSquarefreeDenominator, NotAMember):
        raise NotAMember(f"{x} is not in the prime-reciprocal monoid") from None
    required = sorted(factorize_int(x.denominator))
    if dec.integer_part == 0:
        # every factorization is the canonical residues plus whole multiples
        # of p copies of 1/p; the multiples sum to the integer part, so a zero
        # integer part pins the support to d(x)'s primes and Z(x) is finite
        primes = required
        complete = True
        note = ""
    else:
        primes = sorted(set(required) | set(primes_upto(max_prime)))
        complete = False
        note = f"atoms 1/p with p <= {max(primes) if primes else 2}"
    atom_of = {p: Fraction(1, p) for p in primes}
    sols = _residue_enumerate(x, atom_of, primes)
    basis = [atom_of[p] for p in primes]
    vectors = sorted(tuple(s.get(p, 0) for p in primes) for s in sols)
    return Factorizations(basis, vectors, complete, note)


def _prime_frac_factorizations(x: Fraction) -> Factorizations:
    verdict, _ = _member_prime_frac(x)
    if verdict == "no":
        raise NotAMember(f"{x} is not in the increasing prime-fraction monoid")
    required = set(factorize_int(x.denominator))
    usable = set(required)
    for p in primes_upto(int(x) + 2):
        if p - 1 <= x:
            usable.add(p)  # p copies of (p-1)/p contribute the integer p-1
    primes = sorted(usable)
    atom_of = {p: Fraction(p - 1, p) for p in primes}
    sols = _residue_enumerate(x, atom_of, primes)
    basis = [atom_of[p] for p in primes]
    vectors = sorted(tuple(s.get(p, 0) for p in primes) for s in sols)
    return Factorizations(basis, vectors, True)


def _increasing_denom_factorizations(x: Fraction) -> Factorizations:
    verdict, _ = _member_increasing_denom(x)
    if verdict == "no":
        raise NotAMember(f"{x} is not in the increasing-denominator monoid")
    required = set(factorize_int(x.denominator))
    usable = set(required)
    # unforced coefficients come p at a time and cost p * atom_p >= p + 1
    for p in _odd_primes():
        if p > x:
            break
        if p * _increasing_denom_atom(p) <= x:
            usable.add(p)
    primes = sorted(usable)
    atom_of = {p: _increasing_denom_atom(p) for p in primes}
    sols = _residue_enumerate(x, atom_of, primes)
    basis = [atom_of[p] for p in primes]
    vectors = sorted(tuple(s.get(p, 0) for p in primes) for s in sols)
    return Factorizations(basis, vectors, True)


def lengths(m: MonoidExpr, x: Rat, depth: int = 8, max_prime: int = 100) -> Lengths:
    """L(x): the set of factorization lengths, exact where Z(x) enumeration is
    exact and additionally exact for dense tails (a closed form)."""
    x = Fraction(x)
    if x < 0:
        raise NotAMember(f"{x} is negative")
    if x == 0:
        return Lengths([0], True)
    if isinstance(m, FiniteGen):
        nm = numsg.normalize(list(m.gens))
        y = x * nm.scale
        if y.denominator != 1 or not numsg.member(nm, int(y)):
            raise NotAMember(f"{x} is not in {m.gens}")
        return Lengths(numsg.lengths(nm, int(y)), True)
    if isinstance(m, DenseTail):
        r = m.threshold
        if x < r:
            raise NotAMember(f"{x} is below the tail threshold {r}")
        # k atoms in [r, 2r) sum into [k*r, 2k*r); conversely x/k is an atom
        values = [k for k in range(1, int(x / r) + 1) if k * r <= x < 2 * k * r]
        return Lengths(values, True)
    if isinstance(m, Scale):
        return lengths(m.inner, x / m.factor, depth, max_prime)
    if isinstance(m, Union):
        raise UnsupportedQuery("lengths over a union are not supported")
    fz = factorizations(m, x, depth, max_prime)
    values = sorted({sum(v) for v in fz.vectors})
    return Lengths(values, fz.complete, fz.note)
