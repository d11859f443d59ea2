"""Root closures, conductors, and isomorphism checks.

For a Puiseux monoid the root closure and the complete integral closure
coincide and equal gp(M) ∩ Q>=0, which is always of the form

    n * ⟨1/d : d divides s⟩

for a positive integer n (the gcd of the group) and a supernatural number s
(the divisor-closed, lcm-closed set of reachable denominators).  ClosureDesc
is exactly that pair, kept normalized so that no prime divides both n and s.

The conductor {x : x + closure(M) ⊆ M} is one of three shapes: M itself
(root-closed case), a rational tail {x : x >= sigma}, or empty when the gaps
above M are unbounded.  Families where no rule settles the shape report
"unknown" rather than a guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Literal, Optional

from . import numsg
from .errors import ValidationError
from .exact import (
    INFINITY,
    Rat,
    Supernatural,
    factorize_int,
    sn_divides,
    sn_from_int,
    sn_lcm,
)
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
    meta,
    tail_split,
    union_parts,
)


@dataclass(frozen=True)
class ClosureDesc:
    """The monoid n * ⟨1/d : d divides s⟩."""

    n: int
    s: Supernatural

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"closure gcd must be a positive integer, got {self.n}")
        for p in factorize_int(self.n):
            if self.s.exponent(p) != 0:
                raise ValidationError(f"prime {p} divides both the gcd and the denominators")

    def contains(self, x: Fraction | int) -> bool:
        q = Fraction(x)
        if q < 0:
            return False
        if q == 0:
            return True
        scaled_q = q / self.n
        return scaled_q.denominator == 1 or sn_divides(scaled_q.denominator, self.s)

    def is_antimatter(self) -> bool:
        # finite s: the closure is n/s * N0, whose single atom is n/s;
        # infinite s: some prime has unbounded exponent, so x/p stays inside
        return self.s.as_int() is None

    def to_text(self) -> str:
        return f"{self.n} * <1/d : d | {self.s.to_text()}>"

    def to_json(self) -> dict:
        return {"numerator_gcd": self.n, "denominators": self.s.to_text()}


def numerator_gcd(m: MonoidExpr) -> int:
    """gcd of gp(M): the n of the closure pair."""
    if isinstance(m, FiniteGen):
        # for reduced a_i/b_i: gcd_i(a_i * L/b_i) = gcd_i(a_i) with L = lcm b_i,
        # since a prime in some b_j cannot divide a_j
        out = 0
        for g in m.gens:
            out = gcd(out, g.numerator)
        return out
    if isinstance(m, CyclicSemiring):
        return 1  # r^0 = 1 is an element, so the group gcd divides 1
    if isinstance(m, (PrimeReciprocal, DenseTail, PrimeFracIncreasing)):
        return 1
    if isinstance(m, IncreasingDenom):
        return 2  # numerators p^2+1 and p+1 are even for odd p; gcd(10, 6) = 2
    if isinstance(m, FiniteAtomExample):
        return 1  # the consecutive integer generators m, m+1 are coprime
    if isinstance(m, Scale):
        return _transport(numerator_gcd(m.inner), denominator_sn(m.inner), m.factor)[0]
    if isinstance(m, Union):
        out = 0
        for part in union_parts(m):
            out = gcd(out, numerator_gcd(part))
        return out
    raise TypeError(f"not a MonoidExpr: {m!r}")


def denominator_sn(m: MonoidExpr) -> Supernatural:
    """Reachable denominators of gp(M)/numerator_gcd as a supernatural number."""
    if isinstance(m, FiniteGen):
        ell = 1
        for g in m.gens:
            ell = ell * g.denominator // gcd(ell, g.denominator)
        return sn_from_int(ell)
    if isinstance(m, CyclicSemiring):
        b = m.ratio.denominator
        if b == 1:
            return sn_from_int(1)
        return Supernatural({p: INFINITY for p in factorize_int(b)}, 0)
    if isinstance(m, PrimeReciprocal):
        return Supernatural({}, 1)  # squarefree: every prime once
    if isinstance(m, DenseTail):
        return Supernatural({}, INFINITY)  # gp is all of Q
    if isinstance(m, PrimeFracIncreasing):
        # gp contains 1 = 2*(1/2) and each 1/p = 1 - (p-1)/p, same group as PR
        return Supernatural({}, 1)
    if isinstance(m, IncreasingDenom):
        return Supernatural({2: 0}, 1)  # squarefree with odd prime support
    if isinstance(m, FiniteAtomExample):
        return Supernatural({m.p: INFINITY}, 0)
    if isinstance(m, Scale):
        return _transport(numerator_gcd(m.inner), denominator_sn(m.inner), m.factor)[1]
    if isinstance(m, Union):
        out = sn_from_int(1)
        for part in union_parts(m):
            out = sn_lcm(out, denominator_sn(part))
        return out
    raise TypeError(f"not a MonoidExpr: {m!r}")


def _transport(n: int, s: Supernatural, c: Fraction) -> tuple[int, Supernatural]:
    """Canonical pair for c * (n * ⟨1/d : d | s⟩).

    With c*n = U/V reduced, each prime of U cancels against the available
    denominator exponent, the remainder stays in the gcd, and each prime of V
    adds to the denominators.  U and V are coprime, so the steps commute.
    """
    w = c * n
    overrides = dict(s.explicit)
    n_out = 1
    for p, vu in factorize_int(w.numerator).items():
        e = s.exponent(p)
        if e is INFINITY:
            continue
        if vu > e:
            n_out *= p ** (vu - e)
        overrides[p] = max(0, e - vu)
    for p, vv in factorize_int(w.denominator).items():
        e = s.exponent(p)
        overrides[p] = e if e is INFINITY else e + vv
    return n_out, Supernatural(overrides, s.default)


def root_closure(m: MonoidExpr) -> ClosureDesc:
    """gp(M) ∩ Q>=0, also the complete integral closure of M."""
    return ClosureDesc(numerator_gcd(m), denominator_sn(m))


def closure_antimatter(m: MonoidExpr) -> TriState:
    """Whether the root closure has no atoms at all; decidable exactly."""
    return "yes" if root_closure(m).is_antimatter() else "no"


def _fresh_prime(avoid: set[int], lower: int) -> int:
    cand = max(lower, 2)
    while True:
        if cand >= 2 and all(cand % k for k in range(2, isqrt(cand) + 1)) and cand not in avoid:
            return cand
        cand += 1


def _denominator_support(parts: list[MonoidExpr]) -> set[int]:
    out: set[int] = set()
    for part in parts:
        if isinstance(part, FiniteGen):
            for g in part.gens:
                out.update(factorize_int(g.denominator))
        elif isinstance(part, CyclicSemiring):
            out.update(factorize_int(part.ratio.denominator))
        elif isinstance(part, FiniteAtomExample):
            out.add(part.p)
        elif isinstance(part, Scale):
            out.update(factorize_int(part.factor.denominator))
            out |= _denominator_support([part.inner])
        # PR/PF touch every prime but only to the first power, ID only odd
        # primes to the first power: a squared fresh prime beats them all
    return out


def is_root_closed(m: MonoidExpr) -> tuple[TriState, str]:
    """Tri-state verdict with a self-contained reason; "yes" is equivalent to
    being a Pruefer monoid and to gp(M) = M ∪ -M."""
    if isinstance(m, FiniteGen):
        nm = numsg.normalize(list(m.gens))
        if len(nm.gens) == 1:
            return "yes", "a single minimal generator g makes M = g*N0 = gp(M) ∩ Q>=0"
        witness = Fraction(numerator_gcd(m)) / denominator_sn(m).as_int()
        return "no", (
            f"{witness} generates gp(M) ∩ Q>=0 but is not in M "
            f"(the minimal generating set has {len(nm.gens)} elements)"
        )
    if isinstance(m, CyclicSemiring):
        a, b = m.ratio.numerator, m.ratio.denominator
        if a == 1 or b == 1:
            return "yes", (
                "powers of r already form the closure: each is a divisor "
                "or a multiple of the previous one"
            )
        return "no", (
            f"1/{b} lies in the closure, but every nonzero element of M with "
            f"a positive power-of-r expansion using the unit term is >= 1 and "
            f"without it is >= min(r, r^2) > 1/{b}"
        )
    if isinstance(m, DenseTail):
        return "no", f"the closure is Q>=0, yet {m.threshold / 2} < threshold is missing from M"
    if isinstance(m, PrimeReciprocal):
        return "no", (
            "1/6 = 2*(1/3) - 1/2 lies in gp(M) ∩ Q>=0, but its canonical "
            "expansion 1/2 + 2/3 overshoots by exactly 1, so it is not in M"
        )
    if isinstance(m, PrimeFracIncreasing):
        return "no", "1/3 lies in the closure but below every nonzero element except 1/2"
    if isinstance(m, IncreasingDenom):
        return "no", "2/3 lies in the closure but below the smallest atom 6/5"
    if isinstance(m, FiniteAtomExample):
        return "no", (
            f"1/{m.p} lies in the closure, but every element of M below {m.m} "
            f"is q/p^k-generated and so has numerator divisible by {m.q}"
        )
    if isinstance(m, Scale):
        verdict, reason = is_root_closed(m.inner)
        return verdict, f"scaling by {m.factor} is an isomorphism; {reason}"
    if isinstance(m, Union):
        rest, tail = tail_split(m)
        if tail is not None:
            if not rest:
                return "no", f"the closure is Q>=0, yet {tail.threshold / 2} is missing from M"
            support = _denominator_support(rest)
            lower = isqrt(int(1 / tail.threshold)) + 1 if tail.threshold < 1 else 2
            fresh = _fresh_prime(support, lower)
            witness = Fraction(1, fresh * fresh)
            return "no", (
                f"{witness} lies in the closure Q>=0 but not in M: it is below "
                f"the tail threshold {tail.threshold}, and no other part reaches "
                f"denominator {fresh}^2"
            )
        return "unknown", "no decision procedure for root-closedness of this union"
    raise TypeError(f"not a MonoidExpr: {m!r}")


def is_pruefer(m: MonoidExpr) -> tuple[TriState, str]:
    """Pruefer is equivalent to root-closed for Puiseux monoids."""
    return is_root_closed(m)


ConductorKind = Literal["equals_monoid", "empty", "tail", "unknown"]


@dataclass(frozen=True)
class ConductorDesc:
    kind: ConductorKind
    sigma: Optional[Rat] = None

    def __post_init__(self):
        if (self.kind == "tail") != (self.sigma is not None):
            raise ValidationError("sigma is set exactly for tail conductors")

    def to_text(self) -> str:
        if self.kind == "equals_monoid":
            return "the monoid itself (root-closed)"
        if self.kind == "empty":
            return "empty"
        if self.kind == "tail":
            return f"all rationals >= {self.sigma}"
        return "unknown"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.sigma is not None:
            out["sigma"] = str(self.sigma)
        return out


def conductor(m: MonoidExpr) -> ConductorDesc:
    """{x : x + closure(M) ⊆ M}: the monoid itself, a tail, empty, or unknown."""
    closed, _ = is_root_closed(m)
    if closed == "yes":
        return ConductorDesc("equals_monoid")
    if isinstance(m, FiniteGen):
        nm = numsg.normalize(list(m.gens))
        f = numsg.frobenius(nm)
        if f is None:
            return ConductorDesc("equals_monoid")
        return ConductorDesc("tail", Fraction(f + 1) / nm.scale)
    if isinstance(m, CyclicSemiring):
        r = m.ratio
        if r > 1 and r.denominator > 1:
            # the closure has elements a/b^k just under each power r^k, and
            # those gaps grow without bound, so nothing absorbs the closure
            return ConductorDesc("empty")
        return ConductorDesc("unknown")
    if isinstance(m, DenseTail):
        return ConductorDesc("tail", m.threshold)
    if isinstance(m, Scale):
        inner = conductor(m.inner)
        if inner.kind == "tail":
            return ConductorDesc("tail", m.factor * inner.sigma)
        return inner
    if isinstance(m, Union):
        _, tail = tail_split(m)
        if tail is not None:
            # the tail absorbs: x >= threshold gives x + q >= threshold for
            # q >= 0, and no other family is full on a subinterval below it
            return ConductorDesc("tail", tail.threshold)
        return ConductorDesc("unknown")
    return ConductorDesc("unknown")


def iso_check(a: MonoidExpr, b: MonoidExpr) -> tuple[TriState, Optional[Rat]]:
    """Isomorphism test: Puiseux monoid isomorphisms are exactly the
    multiplications by positive rationals, so a "yes" carries the factor q
    with q*A = B."""
    if isinstance(a, FiniteGen) and isinstance(b, FiniteGen):
        mins_a = _minimal_generators(a)
        mins_b = _minimal_generators(b)
        if len(mins_a) != len(mins_b):
            return "no", None
        q = mins_b[0] / mins_a[0]
        if [q * g for g in mins_a] == mins_b:
            return "yes", q
        return "no", None

    core_a, fac_a = _strip_scale(a)
    core_b, fac_b = _strip_scale(b)
    if core_a == core_b:
        return "yes", fac_b / fac_a
    if isinstance(core_a, DenseTail) and isinstance(core_b, DenseTail):
        return "yes", (fac_b * core_b.threshold) / (fac_a * core_a.threshold)

    meta_a, meta_b = meta(a), meta(b)
    invariants_a = (
        meta_a.finitely_generated,
        meta_a.zero_limit_point,
        meta_a.increasing,
        meta_a.strongly_increasing,
    )
    invariants_b = (
        meta_b.finitely_generated,
        meta_b.zero_limit_point,
        meta_b.increasing,
        meta_b.strongly_increasing,
    )
    if invariants_a != invariants_b:
        return "no", None
    return "unknown", None


def _minimal_generators(m: FiniteGen) -> list[Rat]:
    nm = numsg.normalize(list(m.gens))
    return [Fraction(g) / nm.scale for g in nm.gens]


def _strip_scale(m: MonoidExpr) -> tuple[MonoidExpr, Rat]:
    if isinstance(m, Scale):
        return m.inner, m.factor
    return m, Fraction(1)
