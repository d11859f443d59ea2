"""Exact arithmetic substrate: nonnegative reduced rationals, p-adic
valuations, prime utilities, and supernatural numbers.

Rationals are plain ``fractions.Fraction`` values (always reduced, constant
time numerator/denominator reads); nonnegativity is enforced at the
boundaries by :func:`rat_make` and :func:`rat_from_text`, never silently.

A supernatural number is a formal product prod_p p^{e_p} with exponents in
N0 and infinity allowed.  Sets of positive integers closed under divisors
and lcms are exactly the divisor sets of supernatural numbers, which makes
them the right encoding for denominator sets of monoid elements.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Union

from .errors import NegativeValue, NotPrime, ParseError, ZeroDenominator

Rat = Fraction

_RAT_TEXT = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


def rat_make(num: int, den: int = 1) -> Rat:
    """Reduced nonnegative rational num/den.

    Raises ZeroDenominator for den = 0 and NegativeValue when num/den < 0
    (two negatives cancel and are accepted).
    """
    if den == 0:
        raise ZeroDenominator(f"{num}/0 is not a rational")
    q = Fraction(num, den)
    if q < 0:
        raise NegativeValue(f"{num}/{den} is negative; only Q>=0 is modeled")
    return q


def rat_from_text(text: str) -> Rat:
    """Parse the ASCII forms "n" and "n/d"; no decimals, no whitespace."""
    m = _RAT_TEXT.match(text)
    if m is None:
        raise ParseError(0, 'a rational "n" or "n/d"', text)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return rat_make(num, den)


def rat_to_text(q: Rat) -> str:
    return str(q)  # Fraction renders "n/d", or "n" when the denominator is 1


class _Infinity:
    """Order-top sentinel: greater than every integer, equal only to itself."""

    __slots__ = ()

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "inf"


INFINITY = _Infinity()

Valuation = Union[int, _Infinity]


# ── primes ─────────────────────────────────────────────────────────────────

_primes: list[int] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
_sieve_limit = 31


def _grow_primes(limit: int) -> None:
    global _primes, _sieve_limit
    if limit <= _sieve_limit:
        return
    limit = max(limit, 2 * _sieve_limit)
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    i = 2
    while i * i <= limit:
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        i += 1
    _primes = [n for n in range(2, limit + 1) if sieve[n]]
    _sieve_limit = limit


def primes_upto(bound: int) -> list[int]:
    """All primes <= bound, ascending."""
    if bound < 2:
        return []
    _grow_primes(bound)
    return _primes[: bisect_right(_primes, bound)]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    _grow_primes(n)
    i = bisect_right(_primes, n)
    return i > 0 and _primes[i - 1] == n


def nth_prime(n: int) -> int:
    """The n-th prime, 1-based: nth_prime(1) = 2."""
    if n < 1:
        raise ValueError("prime indices start at 1")
    while len(_primes) < n:
        _grow_primes(2 * _sieve_limit)
    return _primes[n - 1]


def prime_index(p: int) -> int:
    """Position of p in the prime sequence, 1-based; NotPrime otherwise."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return bisect_right(_primes, p)


def factorize_int(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as an exponent map."""
    if n < 1:
        raise ValueError("can only factorize positive integers")
    out: dict[int, int] = {}
    rest = n
    for p in primes_upto(max(2, isqrt(rest) + 1)):
        if p * p > rest:
            break
        while rest % p == 0:
            out[p] = out.get(p, 0) + 1
            rest //= p
    if rest > 1:
        out[rest] = out.get(rest, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize_int(n).values())


def _int_val(p: int, n: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_val(p: int, q: Rat | int) -> Valuation:
    """v_p(q); by convention v_p(0) is infinity."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        return INFINITY
    return _int_val(p, abs(q.numerator)) - _int_val(p, q.denominator)


# ── supernatural numbers ───────────────────────────────────────────────────

REST_ZERO: Valuation = 0
REST_ONE: Valuation = 1
REST_INF: Valuation = INFINITY


class Supernatural:
    """prod_p p^{e_p} with e_p in N0 or infinity.

    ``explicit`` stores only the primes whose exponent differs from
    ``default``; ``default`` (0, 1, or infinity) applies to all others.
    """

    __slots__ = ("_explicit", "default")

    def __init__(self, explicit: Mapping[int, Valuation] | Iterable[tuple[int, Valuation]] = (), default: Valuation = 0):
        if not (default == 0 or default == 1 or default is INFINITY):
            raise ValueError("default exponent must be 0, 1, or infinity")
        items = dict(explicit)
        kept = []
        for p, e in items.items():
            if not is_prime(p):
                raise NotPrime(f"{p} is not prime")
            if not (e is INFINITY or (isinstance(e, int) and e >= 0)):
                raise ValueError(f"bad exponent {e!r} for prime {p}")
            if e != default:
                kept.append((p, e))
        kept.sort(key=lambda pe: pe[0])
        object.__setattr__(self, "_explicit", tuple(kept))
        object.__setattr__(self, "default", default)

    def __setattr__(self, name, value):  # immutable after __init__
        raise AttributeError("Supernatural is immutable")

    @property
    def explicit(self) -> dict[int, Valuation]:
        return dict(self._explicit)

    def exponent(self, p: int) -> Valuation:
        for q, e in self._explicit:
            if q == p:
                return e
        return self.default

    def __eq__(self, other) -> bool:
        if not isinstance(other, Supernatural):
            return NotImplemented
        return self._explicit == other._explicit and self.default == other.default

    def __hash__(self) -> int:
        return hash((self._explicit, 0 if self.default == 0 else 1 if self.default == 1 else "inf"))

    def as_int(self) -> int | None:
        """The integer this value denotes, or None if it is infinite."""
        if self.default != 0:
            return None
        n = 1
        for p, e in self._explicit:
            if e is INFINITY:
                return None
            n *= p**e
        return n

    def to_text(self) -> str:
        parts = []
        for p, e in self._explicit:
            if e == 1:
                parts.append(str(p))
            else:
                parts.append(f"{p}^{e}" if e is not INFINITY else f"{p}^inf")
        head = "*".join(parts) if parts else "1"
        rest = "inf" if self.default is INFINITY else str(self.default)
        return f"{head}|rest={rest}"

    def __repr__(self) -> str:
        return f"Supernatural({self.to_text()!r})"


def sn_from_text(text: str) -> Supernatural:
    head, sep, rest = text.partition("|rest=")
    if not sep or rest not in ("0", "1", "inf"):
        raise ParseError(len(head), 'a "|rest=0|1|inf" suffix', text)
    default: Valuation = INFINITY if rest == "inf" else int(rest)
    explicit: dict[int, Valuation] = {}
    if head != "1":
        for part in head.split("*"):
            p_text, sep, e_text = part.partition("^")
            if not p_text.isdigit():
                raise ParseError(text.index(part), "a prime", part)
            e: Valuation = 1
            if sep:
                if e_text == "inf":
                    e = INFINITY
                elif e_text.isdigit():
                    e = int(e_text)
                else:
                    raise ParseError(text.index(part), "an exponent", part)
            explicit[int(p_text)] = e
    return Supernatural(explicit, default)


def sn_from_int(n: int) -> Supernatural:
    return Supernatural(factorize_int(n), 0) if n > 1 else Supernatural((), 0)


def sn_lcm(a: Supernatural, b: Supernatural) -> Supernatural:
    default = a.default if b.default <= a.default else b.default
    primes = {p for p, _ in a._explicit} | {p for p, _ in b._explicit}
    explicit = {}
    for p in primes:
        ea, eb = a.exponent(p), b.exponent(p)
        explicit[p] = ea if eb <= ea else eb
    return Supernatural(explicit, default)


def sn_divides(d: int, s: Supernatural) -> bool:
    """Whether the positive integer d divides s: v_p(d) <= e_p(s) for all p | d."""
    if d < 1:
        raise ValueError("divisor candidates must be positive")
    return all(e <= s.exponent(p) for p, e in factorize_int(d).items())
