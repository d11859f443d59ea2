"""Symbolic monoid representation.

The expression language is a closed set of families: every rule the
classifier applies is family-specific, so an open-ended generating-set
representation would decide nothing.  Variants:

    FiniteGen(g_1,…,g_k)      ⟨g_1,…,g_k⟩, finitely many rational generators
    CyclicSemiring(r)         ⟨r^n | n in N0⟩, powers of one positive rational
    PrimeReciprocal           ⟨1/p | p prime⟩
    DenseTail(r)              {0} ∪ (Q and [r, inf))
    PrimeFracIncreasing       ⟨(p-1)/p | p prime⟩
    IncreasingDenom           ⟨(p_{2n}^2+1)/p_{2n}, (p_{2n+1}+1)/p_{2n+1} | n >= 1⟩,
                              p_i the i-th prime; unbounded atoms with limit point 1
    FiniteAtomExample(m,p,q)  ⟨[m, 2m-1] ∪ {q/p^{m+i} | i >= 1}⟩, not finitely
                              generated yet only finitely many atoms
    Scale(c, inner)           c * inner, an isomorphic rescaling
    Union(left, right)        the monoid generated by the set union

Construction canonicalizes: Scale distributes over Union, absorbs into
FiniteGen and DenseTail, and never nests; Union flattens, merges FiniteGen
parts, merges DenseTail parts to the lowest threshold and keeps that tail
last.  parse and to_text are mutually inverse on these canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union as TyUnion

from .errors import (
    MixedSignsGeneratesGroup,
    NegativeGenerator,
    ParseError,
    ValidationError,
)
from .exact import Rat, is_prime

TriState = Literal["yes", "no", "unknown"]

MonoidExpr = TyUnion[
    "FiniteGen",
    "CyclicSemiring",
    "PrimeReciprocal",
    "DenseTail",
    "PrimeFracIncreasing",
    "IncreasingDenom",
    "FiniteAtomExample",
    "Scale",
    "Union",
]


def _check_positive_rat(value: Fraction, what: str) -> None:
    if value < 0:
        raise NegativeGenerator(f"{what} must be positive, got {value}")
    if value == 0:
        raise ValidationError(f"{what} must be positive, got 0")


@dataclass(frozen=True)
class FiniteGen:
    gens: tuple[Rat, ...]

    def __post_init__(self):
        if not self.gens:
            raise ValidationError("a finitely generated monoid needs at least one generator")
        for g in self.gens:
            _check_positive_rat(g, "generator")
        ordered = tuple(sorted(set(self.gens)))
        object.__setattr__(self, "gens", ordered)


@dataclass(frozen=True)
class CyclicSemiring:
    ratio: Rat

    def __post_init__(self):
        _check_positive_rat(self.ratio, "ratio")


@dataclass(frozen=True)
class PrimeReciprocal:
    pass


@dataclass(frozen=True)
class DenseTail:
    threshold: Rat

    def __post_init__(self):
        _check_positive_rat(self.threshold, "tail threshold")


@dataclass(frozen=True)
class PrimeFracIncreasing:
    pass


@dataclass(frozen=True)
class IncreasingDenom:
    pass


@dataclass(frozen=True)
class FiniteAtomExample:
    m: int
    p: int
    q: int

    def __post_init__(self):
        if self.m < 1:
            raise ValidationError(f"m must be a positive integer, got {self.m}")
        if not is_prime(self.p):
            raise ValidationError(f"p must be prime, got {self.p}")
        if not is_prime(self.q):
            raise ValidationError(f"q must be prime, got {self.q}")
        if self.p == self.q:
            raise ValidationError("p and q must be distinct primes")
        if self.q <= self.m:
            raise ValidationError(f"q must exceed m, got q={self.q} <= m={self.m}")


@dataclass(frozen=True)
class Scale:
    factor: Rat
    inner: MonoidExpr

    def __post_init__(self):
        _check_positive_rat(self.factor, "scale factor")
        if self.factor == 1:
            raise ValidationError("scale factor 1 must be absorbed, use scaled()")
        if isinstance(self.inner, (Scale, Union, FiniteGen, DenseTail)):
            raise ValidationError("Scale must be distributed/absorbed here, use scaled()")


@dataclass(frozen=True)
class Union:
    left: MonoidExpr
    right: MonoidExpr


# ── canonicalizing constructors ────────────────────────────────────────────


def scaled(factor: Fraction | int, inner: MonoidExpr) -> MonoidExpr:
    """c * M in canonical form: absorbs into FiniteGen/DenseTail, distributes
    over Union, multiplies through nested Scale, drops c = 1."""
    c = Fraction(factor)
    _check_positive_rat(c, "scale factor")
    if isinstance(inner, CyclicSemiring) and inner.ratio.denominator == 1:
        return FiniteGen((c,))  # S(r) for integer r is N0 as a set
    if c == 1:
        return inner
    if isinstance(inner, FiniteGen):
        return FiniteGen(tuple(c * g for g in inner.gens))
    if isinstance(inner, DenseTail):
        return DenseTail(c * inner.threshold)
    if isinstance(inner, Scale):
        return scaled(c * inner.factor, inner.inner)
    if isinstance(inner, Union):
        return union_of(scaled(c, inner.left), scaled(c, inner.right))
    return Scale(c, inner)


def union_of(*monoids: MonoidExpr) -> MonoidExpr:
    """Monoid generated by the union, canonicalized.

    FiniteGen parts merge into one (generators concatenate), DenseTail parts
    merge into the one with the least threshold, duplicates collapse, the
    tail goes last, and the tree is right-associated.
    """
    parts: list[MonoidExpr] = []
    for m in monoids:
        parts.extend(union_parts(m))
    fg_gens: list[Rat] = []
    tail: DenseTail | None = None
    rest: list[MonoidExpr] = []
    for part in parts:
        if isinstance(part, CyclicSemiring) and part.ratio.denominator == 1:
            part = FiniteGen((Fraction(1),))  # S(r) for integer r is N0
        if isinstance(part, FiniteGen):
            fg_gens.extend(part.gens)
        elif isinstance(part, DenseTail):
            if tail is None or part.threshold < tail.threshold:
                tail = part
        elif part not in rest:
            rest.append(part)
    merged: list[MonoidExpr] = []
    if fg_gens:
        merged.append(FiniteGen(tuple(fg_gens)))
    merged.extend(rest)
    if tail is not None:
        merged.append(tail)
    if not merged:
        raise ValidationError("empty union")
    expr = merged[-1]
    for part in reversed(merged[:-1]):
        expr = Union(part, expr)
    return expr


def union_parts(m: MonoidExpr) -> list[MonoidExpr]:
    """Flatten nested Union nodes into the list of constituent parts."""
    if isinstance(m, Union):
        return union_parts(m.left) + union_parts(m.right)
    return [m]


def tail_split(m: MonoidExpr) -> tuple[list[MonoidExpr], DenseTail | None]:
    """Split into (non-tail parts, the DenseTail part if any)."""
    parts = union_parts(m)
    tails = [p for p in parts if isinstance(p, DenseTail)]
    rest = [p for p in parts if not isinstance(p, DenseTail)]
    return rest, (min(tails, key=lambda t: t.threshold) if tails else None)


def orient(values: list[Fraction]) -> tuple[int, list[Rat]]:
    """Sign-normalize a generating list: a submonoid of Q is a Puiseux monoid,
    the negative of one, or a group.  Mixed signs generate a group and are
    rejected; zeros are dropped as redundant."""
    nonzero = [Fraction(v) for v in values if v != 0]
    if not nonzero:
        raise ValidationError("no nonzero generators")
    pos = [v for v in nonzero if v > 0]
    neg = [v for v in nonzero if v < 0]
    if pos and neg:
        raise MixedSignsGeneratesGroup(
            f"{pos[0]} and {neg[0]} together make every element invertible"
        )
    if pos:
        return 1, pos
    return -1, [-v for v in neg]


# ── meta flags ─────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class MonoidMeta:
    zero_limit_point: bool
    increasing: bool
    strongly_increasing: bool
    finitely_generated: bool
    nonempty_conductor: TriState


def meta(m: MonoidExpr) -> MonoidMeta:
    """Structural facts the classifier keys on; one table entry per family."""
    if isinstance(m, FiniteGen):
        return MonoidMeta(False, True, True, True, "yes")
    if isinstance(m, CyclicSemiring):
        r = m.ratio
        if r.denominator == 1:
            return MonoidMeta(False, True, True, True, "yes")  # S_r = N0
        if r > 1:
            # powers increase without bound; root-closure gaps are unbounded
            return MonoidMeta(False, True, True, False, "no")
        if r.numerator == 1:
            # r = 1/b: each power divides the previous one, M is root-closed
            return MonoidMeta(True, False, False, False, "yes")
        return MonoidMeta(True, False, False, False, "unknown")
    if isinstance(m, PrimeReciprocal):
        return MonoidMeta(True, False, False, False, "unknown")
    if isinstance(m, DenseTail):
        # atoms fill [r, 2r), a dense set no increasing sequence can list
        return MonoidMeta(False, False, False, False, "yes")
    if isinstance(m, PrimeFracIncreasing):
        # (p-1)/p increases toward 1 but is bounded: increasing, not strongly
        return MonoidMeta(False, True, False, False, "unknown")
    if isinstance(m, IncreasingDenom):
        # atoms are unbounded yet have limit point 1: no increasing listing
        return MonoidMeta(False, False, False, False, "unknown")
    if isinstance(m, FiniteAtomExample):
        return MonoidMeta(True, False, False, False, "unknown")
    if isinstance(m, Scale):
        return meta(m.inner)  # scaling by a positive rational is an isomorphism
    if isinstance(m, Union):
        parts = [meta(p) for p in union_parts(m)]
        zlp = any(p.zero_limit_point for p in parts)
        fg = all(p.finitely_generated for p in parts)
        _, tail = tail_split(m)
        cond: TriState = "yes" if (tail is not None or fg) else "unknown"
        # fg forces increasing (pad the finite generating set with growing
        # multiples); otherwise stay conservative for unions
        return MonoidMeta(zlp, fg, fg, fg, cond)
    raise TypeError(f"not a MonoidExpr: {m!r}")


# ── parser ─────────────────────────────────────────────────────────────────

_SYMBOLS = set("<>(),*/")
_FAMILY_NAMES = frozenset({"N", "S", "T", "PR", "PF", "ID", "FA", "union"})


def _lex(text: str) -> list[tuple[str, object, int]]:
    toks: list[tuple[str, object, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j]), i))
            i = j
        elif ch.isalpha():
            j = i + 1
            while j < n and text[j].isalpha():
                j += 1
            name = text[i:j]
            if name not in _FAMILY_NAMES:
                raise ParseError(i, "a family name (N, S, T, PR, PF, ID, FA) or 'union'", name)
            toks.append(("name", name, i))
            i = j
        elif ch in _SYMBOLS:
            toks.append(("sym", ch, i))
            i += 1
        else:
            raise ParseError(i, "a number, name, or one of < > ( ) , * /", ch)
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.pos = 0

    def peek(self) -> tuple[str, object, int]:
        return self.toks[self.pos]

    def take(self, kind: str, value: object = None, expected: str = "") -> tuple[str, object, int]:
        tok = self.toks[self.pos]
        if tok[0] != kind or (value is not None and tok[1] != value):
            what = expected or (f"'{value}'" if value is not None else kind)
            raise ParseError(tok[2], what, str(tok[1]))
        self.pos += 1
        return tok

    def rat(self) -> Rat:
        _, num, pos = self.take("int", expected="a rational")
        den = 1
        if self.peek()[:2] == ("sym", "/"):
            self.take("sym", "/")
            _, den, _ = self.take("int", expected="a denominator")
        if den == 0:
            raise ValidationError(f"zero denominator at position {pos}")
        value = Fraction(num, den)  # type: ignore[arg-type]
        if value < 0:
            raise NegativeGenerator(f"negative rational {value} at position {pos}")
        return value

    def integer(self) -> int:
        _, value, _ = self.take("int", expected="an integer")
        return value  # type: ignore[return-value]

    def expr(self) -> MonoidExpr:
        parts = [self.scaled_atom()]
        while self.peek()[:2] == ("name", "union"):
            self.take("name", "union")
            parts.append(self.scaled_atom())
        return union_of(*parts) if len(parts) > 1 else parts[0]

    def scaled_atom(self) -> MonoidExpr:
        if self.peek()[0] == "int":
            factor = self.rat()
            self.take("sym", "*", expected="'*' after a scale factor")
            return scaled(factor, self.atom())
        return self.atom()

    def atom(self) -> MonoidExpr:
        kind, value, pos = self.peek()
        if kind == "sym" and value == "<":
            self.take("sym", "<")
            gens = [self.rat()]
            while self.peek()[:2] == ("sym", ","):
                self.take("sym", ",")
                gens.append(self.rat())
            self.take("sym", ">", expected="'>' or ','")
            return FiniteGen(tuple(gens))
        if kind == "sym" and value == "(":
            self.take("sym", "(")
            inner = self.expr()
            self.take("sym", ")")
            return inner
        if kind == "name":
            if value == "N":
                self.take("name", "N")
                return FiniteGen((Fraction(1),))
            if value == "S":
                self.take("name", "S")
                self.take("sym", "(")
                r = self.rat()
                self.take("sym", ")")
                return CyclicSemiring(r)
            if value == "T":
                self.take("name", "T")
                self.take("sym", "(")
                r = self.rat()
                self.take("sym", ")")
                return DenseTail(r)
            if value == "PR":
                self.take("name", "PR")
                return PrimeReciprocal()
            if value == "PF":
                self.take("name", "PF")
                return PrimeFracIncreasing()
            if value == "ID":
                self.take("name", "ID")
                return IncreasingDenom()
            if value == "FA":
                self.take("name", "FA")
                self.take("sym", "(")
                m_par = self.integer()
                self.take("sym", ",")
                p_par = self.integer()
                self.take("sym", ",")
                q_par = self.integer()
                self.take("sym", ")")
                return FiniteAtomExample(m_par, p_par, q_par)
        raise ParseError(pos, "a monoid expression", str(value))


def parse(text: str) -> MonoidExpr:
    """Parse the expression language; inverse of to_text on canonical forms."""
    parser = _Parser(text)
    expr = parser.expr()
    parser.take("end", expected="end of input")
    return expr


def to_text(m: MonoidExpr) -> str:
    """Canonical textual form accepted by parse."""
    if isinstance(m, FiniteGen):
        return "<" + ", ".join(str(g) for g in m.gens) + ">"
    if isinstance(m, CyclicSemiring):
        return f"S({m.ratio})"
    if isinstance(m, PrimeReciprocal):
        return "PR"
    if isinstance(m, DenseTail):
        return f"T({m.threshold})"
    if isinstance(m, PrimeFracIncreasing):
        return "PF"
    if isinstance(m, IncreasingDenom):
        return "ID"
    if isinstance(m, FiniteAtomExample):
        return f"FA({m.m}, {m.p}, {m.q})"
    if isinstance(m, Scale):
        inner = to_text(m.inner)
        if isinstance(m.inner, Union):  # not reachable through scaled(); be safe
            inner = f"({inner})"
        return f"{m.factor} * {inner}"
    if isinstance(m, Union):
        left = to_text(m.left)
        if isinstance(m.left, Union):
            left = f"({left})"
        return f"{left} union {to_text(m.right)}"
    raise TypeError(f"not a MonoidExpr: {m!r}")
