"""Certificate-producing rule engine for the factorization-property lattice.

Each monoid expression gets a complete verdict vector over twelve properties.
Family rules fire first (in a fixed catalog order, so certificates cite the
most specific fact available), then implications propagate along the chain

    UFM => (HFM, FFM, OHFM), HFM => BFM, FFM => BFM, BFM => ACCP,
    ACCP => Atomic, FinitelyGenerated => (Increasing, FFM),
    Increasing => (FFM, Atomic), OHFM => Atomic

forward and contrapositively until a fixpoint.  Every yes/no verdict carries a
certificate naming its rule; the first rule to decide a property keeps it, a
later rule re-deriving the same value is ignored, and a disagreement raises
ContradictionError because it can only mean an engine bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from . import numsg
from .closure import is_root_closed
from .errors import ContradictionError
from .factor import atoms
from .model import (
    CyclicSemiring,
    DenseTail,
    IncreasingDenom,
    MonoidExpr,
    PrimeFracIncreasing,
    PrimeReciprocal,
    Scale,
    TriState,
    Union,
    meta,
    scaled,
    tail_split,
    to_text,
    union_parts,
)


class Property(str, Enum):
    ACCP = "ACCP"
    ANTIMATTER = "Antimatter"
    ATOMIC = "Atomic"
    BFM = "BFM"
    FFM = "FFM"
    FINITELY_GENERATED = "FinitelyGenerated"
    HFM = "HFM"
    INCREASING = "Increasing"
    OHFM = "OHFM"
    PRUEFER = "Pruefer"
    ROOT_CLOSED = "RootClosed"
    UFM = "UFM"


@dataclass(frozen=True)
class PropertyVerdict:
    property: Property
    holds: TriState
    certificate: Optional[str]


_CHAIN_EDGES = [
    (Property.UFM, Property.HFM),
    (Property.UFM, Property.FFM),
    (Property.UFM, Property.OHFM),
    (Property.HFM, Property.BFM),
    (Property.FFM, Property.BFM),
    (Property.BFM, Property.ACCP),
    (Property.ACCP, Property.ATOMIC),
    (Property.FINITELY_GENERATED, Property.INCREASING),
    (Property.FINITELY_GENERATED, Property.FFM),
    (Property.INCREASING, Property.FFM),
    (Property.INCREASING, Property.ATOMIC),
    (Property.OHFM, Property.ATOMIC),
]


class _Verdicts:
    def __init__(self):
        self._map: dict[Property, tuple[TriState, str]] = {}

    def set(self, prop: Property, holds: TriState, certificate: str) -> bool:
        prior = self._map.get(prop)
        if prior is not None:
            if prior[0] != holds:
                raise ContradictionError(
                    f"{prop.value}: {prior[1]!r} says {prior[0]}, "
                    f"but {certificate!r} says {holds}"
                )
            return False
        self._map[prop] = (holds, certificate)
        return True

    def holds(self, prop: Property) -> Optional[TriState]:
        entry = self._map.get(prop)
        return None if entry is None else entry[0]

    def get(self, prop: Property) -> tuple[TriState, Optional[str]]:
        entry = self._map.get(prop)
        return ("unknown", None) if entry is None else entry


class _Info:
    """Per-monoid facts shared by the rules: meta flags and the atom set."""

    def __init__(self, m: MonoidExpr):
        self.meta = meta(m)
        self.desc = atoms(m)
        if self.desc is None:
            self.atom_count: Optional[float] = None  # no settled atom set
        else:
            n = self.desc.count()
            self.atom_count = float("inf") if n is None else n


def _r_fg(m, info, v) -> bool:
    changed = False
    if info.meta.finitely_generated:
        changed |= v.set(
            Property.FINITELY_GENERATED,
            "yes",
            "R-FG: a finite generating set exists after canonicalization",
        )
    else:
        changed |= v.set(
            Property.FINITELY_GENERATED,
            "no",
            "R-FG: no finite generating set exists (denominators or atoms are unbounded)",
        )
        if info.atom_count is not None and info.atom_count != float("inf"):
            changed |= v.set(
                Property.ATOMIC,
                "no",
                f"R-FG: exactly {int(info.atom_count)} atoms but not finitely generated; "
                "a monoid is finitely generated exactly when it is atomic "
                "with finitely many atoms",
            )
    return changed


def _r_inc(m, info, v) -> bool:
    changed = False
    if info.meta.increasing:
        changed |= v.set(
            Property.INCREASING, "yes", "R-INC: generated by an increasing sequence"
        )
        changed |= v.set(
            Property.FFM,
            "yes",
            "R-INC: a monoid generated by an increasing sequence is a finite "
            "factorization monoid",
        )
        changed |= v.set(
            Property.ATOMIC,
            "yes",
            "R-INC: a monoid generated by an increasing sequence is atomic",
        )
    elif info.meta.zero_limit_point:
        changed |= v.set(
            Property.INCREASING,
            "no",
            "R-INC: 0 is a limit point of the monoid, but any increasing "
            "generating sequence is bounded below by its first nonzero term",
        )
    return changed


def _r_bf(m, info, v) -> bool:
    if info.meta.zero_limit_point:
        return False
    changed = v.set(
        Property.BFM,
        "yes",
        "R-BF: 0 is not a limit point of the monoid, so factorization lengths "
        "of each element are bounded",
    )
    changed |= v.set(
        Property.ATOMIC,
        "yes",
        "R-BF: 0 is not a limit point of the monoid, and a bounded "
        "factorization monoid is atomic",
    )
    return changed


def _r_sr(m, info, v) -> bool:
    if not isinstance(m, CyclicSemiring):
        return False
    r = m.ratio
    changed = False
    if r.denominator == 1:
        changed |= v.set(
            Property.UFM,
            "yes",
            "R-SR: the powers of an integer generate the nonnegative integers, "
            "a unique factorization monoid",
        )
        changed |= v.set(
            Property.ROOT_CLOSED,
            "yes",
            "R-SR: equal to the nonnegative integers, which are root closed",
        )
    elif r > 1:
        changed |= v.set(
            Property.ATOMIC,
            "yes",
            f"R-SR: the powers of {r} > 1 increase, and the monoid they "
            "generate is atomic with the powers as its atoms",
        )
    elif r.numerator == 1:
        changed |= v.set(
            Property.ANTIMATTER,
            "yes",
            f"R-SR: each power of {r} is {r.denominator} copies of the next "
            "power, so no element is an atom",
        )
    else:
        a, b = r.numerator, r.denominator
        changed |= v.set(
            Property.ATOMIC,
            "yes",
            f"R-SR: for the ratio {r} in (0,1) with numerator >= 2 the powers "
            "are the atoms and every element is a finite sum of them",
        )
        changed |= v.set(
            Property.ACCP,
            "no",
            f"R-SR: {a}*({r})^n - {a}*({r})^(n+1) = {b - a}*({r})^(n+1), so the "
            f"principal ideals of {a}*({r})^n ascend strictly forever",
        )
    return changed


def _r_pr(m, info, v) -> bool:
    if not isinstance(m, PrimeReciprocal):
        return False
    changed = v.set(
        Property.ACCP,
        "yes",
        "R-PR: canonical coefficient statistics (integer part, coefficient sum) "
        "strictly drop along proper divisibility, so principal ideal chains "
        "stabilize",
    )
    changed |= v.set(
        Property.BFM,
        "no",
        "R-PR: 1 is a sum of p copies of 1/p for every prime p, so L(1) is "
        "unbounded",
    )
    return changed


def _r_cond(m, info, v) -> bool:
    if info.meta.nonempty_conductor != "yes":
        return False
    if info.meta.zero_limit_point:
        why = (
            "R-COND: the conductor is nonempty and 0 is a limit point of the "
            "monoid; with a nonempty conductor, {} is equivalent to 0 not "
            "being a limit point"
        )
        changed = v.set(Property.BFM, "no", why.format("bounded factorization"))
        changed |= v.set(Property.ACCP, "no", why.format("the ACCP"))
    else:
        why = (
            "R-COND: the conductor is nonempty and 0 is not a limit point of "
            "the monoid, which under a nonempty conductor is equivalent to {}"
        )
        changed = v.set(Property.BFM, "yes", why.format("bounded factorization"))
        changed |= v.set(Property.ACCP, "yes", why.format("the ACCP"))
    return changed


def _r_hf(m, info, v) -> bool:
    if v.holds(Property.ATOMIC) != "yes" or info.atom_count is None:
        return False
    if info.atom_count == 1:
        why = "R-HF: atomic with a single atom, hence isomorphic to the nonnegative integers"
        changed = v.set(Property.HFM, "yes", why)
        changed |= v.set(Property.UFM, "yes", why)
    else:
        why = (
            "R-HF: atomic with at least two atoms; for atoms a1 != a2 the "
            "cross products give one element with two factorization lengths"
        )
        changed = v.set(Property.HFM, "no", why)
        changed |= v.set(Property.UFM, "no", why)
    return changed


def _r_ohf(m, info, v) -> bool:
    if v.holds(Property.ATOMIC) != "yes" or info.atom_count is None:
        return False
    if info.atom_count <= 2:
        return v.set(
            Property.OHFM,
            "yes",
            "R-OHF: atomic with at most two atoms; equal-length factorizations "
            "over at most two atoms coincide",
        )
    return v.set(
        Property.OHFM,
        "no",
        "R-OHF: atomic with at least three atoms, which always admit two "
        "distinct factorizations of one element with equal length",
    )


def _r_am(m, info, v) -> bool:
    if info.desc is None:
        return False
    if info.atom_count == 0:
        return v.set(Property.ANTIMATTER, "yes", "R-AM: the atom set is empty")
    sample = info.desc.sample(1)
    example = f" (for instance {sample[0]})" if sample else ""
    return v.set(
        Property.ANTIMATTER, "no", f"R-AM: the atom set is nonempty{example}"
    )


def _r_rc(m, info, v) -> bool:
    verdict, reason = is_root_closed(m)
    if verdict == "unknown":
        return False
    changed = v.set(Property.ROOT_CLOSED, verdict, f"R-RC: {reason}")
    changed |= v.set(
        Property.PRUEFER,
        verdict,
        f"R-RC: Pruefer is equivalent to root closed here; {reason}",
    )
    return changed


def _r_dt(m, info, v) -> bool:
    if not isinstance(m, DenseTail):
        return False
    changed = v.set(
        Property.FFM,
        "no",
        f"R-DT: any element above {2 * m.threshold} splits across infinitely "
        f"many atom pairs from [{m.threshold}, {2 * m.threshold}), so some "
        "Z(x) is infinite",
    )
    changed |= v.set(
        Property.INCREASING,
        "no",
        "R-DT: the atoms fill a rational interval, which contains infinite "
        "descending chains and so admits no increasing enumeration",
    )
    return changed


def _r_id(m, info, v) -> bool:
    if not isinstance(m, IncreasingDenom):
        return False
    changed = v.set(
        Property.FFM,
        "yes",
        "R-ID: the denominator pins the coefficient at each of its primes and "
        "the integer remainder admits finitely many whole-atom combinations, "
        "so every Z(x) is finite",
    )
    changed |= v.set(
        Property.INCREASING,
        "no",
        "R-ID: the atoms (p+1)/p at odd prime index descend toward 1, an "
        "infinite descending chain no increasing enumeration can contain",
    )
    return changed


def _r_union_pr_t(m, info, v) -> bool:
    if not isinstance(m, Union):
        return False
    parts = union_parts(m)
    if len(parts) != 2 or set(map(type, parts)) != {PrimeReciprocal, DenseTail}:
        return False
    tail = next(p for p in parts if isinstance(p, DenseTail))
    if tail.threshold != 1:
        return False
    return v.set(
        Property.ATOMIC,
        "yes",
        "R-UNION-PR-T: atomicity of the reciprocal-primes-with-unit-tail union "
        "is asserted by its source example and taken on authority here",
    )


_FAMILY_RULES: list[Callable[[MonoidExpr, _Info, _Verdicts], bool]] = [
    _r_fg,
    _r_inc,
    _r_bf,
    _r_sr,
    _r_pr,
    _r_cond,
    _r_hf,
    _r_ohf,
    _r_am,
    _r_rc,
    _r_dt,
    _r_id,
    _r_union_pr_t,
]


def _propagate(v: _Verdicts) -> bool:
    changed = False
    for p, q in _CHAIN_EDGES:
        if v.holds(p) == "yes":
            changed |= v.set(
                q, "yes", f"R-CHAIN: {p.value} implies {q.value}"
            )
        if v.holds(q) == "no":
            changed |= v.set(
                p, "no", f"R-CHAIN: failure of {q.value} rules out {p.value}"
            )
    if v.holds(Property.ATOMIC) == "yes":
        changed |= v.set(
            Property.ANTIMATTER,
            "no",
            "R-CHAIN: a nontrivial atomic monoid has atoms",
        )
    if v.holds(Property.ANTIMATTER) == "yes":
        changed |= v.set(
            Property.ATOMIC,
            "no",
            "R-CHAIN: a nontrivial antimatter monoid has nonzero elements and "
            "no atoms to compose them from",
        )
    return changed


def classify(m: MonoidExpr) -> list[PropertyVerdict]:
    """Complete verdict vector, ordered by property name.

    Scaling by a positive rational is an isomorphism onto the image, so Scale
    wrappers are peeled off before the rules run.
    """
    while isinstance(m, Scale):
        m = m.inner
    if isinstance(m, Union):
        # anchor tail unions at threshold 1: dividing by the threshold is an
        # isomorphism and lets rules that pattern-match the tail fire
        _, tail = tail_split(m)
        if tail is not None and tail.threshold != 1:
            return classify(scaled(Fraction(1) / tail.threshold, m))
    info = _Info(m)
    v = _Verdicts()
    changed = True
    while changed:
        changed = False
        for rule in _FAMILY_RULES:
            changed |= rule(m, info, v)
        changed |= _propagate(v)
    return [
        PropertyVerdict(p, *v.get(p))
        for p in sorted(Property, key=lambda p: p.value)
    ]


def classify_json(m: MonoidExpr) -> list[dict]:
    return [
        {"property": pv.property.value, "holds": pv.holds, "certificate": pv.certificate}
        for pv in classify(m)
    ]


@dataclass(frozen=True)
class ChainWitness:
    """One non-reversible step of the implication chain: a monoid satisfying
    the weaker property while failing the stronger one."""

    monoid: MonoidExpr
    satisfied: Property
    violated: Property
    satisfied_certificate: str
    violated_certificate: str


_WITNESS_ROWS: list[tuple[MonoidExpr, Property, Property]] = [
    (CyclicSemiring(Fraction(2, 3)), Property.ATOMIC, Property.ACCP),
    (PrimeReciprocal(), Property.ACCP, Property.BFM),
    (DenseTail(Fraction(1)), Property.BFM, Property.FFM),
    (PrimeFracIncreasing(), Property.FFM, Property.HFM),
]


def witness_chain() -> list[ChainWitness]:
    """Four monoids separating consecutive chain properties, each re-verified
    by running the classifier; deterministic output."""
    rows = []
    for m, satisfied, violated in _WITNESS_ROWS:
        verdicts = {pv.property: pv for pv in classify(m)}
        sat, vio = verdicts[satisfied], verdicts[violated]
        if sat.holds != "yes" or vio.holds != "no":
            raise ContradictionError(
                f"witness {to_text(m)} expected {satisfied.value} yes / "
                f"{violated.value} no, got {sat.holds} / {vio.holds}"
            )
        rows.append(
            ChainWitness(m, satisfied, violated, sat.certificate, vio.certificate)
        )
    return rows


def hfm_counterexample(
    n: numsg.NumericalMonoid,
) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Two different-length factorizations of one element of a numerical
    monoid with at least two minimal generators."""
    return numsg.hfm_pair(n)
