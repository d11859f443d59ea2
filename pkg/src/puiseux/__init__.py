"""Exact arithmetic for Puiseux monoids: membership, atoms, factorizations,
closures, conductors, and certified classification of atomicity properties.

The top level re-exports the expression-oriented API.  The numerical-monoid
layer keeps its own namespace (``from puiseux import numsg``) because its
``member``/``factorizations``/``lengths`` work on normalized integers rather
than monoid expressions.
"""

from .classify import (
    Property,
    PropertyVerdict,
    classify,
    classify_json,
    hfm_counterexample,
    witness_chain,
)
from .closure import (
    ClosureDesc,
    ConductorDesc,
    conductor,
    iso_check,
    is_pruefer,
    is_root_closed,
    root_closure,
)
from .errors import (
    ContradictionError,
    MixedSignsGeneratesGroup,
    NegativeGenerator,
    NegativeValue,
    NonSquarefreeDenominator,
    NotAMember,
    NotPrime,
    ParseError,
    PuiseuxError,
    TrivialMonoid,
    UnsupportedQuery,
    ValidationError,
    ZeroDenominator,
)
from .exact import (
    INFINITY,
    Rat,
    Supernatural,
    rat_from_text,
    rat_to_text,
    sn_from_int,
    sn_from_text,
)
from .factor import (
    Factorizations,
    Lengths,
    PrDecomp,
    atoms,
    factorizations,
    is_atom,
    lengths,
    member_bounded,
    pr_decompose,
    pr_stats,
    zs_bounded,
)
from .kernels import BACKEND
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
    Union,
    meta,
    parse,
    scaled,
    tail_split,
    to_text,
    union_of,
    union_parts,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ClosureDesc",
    "ConductorDesc",
    "ContradictionError",
    "CyclicSemiring",
    "DenseTail",
    "Factorizations",
    "FiniteAtomExample",
    "FiniteGen",
    "INFINITY",
    "IncreasingDenom",
    "Lengths",
    "MixedSignsGeneratesGroup",
    "MonoidExpr",
    "NegativeGenerator",
    "NegativeValue",
    "NonSquarefreeDenominator",
    "NotAMember",
    "NotPrime",
    "ParseError",
    "PrDecomp",
    "PrimeFracIncreasing",
    "PrimeReciprocal",
    "Property",
    "PropertyVerdict",
    "PuiseuxError",
    "Rat",
    "Scale",
    "Supernatural",
    "TrivialMonoid",
    "Union",
    "UnsupportedQuery",
    "ValidationError",
    "ZeroDenominator",
    "__version__",
    "atoms",
    "classify",
    "classify_json",
    "conductor",
    "factorizations",
    "hfm_counterexample",
    "is_atom",
    "is_pruefer",
    "is_root_closed",
    "iso_check",
    "lengths",
    "member_bounded",
    "meta",
    "parse",
    "pr_decompose",
    "pr_stats",
    "rat_from_text",
    "rat_to_text",
    "root_closure",
    "scaled",
    "sn_from_int",
    "sn_from_text",
    "tail_split",
    "to_text",
    "union_of",
    "union_parts",
    "witness_chain",
    "zs_bounded",
]
