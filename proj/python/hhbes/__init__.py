"""Hereditary Harrop proof search and base-extension semantics toolkit."""

from ._hhbes import (
    ABSURDITY_ATOM,
    acceptance,
    check_derivation,
    classify,
    decompose,
    derive_atomic,
    encode,
    extract,
    fixpoint,
    flatten,
    is_degenerate,
    naf,
    oracle,
    parse,
    solve,
    support,
    valid,
)

__all__ = [
    "ABSURDITY_ATOM",
    "acceptance",
    "check_derivation",
    "classify",
    "decompose",
    "derive_atomic",
    "encode",
    "extract",
    "fixpoint",
    "flatten",
    "is_degenerate",
    "naf",
    "oracle",
    "parse",
    "solve",
    "support",
    "valid",
]
