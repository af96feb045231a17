"""Decision procedures for probability logics, from comparative to polynomial."""

from ._core import (
    ParseError,
    classify,
    etr_to_ind,
    evaluate,
    generate,
    hierarchy,
    parse,
    represent,
    sat,
    valid,
)

__all__ = [
    "ParseError",
    "classify",
    "etr_to_ind",
    "evaluate",
    "generate",
    "hierarchy",
    "parse",
    "represent",
    "sat",
    "valid",
]
