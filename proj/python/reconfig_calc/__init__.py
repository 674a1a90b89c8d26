"""Process calculi with dynamic reconfiguration: CCS^dp and Webpi."""

from ._core import (
    ParseError,
    Program,
    ReconfigError,
    StateBoundExceeded,
    StateSpace,
    Term,
    alpha_equivalent,
    bisim_terms,
    explore,
    normalize,
    parse,
    parse_term,
    pretty_print,
    reduce_step,
    trace,
    transitions,
    wp_reduce,
    wp_step,
)

__all__ = [
    "ParseError",
    "Program",
    "ReconfigError",
    "StateBoundExceeded",
    "StateSpace",
    "Term",
    "alpha_equivalent",
    "bisim_terms",
    "explore",
    "normalize",
    "parse",
    "parse_term",
    "pretty_print",
    "reduce_step",
    "trace",
    "transitions",
    "wp_reduce",
    "wp_step",
]
