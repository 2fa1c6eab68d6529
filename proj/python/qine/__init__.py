"""Inner and boundary pavings for universally quantified inequalities."""

from ._qine import (
    Box,
    Expression,
    Interval,
    Mode,
    ParseError,
    Paving,
    PavingStats,
    Problem,
    ProblemFileError,
    SolverConfig,
    StopReason,
    classified_ratio,
    hc4_revise,
    hull,
    intersect,
    load_problem,
    parse_expression,
    parse_problem,
    report,
    solve,
    svg,
)

__all__ = [
    "Box",
    "Expression",
    "Interval",
    "Mode",
    "ParseError",
    "Paving",
    "PavingStats",
    "Problem",
    "ProblemFileError",
    "SolverConfig",
    "StopReason",
    "classified_ratio",
    "hc4_revise",
    "hull",
    "intersect",
    "load_problem",
    "parse_expression",
    "parse_problem",
    "report",
    "solve",
    "svg",
]
