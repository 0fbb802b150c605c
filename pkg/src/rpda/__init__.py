"""Register pushdown automata: semantics, membership deciders and hardness reductions."""

from .core import (
    BOTTOM,
    FF,
    TOP_EQ,
    TT,
    And,
    Configuration,
    DataValue,
    Not,
    Or,
    RegEq,
    Rpda,
    Subclass,
    TopEq,
    TransitionRule,
    Tt,
    assign,
    classify,
    eval_guard,
    initial_configuration,
    is_accepting,
    named,
    replay,
    rule,
    step,
    validate,
    word,
)
from .membership import (
    Accepted,
    Rejected,
    SearchBudget,
    Unknown,
    accepting_run,
    decide,
    member_general,
    member_growing,
    member_non_decreasing,
)

__version__ = "0.1.0"
