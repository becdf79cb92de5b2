"""Grid-world instruction benchmark: grammar, simulator, oracle planner, scoring."""

from ._core import (
    ACTIONS,
    CommandParseError,
    PlanError,
    __version__,
    chance_level,
    decode_state,
    encode_state,
    enumerate_commands,
    exact_match,
    execute,
    gold_set,
    goal_satisfied,
    manner_satisfied,
    parse,
    plan,
    realize,
    sample_world,
    semantic_match,
    validate_world,
)

__all__ = [
    "ACTIONS",
    "CommandParseError",
    "PlanError",
    "__version__",
    "chance_level",
    "decode_state",
    "encode_state",
    "enumerate_commands",
    "exact_match",
    "execute",
    "gold_set",
    "goal_satisfied",
    "manner_satisfied",
    "parse",
    "plan",
    "realize",
    "sample_world",
    "semantic_match",
    "validate_world",
]
