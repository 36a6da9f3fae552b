"""Roommate rent division: welfare-maximizing assignments and
envy-minimizing prices for tenants with joint room/roommate preferences."""

from .core import (
    Assignment,
    EnvyReport,
    Instance,
    Solution,
    envy_report,
    group_valuation,
    is_room_envy_free,
    social_welfare,
    validate_instance,
)
from .enumeration import EnumerationMode, brute_force_max_welfare, count_assignments
from .greedy import greedy_assign, max_weight_perfect_matching, rematch_rooms
from .mwis import check_claw_free, mwis_assign
from .pricing import (
    EpsilonSolution,
    PricingMode,
    attach_prices,
    min_epsilon_prices,
    pef_feasible,
    ref_prices,
)
from .bench import GeneratorConfig, generate_instance

__all__ = [
    "Assignment",
    "EnvyReport",
    "EnumerationMode",
    "EpsilonSolution",
    "GeneratorConfig",
    "Instance",
    "PricingMode",
    "Solution",
    "attach_prices",
    "brute_force_max_welfare",
    "check_claw_free",
    "count_assignments",
    "envy_report",
    "generate_instance",
    "greedy_assign",
    "group_valuation",
    "is_room_envy_free",
    "max_weight_perfect_matching",
    "min_epsilon_prices",
    "mwis_assign",
    "pef_feasible",
    "ref_prices",
    "rematch_rooms",
    "social_welfare",
    "validate_instance",
]
