# lifting/__init__.py
from .canonical import find_rearrangement, group_equivalent_factors
from .colour_passing import (
    ColourPassingResult,
    Colouring,
    Grouping,
    colour_passing,
    detect_commutative_sets,
    initial_factor_colours,
    initial_variable_colours,
    pass_round,
    run_cpr,
)
