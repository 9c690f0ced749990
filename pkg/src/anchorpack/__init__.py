"""Exact maximum-area anchored rectangle packings in the unit square."""

from .closed_forms import (
    BoundResult,
    bound_213,
    bound_231,
    bound_231_n4,
    bound_cliff,
    bound_decreasing,
    bound_increasing,
    bound_increasing_start,
    bound_sparse,
    bound_sparse_limit,
    bound_start1,
    kn_table,
    threshold_prelayer,
    tight_config_for,
    two_dot_area,
)
from .geometry import (
    FLOAT_TOL,
    Configuration,
    InvalidConfiguration,
    InvalidPacking,
    Packing,
    Point,
    Rect,
    fill_proportion,
    is_maximal_rect,
    packing_area,
    rescale_into,
    staircase_region,
    validate_packing,
)
from .minimax import (
    MinimaxReport,
    check_inverse_symmetry,
    local_min_certificate,
    minimize_over_configs,
    verify_mountain_inequality,
)
from .permutations import Permutation, classify, inverse, permutation_of, reflect
from .pointfile import format_points, load_points, parse_points
from .render import render
from .solver import fill_staircase, max_area, origin_maximal_rects, solve_max

__version__ = "0.1.0"
