"""Random hyperplane search trees, exact k-facet census and their limiting constants."""

from .geom import (
    BudgetExceeded,
    DegenerateInputError,
    PointSet,
    classify_split,
    is_general_position,
    orientation,
)
from .points import load_points, moment_curve, random_pointset, save_points
from .tree import (
    HstTree,
    TreeStats,
    build_fringe_tree,
    build_hst,
    build_moment_hst,
    simulate_moment_split,
    stats,
)

__version__ = "0.1.0"
