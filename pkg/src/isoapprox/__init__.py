"""Certified approximation of isotone functions on finite posets.

Any non-decreasing function on a finite poset is approximated to within
``1/n`` in the sup norm by a function built from a generating family using
only sums and compositions with non-decreasing piecewise-linear maps. Every
constructed function comes with an expression-tree certificate that can be
replayed exactly.
"""

from .cone import Comp, Gen, Sum, average, certify, eval_expr, scale_shift
from .construct import (
    ApproxReport,
    Construction,
    approximate,
    approximate_normalized,
    select_cover,
    separate_points,
    separate_sets,
)
from .funcspace import (
    Family,
    GroundFunction,
    generated_preorder,
    generates,
    is_isotone,
    separates_points,
    sup_dist,
    upset_generators,
)
from .pl import PLFunction, Smoothstep, compose_pl, eval_op, is_nondecreasing, ramp
from .poset import Poset, not_leq_pairs, poset_from_covers, random_poset, upset
from .rational import Q

__all__ = [
    "ApproxReport", "Comp", "Construction", "Family", "Gen", "GroundFunction", "PLFunction",
    "Poset", "Q", "Smoothstep", "Sum", "approximate", "approximate_normalized", "average",
    "certify", "compose_pl", "eval_expr", "eval_op", "generated_preorder", "generates",
    "is_isotone", "is_nondecreasing", "not_leq_pairs", "poset_from_covers", "ramp",
    "random_poset", "scale_shift", "select_cover", "separate_points", "separate_sets",
    "separates_points", "sup_dist", "upset", "upset_generators",
]
