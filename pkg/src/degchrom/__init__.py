"""Exact degree chromatic polynomials P_m(G, k).

P_m(G, k) counts the k-colorings of G in which no vertex has m or more
neighbours of its own color.
"""

from .counting import (
    BudgetExceededError,
    ConstraintParams,
    CountResult,
    brute_force_count,
    count_av,
    count_pairwise_intersection,
    degree_chromatic_polynomial,
    friend_count,
    tree_dp_count,
)
from .graph import (
    Graph,
    GraphError,
    LabeledTree,
    NotATreeError,
    ParseError,
    certify_tree,
    parse_edge_list,
    random_tree,
    tree_from_prufer,
)
from .polyalg import BigPolynomial, IntegralityError, interpolate
from .theorem import predicted_tail, verify_tree_theorem

__version__ = "0.1.0"
