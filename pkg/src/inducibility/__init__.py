"""Exact leaf-induced subtree counts, densities and inducibility bounds for d-ary trees."""

from .constructions import ConstructionTrace, compose, g_map, iterate_compose, t_star
from .counting import (
    CountResult,
    LeafCopyProfile,
    PatternTable,
    brute_force_count,
    count_copies,
    count_through_leaf,
    density,
)
from .enumeration import EnumerationSpec, count_trees, enumerate_trees
from .errors import (
    ArityError,
    BudgetExceeded,
    InducibilityError,
    LeafIndexError,
    PreconditionError,
    TreeSyntaxError,
)
from .extremal import (
    InducibilityInterval,
    MaxDensityResult,
    caterpillar_count,
    contains_binary_caterpillar,
    inducibility_interval,
    lower_bound_generic,
    max_density,
    star_inducibility,
)
from .tree import (
    LEAF,
    Tree,
    build_caterpillar,
    build_complete,
    build_star,
    canonicalize,
    induce,
    is_isomorphic,
    parse,
    serialize,
)
from .verify import verify

__version__ = "0.1.0"

__all__ = [
    "ArityError",
    "BudgetExceeded",
    "ConstructionTrace",
    "CountResult",
    "EnumerationSpec",
    "InducibilityError",
    "InducibilityInterval",
    "LEAF",
    "LeafCopyProfile",
    "LeafIndexError",
    "MaxDensityResult",
    "PatternTable",
    "PreconditionError",
    "Tree",
    "TreeSyntaxError",
    "brute_force_count",
    "build_caterpillar",
    "build_complete",
    "build_star",
    "canonicalize",
    "caterpillar_count",
    "compose",
    "contains_binary_caterpillar",
    "count_copies",
    "count_through_leaf",
    "count_trees",
    "density",
    "enumerate_trees",
    "g_map",
    "induce",
    "inducibility_interval",
    "is_isomorphic",
    "iterate_compose",
    "lower_bound_generic",
    "max_density",
    "parse",
    "serialize",
    "star_inducibility",
    "t_star",
    "verify",
]
