"""Exact computation with class transpositions of the integers."""

from .errors import (
    ClassTransError,
    DegreeMismatch,
    InvalidArgument,
    NotClassified,
    NotDisjoint,
    NotHorizontal,
    ParseError,
    RangeError,
    ResourceLimit,
    ShapeViolation,
)
from .graph import (
    ComponentKind,
    GraphComponent,
    OrderReport,
    ProductGraph,
    Vertex,
    product_order_graph,
    shape_match_horizontal,
)
from .group import (
    GeneratorSet,
    StabilizerChain,
    bsgs_build,
    conjecture_check,
    ctk_generators,
    fixed_points,
)
from .perm import (
    CycleStructure,
    FinitePermutation,
    cycle_decomposition,
    embed_phi,
    horizontal_product_perm,
    lift_cycles,
    perm_order,
)
from .residue import (
    ClassTransposition,
    Kind,
    RcwaMapping,
    ResidueClass,
    classes_disjoint,
    classify,
    make_transposition,
    parse_class,
    parse_transposition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
