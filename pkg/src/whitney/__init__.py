"""Bounded verification of Whitney categories on stratified graphs."""

from .errors import CompositionError, InvalidArgument, InvalidParameter
from .stratgraph import (
    Edge,
    Stratum,
    StratifiedGraph,
    Subdivision,
    chain,
    circle,
    fibre_product,
    graphs_up_to,
    interval,
    is_isomorphic,
    point,
    points,
    standard_space,
    subdivide,
    wedge,
)
from .morphism import (
    Letter,
    PMorphism,
    collapse_to_point,
    compose,
    edge_traversal,
    enumerate_homs,
    identity,
    is_stratified,
    pinch,
    reversal,
    vertex_inclusion,
)
from .site import Cover, closure_cover, pullback_battery, pullback_cover, sheaf_check, trivially_covers
from .presheaf import LoopMonoid, Presheaf, omega1, product, representable

__version__ = "0.1.0"
