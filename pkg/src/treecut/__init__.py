"""Tree-cut decompositions with biparametric widths, their dual certificates,
an exact small-graph solver, and the cops-dogs-robber game."""
from .certificates import (
    Bramble,
    BrambleOrders,
    OrientedSeparation,
    Separation,
    Slab,
    Tangle,
    bramble_orders,
    bramble_to_tangle,
    find_tangle,
    refute_decomposition,
    verify_bramble,
    verify_tangle,
)
from .decomposition import TreeCutDecomposition, WidthReport, measure_widths, simplify, validate
from .game import GameConfig, GameState, play
from .graph import MultiGraph, build_graph, is_cactus, quotient, three_ecc, wall
from .solver import SolverBudget, ab_tcw, exists_decomposition, synthesize_bramble, wollan_tcw
from .tcc import component_torso, glue

__version__ = "0.1.0"
