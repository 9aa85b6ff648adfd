"""k-sections of provably bounded cut width in trees and tree-decomposed graphs."""

from .graph import (
    Cut,
    Graph,
    KSection,
    components,
    cut_width,
    diameter,
    induced_subgraph,
    link_components,
    longest_path,
    max_degree,
    parse_gr,
    relative_diameter,
    validate_forest,
    write_gr,
)
from .labeling import PathDecomposition, PLabeling, d_p, decompose_along_path, find_anchor, p_labeling
from .treecut import DiamCutTrace, approximate_cut, diameter_preserving_cut, exact_cut_bounded
from .treedec import (
    HeaviestPathResult,
    TreeDecomposition,
    cluster_incident_edges,
    heaviest_path,
    induced,
    make_nonredundant,
    parse_td,
    remove_cluster_parts,
    tree_to_width1_td,
    validate,
    validation_errors,
    write_td,
)
from .tdcut import (
    RCutTrace,
    TDPLabeling,
    approximate_cut_td,
    d_r,
    exact_cut_bounded_td,
    r_preserving_cut,
    td_p_labeling,
)
from .engine import (
    BoundReport,
    cut_prescribed_sizes,
    ksection_td,
    ksection_td_detailed,
    ksection_tree,
    ksection_tree_detailed,
    recursive_bisection_baseline,
)
from .oracle import brute_min_ksection, dp_min_size_cut_td, dp_min_size_cut_tree
from .instances import GeneratorSpec, Xorshift64Star, generate

__version__ = "0.1.0"
