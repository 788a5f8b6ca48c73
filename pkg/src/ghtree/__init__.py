"""Cut-equivalent (Gomory-Hu) trees for unweighted graphs.

Exact minimum s,t-cuts for all pairs at once: classical builders, a
near-quadratic randomized strategy (partial-tree bootstrap, perturbation,
sparsification, isolating cuts, demand-weighted expander decomposition),
and a fully deterministic variant built on latest cuts and a dynamic pivot.
"""

from .weights import Weight
from .graph import (
    Graph,
    GraphError,
    auxiliary_graph,
    induced_with_self_loops,
    parse_graph,
    emit_graph,
    subdivide,
)
from .flow import (
    FLOW_CALLS,
    CutSide,
    MaxFlowSolver,
    all_pairs_oracle,
    latest_min_cut,
    max_flow_min_cut,
)
from .sparsify import ni_sparsify, perturb, perturbed_sparsifier
from .isolating import isolating_cuts
from .expander import (
    ExpanderPart,
    decompose_with_demands,
    size_g,
    verify_expansion,
)
from .partition import (
    GomoryHuTree,
    PartitionTree,
    TreeError,
    assemble,
    gh_refine,
    noncrossing_tree,
    parse_tree,
    to_node_tree,
    tree_query,
)
from .classic import classic_gomory_hu, gusfield, gusfield_projection, k_partial_tree
from .single_source import (
    EngineConfig,
    EstimateTable,
    SingleSourceEngine,
    single_source_mincuts,
    stage_w,
    easy_cuts_step,
    isolating_sample_step,
    priority_solve_step,
)
from .dynamic import pivot_change, single_source_dynamic_pivot, splitters
from .build import (
    LaminarityError,
    RandomizedAbort,
    build_deterministic,
    build_randomized,
    is_good_pivot,
)
from .analysis import (
    CutMembershipTree,
    count_non_easy_bags,
    cut_membership_tree,
    is_easy_bag,
    w_large_subtree,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
