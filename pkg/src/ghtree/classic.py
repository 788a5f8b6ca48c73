"""Classical cut-tree builders: Gomory-Hu on contracted graphs, Gusfield's
uncontracted variant, and partial trees that resolve only low-connectivity
pairs.
"""

from __future__ import annotations

from typing import Optional

from .flow import MaxFlowSolver, max_flow_min_cut
from .graph import Graph, auxiliary_graph
from .partition import GomoryHuTree, PartitionTree, gh_refine, to_node_tree
from .sparsify import perturb, perturbed_sparsifier
from .weights import Weight, from_scaled


def _components_forest(g: Graph):
    """Per-component node lists plus zero-weight joining edges."""
    comps = g.components()
    comps.sort(key=min)
    joins = []
    for a, b in zip(comps, comps[1:]):
        joins.append((min(a), min(b)))
    return comps, joins


def classic_gomory_hu(g: Graph) -> PartitionTree:
    """Gomory-Hu construction: n-1 max-flows on contracted auxiliary graphs.

    Pair selection is the lexicographically smallest pair inside the largest
    super-node, for deterministic replay.  Disconnected inputs are built per
    component and joined with zero-weight edges.
    """
    if g.n == 1:
        return PartitionTree.single(1)
    g = g.rebase()  # contraction book-keeping in this graph's own node space
    comps, joins = _components_forest(g)
    if len(comps) > 1:
        return _join_component_trees(g, comps, joins, classic_gomory_hu)

    t = PartitionTree.single(g.n)
    while True:
        pending = [i for i, s in t.super_nodes.items() if len(s) > 1]
        if not pending:
            return t
        i = max(pending, key=lambda k: (len(t.super_nodes[k]), -k))
        s, tnode = sorted(t.super_nodes[i])[:2]
        aux, index = auxiliary_graph(g, t, i)
        cut = max_flow_min_cut(aux, index[s], index[tnode])
        side = frozenset().union(*(aux.members[v] for v in cut.side))
        t = gh_refine(t, i, side, cut.value, s, tnode)


def _join_component_trees(g, comps, joins, builder):
    supers: dict[int, frozenset[int]] = {}
    adj: dict[int, dict[int, Weight]] = {}
    offset = 0
    for comp in comps:
        nodes = sorted(comp)
        fwd = {v: k for k, v in enumerate(nodes)}
        sub_edges = {}
        for (u, v), data in g.edges.items():
            if u in comp and v in comp:
                iu, iv = fwd[u], fwd[v]
                key = (iu, iv) if iu < iv else (iv, iu)
                sub_edges[key] = data
        sub = Graph(len(nodes), sub_edges, unit=g.unit)
        sub_tree = builder(sub)
        remap = {}
        for sid, sset in sub_tree.super_nodes.items():
            nid = offset + sid
            remap[sid] = nid
            supers[nid] = frozenset(nodes[x] for x in sset)
            adj[nid] = {}
        for a, b, w in sub_tree.edges():
            adj[remap[a]][remap[b]] = w
            adj[remap[b]][remap[a]] = w
        offset += max(sub_tree.super_nodes) + 1
    tree = PartitionTree(supers, adj)
    for u, v in joins:
        a, b = tree.node_super[u], tree.node_super[v]
        tree.adj[a][b] = Weight(0, 0)
        tree.adj[b][a] = Weight(0, 0)
    return tree


def gusfield(g: Graph) -> PartitionTree:
    """Cut tree with all n-1 max-flows made on the original graph."""
    if g.n == 1:
        return PartitionTree.single(1)
    comps, joins = _components_forest(g)
    if len(comps) > 1:
        return _join_component_trees(g, comps, joins, gusfield)

    sol = MaxFlowSolver(g)

    def solve(s, t):
        val = sol.solve(s, t)
        return from_scaled(val, g.unit), sol.source_side(s)

    return _gusfield_frame(g.n, solve)


def _gusfield_frame(n: int, solve) -> PartitionTree:
    """Gusfield's scheme over an abstract (value, s-side) min-cut oracle."""
    root = 0
    pred = [root] * n
    weight: list[Optional[Weight]] = [None] * n
    for v in range(1, n):
        pv = pred[v]
        value, s_side = solve(v, pv)
        weight[v] = value
        for w in range(n):
            if w != v and pred[w] == pv and w in s_side:
                pred[w] = v
        if pred[pv] != pv and pred[pv] in s_side:
            # v takes its grandparent's place
            pred[v] = pred[pv]
            pred[pv] = v
            weight[v] = weight[pv]
            weight[pv] = value

    supers = {v: frozenset((v,)) for v in range(n)}
    adj: dict[int, dict[int, Weight]] = {v: {} for v in range(n)}
    for v in range(1, n):
        adj[v][pred[v]] = weight[v]
        adj[pred[v]][v] = weight[v]
    return PartitionTree(supers, adj)


def k_partial_tree(g: Graph, k: int, seed: int | None = 0) -> PartitionTree:
    """Partition tree resolving exactly the pairs with connectivity <= k.

    Built as a full Gomory-Hu tree of the perturbed (k+1)-sparsifier, whose
    cuts of value <= k coincide with the input graph's, then contracting
    every tree edge heavier than k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if g.n == 1:
        return PartitionTree.single(1)
    gp = perturb(g, seed=seed)
    gw = perturbed_sparsifier(g, gp, k + 1)
    full = classic_gomory_hu(gw)

    node_tree = to_node_tree(full)
    # merge across heavy edges
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    kept: list[tuple[int, int, Weight]] = []
    for u, v, w in node_tree.edges():
        if w.base > k:
            ru, rv = find(u), find(v)
            parent[ru] = rv
        else:
            kept.append((u, v, w))

    groups: dict[int, set[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), set()).add(v)
    ids = {r: i for i, r in enumerate(sorted(groups))}
    supers = {ids[r]: frozenset(s) for r, s in groups.items()}
    adj: dict[int, dict[int, Weight]] = {i: {} for i in supers}
    for u, v, w in kept:
        a, b = ids[find(u)], ids[find(v)]
        rounded = Weight(w.base, 0)
        adj[a][b] = rounded
        adj[b][a] = rounded
    return PartitionTree(supers, adj)


def gusfield_projection(g: Graph, simple_tree: GomoryHuTree) -> PartitionTree:
    """Cut tree of a multigraph from the tree of its subdivided form.

    Runs the Gusfield scheme but answers every min-cut invocation by a tree
    query on the subdivided graph's cut-equivalent tree, projecting the side
    onto the original vertices.  No max-flow calls are made.
    """

    def solve(s, t):
        value, side = simple_tree.query(s, t)
        projected = frozenset(v for v in side if v < g.n)
        return value, projected

    return _gusfield_frame(g.n, solve)
