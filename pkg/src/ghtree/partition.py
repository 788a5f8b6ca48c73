"""Partition trees, refinement steps, tree queries, assembly, and formats.

A partition tree's nodes are disjoint vertex subsets (super-nodes) covering
the graph; each tree edge induces a vertex bipartition whose cut value in
the graph is the edge weight.  Gomory-Hu construction refines super-nodes
along minimum cuts until all are singletons; the fully resolved tree
answers minimum-cut queries by path minima.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping, Optional, Sequence

from .graph import Graph
from .weights import Weight


class TreeError(ValueError):
    pass


class PartitionTree:
    __slots__ = ("super_nodes", "adj", "_next_id", "_node_super")

    def __init__(
        self,
        super_nodes: Mapping[int, frozenset[int]],
        adj: Mapping[int, Mapping[int, Weight]],
    ):
        self.super_nodes: dict[int, frozenset[int]] = dict(super_nodes)
        self.adj: dict[int, dict[int, Weight]] = {
            i: dict(nb) for i, nb in adj.items()
        }
        for i in self.super_nodes:
            self.adj.setdefault(i, {})
        self._next_id = max(self.super_nodes, default=-1) + 1
        self._node_super: Optional[dict[int, int]] = None

    @staticmethod
    def single(n: int) -> "PartitionTree":
        return PartitionTree({0: frozenset(range(n))}, {0: {}})

    # -- queries -------------------------------------------------------------

    @property
    def node_super(self) -> dict[int, int]:
        if self._node_super is None:
            self._node_super = {
                v: i for i, nodes in self.super_nodes.items() for v in nodes
            }
        return self._node_super

    @property
    def fully_resolved(self) -> bool:
        return all(len(s) == 1 for s in self.super_nodes.values())

    def edge_weight(self, i: int, j: int) -> Weight:
        return self.adj[i][j]

    def edges(self) -> list[tuple[int, int, Weight]]:
        out = []
        for i, nb in self.adj.items():
            for j, w in nb.items():
                if i < j:
                    out.append((i, j, w))
        return out

    def components_without(self, i: int) -> list[set[int]]:
        """Vertex sets of the tree components after removing super-node i."""
        if i not in self.super_nodes:
            raise TreeError(f"unknown super-node {i}")
        comps = []
        seen = {i}
        for start in self.adj[i]:
            if start in seen:
                continue
            comp_supers = [start]
            seen.add(start)
            stack = [start]
            while stack:
                a = stack.pop()
                for b in self.adj[a]:
                    if b not in seen:
                        seen.add(b)
                        comp_supers.append(b)
                        stack.append(b)
            nodes: set[int] = set()
            for a in comp_supers:
                nodes |= self.super_nodes[a]
            comps.append(nodes)
        return comps

    def subtree_side(self, i: int, j: int) -> frozenset[int]:
        """Vertices on j's side of tree edge (i, j)."""
        nodes: set[int] = set()
        seen = {i, j}
        stack = [j]
        nodes |= self.super_nodes[j]
        while stack:
            a = stack.pop()
            for b in self.adj[a]:
                if b not in seen:
                    seen.add(b)
                    nodes |= self.super_nodes[b]
                    stack.append(b)
        return frozenset(nodes)

    def verify(self, g: Graph) -> bool:
        """Recompute every edge's induced-bipartition value in g."""
        for i, j, w in self.edges():
            if g.cut_weight(self.subtree_side(i, j)) != w:
                return False
        return True

    def copy(self) -> "PartitionTree":
        return PartitionTree(self.super_nodes, self.adj)

    # -- refinement ----------------------------------------------------------

    def split(
        self,
        i: int,
        pieces: Sequence[tuple[frozenset[int], frozenset[int], Weight]],
    ) -> tuple["PartitionTree", list[int]]:
        """Split super-node i along disjoint cuts, one new super per piece.

        Each piece is (nodes, full_side, value): ``nodes`` is the slice of
        V_i it takes, ``full_side`` the complete vertex bipartition side the
        cut induces in the graph (used to reattach neighbors), ``value`` the
        cut weight.  Remaining vertices of V_i stay in the residual super,
        which keeps the old id.  Returns the new tree and new super ids.
        """
        vi = self.super_nodes[i]
        taken: set[int] = set()
        for nodes, full_side, _ in pieces:
            if not nodes or not nodes <= vi:
                raise TreeError("piece is not a subset of the super-node")
            if taken & nodes:
                raise TreeError("pieces overlap")
            if not nodes <= full_side:
                raise TreeError("piece disagrees with its cut side")
            taken |= nodes
        rest = vi - taken
        if not rest:
            raise TreeError("split must leave the residual side nonempty")

        tree = self.copy()
        tree._node_super = None
        new_ids = []
        for nodes, full_side, value in pieces:
            nid = tree._next_id
            tree._next_id += 1
            tree.super_nodes[nid] = nodes
            tree.adj[nid] = {}
            new_ids.append(nid)
        tree.super_nodes[i] = rest

        # reattach old neighbors by their side of each cut
        for j in list(tree.adj[i]):
            w = tree.adj[i].pop(j)
            del tree.adj[j][i]
            side_of = i
            nbset = self.super_nodes[j]
            probe = next(iter(nbset))
            for nid, (nodes, full_side, _) in zip(new_ids, pieces):
                if probe in full_side:
                    if not nbset <= full_side:
                        raise TreeError("cut is not expressed over the auxiliary graph")
                    side_of = nid
                    break
            else:
                for _, full_side, _ in pieces:
                    if nbset & full_side:
                        raise TreeError("cut is not expressed over the auxiliary graph")
            tree.adj[side_of][j] = w
            tree.adj[j][side_of] = w

        for nid, (nodes, full_side, value) in zip(new_ids, pieces):
            tree.adj[i][nid] = value
            tree.adj[nid][i] = value
        return tree, new_ids


def gh_refine(
    t: PartitionTree,
    i: int,
    cut_side: frozenset[int],
    value: Weight,
    s: int,
    tnode: int,
) -> PartitionTree:
    """One Gomory-Hu step: split super-node i along a minimum s,t-cut.

    ``cut_side`` is the full vertex bipartition side (expressed over the
    original vertex set); s and tnode must lie in V_i on opposite sides.
    Neighbors of i reattach to whichever half contains them.
    """
    vi = t.super_nodes[i]
    if s not in vi or tnode not in vi:
        raise TreeError("terminals must belong to the refined super-node")
    if (s in cut_side) == (tnode in cut_side):
        raise TreeError("cut does not separate the chosen terminals")
    side = cut_side if tnode in cut_side else frozenset(
        v for v in t.node_super if v not in cut_side
    )
    piece = frozenset(vi & side)
    tree, _ = t.split(i, [(piece, side, value)])
    return tree


# -- full (fully resolved) trees ----------------------------------------------


class GomoryHuTree:
    """Cut-equivalent tree over the original vertices."""

    __slots__ = ("n", "parent", "weight", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, Weight]]):
        self.n = n
        adj: dict[int, dict[int, Weight]] = {v: {} for v in range(n)}
        cnt = 0
        for u, v, w in edges:
            adj[u][v] = w
            adj[v][u] = w
            cnt += 1
        if cnt != n - 1:
            raise TreeError(f"tree needs {n - 1} edges, got {cnt}")
        self._adj = adj
        # rooted form for canonical serialization and queries
        self.parent = [-1] * n
        self.weight: list[Optional[Weight]] = [None] * n
        seen = bytearray(n)
        for root in range(n):
            if seen[root]:
                continue
            seen[root] = 1
            dq = deque([root])
            while dq:
                a = dq.popleft()
                for b, w in adj[a].items():
                    if not seen[b]:
                        seen[b] = 1
                        self.parent[b] = a
                        self.weight[b] = w
                        dq.append(b)
        if not all(seen):
            raise TreeError("edges do not form a spanning tree")

    @property
    def adj(self) -> dict[int, dict[int, Weight]]:
        return self._adj

    def edges(self) -> list[tuple[int, int, Weight]]:
        out = []
        for v in range(self.n):
            if self.parent[v] >= 0:
                a, b = sorted((v, self.parent[v]))
                out.append((a, b, self.weight[v]))
        out.sort(key=lambda e: (e[0], e[1]))
        return out

    def path(self, u: int, v: int) -> list[tuple[int, int, Weight]]:
        prev: dict[int, tuple[int, Weight]] = {u: (-1, None)}
        dq = deque([u])
        while dq:
            a = dq.popleft()
            if a == v:
                break
            for b, w in self._adj[a].items():
                if b not in prev:
                    prev[b] = (a, w)
                    dq.append(b)
        if v not in prev:
            raise TreeError("query nodes are in different components")
        edges = []
        x = v
        while x != u:
            a, w = prev[x]
            edges.append((a, x, w))
            x = a
        edges.reverse()
        return edges

    def query(self, u: int, v: int) -> tuple[Weight, frozenset[int]]:
        """Minimum-weight edge on the u-v path; (value, u's side).

        Ties go to the edge deepest from u (the query root), i.e. nearest v.
        The side is u's component once that edge is removed.
        """
        if u == v:
            raise TreeError("query needs two distinct nodes")
        path = self.path(u, v)
        best = 0
        for k in range(1, len(path)):
            if path[k][2] <= path[best][2]:
                best = k
        a, b, w = path[best]
        side = self.component_without(u, (a, b))
        return w, side

    def component_without(self, u: int, cut_edge: tuple[int, int]) -> frozenset[int]:
        a, b = cut_edge
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in self._adj[x]:
                if (x, y) in ((a, b), (b, a)):
                    continue
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def serialize(self) -> str:
        lines = [f"t {self.n}"]
        for u, v, w in self.edges():
            lines.append(f"e {u + 1} {v + 1} {w}")
        return "\n".join(lines) + "\n"


def tree_query(t: "PartitionTree | GomoryHuTree", u: int, v: int) -> tuple[Weight, frozenset[int]]:
    """Minimum u,v-cut (value and u's side) read off a fully resolved tree."""
    if isinstance(t, PartitionTree):
        t = to_node_tree(t)
    return t.query(u, v)


def to_node_tree(t: PartitionTree) -> GomoryHuTree:
    if not t.fully_resolved:
        raise TreeError("partition tree is not fully resolved")
    rep = {i: next(iter(nodes)) for i, nodes in t.super_nodes.items()}
    n = len(rep)
    edges = [(rep[i], rep[j], w) for i, j, w in t.edges()]
    return GomoryHuTree(n, edges)


def parse_tree(text: str) -> GomoryHuTree:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "t":
            n = int(parts[1])
        elif parts[0] == "e":
            if n is None:
                raise TreeError(f"line {lineno}: edge before header")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            edges.append((u, v, Weight.parse(parts[3])))
        else:
            raise TreeError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise TreeError("missing header")
    return GomoryHuTree(n, edges)


# -- assembly of subtrees into a full tree ------------------------------------


def assemble(
    t_partial: PartitionTree,
    subtrees: Mapping[int, tuple[Graph, GomoryHuTree]],
) -> GomoryHuTree:
    """Stitch per-super-node trees of auxiliary graphs into one full tree.

    Each super-node i supplies its auxiliary graph and a cut-equivalent
    tree of it.  Contracted nodes are identified with the partial-tree
    component they hold; every partial-tree edge (i, j) becomes one final
    edge between i's anchor toward j and j's anchor toward i, keeping the
    partial edge's weight.  Edges between two original nodes pass through.
    """
    n = sum(len(s) for s in t_partial.super_nodes.values())
    final_edges: list[tuple[int, int, Weight]] = []
    anchors: dict[tuple[int, int], int] = {}

    for i, nodes in t_partial.super_nodes.items():
        if i not in subtrees:
            raise TreeError(f"missing subtree for super-node {i}")
        aux, tree = subtrees[i]
        if tree.n != aux.n:
            raise TreeError("subtree does not span its auxiliary graph")
        span = frozenset().union(*(aux.members[v] for v in range(aux.n)))
        if span != frozenset(t_partial.node_super):
            raise TreeError("auxiliary graph does not cover the vertex set")
        # map contracted aux nodes to the adjacent super-node of i
        contracted_super: dict[int, int] = {}
        for q in range(aux.n):
            if aux.orig_id[q] is not None:
                continue
            for j in t_partial.adj[i]:
                if t_partial.subtree_side(i, j) == aux.members[q]:
                    contracted_super[q] = j
                    break
            else:
                raise TreeError("contracted node matches no tree component")
        # anchor of each contracted node: nearest original node in the subtree
        root = next(
            q for q in range(aux.n) if aux.orig_id[q] is not None
        )
        order = [root]
        par = {root: root}
        dq = deque([root])
        while dq:
            a = dq.popleft()
            for b in tree.adj[a]:
                if b not in par:
                    par[b] = a
                    order.append(b)
                    dq.append(b)
        for q, j in sorted(contracted_super.items()):
            x = q
            while aux.orig_id[x] is None:
                x = par[x]
                if x == par[x] and aux.orig_id[x] is None:
                    raise TreeError("no original anchor for contracted node")
            anchors[(i, j)] = aux.orig_id[x]
        for a in range(aux.n):
            oa = aux.orig_id[a]
            if oa is None:
                continue
            for b, w in tree.adj[a].items():
                ob = aux.orig_id[b]
                if ob is not None and oa < ob:
                    final_edges.append((oa, ob, w))

    for i, j, w in t_partial.edges():
        try:
            u = anchors[(i, j)]
            v = anchors[(j, i)]
        except KeyError:
            raise TreeError("partial edge has no anchors on both sides")
        final_edges.append((min(u, v), max(u, v), w))

    return GomoryHuTree(n, final_edges)


# -- non-crossing cut combination ---------------------------------------------


def noncrossing_tree(g: Graph, p: int, cuts: Sequence) -> PartitionTree:
    """Partition tree realizing a laminar family of pivot-avoiding cuts.

    Each cut side becomes a super-node slice nested per the containment
    order; the root super holds the pivot.  Crossing cuts are rejected.
    """
    sides = [frozenset(c.side) for c in cuts]
    values = [c.value for c in cuts]
    for s in sides:
        if p in s:
            raise TreeError("cut side contains the pivot")
    for a in range(len(sides)):
        for b in range(a + 1, len(sides)):
            x, y = sides[a], sides[b]
            if x & y and not (x <= y or y <= x):
                raise TreeError("crossing cuts")

    order = sorted(range(len(sides)), key=lambda k: (-len(sides[k]), sorted(sides[k])))
    parent: dict[int, Optional[int]] = {}
    for pos, k in enumerate(order):
        parent[k] = None
        for prev in reversed(order[:pos]):
            if sides[k] <= sides[prev]:
                parent[k] = prev
                break

    all_nodes = frozenset(range(g.n))
    super_of: dict[int, frozenset[int]] = {}
    used: dict[int, set[int]] = {k: set() for k in range(len(sides))}
    for k in range(len(sides)):
        if parent[k] is not None:
            used[parent[k]] |= set(sides[k])
    root_used: set[int] = set()
    for k in range(len(sides)):
        if parent[k] is None:
            root_used |= set(sides[k])

    tree_supers: dict[int, frozenset[int]] = {0: all_nodes - frozenset(root_used)}
    adj: dict[int, dict[int, Weight]] = {0: {}}
    id_of = {None: 0}
    for pos, k in enumerate(order, start=1):
        tree_supers[pos] = frozenset(sides[k] - frozenset(used[k]))
        if not tree_supers[pos]:
            raise TreeError("cut adds no new vertices (duplicate side?)")
        adj[pos] = {}
        id_of[k] = pos
    for k in range(len(sides)):
        a = id_of[k]
        b = id_of[parent[k]]
        adj[a][b] = values[k]
        adj[b][a] = values[k]
    return PartitionTree(tree_supers, adj)
