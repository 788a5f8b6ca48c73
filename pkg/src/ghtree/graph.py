"""Undirected multigraph with contraction, subdivision, and self-loop
preserving induced subgraphs.

Nodes are indices 0..n-1.  Every node carries the set of original-graph
vertices it represents: plain vertices represent themselves, contracted
nodes carry the union of what they swallowed.  Edges store an integer
multiplicity and an integer count of perturbation units (see weights.py).
Graphs are immutable after construction.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence

from .weights import Weight, from_scaled


class GraphError(ValueError):
    pass


class Graph:
    __slots__ = (
        "n", "edges", "loops", "members", "orig_id", "simple", "unit",
        "_adj", "_index_of", "_member_count",
    )

    def __init__(
        self,
        n: int,
        edges: Mapping[tuple[int, int], tuple[int, int]],
        *,
        loops: Optional[Mapping[int, tuple[int, int]]] = None,
        members: Optional[Sequence[frozenset[int]]] = None,
        orig_id: Optional[Sequence[Optional[int]]] = None,
        simple: bool = False,
        unit: int = 1,
        validate: bool = True,
    ):
        self.n = n
        self.edges: dict[tuple[int, int], tuple[int, int]] = dict(edges)
        self.loops: dict[int, tuple[int, int]] = dict(loops) if loops else {}
        if members is None:
            members = [frozenset((v,)) for v in range(n)]
        self.members: tuple[frozenset[int], ...] = tuple(members)
        if orig_id is None:
            orig_id = list(range(n))
        self.orig_id: tuple[Optional[int], ...] = tuple(orig_id)
        self.simple = simple
        self.unit = unit
        self._adj: Optional[list[dict[int, tuple[int, int]]]] = None
        self._index_of: Optional[dict[int, int]] = None
        self._member_count = tuple(len(m) for m in self.members)
        if validate:
            for (u, v), (mult, eps) in self.edges.items():
                if not (0 <= u < v < n):
                    raise GraphError(f"bad edge key ({u},{v})")
                if mult < 1 or eps < 0:
                    raise GraphError(f"bad edge data ({mult},{eps})")
            if simple:
                assert all(m == 1 and e == 0 for m, e in self.edges.values())
                assert not self.loops

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def from_edges(n: int, pairs: Iterable[tuple[int, int]], *, simple: bool = True) -> "Graph":
        """Build from (u, v) pairs; repeated pairs accumulate multiplicity."""
        edges: dict[tuple[int, int], tuple[int, int]] = {}
        for u, v in pairs:
            if u == v:
                raise GraphError("self-loop in input edge list")
            key = (u, v) if u < v else (v, u)
            mult, eps = edges.get(key, (0, 0))
            edges[key] = (mult + 1, eps)
        is_simple = simple and all(m == 1 for m, _ in edges.values())
        return Graph(n, edges, simple=is_simple)

    def rebase(self) -> "Graph":
        """Copy with identity node book-keeping: every node counts as an
        original node of itself.  Used when a contracted graph is handed to
        an algorithm that should treat it as a standalone input."""
        return Graph(self.n, self.edges, loops=self.loops, simple=self.simple,
                     unit=self.unit, validate=False)

    def with_edges(self, edges, *, unit: Optional[int] = None, simple: Optional[bool] = None) -> "Graph":
        """Copy of this graph with a replaced edge map (same node book-keeping)."""
        return Graph(
            self.n, edges, loops=self.loops, members=self.members,
            orig_id=self.orig_id,
            simple=self.simple if simple is None else simple,
            unit=self.unit if unit is None else unit,
            validate=False,
        )

    # -- basic queries -------------------------------------------------------

    @property
    def adj(self) -> list[dict[int, tuple[int, int]]]:
        if self._adj is None:
            a: list[dict[int, tuple[int, int]]] = [dict() for _ in range(self.n)]
            for (u, v), data in self.edges.items():
                a[u][v] = data
                a[v][u] = data
            self._adj = a
        return self._adj

    @property
    def index_of(self) -> dict[int, int]:
        """Map original vertex id -> node index, for uncontracted nodes."""
        if self._index_of is None:
            self._index_of = {
                o: i for i, o in enumerate(self.orig_id) if o is not None
            }
        return self._index_of

    def member_count(self, v: int) -> int:
        return self._member_count[v]

    @property
    def edge_instances(self) -> int:
        return sum(m for m, _ in self.edges.values())

    def degree(self, v: int) -> int:
        """Edge-instance degree; each self-loop contributes one."""
        d = sum(m for m, _ in self.adj[v].values())
        if v in self.loops:
            d += self.loops[v][0]
        return d

    def degree_weight(self, v: int) -> Weight:
        """Degree including perturbation units (loops included)."""
        base = eps = 0
        for m, e in self.adj[v].values():
            base += m
            eps += e
        if v in self.loops:
            lm, le = self.loops[v]
            base += lm
            eps += le
        return Weight(base, eps)

    def cut_units(self, side: frozenset[int] | set[int]) -> int:
        """Scaled weight of edges crossing (side, complement); loops never cross."""
        total = 0
        unit = self.unit
        if len(side) * 2 <= self.n:
            inner, test = side, side
            for u in inner:
                for v, (m, e) in self.adj[u].items():
                    if v not in test:
                        total += m * unit + e
            return total
        outside = [v for v in range(self.n) if v not in side]
        for u in outside:
            for v, (m, e) in self.adj[u].items():
                if v in side:
                    total += m * unit + e
        return total

    def cut_weight(self, side) -> Weight:
        return from_scaled(self.cut_units(side), self.unit)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def components(self) -> list[set[int]]:
        seen: set[int] = set()
        out = []
        for s in range(self.n):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                for v in self.adj[u]:
                    if v not in seen:
                        seen.add(v)
                        comp.add(v)
                        stack.append(v)
            out.append(comp)
        return out

    # -- contraction ---------------------------------------------------------

    def contract(self, groups: Sequence[Iterable[int]]) -> tuple["Graph", list[int]]:
        """Merge each group of nodes into one contracted node.

        Parallel edges produced by the merge are folded into multiplicities,
        perturbation units summed.  Edges inside a group vanish.  Returns the
        contracted graph and the old->new node index map.  Groups must be
        disjoint; nodes in no group are kept as-is.
        """
        group_of = [-1] * self.n
        for gi, grp in enumerate(groups):
            for v in grp:
                if group_of[v] != -1:
                    raise GraphError("contract: overlapping groups")
                group_of[v] = gi

        new_index = [-1] * self.n
        members: list[frozenset[int]] = []
        orig: list[Optional[int]] = []
        group_node = [-1] * len(groups)
        self_members = self.members
        for v in range(self.n):
            gi = group_of[v]
            if gi == -1:
                new_index[v] = len(members)
                members.append(self_members[v])
                orig.append(self.orig_id[v])
            else:
                if group_node[gi] == -1:
                    group_node[gi] = len(members)
                    merged = frozenset(
                        x for u in groups[gi] for x in self_members[u]
                    )
                    members.append(merged)
                    orig.append(None)
                new_index[v] = group_node[gi]

        edges: dict[tuple[int, int], list[int]] = {}
        get = edges.get
        for (u, v), (m, e) in self.edges.items():
            a, b = new_index[u], new_index[v]
            if a == b:
                continue
            key = (a, b) if a < b else (b, a)
            cur = get(key)
            if cur is None:
                edges[key] = [m, e]
            else:
                cur[0] += m
                cur[1] += e
        packed = {k: (m, e) for k, (m, e) in edges.items()}
        g = Graph(len(members), packed, members=members, orig_id=orig,
                  simple=False, unit=self.unit, validate=False)
        return g, new_index


# -- spec operations ---------------------------------------------------------


def auxiliary_graph(g: Graph, tree, super_id: int) -> tuple[Graph, dict[int, int]]:
    """Contract every component of ``tree`` minus one super-node.

    ``tree`` is a partition tree of g's vertex set; the result keeps the
    nodes of the chosen super-node and adds one contracted node per
    component hanging off it.  Returns the graph plus a map from original
    vertex id to node index (covering the kept super-node's vertices).
    """
    comps = tree.components_without(super_id)
    groups = [sorted(c) for c in comps]
    aux, new_index = g.contract(groups)
    mapping = {}
    for v in tree.super_nodes[super_id]:
        mapping[v] = new_index[v]
    return aux, mapping


def subdivide(g: Graph) -> tuple[Graph, list[tuple[int, int, int]]]:
    """Replace every edge instance (u,v) by a length-2 path u-mid-v.

    The output is simple with n + m nodes (m counts multiplicity).  Returns
    the new graph and one (u, v, mid) record per original edge instance.
    """
    if any(e for _, e in g.edges.values()):
        raise GraphError("subdivide expects an unperturbed graph")
    pairs: list[tuple[int, int]] = []
    records: list[tuple[int, int, int]] = []
    nxt = g.n
    for (u, v) in sorted(g.edges):
        mult = g.edges[(u, v)][0]
        for _ in range(mult):
            pairs.append((u, nxt))
            pairs.append((nxt, v))
            records.append((u, v, nxt))
            nxt += 1
    members = [frozenset((v,)) for v in range(nxt)]
    edges = {}
    for a, b in pairs:
        key = (a, b) if a < b else (b, a)
        edges[key] = (1, 0)
    out = Graph(nxt, edges, members=members, simple=True)
    return out, records


def induced_with_self_loops(g: Graph, nodes: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph where boundary edges become degree-preserving loops.

    Each edge from an inside node to an outside node turns into that many
    self-loops on the inside endpoint, each contributing one to its degree,
    so degrees match the host graph exactly.
    """
    inside = sorted(set(nodes))
    if not inside:
        raise GraphError("empty node set")
    idx = {v: i for i, v in enumerate(inside)}
    edges: dict[tuple[int, int], tuple[int, int]] = {}
    loops: dict[int, list[int]] = {}
    for (u, v), (m, e) in g.edges.items():
        iu, iv = idx.get(u), idx.get(v)
        if iu is not None and iv is not None:
            key = (iu, iv) if iu < iv else (iv, iu)
            edges[key] = (m, e)
        elif iu is not None:
            cur = loops.setdefault(iu, [0, 0])
            cur[0] += m
            cur[1] += e
        elif iv is not None:
            cur = loops.setdefault(iv, [0, 0])
            cur[0] += m
            cur[1] += e
    for v, (lm, le) in g.loops.items():
        if v in idx:
            cur = loops.setdefault(idx[v], [0, 0])
            cur[0] += lm
            cur[1] += le
    members = [g.members[v] for v in inside]
    orig = [g.orig_id[v] for v in inside]
    out = Graph(len(inside), edges,
                loops={v: (m, e) for v, (m, e) in loops.items()},
                members=members, orig_id=orig, simple=False, unit=g.unit)
    return out, idx


# -- text format -------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Read the 1-indexed `p n m` / `e u v [mult]` format."""
    n = None
    pairs: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphError(f"line {lineno}: duplicate header")
            n = int(parts[1])
        elif parts[0] == "e":
            if n is None:
                raise GraphError(f"line {lineno}: edge before header")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            mult = int(parts[3]) if len(parts) > 3 else 1
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"line {lineno}: bad edge")
            key = (u, v) if u < v else (v, u)
            pairs[key] = pairs.get(key, 0) + mult
        else:
            raise GraphError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise GraphError("missing header")
    # the header's edge count is informative only; repeated lines merge
    edges = {k: (m, 0) for k, m in pairs.items()}
    simple = all(m == 1 for m in pairs.values())
    return Graph(n, edges, simple=simple)


def emit_graph(g: Graph) -> str:
    lines = [f"p {g.n} {len(g.edges)}"]
    for (u, v) in sorted(g.edges):
        m = g.edges[(u, v)][0]
        if m == 1:
            lines.append(f"e {u + 1} {v + 1}")
        else:
            lines.append(f"e {u + 1} {v + 1} {m}")
    return "\n".join(lines) + "\n"
