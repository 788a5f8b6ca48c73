"""Full-tree construction from single-source cuts.

Both builders refine a global partition tree: pick a super-node, compute
all pivot-to-terminal cuts in its auxiliary graph, assign every terminal to
the largest balanced cut containing it, split the super-node along all the
chosen (pairwise disjoint, laminar-maximal) cuts at once, and recurse.  The
randomized builder bootstraps with a partial tree so every later cut is
large, perturbs each auxiliary graph for unique cuts, and retries unlucky
pivots; the deterministic builder needs no bootstrap, no randomness, and
always receives balanced cuts thanks to the dynamic pivot.
"""

from __future__ import annotations

import math
import random
from typing import Optional

from .classic import k_partial_tree
from .flow import FLOW_CALLS
from .graph import Graph, GraphError, auxiliary_graph
from .partition import PartitionTree, TreeError
from .single_source import EngineConfig, single_source_mincuts
from .sparsify import perturb
from .dynamic import single_source_dynamic_pivot
from .weights import Weight


class RandomizedAbort(RuntimeError):
    """Too many bad pivots in a row; rerun with a fresh seed."""


class LaminarityError(RuntimeError):
    """Chosen cuts cross.  In the randomized builder this means the
    perturbation failed to make minimum cuts unique (retry with a new one);
    in the deterministic builder latest cuts are laminar by construction,
    so it indicates a bug."""


def is_good_pivot(cut_sides: dict[int, frozenset[int]], vi: frozenset[int]) -> bool:
    """A pivot is good when at most 3/4 of the super-node lacks a good cut.

    ``cut_sides`` maps each terminal to its cut's vertex side (original
    vertices); a cut is good when its share of the super-node is at most
    half.
    """
    lacking = len(vi) - sum(
        1 for v, side in cut_sides.items() if 2 * len(side & vi) <= len(vi)
    )
    return 4 * lacking <= 3 * len(vi)


def _assign_largest(
    sides: dict[frozenset[int], Weight],
    vi: frozenset[int],
    pivot: int,
) -> list[tuple[frozenset[int], frozenset[int], Weight]]:
    """Claim super-node members by the largest cut containing them.

    Returns split pieces (members, full side, value).  With a laminar
    family the chosen cuts are its maximal elements and each claims its
    whole slice of the super-node; a partial claim means two cuts cross,
    which the callers treat as a perturbation failure.
    """
    order = sorted(
        sides,
        key=lambda s: (-len(s & vi), min(s & vi) if s & vi else -1, sorted(s)),
    )
    claimed: set[int] = set()
    pieces = []
    for s in order:
        mine = (s & vi) - claimed - {pivot}
        if not mine:
            continue
        if mine != (s & vi) - {pivot}:
            raise LaminarityError("crossing cuts in the assignment")
        claimed |= mine
        pieces.append((frozenset(mine), s, sides[s]))
    return pieces


def build_randomized(
    g: Graph,
    seed: int | None = None,
    config: Optional[EngineConfig] = None,
    report: Optional[dict] = None,
) -> PartitionTree:
    """Cut-equivalent tree via partial-tree bootstrap and random pivots.

    Per super-node: contract the rest of the tree, perturb, pick pivots at
    random until one yields balanced cuts for at least a quarter of the
    super-node (aborting after 2*gamma*log2 N straight failures), split
    along the chosen cuts, recurse.  Raises RandomizedAbort on a bad-pivot
    streak and retries internally on detected perturbation failures.
    """
    if not g.simple:
        raise GraphError("randomized builder needs a simple graph")
    if not g.is_connected():
        raise GraphError("randomized builder needs a connected graph")
    cfg = config or EngineConfig()
    rng = random.Random(seed)
    n = g.n
    rep = report if report is not None else {}
    rep.update({"algo": "randomized", "seed": seed, "n": n,
                "bad_pivot_retries": 0, "reperturbs": 0, "supers": 0})
    flow0 = FLOW_CALLS.value
    if n == 1:
        rep["flow_calls"] = 0
        rep["depth"] = 0
        return PartitionTree.single(1)

    k = max(1, math.isqrt(n))
    t = k_partial_tree(g, k, seed=rng.randrange(2 ** 62))
    max_bad = max(1, math.ceil(2 * cfg.gamma * math.log2(max(2, n))))

    depth: dict[int, int] = {i: 0 for i in t.super_nodes}
    max_depth = 0
    queue = sorted(i for i, s in t.super_nodes.items() if len(s) > 1)
    while queue:
        i = queue.pop(0)
        vi = t.super_nodes[i]
        if len(vi) <= 1:
            continue
        rep["supers"] += 1
        aux, index = auxiliary_graph(g, t, i)
        pieces = None
        for attempt in range(3):
            pert = perturb(aux, seed=rng.randrange(2 ** 62))
            try:
                pieces = _randomized_pieces(
                    g, aux, pert, vi, cfg, rng, max_bad, rep)
                break
            except LaminarityError:
                rep["reperturbs"] += 1
        if pieces is None:
            raise RandomizedAbort("perturbation kept producing crossing cuts")
        t, new_ids = t.split(i, pieces)
        d = depth[i] + 1
        depth[i] = d
        for nid in new_ids:
            depth[nid] = d
        max_depth = max(max_depth, d)
        for nid in new_ids + [i]:
            if len(t.super_nodes[nid]) > 1:
                queue.append(nid)
        queue.sort()

    rep["depth"] = max_depth
    rep["flow_calls"] = FLOW_CALLS.value - flow0
    return t


def _randomized_pieces(g, aux, pert, vi, cfg, rng, max_bad, rep):
    members = aux.members
    for attempt in range(max_bad):
        p = rng.choice(sorted(vi))
        table = single_source_mincuts(g, aux, pert, p, cfg)
        expanded: dict[int, frozenset[int]] = {}
        for v in table.terminals():
            side = table.witness(v)
            expanded[v] = frozenset().union(*(members[x] for x in side))
        if is_good_pivot(expanded, vi):
            sides: dict[frozenset[int], Weight] = {}
            for v in table.terminals():
                s = expanded[v]
                if 2 * len(s & vi) <= len(vi):
                    sides.setdefault(s, Weight(table.estimate(v).base, 0))
            return _assign_largest(sides, vi, p)
        rep["bad_pivot_retries"] += 1
    raise RandomizedAbort(
        f"{max_bad} bad pivots in a row on a super-node of {len(vi)} nodes")


def build_deterministic(
    g: Graph,
    config: Optional[EngineConfig] = None,
    report: Optional[dict] = None,
) -> PartitionTree:
    """Cut-equivalent tree with no randomness and balanced splits throughout.

    Each super-node is resolved by the dynamic-pivot single-source engine,
    whose cuts all leave at most half the super-node on the far side, so
    the recursion depth is logarithmic and reruns are bit-identical.
    """
    if not g.simple:
        raise GraphError("deterministic builder needs a simple graph")
    if not g.is_connected():
        raise GraphError("deterministic builder needs a connected graph")
    cfg = config or EngineConfig()
    rep = report if report is not None else {}
    rep.update({"algo": "deterministic", "n": g.n, "supers": 0,
                "pivot_changes": 0})
    flow0 = FLOW_CALLS.value
    if g.n == 1:
        rep["flow_calls"] = 0
        rep["depth"] = 0
        return PartitionTree.single(1)

    t = PartitionTree.single(g.n)
    depth = {0: 0}
    max_depth = 0
    queue = [0]
    while queue:
        i = queue.pop(0)
        vi = t.super_nodes[i]
        if len(vi) <= 1:
            continue
        rep["supers"] += 1
        aux, index = auxiliary_graph(g, t, i)
        pivot, table, engine = single_source_dynamic_pivot(g, aux, cfg)
        rep["pivot_changes"] += engine.pivot_changes
        members = aux.members
        sides: dict[frozenset[int], Weight] = {}
        for v in table.terminals():
            s = frozenset().union(*(members[x] for x in table.witness(v)))
            sides.setdefault(s, table.estimate(v))
        pieces = _assign_largest(sides, vi, pivot)
        covered = frozenset().union(*(p[0] for p in pieces)) if pieces else frozenset()
        if covered != vi - {pivot}:
            raise TreeError("dynamic cuts failed to cover the super-node")
        t, new_ids = t.split(i, pieces)
        d = depth[i] + 1
        depth[i] = d
        for nid in new_ids:
            depth[nid] = d
        max_depth = max(max_depth, d)
        for nid in new_ids + [i]:
            if len(t.super_nodes[nid]) > 1:
                queue.append(nid)
        queue.sort()

    rep["depth"] = max_depth
    rep["flow_calls"] = FLOW_CALLS.value - flow0
    return t
