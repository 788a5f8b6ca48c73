"""Deterministic single-source machinery: splitter families replace random
sampling, all cuts are latest with respect to the pivot, and the pivot
itself moves when some terminal admits no balanced minimum cut.
"""

from __future__ import annotations

import math
from typing import Optional

from .flow import CutSide, latest_min_cut
from .graph import Graph
from .single_source import (
    EngineConfig,
    EstimateTable,
    SingleSourceEngine,
    TerminalEstimate,
)
from .isolating import isolating_cuts
from .weights import Weight


def splitters(universe: int, size: int) -> list[frozenset[int]]:
    """Deterministic subsets of range(universe) isolating any small target.

    For every T of at most ``size`` elements and every j in T, some subset
    meets T exactly in {j}.  Construction: residue classes of the first
    (size-1) * floor(log2 universe) + 1 primes; any difference below the
    universe has fewer prime divisors than that, so for each (T, j) some
    prime separates j from all of T's other elements, and j's residue class
    for that prime is the isolating set.
    """
    if not 1 <= size <= max(universe, 1):
        raise ValueError("size must be in [1, universe]")
    if universe <= 1 or size == 1:
        return [frozenset(range(universe))]
    need = (size - 1) * max(1, math.floor(math.log2(universe))) + 1
    primes: list[int] = []
    cand = 2
    while len(primes) < need:
        if all(cand % p for p in primes):
            primes.append(cand)
        cand += 1
    family: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    for p in primes:
        for r in range(min(p, universe)):
            cls = frozenset(range(r, universe, p))
            if cls and cls not in seen:
                seen.add(cls)
                family.append(cls)
    return family


def splitter_isolating_step(
    state: SingleSourceEngine, part_nodes: frozenset[int], w: int, gw: Graph,
    live: set[int], phi: float,
) -> dict:
    """Deterministic replacement for the sampled isolating rounds: one
    isolating call per splitter subset of the part's candidates."""
    cand = sorted(v for v in live if state.idx(v) in part_nodes)
    if not cand:
        return {"rounds": 0, "updates": 0}
    k = min(len(cand), max(1, math.ceil(2.0 / phi)))
    family = splitters(len(cand), k)
    cap = Weight(2 * w, 0)
    updates = 0
    for subset in family:
        batch = [cand[i] for i in sorted(subset) if i < len(cand)]
        batch = [v for v in batch if v in state.table.entries]
        if not batch:
            continue
        res = isolating_cuts(gw, state.pivot_idx, {state.idx(v) for v in batch})
        for v in batch:
            cut = res.cuts.get(state.idx(v))
            if cut is None or v not in state.table.entries:
                continue
            if not state.good(cut.side):
                from .single_source import _dynamic_bad_cut
                if _dynamic_bad_cut(state, v, cut):
                    live.intersection_update(state.table.entries)
                    continue
            if state.offer(v, cut.value, cut.side, cap=cap):
                updates += 1
    return {"rounds": len(family), "updates": updates}


def pivot_change(state: SingleSourceEngine, q: int, s_pq: CutSide) -> None:
    """Make q the pivot after finding that even the latest minimum cut
    between the pivot p and q leaves more than half the terminals on q's
    side.

    One max-flow finds the latest cut with respect to q (the minimal
    p-side); its value lam is the exact p,q connectivity.  Every terminal
    on the p-side whose estimate exceeds lam drops to lam with the p-side
    as witness (exact, and still exact for terminals that were already
    done).  Terminals on q's side keep their witnesses, which still avoid
    q, except that a witness containing q is replaced by the degree bound.
    The old pivot becomes a terminal with the exact estimate lam.
    """
    aux = state.aux
    p = state.pivot_orig
    p_idx, q_idx = state.pivot_idx, state.idx(q)
    assert 2 * state.vprime_count(s_pq.side) > len(state.vprime), "premature pivot change"

    back = latest_min_cut(state.work, q_idx, p_idx, wrt=q_idx)
    lam = back.value
    p_side = back.side
    assert p_idx in p_side and q_idx not in p_side
    assert 2 * state.vprime_count(p_side) < len(state.vprime)

    event: Optional[dict] = None
    if state.config.audit:
        event = {
            "old": p,
            "new": q,
            "lam": str(lam),
            "before": {
                v: (e.value, e.witness, e.done)
                for v, e in state.table.entries.items()
            },
        }

    entries = state.table.entries
    del entries[q]
    state.pivot_orig = q
    state.table.pivot = q
    entries[p] = TerminalEstimate(value=lam, witness=p_side, done=True, floor=lam)

    for v, e in entries.items():
        if v == p:
            continue
        v_idx = state.idx(v)
        on_p_side = v_idx in p_side
        if e.value > lam:
            if on_p_side:
                e.value = lam
                e.witness = p_side
                # done terminals stay done: their connectivity to q is
                # exactly lam; undone ones keep only an upper bound
            else:
                if q_idx in e.witness:
                    e.value = state.work.degree_weight(v_idx)
                    e.witness = frozenset((v_idx,))
                    e.done = False
        else:
            if q_idx in e.witness:
                # a good witness holding q would be a balanced minimum
                # p,q-cut, contradicting the trigger; reset defensively
                e.value = state.work.degree_weight(v_idx)
                e.witness = frozenset((v_idx,))
                e.done = False
        if lam < e.floor:
            e.floor = lam

    state.pivot_changes += 1
    if event is not None:
        event["after"] = {
            v: (e.value, e.witness, e.done) for v, e in entries.items()
        }
        state.pivot_change_events.append(event)


def single_source_dynamic_pivot(
    g: Graph,
    g_aux: Graph,
    config: Optional[EngineConfig] = None,
) -> tuple[int, EstimateTable, SingleSourceEngine]:
    """Deterministic single-source minimum cuts with a self-correcting pivot.

    Starts from the highest-degree original node and returns a pivot p plus,
    for every terminal v, a minimum (p,v)-cut whose v-side holds at most
    half of the original nodes.  No randomness is consumed; two runs on the
    same input produce identical tables.
    """
    cfg = config or EngineConfig()
    if cfg.initial_pivot is not None:
        pivot = cfg.initial_pivot
    else:
        pivot = max(g_aux.index_of, key=lambda v: (g.degree(v), -v))
    engine = SingleSourceEngine(g, g_aux, g_aux, pivot, cfg, mode="dynamic")
    engine.run()
    for v, e in engine.table.entries.items():
        assert engine.good(e.witness), "dynamic engine returned an unbalanced cut"
    return engine.pivot_orig, engine.table, engine
