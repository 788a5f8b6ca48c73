"""Single-source minimum cuts from a pivot to every terminal of an
auxiliary graph, organized in doubling stages.

Stage w works on a sparsifier preserving all cuts below 2w, first isolating
the high-degree terminals (cuts containing a single high-degree node are
caught here), then optionally running candidate elimination over a
demand-weighted expander decomposition, and finally solving the surviving
candidates directly.  Estimates only decrease, every estimate is the exact
weight of its witness cut, and a terminal is marked done only when a direct
solve (or an exact stage bound) proves its estimate minimal; anything left
unproven is settled by direct solves at the end, so the result is correct
at every scale regardless of decomposition quality.

The same machinery runs in two modes: "randomized" (perturbed graph, unique
minimum cuts, random sampling) and "dynamic" (no randomness, latest cuts,
deterministic splitter sampling, and a pivot that may change when every
minimum cut to some terminal is unbalanced; see dynamic.py).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .expander import DecompositionReport, decompose_with_demands
from .flow import FLOW_CALLS, MaxFlowSolver, latest_min_cut
from .graph import Graph, GraphError
from .isolating import isolating_cuts
from .sparsify import ni_sparsify, perturbed_sparsifier
from .weights import Weight, from_scaled


@dataclass
class EngineConfig:
    """Knobs for the stage loop.

    Defaults give the direct-solve profile: the candidate-elimination loop
    is off and every candidate gets a direct (cutoff-capped) solve per
    stage, which is unconditionally correct and fastest at desk scale.
    Enabling the loop activates the decomposition machinery with the
    standard parameters (phi = 2^-sqrt(log2 n), gamma = 2, threshold
    log2 n) unless overridden.
    """

    loop_enabled: bool = False
    phi: Optional[float] = None
    gamma: float = 2.0
    candidate_threshold: Optional[int] = None
    sample_rounds: Optional[int] = None      # override 2*e*gamma*ln(N)/phi
    priority_budget: Optional[int] = None    # override 3/phi
    easy_step: Optional[bool] = None         # None: on iff loop on or small graph
    easy_step_auto_limit: int = 256
    stage_from_zero: bool = False
    exact_cut_limit: int = 20
    drop_candidates: bool = True             # drop processed parts' candidates
    audit: bool = False                      # record pivot-change snapshots
    initial_pivot: Optional[int] = None      # test hook (dynamic mode)
    seed: Optional[int] = None               # sampling seed (randomized mode)

    def phi_for(self, n: int) -> float:
        if self.phi is not None:
            return self.phi
        return 2.0 ** -math.sqrt(max(1.0, math.log2(max(2, n))))

    def threshold_for(self, n: int) -> int:
        if self.candidate_threshold is not None:
            return self.candidate_threshold
        return max(1, math.ceil(math.log2(max(2, n))))

    def sample_rounds_for(self, n_orig: int, phi: float) -> int:
        if self.sample_rounds is not None:
            return self.sample_rounds
        return math.ceil(2 * math.e * self.gamma * math.log(max(2, n_orig)) / phi)

    def priority_budget_for(self, phi: float) -> int:
        if self.priority_budget is not None:
            return self.priority_budget
        return math.ceil(3.0 / phi)


@dataclass
class TerminalEstimate:
    value: Weight                 # c'(v): exact weight of the witness cut
    witness: frozenset[int]       # v-side, in auxiliary-graph node indices
    done: bool = False            # proven c'(v) = lambda(pivot, v)
    floor: Weight = Weight(0, 0)  # proven lower bound on lambda(pivot, v)


class EstimateTable:
    """Per-terminal connectivity estimates with witness cuts."""

    def __init__(self, pivot: int):
        self.pivot = pivot
        self.entries: dict[int, TerminalEstimate] = {}

    def terminals(self) -> list[int]:
        return sorted(self.entries)

    def estimate(self, v: int) -> Weight:
        return self.entries[v].value

    def witness(self, v: int) -> frozenset[int]:
        return self.entries[v].witness

    def done(self, v: int) -> bool:
        return self.entries[v].done

    @property
    def all_done(self) -> bool:
        return all(e.done for e in self.entries.values())


@dataclass
class ImprovingCut:
    w: int
    side: frozenset[int]
    value: Weight


class SingleSourceEngine:
    def __init__(
        self,
        g: Graph,
        aux: Graph,
        work: Graph,
        pivot: int,
        config: Optional[EngineConfig] = None,
        mode: str = "randomized",
    ):
        """g: the input graph; aux: an auxiliary (contracted) graph of it;
        work: the graph cuts are measured in (a perturbation of aux, or aux
        itself in dynamic mode); pivot: an original vertex id in aux."""
        if mode not in ("randomized", "dynamic"):
            raise ValueError(mode)
        self.g = g
        self.aux = aux
        self.work = work
        self.mode = mode
        self.config = config or EngineConfig()
        self.rng = random.Random(self.config.seed)
        if pivot not in aux.index_of:
            raise GraphError("pivot is not an original node of the auxiliary graph")
        self.pivot_orig = pivot
        self.vprime = sorted(aux.index_of)
        self.table = EstimateTable(pivot)
        for v in self.vprime:
            if v == pivot:
                continue
            vi = aux.index_of[v]
            self.table.entries[v] = TerminalEstimate(
                value=work.degree_weight(vi),
                witness=frozenset((vi,)),
            )
        self.pivot_changes = 0
        self.pivot_change_events: list[dict] = []
        self.improving_cuts: list[ImprovingCut] = []
        self.report: dict = {
            "mode": mode,
            "aux_nodes": aux.n,
            "terminals": len(self.table.entries),
            "pivot_initial": pivot,
            "stages": [],
            "pivot_changes": 0,
            "flow_calls": 0,
        }
        self._flow_start = FLOW_CALLS.value
        self._gw: Optional[Graph] = None
        self._gw_solver: Optional[MaxFlowSolver] = None
        self._last_easy_updates = 0

    # -- helpers -------------------------------------------------------------

    @property
    def pivot_idx(self) -> int:
        return self.aux.index_of[self.pivot_orig]

    def idx(self, v: int) -> int:
        return self.aux.index_of[v]

    def expand(self, side: frozenset[int]) -> frozenset[int]:
        """Auxiliary-node side -> original-vertex side."""
        return frozenset().union(*(self.aux.members[x] for x in side)) if side else frozenset()

    def vprime_count(self, side: frozenset[int]) -> int:
        orig = self.aux.orig_id
        return sum(1 for x in side if orig[x] is not None)

    def good(self, side: frozenset[int]) -> bool:
        return 2 * self.vprime_count(side) <= len(self.vprime)

    def offer(self, v: int, value: Weight, side: frozenset[int], *,
              done: bool = False, cap: Optional[Weight] = None,
              allow_equal: bool = False) -> bool:
        """Record a cut for terminal v if it improves the estimate.

        ``cap``: ignore cuts at or above this value (the stage's exactness
        boundary).  ``allow_equal`` swaps in an equal-value witness (used by
        direct solves so final witnesses are latest cuts).
        """
        e = self.table.entries[v]
        if cap is not None and not value < cap:
            return False
        if done:
            # a done offer is an exact solve; it can never exceed an estimate
            assert not e.value < value, "estimate below a proven minimum"
        better = value < e.value or (allow_equal and value == e.value)
        if not better:
            return False
        assert self.idx(v) in side and self.pivot_idx not in side
        if value < e.value:
            e.value = value
        e.witness = side
        if done:
            e.done = True
            e.floor = e.value
        return True

    def raise_floor(self, v: int, floor: Weight) -> None:
        e = self.table.entries[v]
        if e.floor < floor:
            e.floor = floor

    # -- stage machinery -------------------------------------------------------

    def stage_graph(self, w: int) -> Graph:
        if self.mode == "randomized":
            return perturbed_sparsifier(self.aux, self.work, 2 * w)
        return ni_sparsify(self.aux, 2 * w)

    def easy_step_enabled(self) -> bool:
        if self.config.easy_step is not None:
            return self.config.easy_step
        return self.config.loop_enabled or self.aux.n <= self.config.easy_step_auto_limit

    def candidates(self, w: int) -> list[int]:
        thr = Weight(w, 0)
        return [
            v for v in self.table.terminals()
            if not self.table.entries[v].done and self.table.entries[v].value > thr
        ]

    def stage_pending(self, w: int) -> bool:
        lim = Weight(2 * w, 0)
        return any(
            not e.done and e.floor < lim and e.value > Weight(w, 0)
            for e in self.table.entries.values()
        )

    def run(self) -> EstimateTable:
        n_orig = self.g.n
        j_hi = max(0, math.ceil(math.log2(max(2, n_orig))))
        if self.mode == "dynamic" or self.config.stage_from_zero:
            j_lo = 0
        else:
            j_lo = max(0, math.floor(math.log2(max(2, n_orig)) / 2))
        for j in range(j_lo, j_hi + 1):
            stage_w(self, 2 ** j)
        self.final_sweep()
        self.report["pivot_changes"] = self.pivot_changes
        self.report["pivot_final"] = self.pivot_orig
        self.report["flow_calls"] = FLOW_CALLS.value - self._flow_start
        assert self.table.all_done
        return self.table

    def final_sweep(self) -> None:
        """Direct exact solves for anything not proven done."""
        solves = 0
        guard = 0
        while True:
            undone = [v for v in self.table.terminals() if not self.table.entries[v].done]
            if not undone:
                break
            guard += 1
            assert guard <= 4 * len(self.vprime) + 4, "pivot changes do not settle"
            for v in undone:
                cut = latest_min_cut(self.work, self.pivot_idx, self.idx(v), wrt=self.pivot_idx)
                solves += 1
                if self.mode == "dynamic" and not self.good(cut.side):
                    from .dynamic import pivot_change
                    pivot_change(self, v, cut)
                    break
                self.offer(v, cut.value, cut.side, done=True, allow_equal=True)
            else:
                continue
        self.report["final_sweep_solves"] = solves


# -- spec-level operations ----------------------------------------------------


def single_source_mincuts(
    g: Graph,
    g_aux: Graph,
    g_pert: Graph,
    p: int,
    config: Optional[EngineConfig] = None,
) -> EstimateTable:
    """Minimum (p,v)-cut in the perturbed auxiliary graph for every terminal.

    Terminals are the auxiliary graph's original vertices; witnesses are
    node sets of the perturbed graph.  All terminals are done on return.
    """
    engine = SingleSourceEngine(g, g_aux, g_pert, p, config, mode="randomized")
    engine.run()
    return engine.table


def stage_w(state: SingleSourceEngine, w: int) -> None:
    """One doubling stage: after it, terminals with connectivity below 2w
    are done (unconditionally in the direct profile; with the loop on, the
    claim holds for certified expander parts and everything else falls
    through to direct solves or the final sweep)."""
    cfg = state.config
    srep: dict = {"w": w}
    if not state.stage_pending(w):
        srep["skipped"] = True
        state.report["stages"].append(srep)
        return
    gw = state.stage_graph(w)
    state._gw = gw
    state._gw_solver = MaxFlowSolver(gw)
    srep["gw_edges"] = gw.edge_instances

    if state.easy_step_enabled():
        easy_cuts_step(state, w, gw)
        srep["easy_updates"] = state._last_easy_updates

    cand = state.candidates(w)
    srep["candidates"] = len(cand)
    trajectory = [len(cand)]
    srep["rounds"] = []
    srep["fallback"] = False

    if cfg.loop_enabled:
        threshold = cfg.threshold_for(state.aux.n)
        phi = cfg.phi_for(state.aux.n)
        live = set(cand)
        round_no = 0
        while len(live) > threshold:
            round_no += 1
            before = len(live)
            rrep = _elimination_round(state, w, gw, live, phi)
            srep["rounds"].append(rrep)
            trajectory.append(len(live))
            if 2 * len(live) >= before:
                # halving failed: heuristic parts were not true expanders;
                # flag it and settle the survivors directly
                srep["fallback"] = True
                break
            if round_no > 4 * max(4, math.ceil(math.log2(max(2, state.aux.n)))):
                srep["fallback"] = True
                break
        cand = sorted(live)
        # stage-end claim: with the loop on, estimates now below 2w are
        # final for certified parts; mark them so the sweep trusts them
        if cfg.drop_candidates:
            lim = Weight(2 * w, 0)
            for v in state.table.terminals():
                e = state.table.entries[v]
                if not e.done and e.value < lim and v not in live:
                    e.done = True

    srep["c_trajectory"] = trajectory
    srep["direct_solves"] = _direct_solves(state, w, gw, cand)
    state.report["stages"].append(srep)
    state._gw = None
    state._gw_solver = None


def _direct_solves(state: SingleSourceEngine, w: int, gw: Graph, cand: list[int]) -> int:
    lim = Weight(2 * w, 0)
    cutoff = 2 * w * gw.unit
    solver = state._gw_solver
    solves = 0
    queue = list(cand)
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        e = state.table.entries.get(v)
        if e is None or e.done or not e.floor < lim:
            continue
        val_scaled = solver.solve(state.pivot_idx, state.idx(v), cutoff=cutoff)
        solves += 1
        if val_scaled >= cutoff:
            state.raise_floor(v, lim)
            continue
        side = solver.sink_side(state.idx(v))
        value = from_scaled(val_scaled, gw.unit)
        if state.mode == "dynamic" and not state.good(side):
            from .dynamic import pivot_change
            pivot_change(state, v, _as_cut(state, side, value, v))
            continue
        state.offer(v, value, side, done=True, allow_equal=True)
    return solves


def _as_cut(state, side, value, v):
    from .flow import CutSide

    return CutSide(side=side, value=value, s=state.pivot_idx, t=state.idx(v))


def easy_cuts_step(state: SingleSourceEngine, w: int, gw: Graph) -> None:
    """Isolating cuts over all degree >= w terminals.

    Any terminal whose latest minimum cut from the pivot contains exactly
    one high-degree node is settled exactly here (its estimate, not its
    done flag: minimality is proven later by a direct solve)."""
    state._last_easy_updates = 0
    high = [
        v for v in state.table.terminals()
        if state.g.degree(v) >= w
    ]
    if not high:
        return
    res = isolating_cuts(gw, state.pivot_idx, {state.idx(v) for v in high})
    cap = Weight(2 * w, 0)
    for v in high:
        if v not in state.table.entries:
            continue
        cut = res.cuts.get(state.idx(v))
        if cut is None:
            continue
        if state.mode == "dynamic" and not state.good(cut.side):
            changed = _dynamic_bad_cut(state, v, cut)
            if changed:
                continue
        if state.offer(v, cut.value, cut.side, cap=cap):
            state._last_easy_updates += 1


def _dynamic_bad_cut(state: SingleSourceEngine, q: int, cut) -> bool:
    """Re-solve a bad (unbalanced) cut for its latest form; if every minimum
    cut to q is still unbalanced, make q the pivot.  Returns True if the
    pivot changed."""
    latest = latest_min_cut(state.work, state.pivot_idx, state.idx(q), wrt=state.pivot_idx)
    if state.good(latest.side):
        state.offer(q, latest.value, latest.side, done=True, allow_equal=True)
        return False
    from .dynamic import pivot_change

    pivot_change(state, q, latest)
    return True


def isolating_sample_step(
    state: SingleSourceEngine, part_nodes: frozenset[int], w: int, gw: Graph,
    live: set[int], phi: float,
) -> dict:
    """Random sampled isolating rounds over one expander part.

    Repeats enough times that any candidate alone among few same-side
    candidates is isolated at least once with high probability; each round
    samples candidates with probability phi and keeps every returned cut
    that beats the current estimate and stays below the stage bound."""
    cfg = state.config
    rounds = cfg.sample_rounds_for(state.g.n, phi)
    cand = sorted(v for v in live if state.idx(v) in part_nodes)
    cap = Weight(2 * w, 0)
    updates = 0
    for _ in range(rounds):
        batch = [v for v in cand if state.rng.random() < phi]
        if not batch:
            continue
        res = isolating_cuts(gw, state.pivot_idx, {state.idx(v) for v in batch})
        for v in batch:
            cut = res.cuts.get(state.idx(v))
            if cut is None or v not in state.table.entries:
                continue
            if state.offer(v, cut.value, cut.side, cap=cap):
                updates += 1
    return {"rounds": rounds, "updates": updates}


def priority_solve_step(
    state: SingleSourceEngine, part_nodes: frozenset[int], w: int, gw: Graph,
    live: set[int], phi: float,
) -> dict:
    """Highest-estimate-first direct solves over one expander part.

    Pops the candidate with the largest estimate, solves its cut in the
    stage graph, updates every terminal inside the returned side, and earns
    one extra repetition whenever the solve strictly improved the popped
    node's estimate.  Exact (below-2w) improvements are recorded for the
    distinct/non-easy accounting."""
    import heapq

    cfg = state.config
    budget = cfg.priority_budget_for(phi)
    cap = Weight(2 * w, 0)
    cutoff = 2 * w * gw.unit
    solver = state._gw_solver
    heap: list[tuple[tuple[int, int], int]] = []
    for v in sorted(live):
        if state.idx(v) in part_nodes:
            e = state.table.entries[v]
            heapq.heappush(heap, ((-e.value.base, -e.value.eps, v), v))
    solves = 0
    increments = 0
    while budget > 0 and heap:
        key, v = heapq.heappop(heap)
        if v not in state.table.entries or v not in live:
            continue
        e = state.table.entries[v]
        if (-key[0], -key[1]) != (e.value.base, e.value.eps):
            continue  # stale heap entry
        budget -= 1
        val_scaled = solver.solve(state.pivot_idx, state.idx(v), cutoff=cutoff)
        solves += 1
        if val_scaled >= cutoff:
            state.raise_floor(v, cap)
            live.discard(v)
            continue
        side = solver.sink_side(state.idx(v))
        value = from_scaled(val_scaled, gw.unit)
        if state.mode == "dynamic" and not state.good(side):
            from .dynamic import pivot_change
            pivot_change(state, v, _as_cut(state, side, value, v))
            live.discard(v)
            live.intersection_update(state.table.entries)
            continue
        improved = value < e.value
        if improved:
            budget += 1
            increments += 1
            state.improving_cuts.append(ImprovingCut(w=w, side=side, value=value))
        orig = state.aux.orig_id
        for x in side:
            u = orig[x]
            if u is None or u == state.pivot_orig or u not in state.table.entries:
                continue
            if u == v:
                state.offer(u, value, side, done=True, allow_equal=True)
            else:
                ue = state.table.entries[u]
                if value < ue.value:
                    state.offer(u, value, side)
                    # refresh heap ordering for still-live part candidates
                    if u in live and state.idx(u) in part_nodes:
                        heapq.heappush(
                            heap, ((-value.base, -value.eps, u), u)
                        )
        live.discard(v)
    return {"solves": solves, "increments": increments}


def _elimination_round(
    state: SingleSourceEngine, w: int, gw: Graph, live: set[int], phi: float,
) -> dict:
    """One decomposition round: demand w on live candidates, process every
    part holding at least w/2 original-graph nodes, then drop its
    candidates (they are settled with high probability for certified
    parts; anything mis-dropped is caught by the final sweep only if its
    estimate also stays above the stage bound)."""
    demand = {state.idx(v): w for v in sorted(live)}
    drep = DecompositionReport()
    parts = decompose_with_demands(
        state.aux, demand, Fraction(phi).limit_denominator(10 ** 6),
        exact_cut_limit=state.config.exact_cut_limit, report=drep,
    )
    rrep = {
        "parts": drep.part_count,
        "boundary_weight": drep.boundary_weight,
        "b_factor": drep.b_factor,
        "large_parts": 0,
        "sample": [],
        "priority": [],
    }
    lefty_inc = 0
    for part in parts:
        if 2 * part.size_g < w:
            continue
        rrep["large_parts"] += 1
        part_live = {v for v in live if state.idx(v) in part.nodes}
        if not part_live:
            continue
        if state.mode == "randomized":
            rrep["sample"].append(
                isolating_sample_step(state, part.nodes, w, gw, live, phi)
            )
        else:
            from .dynamic import splitter_isolating_step
            rrep["sample"].append(
                splitter_isolating_step(state, part.nodes, w, gw, live, phi)
            )
        pr = priority_solve_step(state, part.nodes, w, gw, live, phi)
        lefty_inc += pr["increments"]
        rrep["priority"].append(pr)
        if state.config.drop_candidates:
            for v in list(live):
                if v in state.table.entries and state.idx(v) in part.nodes:
                    live.discard(v)
    rrep["lefty_increments"] = lefty_inc
    return rrep
