"""Exact solving: chordless-cycle enumeration, brute force and branch-and-bound."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .digraph import DiGraph, is_acyclic, shortest_cycle
from .errors import CapExceeded
from .reduce import ReduceConfig, ReductionState, Verdict, reduce_fixpoint

DEFAULT_CAP = 20


@dataclass(frozen=True)
class DfvsSolution:
    vertices: frozenset[int]
    optimal: bool = False

    def __len__(self) -> int:
        return len(self.vertices)


def enumerate_induced_cycles(g: DiGraph, max_len: int | None = None, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """All chordless cycles, each reported once starting at its smallest label.

    Loops count as chordless cycles of length one.
    """
    if len(g) > cap:
        raise CapExceeded(f"cycle enumeration refused: {len(g)} vertices > cap {cap}")
    out = g.out_adj
    cycles: list[tuple[int, ...]] = [(v,) for v in g.loops()]
    limit = max_len if max_len is not None else len(g)

    def extend(s: int, path: list[int], on_path: set[int]) -> None:
        last = path[-1]
        for w in sorted(out[last]):
            if w <= s or w in on_path or w in out[w]:
                continue
            if any(w in out[p] for p in path[:-1]) or any(p in out[w] for p in path[1:]):
                continue
            if s in out[w]:
                if len(path) + 1 <= limit:
                    cycles.append(tuple(path) + (w,))
                continue
            if len(path) + 2 <= limit:
                path.append(w)
                on_path.add(w)
                extend(s, path, on_path)
                on_path.discard(w)
                path.pop()

    for s in g.vertices:
        if s not in out[s]:
            extend(s, [s], {s})
    return cycles


def verify_solution(g: DiGraph, s: Iterable[int]) -> bool:
    s = set(s)
    unknown = s - set(g.out_adj)
    if unknown:
        raise KeyError(f"solution names unknown vertices {sorted(unknown)}")
    return is_acyclic(g.without(s))


def brute_force_dfvs(g: DiGraph, cap: int = DEFAULT_CAP) -> DfvsSolution:
    """Minimum dfvs by trying vertex subsets in order of increasing size."""
    if len(g) > cap:
        raise CapExceeded(f"brute force refused: {len(g)} vertices > cap {cap}")
    vs = g.vertices
    for size in range(len(vs) + 1):
        for combo in itertools.combinations(vs, size):
            if is_acyclic(g.without(combo)):
                return DfvsSolution(frozenset(combo), optimal=True)
    raise AssertionError("unreachable: deleting every vertex leaves an acyclic graph")


def _lower_bound(g: DiGraph) -> int:
    from .lp import dfvs_lower_bound

    try:
        return dfvs_lower_bound(g, split_components=True)
    except CapExceeded:
        return _packing_bound(g)


def _packing_bound(g: DiGraph) -> int:
    h = g.copy()
    count = 0
    while (c := shortest_cycle(h)) is not None:
        h.remove_vertices(c)
        count += 1
    return count


def _search(state: ReductionState, config: ReduceConfig) -> list[int] | None:
    reduce_fixpoint(state, config)
    if state.verdict is Verdict.NO:
        return None
    g = state.graph
    if is_acyclic(g):
        return list(state.forced)
    if _lower_bound(g) > state.budget:
        return None
    for v in shortest_cycle(g):
        child = state.copy()
        child.force("branch", v)
        found = _search(child, config)
        if found is not None:
            return found
    return None


def _branch_job(args):
    state, config = args
    return _search(state, config)


def _decide(g: DiGraph, budget: int, config: ReduceConfig, workers: int) -> list[int] | None:
    root = ReductionState.start(g, budget)
    if workers <= 1:
        return _search(root, config)
    reduce_fixpoint(root, config)
    if root.verdict is Verdict.NO:
        return None
    if is_acyclic(root.graph):
        return list(root.forced)
    children = []
    for v in shortest_cycle(root.graph):
        child = root.copy()
        child.force("branch", v)
        children.append((child, config))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for found in pool.map(_branch_job, children):
            if found is not None:
                return found
    return None


def branch_and_bound(g: DiGraph, k: int | None = None, config: ReduceConfig | None = None,
                     workers: int = 1) -> DfvsSolution | None:
    """Minimum dfvs by reduction, LP pruning and branching on shortest cycles.

    Budgets are tried upward from the LP bound, so the first solution found is
    optimal. With ``k`` given, returns None when the minimum exceeds ``k``.
    """
    config = config or ReduceConfig()
    lo = _lower_bound(g)
    hi = len(g) if k is None else k
    for budget in range(lo, hi + 1):
        found = _decide(g, budget, config, workers)
        if found is not None:
            sol = frozenset(found)
            if not verify_solution(g, sol):
                raise AssertionError(f"branch and bound produced an invalid solution {sorted(sol)}")
            return DfvsSolution(sol, optimal=True)
    return None
