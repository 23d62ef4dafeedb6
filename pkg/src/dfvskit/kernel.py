"""Kernel for DFVS on graphs whose induced cycles have length at most ``d``.

Pipeline: pack short cycles greedily into an approximate solution S, trim to
the vertices within distance ``d`` of S in both directions, collect for each
``u`` in S a superset of the vertices sharing a short induced cycle with ``u``,
and keep the induced subgraph on S plus those sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .digraph import DiGraph, Direction, bfs_distances, bounded_reach, shortest_cycle
from .errors import CapExceeded, NicenessError, PromiseViolation
from .flow import max_disjoint_paths
from .solve import DEFAULT_CAP, enumerate_induced_cycles


@dataclass
class ApproxSolution:
    packed: list[tuple[int, ...]]
    s: set[int]


@dataclass
class RecurseRecord:
    """One return of the recursive collection: depth bound and collected size."""

    depth: int
    size: int


@dataclass
class WeaklyRelevantMap:
    d: int
    sets: dict[int, set[int]] = field(default_factory=dict)
    records: list[RecurseRecord] = field(default_factory=list)

    @property
    def union(self) -> set[int]:
        out: set[int] = set()
        for w in self.sets.values():
            out |= w
        return out


def greedy_pack_approx(g: DiGraph, k: int, d: int) -> ApproxSolution | None:
    """Pack vertex-disjoint shortest cycles; None certifies that no dfvs of size <= k exists."""
    h = g.copy()
    packed: list[tuple[int, ...]] = []
    while (c := shortest_cycle(h)) is not None:
        if len(c) > d:
            raise PromiseViolation(f"shortest remaining cycle {c} is longer than {d}")
        packed.append(c)
        if len(packed) > k:
            return None
        h.remove_vertices(c)
    return ApproxSolution(packed, {v for c in packed for v in c})


def _within(h: DiGraph, x: int, z: int, length: int) -> set[int]:
    """Vertices on some x -> z walk of at most ``length`` edges."""
    dx = bfs_distances(h, [x], Direction.OUT, limit=length)
    dz = bfs_distances(h, [z], Direction.IN, limit=length)
    return {w for w in dx if w in dz and dx[w] + dz[w] <= length} | {x, z}


def build_H(g: DiGraph, u: int, d: int) -> tuple[DiGraph, int]:
    """Open the cycles through ``u`` into ``u -> v`` paths of length at most ``d``.

    Returns the trimmed graph and the fresh sink label ``v``.
    """
    if u not in g:
        raise KeyError(f"vertex {u} not in graph")
    if g.has_loop(u):
        raise ValueError(f"vertex {u} has a loop")
    h = g.subgraph(bounded_reach(g, {u}, d, Direction.OUT))
    v = g.fresh_label()
    h.add_vertex(v)
    for x in sorted(h.in_adj[u]):
        h.remove_edge(x, u)
        h.add_edge(x, v)
    return h.subgraph(_within(h, u, v, d)), v


def restrict_H(h: DiGraph, x: int, z: int, d: int) -> DiGraph:
    """Cut the in-edges of ``x`` and out-edges of ``z``, then keep only short x -> z paths."""
    r = h.copy()
    for w in list(r.in_adj[x]):
        r.remove_edge(w, x)
    for w in list(r.out_adj[z]):
        r.remove_edge(z, w)
    return r.subgraph(_within(r, x, z, d))


def _recurse(h: DiGraph, x: int, z: int, d: int, k: int, records: list[RecurseRecord]) -> set[int]:
    inner = set(h.out_adj) - {x, z}
    if len(inner) <= k:
        found = inner
    elif h.has_edge(x, z):
        # Every induced path through x and z would carry x -> z as a chord.
        found = set()
    elif d == 2:
        found = inner
    else:
        sep = max_disjoint_paths(h, x, z)
        if len(sep.cut) > k:
            raise NicenessError(f"{len(sep.cut)} disjoint paths between {x} and {z} exceed budget {k}")
        found = set(sep.cut)
        for y in sorted(sep.cut):
            found |= _recurse(restrict_H(h, x, y, d - 1), x, y, d - 1, k, records)
            found |= _recurse(restrict_H(h, y, z, d - 1), y, z, d - 1, k, records)
    records.append(RecurseRecord(d, len(found)))
    return found


def weakly_relevant(g: DiGraph, k: int, u: int, d: int,
                    records: list[RecurseRecord] | None = None) -> set[int]:
    """Superset of every vertex on an induced cycle of length <= ``d`` through ``u``.

    ``u`` itself is not part of the returned set. The graph must be reduced
    for budget ``k`` so that every separator found has size <= k.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    h, v = build_H(g, u, d)
    return _recurse(h, u, v, d, k, records if records is not None else [])


def weakly_relevant_map(g: DiGraph, k: int, s: set[int], d: int) -> WeaklyRelevantMap:
    wmap = WeaklyRelevantMap(d)
    for u in sorted(s):
        wmap.sets[u] = weakly_relevant(g, k, u, d, wmap.records)
    return wmap


def kernelize_short_cycles(g: DiGraph, k: int, d: int, use_guard: bool = True) -> DiGraph | None:
    """Equivalent instance on S plus the weakly relevant vertices, or None for No.

    When ``2^d k^d`` already exceeds the vertex count the input is returned
    unchanged; ``use_guard=False`` runs the construction regardless.
    """
    result = kernelize_with_details(g, k, d, use_guard)
    return None if result is None else result[0]


def kernelize_with_details(g: DiGraph, k: int, d: int, use_guard: bool = True
                           ) -> tuple[DiGraph, ApproxSolution, WeaklyRelevantMap | None] | None:
    approx = greedy_pack_approx(g, k, d)
    if approx is None:
        return None
    if use_guard and 2 ** d * k ** d > len(g):
        return g.copy(), approx, None
    near = bounded_reach(g, approx.s, d, Direction.OUT) & bounded_reach(g, approx.s, d, Direction.IN)
    trimmed = g.subgraph(near)
    wmap = weakly_relevant_map(trimmed, k, approx.s, d)
    return trimmed.subgraph(approx.s | wmap.union), approx, wmap


def count_short_induced_cycles(g: DiGraph, d: int, cap: int = DEFAULT_CAP) -> int:
    if len(g) > cap:
        raise CapExceeded(f"cycle count refused: {len(g)} vertices > cap {cap}")
    return len(enumerate_induced_cycles(g, max_len=d, cap=cap))


def longest_induced_cycle(g: DiGraph, cap: int = DEFAULT_CAP) -> int:
    """Length of the longest chordless cycle (0 for acyclic graphs)."""
    return max((len(c) for c in enumerate_induced_cycles(g, cap=cap)), default=0)
