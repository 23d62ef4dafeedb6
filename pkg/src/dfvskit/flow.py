"""Vertex-disjoint paths and minimum vertex separators via unit-capacity max-flow."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .digraph import DiGraph

# Node encoding in the split network: (w, 0) is the entry side of w, (w, 1) the exit side.
_IN, _OUT = 0, 1


@dataclass(frozen=True)
class SeparatorResult:
    """Outcome of a Menger query between ``source`` and ``target``.

    ``adjacent`` marks a direct source->target edge; then no finite internal
    separator exists and ``count``/``cut``/``paths`` are empty.
    """

    source: int
    target: int
    adjacent: bool = False
    count: int = 0
    cut: frozenset[int] = frozenset()
    paths: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def internal_vertices(self) -> set[int]:
        # Cycles through a single vertex are stored without repeating it.
        if self.source == self.target:
            return {w for p in self.paths for w in p[1:]}
        return {w for p in self.paths for w in p[1:-1]}


def split_for_cycles(g: DiGraph, v: int) -> tuple[DiGraph, int]:
    """Move the out-edges of ``v`` onto a fresh copy ``v'`` and add ``v -> v'``.

    Cycles through ``v`` in ``g`` correspond one-to-one to ``v' -> v`` paths.
    """
    if v not in g:
        raise KeyError(f"vertex {v} not in graph")
    if g.has_loop(v):
        raise ValueError(f"vertex {v} has a loop")
    h = g.copy()
    vp = h.fresh_label()
    h.add_vertex(vp)
    for w in sorted(h.out_adj[v]):
        h.remove_edge(v, w)
        h.add_edge(vp, w)
    h.add_edge(v, vp)
    return h, vp


def _max_flow(g: DiGraph, s: int, t: int, limit: int | None) -> tuple[int, dict, set]:
    """Edmonds-Karp on the vertex-split network of ``g``.

    Internal vertices carry capacity 1; original edges are uncapacitated.
    Returns the flow value, the residual capacities and the residual-reachable
    node set from the source (used to read off the minimum cut).
    """
    src, snk = (s, _OUT), (t, _IN)
    cap: dict[tuple, dict[tuple, int]] = {}

    def arc(a, b, c):
        cap.setdefault(a, {})
        cap.setdefault(b, {})
        cap[a][b] = cap[a].get(b, 0) + c
        cap[b].setdefault(a, 0)

    big = len(g) + 1
    for w in g.out_adj:
        if w not in (s, t):
            arc((w, _IN), (w, _OUT), 1)
    for a in g.out_adj:
        if a == t:
            continue
        for b in g.out_adj[a]:
            if b == s or a == b:
                continue
            arc((a, _OUT), (b, _IN), big)
    cap.setdefault(src, {})
    cap.setdefault(snk, {})
    order = {node: sorted(nbrs) for node, nbrs in cap.items()}

    flow = 0
    while limit is None or flow < limit:
        parent = {src: None}
        queue = deque([src])
        while queue and snk not in parent:
            x = queue.popleft()
            for y in order[x]:
                if y not in parent and cap[x][y] > 0:
                    parent[y] = x
                    queue.append(y)
        if snk not in parent:
            break
        y = snk
        while parent[y] is not None:
            x = parent[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow += 1

    seen = {src}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for y in order[x]:
            if y not in seen and cap[x][y] > 0:
                seen.add(y)
                queue.append(y)
    return flow, cap, seen


def _decompose(g: DiGraph, s: int, t: int, cap: dict, count: int) -> list[tuple[int, ...]]:
    # Flow on an original arc a->b equals the residual capacity of its reverse arc.
    used: dict[int, list[int]] = {}
    for a in g.out_adj:
        node = (a, _OUT)
        if node not in cap:
            continue
        for (b, side), _ in cap[node].items():
            if side == _IN and b != a and g.has_edge(a, b) and cap[(b, _IN)].get(node, 0) > 0:
                used.setdefault(a, []).extend([b] * cap[(b, _IN)][node])
    for lst in used.values():
        lst.sort(reverse=True)
    paths = []
    for _ in range(count):
        path = [s]
        x = s
        while x != t:
            x = used[x].pop()
            path.append(x)
        paths.append(tuple(path))
    return paths


def max_disjoint_paths(g: DiGraph, u: int, v: int, limit: int | None = None) -> SeparatorResult:
    """Maximum family of internally vertex-disjoint ``u -> v`` paths and a minimum cut.

    With ``limit`` the search stops once that many paths are found; the cut is
    then only valid when ``count < limit``.
    """
    if u == v:
        raise ValueError("endpoints must differ")
    if u not in g or v not in g:
        raise KeyError("unknown endpoint")
    if g.has_edge(u, v):
        return SeparatorResult(u, v, adjacent=True)
    count, cap, seen = _max_flow(g, u, v, limit)
    cut = frozenset(w for w in g.out_adj if w not in (u, v) and (w, _IN) in seen and (w, _OUT) not in seen)
    paths = _decompose(g, u, v, cap, count)
    return SeparatorResult(u, v, count=count, cut=cut, paths=tuple(paths))


def max_disjoint_cycles_through(g: DiGraph, v: int, limit: int | None = None) -> SeparatorResult:
    """Maximum number of cycles through ``v`` that pairwise share only ``v``.

    Paths are reported as cycles starting at ``v`` (the copy is mapped back).
    """
    h, vp = split_for_cycles(g, v)
    h.remove_edge(v, vp)
    res = max_disjoint_paths(h, vp, v, limit)
    paths = tuple((v,) + p[1:-1] for p in res.paths)
    return SeparatorResult(v, v, count=res.count, cut=res.cut, paths=paths)
