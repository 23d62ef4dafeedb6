"""Directed graph value type and the structural primitives the reduction rules use."""

from __future__ import annotations

import enum
from collections import deque
from typing import Iterable, Iterator


class EdgeColor(enum.Enum):
    RED = "red"
    BLUE = "blue"


class Direction(enum.Enum):
    OUT = "out"
    IN = "in"


Cycle = tuple  # ordered vertex labels, consecutive (cyclically) joined by edges


class DiGraph:
    """Mutable directed graph on stable integer labels.

    Adjacency is kept in both directions. Parallel edges collapse; loops are
    allowed because shortcutting and the flower rule create them.
    """

    __slots__ = ("out_adj", "in_adj")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        self.out_adj: dict[int, set[int]] = {}
        self.in_adj: dict[int, set[int]] = {}
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    # -- construction -----------------------------------------------------
    def add_vertex(self, v: int) -> None:
        if v not in self.out_adj:
            self.out_adj[v] = set()
            self.in_adj[v] = set()

    def add_edge(self, u: int, v: int) -> None:
        self.add_vertex(u)
        self.add_vertex(v)
        self.out_adj[u].add(v)
        self.in_adj[v].add(u)

    def remove_edge(self, u: int, v: int) -> None:
        if v not in self.out_adj.get(u, ()):
            raise KeyError(f"edge {u}->{v} not in graph")
        self.out_adj[u].discard(v)
        self.in_adj[v].discard(u)

    def remove_vertex(self, v: int) -> None:
        if v not in self.out_adj:
            raise KeyError(f"vertex {v} not in graph")
        for w in self.out_adj.pop(v):
            if w != v:
                self.in_adj[w].discard(v)
        for w in self.in_adj.pop(v):
            if w != v:
                self.out_adj[w].discard(v)

    def remove_vertices(self, vs: Iterable[int]) -> None:
        for v in list(vs):
            self.remove_vertex(v)

    def shortcut(self, v: int) -> list[tuple[int, int]]:
        """Shortcut ``v`` in place; returns the edges that were newly created."""
        if v not in self.out_adj:
            raise KeyError(f"vertex {v} not in graph")
        if v in self.out_adj[v]:
            raise ValueError(f"vertex {v} has a loop; shortcutting is undefined")
        ins = sorted(self.in_adj[v])
        outs = sorted(self.out_adj[v])
        self.remove_vertex(v)
        created = []
        for x in ins:
            for y in outs:
                if y not in self.out_adj[x]:
                    created.append((x, y))
                    self.add_edge(x, y)
        return created

    # -- queries ------------------------------------------------------------
    def __contains__(self, v: object) -> bool:
        return v in self.out_adj

    def __len__(self) -> int:
        return len(self.out_adj)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.out_adj))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiGraph):
            return NotImplemented
        return self.out_adj == other.out_adj

    def __repr__(self) -> str:
        return f"DiGraph(n={self.n}, edges={self.edges()})"

    @property
    def vertices(self) -> list[int]:
        return sorted(self.out_adj)

    @property
    def n(self) -> int:
        return len(self.out_adj)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.out_adj.values())

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in sorted(self.out_adj) for v in sorted(self.out_adj[u])]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.out_adj.get(u, ())

    def has_loop(self, v: int) -> bool:
        return v in self.out_adj.get(v, ())

    def loops(self) -> list[int]:
        return sorted(v for v, outs in self.out_adj.items() if v in outs)

    def successors(self, v: int) -> set[int]:
        return self.out_adj[v]

    def predecessors(self, v: int) -> set[int]:
        return self.in_adj[v]

    def fresh_label(self) -> int:
        return max(self.out_adj, default=0) + 1

    def copy(self) -> DiGraph:
        g = DiGraph.__new__(DiGraph)
        g.out_adj = {v: set(s) for v, s in self.out_adj.items()}
        g.in_adj = {v: set(s) for v, s in self.in_adj.items()}
        return g

    def subgraph(self, keep: Iterable[int]) -> DiGraph:
        keep = set(keep)
        g = DiGraph.__new__(DiGraph)
        g.out_adj = {v: self.out_adj[v] & keep for v in keep}
        g.in_adj = {v: self.in_adj[v] & keep for v in keep}
        return g

    def without(self, drop: Iterable[int]) -> DiGraph:
        return self.subgraph(set(self.out_adj) - set(drop))


def shortcut_vertex(g: DiGraph, v: int) -> DiGraph:
    """Return ``g`` with ``v`` replaced by all in-neighbour x out-neighbour edges."""
    h = g.copy()
    h.shortcut(v)
    return h


def edge_color(g: DiGraph, u: int, v: int) -> EdgeColor:
    if u == v or not g.has_edge(u, v):
        raise KeyError(f"{u}->{v} is not a non-loop edge of the graph")
    return EdgeColor.BLUE if g.has_edge(v, u) else EdgeColor.RED


def red_edges(g: DiGraph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in g.edges() if u != v and not g.has_edge(v, u)]


def two_cycles(g: DiGraph) -> list[tuple[int, int]]:
    """Blue pairs ``(u, v)`` with ``u < v``; each one is a cycle of length two."""
    return [(u, v) for u, v in g.edges() if u < v and g.has_edge(v, u)]


def strongly_connected_components(g: DiGraph) -> list[set[int]]:
    """Iterative Tarjan; components come out in reverse topological order."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[set[int]] = []
    counter = 0
    for root in sorted(g.out_adj):
        if root in index:
            continue
        work = [(root, iter(sorted(g.out_adj[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(g.out_adj[w]))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def weakly_connected_components(g: DiGraph) -> list[set[int]]:
    seen: set[int] = set()
    comps = []
    for root in sorted(g.out_adj):
        if root in seen:
            continue
        comp = {root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.out_adj[v] | g.in_adj[v]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def cyclic_vertices(g: DiGraph) -> set[int]:
    """Vertices lying on at least one cycle (loops included)."""
    out = set()
    for comp in strongly_connected_components(g):
        if len(comp) > 1:
            out |= comp
        else:
            (v,) = comp
            if g.has_loop(v):
                out.add(v)
    return out


def is_acyclic(g: DiGraph) -> bool:
    indeg = {v: len(g.in_adj[v]) for v in g.out_adj}
    queue = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in g.out_adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(indeg)


def topological_order(g: DiGraph) -> list[int] | None:
    indeg = {v: len(g.in_adj[v]) for v in g.out_adj}
    ready = sorted(v for v, d in indeg.items() if d == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in sorted(g.out_adj[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return order if len(order) == len(indeg) else None


def bfs_distances(g: DiGraph, sources: Iterable[int], direction: Direction = Direction.OUT,
                  limit: int | None = None) -> dict[int, int]:
    adj = g.out_adj if direction is Direction.OUT else g.in_adj
    dist = {s: 0 for s in sources}
    queue = deque(dist)
    while queue:
        v = queue.popleft()
        if limit is not None and dist[v] >= limit:
            continue
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def bounded_reach(g: DiGraph, s: Iterable[int], d: int, direction: Direction = Direction.OUT) -> set[int]:
    """Vertices reachable from (or, with IN, reaching) ``s`` by paths of at most ``d`` edges."""
    if d < 0:
        raise ValueError("d must be non-negative")
    s = set(s)
    missing = s - set(g.out_adj)
    if missing:
        raise KeyError(f"unknown vertices {sorted(missing)}")
    return set(bfs_distances(g, s, direction, limit=d))


def reachable(g: DiGraph, source: int, blocked: set[int] | frozenset[int] = frozenset()) -> set[int]:
    seen = {source}
    stack = [source]
    while stack:
        v = stack.pop()
        for w in g.out_adj[v]:
            if w not in seen and w not in blocked:
                seen.add(w)
                stack.append(w)
    return seen


def shortest_cycle_through(g: DiGraph, v: int) -> Cycle | None:
    """A minimum-length cycle through ``v`` starting at ``v``, or None.

    BFS expands neighbours in increasing label order, so ties resolve to the
    lexicographically smallest predecessor chain.
    """
    if v not in g.out_adj:
        raise KeyError(f"vertex {v} not in graph")
    if g.has_loop(v):
        return (v,)
    parent = {v: None}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for w in sorted(g.out_adj[x]):
            if w == v:
                path = []
                while x is not None:
                    path.append(x)
                    x = parent[x]
                return tuple(reversed(path))
            if w not in parent:
                parent[w] = x
                queue.append(w)
    return None


def shortest_cycle(g: DiGraph) -> Cycle | None:
    """A globally shortest cycle; ties go to the smallest start label."""
    best = None
    candidates = cyclic_vertices(g)
    for v in sorted(candidates):
        c = shortest_cycle_through(g, v)
        if c is not None and (best is None or len(c) < len(best)):
            best = c
            if len(best) == 1:
                break
    return best


def is_chordless(g: DiGraph, cycle: Cycle) -> bool:
    """True iff the induced subgraph on ``cycle`` has exactly the cycle's edges."""
    vs = list(cycle)
    if len(set(vs)) != len(vs):
        return False
    n = len(vs)
    expected = {(vs[i], vs[(i + 1) % n]) for i in range(n)}
    if any(not g.has_edge(a, b) for a, b in expected):
        return False
    vset = set(vs)
    actual = {(a, b) for a in vs for b in g.out_adj[a] if b in vset}
    return actual == expected


def greedy_feedback_set(g: DiGraph) -> set[int]:
    """A feasible (not minimum) dfvs: repeatedly take loop vertices, else the
    cyclic vertex maximising in-degree * out-degree."""
    h = g.copy()
    chosen: set[int] = set()
    while True:
        cyc = cyclic_vertices(h)
        if not cyc:
            return chosen
        loops = [v for v in cyc if h.has_loop(v)]
        if loops:
            pick = min(loops)
        else:
            pick = max(sorted(cyc), key=lambda v: len(h.in_adj[v] & cyc) * len(h.out_adj[v] & cyc))
        chosen.add(pick)
        h.remove_vertex(pick)
