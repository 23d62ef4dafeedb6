"""Safe data-reduction rules for DFVS and the fixpoint driver.

Every rule takes a :class:`ReductionState`, updates it in place and returns
``(state, changed)``. The driver applies the enabled rules in a fixed order
and restarts from the first one after any success.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Callable

from .digraph import DiGraph, is_acyclic, two_cycles
from .flow import max_disjoint_cycles_through, max_disjoint_paths

log = logging.getLogger(__name__)

RULES = ("loops", "shortcut", "flower", "modified-dfs", "initial-segment")
TRACE_OPS = ("force", "del-v", "del-e", "add-e", "shortcut", "no")

LowerBound = Callable[[DiGraph], int]


class Verdict(enum.Enum):
    UNKNOWN = "unknown"
    NO = "no"


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    op: str
    args: tuple[int, ...] = ()

    def __str__(self) -> str:
        return " ".join([self.rule, self.op, *map(str, self.args)])

    @classmethod
    def parse(cls, line: str) -> TraceEntry:
        parts = line.split()
        if len(parts) < 2 or parts[1] not in TRACE_OPS:
            raise ValueError(f"malformed trace line: {line!r}")
        return cls(parts[0], parts[1], tuple(int(p) for p in parts[2:]))


@dataclass
class ReductionState:
    graph: DiGraph
    k: int
    budget: int
    forced: list[int] = field(default_factory=list)
    trace: list[TraceEntry] = field(default_factory=list)
    verdict: Verdict = Verdict.UNKNOWN
    # Edges inserted by the flower rule; the red-edge rules leave them alone
    # so the two rules cannot undo each other forever.
    protected: set[tuple[int, int]] = field(default_factory=set)

    @classmethod
    def start(cls, g: DiGraph, k: int) -> ReductionState:
        return cls(graph=g.copy(), k=k, budget=k)

    def copy(self) -> ReductionState:
        return ReductionState(self.graph.copy(), self.k, self.budget, list(self.forced),
                              list(self.trace), self.verdict, set(self.protected))

    # -- mutations, each recorded in the trace ---------------------------------
    def force(self, rule: str, v: int) -> None:
        self.graph.remove_vertex(v)
        self.forced.append(v)
        self.budget -= 1
        self.trace.append(TraceEntry(rule, "force", (v,)))

    def delete_vertex(self, rule: str, v: int) -> None:
        self.graph.remove_vertex(v)
        self.trace.append(TraceEntry(rule, "del-v", (v,)))

    def delete_edge(self, rule: str, u: int, v: int) -> None:
        self.graph.remove_edge(u, v)
        self.trace.append(TraceEntry(rule, "del-e", (u, v)))

    def add_edge(self, rule: str, u: int, v: int) -> None:
        self.graph.add_edge(u, v)
        self.protected.add((u, v))
        self.trace.append(TraceEntry(rule, "add-e", (u, v)))

    def shortcut(self, rule: str, v: int) -> None:
        self.graph.shortcut(v)
        self.trace.append(TraceEntry(rule, "shortcut", (v,)))

    def reject(self, rule: str) -> None:
        self.verdict = Verdict.NO
        self.trace.append(TraceEntry(rule, "no"))


def zero_bound(g: DiGraph) -> int:
    return 0


def lp_bound(g: DiGraph) -> int:
    """Order-LP bound summed over strongly connected components."""
    from .lp import dfvs_lower_bound

    return dfvs_lower_bound(g, split_components=True)


LOWER_BOUNDS: dict[str, LowerBound] = {"zero": zero_bound, "lp": lp_bound}


# --------------------------------------------------------------------------
# Rule: loops
# --------------------------------------------------------------------------
def rule_loops(s: ReductionState) -> tuple[ReductionState, bool]:
    loops = s.graph.loops()
    for v in loops:
        s.force("loops", v)
    if loops and s.budget < 0:
        s.reject("loops")
    return s, bool(loops)


# --------------------------------------------------------------------------
# Rule: shortcut and its cheap special cases
# --------------------------------------------------------------------------
def rule_shortcut(s: ReductionState) -> tuple[ReductionState, bool]:
    """Shortcut (or drop) the lowest-label vertex that is dominated.

    Special cases are tried cheapest first: no in- or no out-neighbour, a
    single in- or out-neighbour, and finally no two cycles through ``v`` that
    are disjoint apart from ``v``. By Menger the last test is exactly the
    general domination test (see :func:`find_dominated`).
    """
    g = s.graph
    cands = [v for v in sorted(g.out_adj) if v not in g.out_adj[v]]
    for v in cands:
        if not g.in_adj[v] or not g.out_adj[v]:
            s.delete_vertex("shortcut/isolated", v)
            return s, True
    for v in cands:
        if len(g.in_adj[v]) == 1 or len(g.out_adj[v]) == 1:
            s.shortcut("shortcut/y-shape", v)
            return s, True
    for v in cands:
        if max_disjoint_cycles_through(g, v, limit=2).count <= 1:
            s.shortcut("shortcut/2-disjoint", v)
            return s, True
    return s, False


def find_dominated(g: DiGraph) -> tuple[int, int] | None:
    """Lowest ``(v, u)`` such that ``v`` lies on no cycle of ``g - u``.

    Quadratic number of searches; kept as the literal form of the rule.
    """
    from .digraph import reachable

    for v in sorted(g.out_adj):
        if g.has_loop(v):
            continue
        for u in sorted(g.out_adj):
            if u == v:
                continue
            on_cycle = any(v in reachable(g, w, blocked={u}) for w in g.out_adj[v] if w != u)
            if not on_cycle:
                return v, u
    return None


# --------------------------------------------------------------------------
# Rule: disjoint paths ("flower")
# --------------------------------------------------------------------------
def rule_flower(s: ReductionState, lb: LowerBound = zero_bound) -> tuple[ReductionState, bool]:
    """Insert ``u -> v`` whenever more than ``budget - lb(G - M)`` internally
    disjoint ``u -> v`` paths exist (a loop when ``u == v``).

    ``lb`` must not increase when vertices are deleted (both built-in bounds
    qualify). All qualifying pairs of the current graph are inserted in one pass; each
    insertion only removes solutions larger than the budget, so the batch is
    as safe as inserting them one by one.
    """
    g = s.graph
    k = s.budget
    if k < 0:
        return s, False
    # Lower bounds only shrink under vertex deletion, so lb(G) caps lb(G - M)
    # and prunes the flow calls.
    slack = 0 if lb is zero_bound else lb(g)
    cache: dict[frozenset[int], int] = {}
    inserts: list[tuple[int, int]] = []
    for u in sorted(g.out_adj):
        outs = g.out_adj[u] - {u}
        for v in sorted(g.out_adj):
            if v == u:
                if g.has_loop(u) or min(len(outs), len(g.in_adj[u] - {u})) + slack <= k:
                    continue
                res = max_disjoint_cycles_through(g, u)
            else:
                if v in outs or min(len(outs), len(g.in_adj[v] - {v})) + slack <= k:
                    continue
                res = max_disjoint_paths(g, u, v)
            if res.count == 0 or res.count + slack <= k:
                continue
            if res.count > k:
                inserts.append((u, v))
                continue
            inner = frozenset(res.internal_vertices)
            if inner not in cache:
                cache[inner] = lb(g.without(inner))
            bound = cache[inner]
            if res.count > k - bound:
                inserts.append((u, v))
    for u, v in inserts:
        s.add_edge("flower", u, v)
    return s, bool(inserts)


# --------------------------------------------------------------------------
# Rules on red edges
# --------------------------------------------------------------------------
def _red_adjacency(g: DiGraph) -> tuple[dict[int, set[int]], dict[int, set[int]]]:
    red_out = {v: {w for w in g.out_adj[v] if w != v and v not in g.out_adj[w]} for v in g.out_adj}
    red_in = {v: set() for v in g.out_adj}
    for v, ws in red_out.items():
        for w in ws:
            red_in[w].add(v)
    return red_out, red_in


def _sorted_red(red_out: dict[int, set[int]]) -> list[tuple[int, int]]:
    return [(u, v) for u in sorted(red_out) for v in sorted(red_out[u])]


def rule_modified_dfs(s: ReductionState) -> tuple[ReductionState, bool]:
    """Delete red edges that provably lie on no induced cycle.

    Tiers, cheapest first; each tier deletes every qualifying edge of the
    current graph at once (deleting an edge on no induced cycle keeps every
    induced cycle, so the other verdicts of the tier stay valid).
    """
    g = s.graph
    red_out, red_in = _red_adjacency(g)
    red = [e for e in _sorted_red(red_out) if e not in s.protected]

    doomed = [(u, v) for u, v in red if not red_in[u] or not red_out[v]]
    if doomed:
        for u, v in doomed:
            s.delete_edge("modified-dfs/red-edge1", u, v)
        return s, True

    doomed = []
    for u, v in red:
        if all(x in red_in[v] for x in g.in_adj[u]) or all(u in red_in[w] for w in g.out_adj[v]):
            doomed.append((u, v))
    if doomed:
        for u, v in doomed:
            s.delete_edge("modified-dfs/red-edge2", u, v)
        return s, True

    for u, v in red:
        excluded = (g.out_adj[u] | g.in_adj[v]) - {u, v}
        seen = {v}
        stack = [v]
        found = False
        while stack and not found:
            x = stack.pop()
            for y in red_out[x]:
                if y == u:
                    found = True
                    break
                if y not in seen and y not in excluded:
                    seen.add(y)
                    stack.append(y)
        if not found:
            doomed.append((u, v))
    for u, v in doomed:
        s.delete_edge("modified-dfs", u, v)
    return s, bool(doomed)


def on_initial_segment_cycle(g: DiGraph, v1: int, v2: int, i: int = 3) -> bool:
    """Does the red edge ``v1 -> v2`` lie on a cycle induced on an initial
    segment of length ``i`` (or on a shorter chordless cycle / any 3-cycle)?"""
    if i < 3:
        raise ValueError("segment length must be at least 3")
    out, inn = g.out_adj, g.in_adj
    if any(w not in (v1, v2) and v1 in out[w] for w in out[v2]):
        return True

    def closes_chordless(path: list[int], w: int) -> bool:
        # path + [w] closed by w -> v1; path itself is an induced path.
        if v1 in out[w] and w in out[v1]:
            return False
        if path[-1] in out[w]:
            return False
        return all(p not in out[w] and w not in out[p] for p in path[1:-1])

    def search_from(path: list[int]) -> bool:
        removed = set()
        for p in path[:-1]:
            removed |= out[p]
        for p in path[1:]:
            removed |= inn[p]
        removed -= set(path)
        removed |= set(path[1:-1])
        start = path[-1]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in out[x]:
                if y == v1:
                    return True
                if y not in seen and y not in removed:
                    seen.add(y)
                    stack.append(y)
        return False

    def extend(path: list[int]) -> bool:
        if len(path) == i:
            return search_from(path)
        last = path[-1]
        for w in sorted(out[last]):
            if w in path or w in out[w] or last in out[w]:
                continue
            if any(w in out[p] or p in out[w] for p in path[:-1] if p != v1):
                continue
            if w in out[v1]:
                continue
            if v1 in out[w]:
                if len(path) >= 3 and closes_chordless(path, w):
                    return True
                continue
            if extend(path + [w]):
                return True
        return False

    return extend([v1, v2])


def rule_initial_segment(s: ReductionState, i: int = 3) -> tuple[ReductionState, bool]:
    if i > 3:
        log.warning("initial-segment rule with length %d enumerates O(n^%d) extensions per edge", i, i - 2)
    g = s.graph
    red_out, _ = _red_adjacency(g)
    doomed = [(u, v) for u, v in _sorted_red(red_out)
              if (u, v) not in s.protected and not on_initial_segment_cycle(g, u, v, i)]
    for u, v in doomed:
        s.delete_edge("initial-segment", u, v)
    return s, bool(doomed)


# --------------------------------------------------------------------------
# Driver
# --------------------------------------------------------------------------
@dataclass
class ReduceConfig:
    rules: tuple[str, ...] = RULES
    lb: str = "zero"
    segment_length: int = 3
    certificates: bool = True

    def __post_init__(self):
        unknown = set(self.rules) - set(RULES)
        if unknown:
            raise ValueError(f"unknown rules {sorted(unknown)}; choose from {RULES}")
        if self.lb not in LOWER_BOUNDS:
            raise ValueError(f"unknown lower bound {self.lb!r}")
        if self.segment_length < 3:
            raise ValueError("segment_length must be at least 3")
        self.rules = tuple(r for r in RULES if r in self.rules)


def _certify_no(s: ReductionState, config: ReduceConfig, exhausted: bool) -> bool:
    if s.budget < 0:
        s.reject("budget")
        return True
    if not config.certificates:
        return False
    if s.budget == 0 and not is_acyclic(s.graph):
        s.reject("budget")
        return True
    # Once the flower rule is exhausted a loop-free vertex has at most `budget`
    # blue neighbours, so a loop-free yes-instance has at most budget^2 two-cycles.
    if (exhausted and "flower" in config.rules and not s.graph.loops()
            and len(two_cycles(s.graph)) > s.budget ** 2):
        s.reject("two-cycles")
        return True
    return False


def reduce_fixpoint(s: ReductionState, config: ReduceConfig | None = None) -> ReductionState:
    """Apply the enabled rules until none fires or the verdict is No."""
    config = config or ReduceConfig()
    lb = LOWER_BOUNDS[config.lb]
    steps = {
        "loops": rule_loops,
        "shortcut": rule_shortcut,
        "flower": lambda st: rule_flower(st, lb),
        "modified-dfs": rule_modified_dfs,
        "initial-segment": lambda st: rule_initial_segment(st, config.segment_length),
    }
    chain = [steps[r] for r in config.rules]
    while s.verdict is Verdict.UNKNOWN:
        if _certify_no(s, config, exhausted=False):
            break
        for rule in chain:
            s, changed = rule(s)
            if changed:
                break
        else:
            _certify_no(s, config, exhausted=True)
            break
    return s


def reduce_graph(g: DiGraph, k: int, config: ReduceConfig | None = None) -> ReductionState:
    return reduce_fixpoint(ReductionState.start(g, k), config)


def replay_trace(g: DiGraph, k: int, trace: list[TraceEntry]) -> ReductionState:
    """Re-apply a recorded trace to the original instance."""
    s = ReductionState.start(g, k)
    for e in trace:
        if e.op == "force":
            s.force(e.rule, *e.args)
        elif e.op == "del-v":
            s.delete_vertex(e.rule, *e.args)
        elif e.op == "del-e":
            s.delete_edge(e.rule, *e.args)
        elif e.op == "add-e":
            s.add_edge(e.rule, *e.args)
        elif e.op == "shortcut":
            s.shortcut(e.rule, *e.args)
        elif e.op == "no":
            s.reject(e.rule)
        else:
            raise ValueError(f"unknown trace op {e.op!r}")
    return s


def format_trace(trace: list[TraceEntry]) -> str:
    return "".join(f"{e}\n" for e in trace)


def parse_trace(text: str) -> list[TraceEntry]:
    return [TraceEntry.parse(line) for line in text.splitlines() if line.strip()]
