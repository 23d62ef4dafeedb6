"""PACE 2022 instance I/O and instance generators."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .digraph import DiGraph, topological_order
from .errors import CapExceeded, ParseError


# --------------------------------------------------------------------------
# PACE format
# --------------------------------------------------------------------------
@dataclass
class InstanceMeta:
    """Metadata carried in ``%`` comment lines so that piped tools compose.

    ``labels[i]`` is the original label of normalised vertex ``i + 1``;
    ``forced`` are original labels already committed to the solution.
    """

    labels: list[int] | None = None
    forced: list[int] = field(default_factory=list)
    budget: int | None = None
    extra: list[str] = field(default_factory=list)


def _content_lines(text: str) -> list[tuple[int, str]]:
    lines = text.split("\n")
    if text.endswith("\n"):
        lines.pop()
    return [(i + 1, line) for i, line in enumerate(lines) if not line.startswith("%")]


def parse_pace(text: str) -> DiGraph:
    """Parse ``n m 0`` followed by exactly ``n`` out-neighbour lines."""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("missing header", 1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or not all(p.lstrip("-").isdigit() for p in parts):
        raise ParseError(f"malformed header {header!r}", lineno)
    n, _m, t = map(int, parts)
    if n < 0 or t != 0:
        raise ParseError(f"malformed header {header!r}", lineno)
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} adjacency lines, found {len(body)}", body[-1][0] if body else lineno)
    g = DiGraph(range(1, n + 1))
    for v, (lineno, line) in enumerate(body, start=1):
        for tok in line.split():
            if not tok.isdigit():
                raise ParseError(f"bad vertex token {tok!r}", lineno)
            w = int(tok)
            if not 1 <= w <= n:
                raise ParseError(f"vertex {w} out of range 1..{n}", lineno)
            g.add_edge(v, w)
    return g


def normalize(g: DiGraph) -> tuple[DiGraph, list[int]]:
    """Relabel to 1..n in increasing label order; returns the graph and old labels."""
    labels = g.vertices
    pos = {v: i + 1 for i, v in enumerate(labels)}
    h = DiGraph(range(1, len(labels) + 1), ((pos[u], pos[v]) for u, v in g.edges()))
    return h, labels


def write_pace(g: DiGraph) -> str:
    h, _ = normalize(g)
    lines = [f"{h.n} {h.m} 0"]
    lines.extend(" ".join(map(str, sorted(h.out_adj[v]))) for v in h.vertices)
    return "\n".join(lines) + "\n"


def write_solution(s) -> str:
    return "".join(f"{v}\n" for v in sorted(s))


def parse_solution(text: str) -> list[int]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        if not line.isdigit():
            raise ParseError(f"bad solution entry {line!r}", lineno)
        out.append(int(line))
    return out


def read_instance(text: str) -> tuple[DiGraph, InstanceMeta]:
    """Parse a PACE file and restore original labels from its metadata comments."""
    g = parse_pace(text)
    meta = InstanceMeta()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.startswith("%"):
            continue
        parts = line[1:].split()
        if not parts:
            continue
        key, vals = parts[0], parts[1:]
        try:
            if key == "labels":
                meta.labels = [int(x) for x in vals]
            elif key == "forced":
                meta.forced = [int(x) for x in vals]
            elif key == "budget":
                meta.budget = int(vals[0])
            else:
                meta.extra.append(line)
        except (ValueError, IndexError):
            raise ParseError(f"malformed metadata {line!r}", lineno) from None
    if meta.labels is not None:
        if len(meta.labels) != g.n or len(set(meta.labels)) != g.n:
            raise ParseError("labels metadata does not match vertex count")
        mapping = dict(zip(range(1, g.n + 1), meta.labels))
        g = DiGraph((mapping[v] for v in g.vertices), ((mapping[u], mapping[v]) for u, v in g.edges()))
    return g, meta


def write_instance(g: DiGraph, meta: InstanceMeta | None = None) -> str:
    meta = meta or InstanceMeta()
    head = [*meta.extra]
    if g.vertices != list(range(1, g.n + 1)):
        head.append("% labels " + " ".join(map(str, g.vertices)))
    if meta.forced:
        head.append("% forced " + " ".join(map(str, sorted(meta.forced))))
    if meta.budget is not None:
        head.append(f"% budget {meta.budget}")
    return "".join(line + "\n" for line in head) + write_pace(g)


# --------------------------------------------------------------------------
# Tight instance
# --------------------------------------------------------------------------
def tight_label(i: int, j: int, k: int) -> int:
    return (i - 1) * k + j


def gen_tight(d: int, k: int) -> DiGraph:
    """Layers 1..d of k vertices each; every vertex points to the whole next layer (cyclically)."""
    if d < 2 or k < 1:
        raise ValueError("need d >= 2 and k >= 1")
    g = DiGraph(range(1, d * k + 1))
    for i in range(1, d + 1):
        nxt = i % d + 1
        for j in range(1, k + 1):
            for l in range(1, k + 1):
                g.add_edge(tight_label(i, j, k), tight_label(nxt, l, k))
    return g


# --------------------------------------------------------------------------
# Grid-tiling gadget
# --------------------------------------------------------------------------
@dataclass(frozen=True)
class GridTilingInstance:
    k: int
    n: int
    sets: dict[tuple[int, int], frozenset[tuple[int, int]]]

    def __post_init__(self):
        if self.k < 2 or self.k % 2:
            raise ValueError("grid tiling needs an even k >= 2")
        if self.n < 1:
            raise ValueError("n must be positive")
        for i in range(1, self.k + 1):
            for j in range(1, self.k + 1):
                cell = self.sets.get((i, j))
                if not cell:
                    raise ValueError(f"cell ({i},{j}) must be a nonempty set")
                if any(not (1 <= a <= self.n and 1 <= b <= self.n) for a, b in cell):
                    raise ValueError(f"cell ({i},{j}) has a pair outside [n]x[n]")

    def solvable(self) -> bool:
        """Exhaustive check over all choices of one pair per cell."""
        k = self.k
        cells = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1)]
        options = [sorted(self.sets[c]) for c in cells]
        for choice in itertools.product(*options):
            pick = dict(zip(cells, choice))
            if all(pick[(i, j)][0] == pick[(i + 1, j)][0] for i in range(1, k) for j in range(1, k + 1)) and \
               all(pick[(i, j)][1] == pick[(i, j + 1)][1] for i in range(1, k + 1) for j in range(1, k)):
                return True
        return False


@dataclass
class GadgetInstance:
    graph: DiGraph
    s: int
    v: int
    t: int
    d: int
    legend: dict[int, tuple]

    def legend_text(self) -> str:
        lines = []
        for label in sorted(self.legend):
            entry = self.legend[label]
            if entry[0] == "cell":
                lines.append(f"{label} {entry[1]} {entry[2]} {entry[3]} {entry[4]}")
            else:
                lines.append(f"% {label} {entry[0]}{entry[1]}")
        return "\n".join(lines) + "\n"


def gen_grid_tiling(inst: GridTilingInstance, add_back_edge: bool = False) -> GadgetInstance:
    """Acyclic gadget with a chordless x1 -> y1 -> xk path iff the tiling is solvable."""
    k = inst.k
    g = DiGraph()
    legend: dict[int, tuple] = {}
    cell: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    label = 0
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            cell[(i, j)] = []
            for a, b in sorted(inst.sets[(i, j)]):
                label += 1
                g.add_vertex(label)
                legend[label] = ("cell", i, j, a, b)
                cell[(i, j)].append((label, a, b))
    x, y = {}, {}
    for j in range(1, k + 1):
        label += 1
        x[j] = label
        legend[label] = ("x", j)
        g.add_vertex(label)
    for j in range(1, k + 1):
        label += 1
        y[j] = label
        legend[label] = ("y", j)
        g.add_vertex(label)

    for j in range(1, k + 1):
        for lab, _, _ in cell[(1, j)]:
            if j % 2:
                g.add_edge(x[j], lab)
            else:
                g.add_edge(lab, x[j])
        for lab, _, _ in cell[(k, j)]:
            if j % 2:
                g.add_edge(lab, y[j])
            else:
                g.add_edge(y[j], lab)
    for j in range(1, k, 2):
        g.add_edge(y[j], y[j + 1])
    for j in range(2, k - 1, 2):
        g.add_edge(x[j], x[j + 1])
    for j in range(1, k + 1):
        rows = range(1, k) if j % 2 else range(2, k + 1)
        step = 1 if j % 2 else -1
        for i in rows:
            for lab, a, _ in cell[(i, j)]:
                for lab2, a2, _ in cell[(i + step, j)]:
                    if a == a2:
                        g.add_edge(lab, lab2)
    for i in range(1, k + 1):
        for lab, _, b in cell[(i, 1)]:
            for j2 in range(2, k + 1):
                for lab2, _, b2 in cell[(i, j2)]:
                    if b != b2:
                        g.add_edge(lab, lab2)

    if topological_order(g) is None:
        raise AssertionError("grid-tiling gadget is not acyclic")
    if add_back_edge:
        g.add_edge(x[k], x[1])
    return GadgetInstance(g, x[1], y[1], x[k], k * (k + 1) + k - 1, legend)


def chordless_svt_path_exists(gi: GadgetInstance, cap: int = 64) -> bool:
    """Exhaustive search for an induced s -> t path of length <= d through v."""
    g = gi.graph
    if len(g) > cap:
        raise CapExceeded(f"chordless path search refused: {len(g)} vertices > cap {cap}")
    out, inn = g.out_adj, g.in_adj
    s, v, t, d = gi.s, gi.v, gi.t, gi.d

    def extend(path: list[int], on_path: set[int], has_v: bool) -> bool:
        last = path[-1]
        if last == t:
            return has_v
        if len(path) - 1 >= d:
            return False
        for w in sorted(out[last]):
            if w in on_path:
                continue
            if any(w in out[p] or w in inn[p] for p in path[:-1]):
                continue
            if last in out[w]:
                continue
            path.append(w)
            on_path.add(w)
            if extend(path, on_path, has_v or w == v):
                return True
            on_path.discard(w)
            path.pop()
        return False

    if s == t:
        return s == v
    return extend([s], {s}, s == v)


def random_grid_tiling(k: int, n: int, rng: random.Random, density: float = 0.5) -> GridTilingInstance:
    pairs = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1)]
    sets = {}
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            cell = frozenset(p for p in pairs if rng.random() < density)
            sets[(i, j)] = cell or frozenset([rng.choice(pairs)])
    return GridTilingInstance(k, n, sets)


# --------------------------------------------------------------------------
# Random instances
# --------------------------------------------------------------------------
def gen_random_planted(n: int, k: int, d: int, seed: int, density: float = 0.5) -> tuple[DiGraph, set[int]]:
    """Random digraph whose cycles all pass through a planted k-set.

    The other vertices are split into one group per planted vertex, each
    arranged in at most ``d - 1`` layers with edges only to the next layer.
    Edges between groups run from lower to higher group index only, and a
    planted vertex touches only its own group, so every cycle consists of one
    planted vertex plus a layered path: no cycle is longer than ``d``.
    """
    if not 0 <= k <= n or d < 2:
        raise ValueError("need 0 <= k <= n and d >= 2")
    rng = random.Random(seed)
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    planted, rest = labels[:k], labels[k:]
    g = DiGraph(range(1, n + 1))
    group = {w: rng.randrange(k) if k else 0 for w in rest}
    layer = {w: rng.randrange(d - 1) for w in rest}
    for a, b in itertools.permutations(rest, 2):
        if group[a] == group[b] and layer[b] == layer[a] + 1 and rng.random() < density:
            g.add_edge(a, b)
        elif group[a] < group[b] and rng.random() < density / 4:
            g.add_edge(a, b)
    for gi, p in enumerate(planted):
        for w in rest:
            if group[w] != gi:
                continue
            if rng.random() < density:
                g.add_edge(p, w)
            if rng.random() < density:
                g.add_edge(w, p)
    return g, set(planted)


def gen_random_digraph(n: int, density: float, seed: int) -> DiGraph:
    """Erdos-Renyi style digraph without loops."""
    rng = random.Random(seed)
    g = DiGraph(range(1, n + 1))
    for u, v in itertools.permutations(range(1, n + 1), 2):
        if rng.random() < density:
            g.add_edge(u, v)
    return g
