import itertools

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dfvskit.digraph import DiGraph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def digraphs(draw, min_n=1, max_n=7, loops=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if loops or u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return DiGraph(range(1, n + 1), chosen)


def triangle():
    return DiGraph(edges=[(1, 2), (2, 3), (3, 1)])


def all_simple_paths(g, u, v):
    """Every simple u -> v path, for brute-force checks."""
    out = []

    def walk(path):
        for w in sorted(g.successors(path[-1])):
            if w == v:
                out.append(tuple(path) + (v,))
            elif w not in path:
                walk(path + [w])

    walk([u])
    return out


def max_disjoint_brute(paths, exclude):
    """Largest family of paths pairwise disjoint outside ``exclude``.

    Exhaustive backtracking over the paths grouped by their second vertex;
    disjoint paths need distinct second vertices, which bounds the search.
    """
    groups = {}
    for p in paths:
        groups.setdefault(p[1], []).append(set(p) - exclude)
    heads = sorted(groups)
    best = 0

    def search(i, used, count):
        nonlocal best
        best = max(best, count)
        if i == len(heads) or count + len(heads) - i <= best:
            return
        for inner in groups[heads[i]]:
            if not inner & used:
                search(i + 1, used | inner, count + 1)
        search(i + 1, used, count)

    search(0, set(), 0)
    return best
