"""Linear-ordering and cycle-covering LP relaxations of DFVS."""

from __future__ import annotations

import enum
import functools
import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csr_matrix

from .digraph import DiGraph, strongly_connected_components
from .errors import CapExceeded

EPS = 1e-6
DEFAULT_CONSTRAINT_CAP = 250_000


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"


@dataclass
class LpModel:
    """min c.x subject to rows ``(coefs, sense, rhs)`` with ``sense`` in {'>=', '<=', '='}; 0 <= x <= 1."""

    names: list[str] = field(default_factory=list)
    index: dict[str, int] = field(default_factory=dict)
    objective: dict[str, float] = field(default_factory=dict)
    constraints: list[tuple[dict[str, float], str, float]] = field(default_factory=list)

    def var(self, name: str) -> str:
        if name not in self.index:
            self.index[name] = len(self.names)
            self.names.append(name)
        return name

    def add(self, coefs: dict[str, float], sense: str, rhs: float) -> None:
        if sense not in (">=", "<=", "="):
            raise ValueError(f"bad sense {sense!r}")
        missing = [n for n in coefs if n not in self.index]
        if missing:
            raise KeyError(f"undeclared variables {missing}")
        self.constraints.append((coefs, sense, rhs))

    def count(self, sense: str) -> int:
        return sum(1 for _, s, _ in self.constraints if s == sense)

    def value_of(self, assignment: dict[str, float]) -> float:
        return sum(c * assignment[n] for n, c in self.objective.items())

    def is_feasible(self, assignment: dict[str, float], eps: float = EPS) -> bool:
        if any(not -eps <= assignment[n] <= 1 + eps for n in self.names):
            return False
        for coefs, sense, rhs in self.constraints:
            lhs = sum(c * assignment[n] for n, c in coefs.items())
            if sense == ">=" and lhs < rhs - eps:
                return False
            if sense == "<=" and lhs > rhs + eps:
                return False
            if sense == "=" and abs(lhs - rhs) > eps:
                return False
        return True


@dataclass
class LpSolution:
    status: LpStatus
    value: float = math.nan
    assignment: dict[str, float] = field(default_factory=dict)


def x_name(u: int, v: int) -> str:
    return f"x_{u}_{v}"


def y_name(v: int) -> str:
    return f"y_{v}"


def build_order_lp(g: DiGraph, constraint_cap: int | None = None) -> LpModel:
    """Linear-ordering relaxation: ``x_uv = 1`` puts u before v, ``y_v`` deletes v.

    Transitivity is written ``x_uw >= x_uv + x_vw - 1``; a valid linear order
    satisfies it for every ordered triple.
    """
    if g.loops():
        raise ValueError("order LP requires a loop-free graph")
    vs = g.vertices
    n = len(vs)
    if constraint_cap is not None and n * (n - 1) * (n - 2) > constraint_cap:
        raise CapExceeded(f"order LP on {n} vertices exceeds constraint cap {constraint_cap}")
    m = LpModel()
    for u, v in itertools.permutations(vs, 2):
        m.var(x_name(u, v))
    for v in vs:
        m.objective[m.var(y_name(v))] = 1.0
    for u, v in itertools.combinations(vs, 2):
        m.add({x_name(u, v): 1.0, x_name(v, u): 1.0}, "=", 1.0)
    for u, v, w in itertools.permutations(vs, 3):
        m.add({x_name(u, w): 1.0, x_name(u, v): -1.0, x_name(v, w): -1.0}, ">=", -1.0)
    for u, v in g.edges():
        m.add({x_name(u, v): 1.0, y_name(u): 1.0, y_name(v): 1.0}, ">=", 1.0)
    return m


def solve_lp(model: LpModel, eps: float = EPS) -> LpSolution:
    """Solve with HiGHS; the returned point is re-checked for feasibility."""
    nvar = len(model.names)
    if nvar == 0:
        return LpSolution(LpStatus.OPTIMAL, 0.0, {})
    c = np.zeros(nvar)
    for name, coef in model.objective.items():
        c[model.index[name]] = coef
    ub_rows, ub_rhs, eq_rows, eq_rhs = [], [], [], []
    for coefs, sense, rhs in model.constraints:
        row = {model.index[n]: coef for n, coef in coefs.items()}
        if sense == "=":
            eq_rows.append(row)
            eq_rhs.append(rhs)
        elif sense == "<=":
            ub_rows.append(row)
            ub_rhs.append(rhs)
        else:
            ub_rows.append({j: -coef for j, coef in row.items()})
            ub_rhs.append(-rhs)

    def sparse(rows):
        if not rows:
            return None
        data, cols, ptr = [], [], [0]
        for row in rows:
            for j, coef in row.items():
                cols.append(j)
                data.append(coef)
            ptr.append(len(cols))
        return csr_matrix((data, cols, ptr), shape=(len(rows), nvar))

    res = linprog(
        c,
        A_ub=sparse(ub_rows),
        b_ub=np.array(ub_rhs) if ub_rows else None,
        A_eq=sparse(eq_rows),
        b_eq=np.array(eq_rhs) if eq_rows else None,
        bounds=(0.0, 1.0),
        method="highs",
    )
    if res.status == 2:
        return LpSolution(LpStatus.INFEASIBLE)
    if res.status != 0:
        raise RuntimeError(f"LP solver failed: {res.message}")
    assignment = {name: float(res.x[i]) for i, name in enumerate(model.names)}
    if not model.is_feasible(assignment, eps):
        raise RuntimeError("LP solver returned an infeasible point")
    return LpSolution(LpStatus.OPTIMAL, float(res.fun), assignment)


def order_lp_value(g: DiGraph, constraint_cap: int | None = DEFAULT_CONSTRAINT_CAP) -> float:
    return solve_lp(build_order_lp(g, constraint_cap)).value


def dfvs_lower_bound(g: DiGraph, constraint_cap: int | None = DEFAULT_CONSTRAINT_CAP,
                     split_components: bool = False) -> int:
    """Integer lower bound on the minimum dfvs from the order LP.

    Loop vertices are counted directly and removed first. With
    ``split_components`` the LP is solved per strongly connected component
    and the rounded values are summed, which is never weaker.
    """
    loops = g.loops()
    h = g.without(loops) if loops else g
    if not split_components:
        return len(loops) + math.ceil(order_lp_value(h, constraint_cap) - EPS)
    total = len(loops)
    for comp in strongly_connected_components(h):
        if len(comp) > 1:
            sub = h.subgraph(comp)
            total += _rounded_component_value(tuple(sub.vertices), tuple(sub.edges()), constraint_cap)
    return total


@functools.lru_cache(maxsize=8192)
def _rounded_component_value(vertices: tuple[int, ...], edges: tuple[tuple[int, int], ...],
                             constraint_cap: int | None) -> int:
    # Branching and the flower rule query the same components many times.
    return math.ceil(order_lp_value(DiGraph(vertices, edges), constraint_cap) - EPS)


def build_cycles_lp(g: DiGraph, cap: int = 20) -> LpModel:
    from .solve import enumerate_induced_cycles

    m = LpModel()
    for v in g.vertices:
        m.objective[m.var(f"d_{v}")] = 1.0
    for cyc in enumerate_induced_cycles(g, cap=cap):
        m.add({f"d_{v}": 1.0 for v in cyc}, ">=", 1.0)
    return m


def cycles_lp_oracle(g: DiGraph, eps: float = EPS, cap: int = 20) -> float:
    """Optimum of the covering LP with one row per chordless cycle."""
    return solve_lp(build_cycles_lp(g, cap), eps).value


def rounded_order_solution(assignment: dict[str, float], g: DiGraph) -> set[int]:
    """Vertices with ``y_v = 1`` in an integral order-LP point."""
    return {v for v in g.vertices if assignment[y_name(v)] > 0.5}


def write_lp_format(model: LpModel) -> str:
    """CPLEX LP text, readable by common external solvers."""

    def expr(coefs: dict[str, float]) -> str:
        parts = []
        for name, c in coefs.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            term = name if mag == 1 else f"{mag:g} {name}"
            parts.append(f"{sign} {term}")
        text = " ".join(parts) or "0"
        return text[2:] if text.startswith("+ ") else text

    sense_map = {">=": ">=", "<=": "<=", "=": "="}
    lines = ["Minimize", f" obj: {expr(model.objective)}", "Subject To"]
    for i, (coefs, sense, rhs) in enumerate(model.constraints):
        lines.append(f" c{i}: {expr(coefs)} {sense_map[sense]} {rhs:g}")
    lines.append("Bounds")
    lines.extend(f" 0 <= {name} <= 1" for name in model.names)
    lines.append("End")
    return "\n".join(lines) + "\n"
