"""Command-line entry point: ``dfvskit <subcommand> [options]``.

Instances flow between subcommands as PACE text on stdin/stdout. Original
labels, vertices already committed to the solution and the remaining budget
travel in ``%`` comment lines, so ``gen | reduce | kernelize | solve`` prints
a solution in the labels of the generated instance.

Exit codes: 0 ok, 1 invalid solution (verify), 2 parse or usage error,
3 cap refusal, 4 promise violation, 5 graph not reduced, 20 no solution
within the budget.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field

from .digraph import topological_order
from .errors import CapExceeded, NicenessError, ParseError, PromiseViolation
from .instances import (
    GridTilingInstance,
    InstanceMeta,
    gen_grid_tiling,
    gen_random_digraph,
    gen_random_planted,
    gen_tight,
    parse_solution,
    random_grid_tiling,
    read_instance,
    write_instance,
    write_solution,
)
from .kernel import kernelize_short_cycles, longest_induced_cycle
from .lp import DEFAULT_CONSTRAINT_CAP, build_order_lp, dfvs_lower_bound, solve_lp, write_lp_format
from .reduce import RULES, ReduceConfig, ReductionState, Verdict, format_trace, reduce_fixpoint
from .solve import branch_and_bound, verify_solution

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_PROMISE = 4
EXIT_NOT_REDUCED = 5
EXIT_NO = 20


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    subcommand: str
    input: str | None = None
    output: str | None = None
    k: int | None = None
    d: int | None = None
    rules: tuple[str, ...] = RULES
    lb: str = "zero"
    seg_len: int = 3
    seed: int = 0
    cap: int | None = None
    threads: int = 1
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.cap is not None and self.cap <= 0:
            raise UsageError("--cap must be positive")
        if self.threads < 1:
            raise UsageError("--threads must be positive")
        if self.k is not None and self.k < 0:
            raise UsageError("--k must be non-negative")


def _read(cfg: CliConfig) -> str:
    if cfg.input is None or cfg.input == "-":
        return sys.stdin.read()
    with open(cfg.input) as fh:
        return fh.read()


def _write(cfg: CliConfig, text: str) -> None:
    if cfg.output is None or cfg.output == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.output, "w") as fh:
            fh.write(text)


def _budget(cfg: CliConfig, meta: InstanceMeta) -> int | None:
    # --k refers to the original instance; vertices forced upstream use it up.
    if cfg.k is not None:
        return cfg.k - len(meta.forced)
    return meta.budget


def _require_budget(cfg: CliConfig, meta: InstanceMeta) -> int:
    budget = _budget(cfg, meta)
    if budget is None:
        raise UsageError(f"{cfg.subcommand}: --k is required when the input carries no budget")
    return budget


def _reduce_config(cfg: CliConfig) -> ReduceConfig:
    try:
        return ReduceConfig(rules=cfg.rules, lb=cfg.lb, segment_length=cfg.seg_len)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_reduce(cfg: CliConfig) -> int:
    g, meta = read_instance(_read(cfg))
    budget = _require_budget(cfg, meta)
    state = reduce_fixpoint(ReductionState.start(g, budget), _reduce_config(cfg))
    trace = format_trace(state.trace)
    trace_path = cfg.extra.get("trace")
    if trace_path:
        with open(trace_path, "w") as fh:
            fh.write(trace)
    if state.verdict is Verdict.NO:
        print(f"no solution with budget {budget}", file=sys.stderr)
        return EXIT_NO
    out = InstanceMeta(forced=meta.forced + state.forced, budget=state.budget, extra=meta.extra)
    _write(cfg, write_instance(state.graph, out))
    forced_path = cfg.extra.get("forced")
    if forced_path:
        with open(forced_path, "w") as fh:
            fh.write(write_solution(out.forced))
    return EXIT_OK


def cmd_kernelize(cfg: CliConfig) -> int:
    g, meta = read_instance(_read(cfg))
    budget = _require_budget(cfg, meta)
    if cfg.d is None:
        raise UsageError("kernelize: --d is required")
    cap = cfg.cap if cfg.cap is not None else 20
    # The kernel needs a reduced graph; reducing an already reduced one is a no-op.
    state = reduce_fixpoint(ReductionState.start(g, budget), _reduce_config(cfg))
    if state.verdict is Verdict.NO:
        print(f"no solution with budget {budget}", file=sys.stderr)
        return EXIT_NO
    if len(state.graph) <= cap and longest_induced_cycle(state.graph, cap=cap) > cfg.d:
        raise PromiseViolation(f"graph has an induced cycle longer than {cfg.d}")
    kernel = kernelize_short_cycles(state.graph, state.budget, cfg.d, use_guard=not cfg.extra.get("no_guard"))
    if kernel is None:
        print(f"more than {state.budget} disjoint short cycles", file=sys.stderr)
        return EXIT_NO
    out = InstanceMeta(forced=meta.forced + state.forced, budget=state.budget, extra=meta.extra)
    _write(cfg, write_instance(kernel, out))
    return EXIT_OK


def cmd_solve(cfg: CliConfig) -> int:
    g, meta = read_instance(_read(cfg))
    if cfg.cap is not None and len(g) > cfg.cap:
        raise CapExceeded(f"solve refused: {len(g)} vertices > cap {cfg.cap}")
    budget = _budget(cfg, meta)
    if budget is not None and budget < 0:
        return EXIT_NO
    sol = branch_and_bound(g, k=budget, config=_reduce_config(cfg), workers=cfg.threads)
    if sol is None:
        print(f"no solution with budget {budget}", file=sys.stderr)
        return EXIT_NO
    _write(cfg, write_solution(set(meta.forced) | sol.vertices))
    return EXIT_OK


def cmd_lowerbound(cfg: CliConfig) -> int:
    g, meta = read_instance(_read(cfg))
    cap = cfg.cap if cfg.cap is not None else DEFAULT_CONSTRAINT_CAP
    dump = cfg.extra.get("dump_lp")
    if dump:
        loops = g.loops()
        with open(dump, "w") as fh:
            fh.write(write_lp_format(build_order_lp(g.without(loops), cap)))
    bound = dfvs_lower_bound(g, cap) + len(meta.forced)
    text = f"{bound}\n"
    if cfg.extra.get("value"):
        loops = g.loops()
        text += f"% lp {solve_lp(build_order_lp(g.without(loops), cap)).value + len(loops):.9g}\n"
    _write(cfg, text)
    return EXIT_OK


def cmd_gen(cfg: CliConfig) -> int:
    kind = cfg.extra["kind"]
    if kind == "tight":
        if cfg.d is None or cfg.k is None:
            raise UsageError("gen tight: --d and --k are required")
        if cfg.d < 2 or cfg.k < 1:
            raise UsageError("gen tight: need d >= 2 and k >= 1")
        _write(cfg, write_instance(gen_tight(cfg.d, cfg.k), InstanceMeta(budget=cfg.k)))
    elif kind == "planted":
        n = cfg.extra.get("n")
        if n is None or cfg.k is None or cfg.d is None:
            raise UsageError("gen planted: --n, --k and --d are required")
        try:
            g, _ = gen_random_planted(n, cfg.k, cfg.d, cfg.seed, cfg.extra.get("density", 0.5))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        _write(cfg, write_instance(g, InstanceMeta(budget=cfg.k)))
    elif kind == "random":
        n = cfg.extra.get("n")
        if n is None:
            raise UsageError("gen random: --n is required")
        g = gen_random_digraph(n, cfg.extra.get("density", 0.3), cfg.seed)
        meta = InstanceMeta(budget=cfg.k)
        _write(cfg, write_instance(g, meta))
    elif kind == "grid":
        k = cfg.k if cfg.k is not None else 2
        n = cfg.extra.get("n") or 1
        try:
            inst = random_grid_tiling(k, n, random.Random(cfg.seed), cfg.extra.get("density", 0.5))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        gi = gen_grid_tiling(inst, add_back_edge=bool(cfg.extra.get("add_back_edge")))
        info = [f"% gadget s {gi.s} v {gi.v} t {gi.t} d {gi.d}"]
        _write(cfg, write_instance(gi.graph, InstanceMeta(extra=info)))
        legend = cfg.extra.get("legend")
        if legend:
            with open(legend, "w") as fh:
                fh.write(gi.legend_text())
    else:
        raise UsageError(f"unknown generator {kind!r}")
    return EXIT_OK


def cmd_verify(cfg: CliConfig) -> int:
    g, _ = read_instance(_read(cfg))
    path = cfg.extra.get("solution")
    if not path:
        raise UsageError("verify: --solution is required")
    with open(path) as fh:
        sol = parse_solution(fh.read())
    try:
        ok = verify_solution(g, sol)
    except KeyError as exc:
        print(f"invalid: {exc.args[0]}", file=sys.stderr)
        return EXIT_INVALID
    if cfg.k is not None and len(set(sol)) > cfg.k:
        print(f"invalid: {len(set(sol))} vertices exceed k={cfg.k}", file=sys.stderr)
        return EXIT_INVALID
    _write(cfg, f"{'valid' if ok else 'invalid'} {len(set(sol))}\n")
    return EXIT_OK if ok else EXIT_INVALID


COMMANDS = {
    "reduce": cmd_reduce,
    "kernelize": cmd_kernelize,
    "solve": cmd_solve,
    "lowerbound": cmd_lowerbound,
    "gen": cmd_gen,
    "verify": cmd_verify,
}


def _rule_list(text: str) -> tuple[str, ...]:
    rules = tuple(r.strip() for r in text.split(",") if r.strip())
    unknown = [r for r in rules if r not in RULES]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown rules {unknown}; choose from {', '.join(RULES)}")
    return rules


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dfvskit", description="Directed feedback vertex set toolkit.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def io(p):
        p.add_argument("--input", "-i", help="input file (default stdin)")
        p.add_argument("--output", "-o", help="output file (default stdout)")

    def rules(p):
        p.add_argument("--rules", type=_rule_list, default=RULES, help="comma list of reduction rules")
        p.add_argument("--lb", choices=("zero", "lp"), default="zero", help="lower bound used by the flower rule")
        p.add_argument("--seg-len", type=int, default=3, help="initial segment length")

    p = sub.add_parser("reduce", help="apply reduction rules to a fixpoint")
    io(p)
    rules(p)
    p.add_argument("--k", type=int)
    p.add_argument("--trace", help="write the applied operations here")
    p.add_argument("--forced", help="write the forced vertices here")

    p = sub.add_parser("kernelize", help="kernel for graphs without long induced cycles")
    io(p)
    rules(p)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--cap", type=int, help="largest graph on which the cycle-length promise is checked")
    p.add_argument("--no-guard", action="store_true", help="build the kernel even on small graphs")

    p = sub.add_parser("solve", help="exact minimum dfvs by branch and bound")
    io(p)
    rules(p)
    p.add_argument("--k", type=int)
    p.add_argument("--cap", type=int, help="refuse graphs with more vertices")
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("lowerbound", help="order-LP lower bound")
    io(p)
    p.add_argument("--cap", type=int, help="LP transitivity-row cap")
    p.add_argument("--dump-lp", help="write the LP in CPLEX LP format")
    p.add_argument("--value", action="store_true", help="also print the fractional optimum")

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("kind", choices=("tight", "planted", "random", "grid"))
    p.add_argument("--output", "-o")
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float)
    p.add_argument("--legend", help="grid: write the cell legend here")
    p.add_argument("--add-back-edge", action="store_true", help="grid: close t -> s")

    p = sub.add_parser("verify", help="check a solution file")
    io(p)
    p.add_argument("--solution", required=True)
    p.add_argument("--k", type=int)
    return parser


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    known = {"subcommand", "input", "output", "k", "d", "rules", "lb", "seg_len", "seed", "cap", "threads"}
    extra = {key: val for key, val in vars(ns).items() if key not in known and val is not None}
    return CliConfig(
        subcommand=ns.subcommand,
        input=getattr(ns, "input", None),
        output=getattr(ns, "output", None),
        k=getattr(ns, "k", None),
        d=getattr(ns, "d", None),
        rules=getattr(ns, "rules", RULES),
        lb=getattr(ns, "lb", "zero"),
        seg_len=getattr(ns, "seg_len", 3),
        seed=getattr(ns, "seed", 0),
        cap=getattr(ns, "cap", None),
        threads=getattr(ns, "threads", 1),
        extra=extra,
    )


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.subcommand](cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    except PromiseViolation as exc:
        print(f"promise violated: {exc}", file=sys.stderr)
        return EXIT_PROMISE
    except NicenessError as exc:
        print(f"graph not reduced: {exc}", file=sys.stderr)
        return EXIT_NOT_REDUCED


if __name__ == "__main__":
    sys.exit(main())
