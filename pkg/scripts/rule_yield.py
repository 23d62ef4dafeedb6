"""Which reduction rules do the work?

Reduces seeded random digraphs with the full rule chain and counts trace
operations per rule, plus how often the instance is settled outright
(verdict No, or an empty residual graph).

    python3 scripts/rule_yield.py --graphs 300 --max-n 12 --k 3
"""

from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from dfvskit.instances import gen_random_digraph
from dfvskit.reduce import ReduceConfig, Verdict, reduce_graph


@dataclass
class RuleYieldConfig:
    graphs: int = 300
    max_n: int = 12
    k: int = 3
    lb: str = "zero"
    seed: int = 0


def run(cfg: RuleYieldConfig) -> tuple[Counter, Counter]:
    ops: Counter = Counter()
    outcome: Counter = Counter()
    config = ReduceConfig(lb=cfg.lb)
    for i in range(cfg.graphs):
        rng = random.Random(cfg.seed + i)
        g = gen_random_digraph(rng.randint(4, cfg.max_n), rng.choice([0.1, 0.2, 0.3, 0.4, 0.5]), cfg.seed + i)
        s = reduce_graph(g, cfg.k, config)
        ops.update(f"{e.rule} {e.op}" for e in s.trace)
        if s.verdict is Verdict.NO:
            outcome["no"] += 1
        elif s.graph.n == 0:
            outcome["solved"] += 1
        else:
            outcome["residual"] += 1
    return ops, outcome


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--graphs", type=int)
    ap.add_argument("--max-n", type=int)
    ap.add_argument("--k", type=int)
    ap.add_argument("--lb", choices=("zero", "lp"))
    ap.add_argument("--seed", type=int)
    args = {k: v for k, v in vars(ap.parse_args()).items() if v is not None}
    ops, outcome = run(RuleYieldConfig(**args))
    for name, count in ops.most_common():
        print(f"{count:>7}  {name}")
    print("outcomes:", dict(outcome))


if __name__ == "__main__":
    main()
