"""Kernel sizes on planted instances with short cycles.

For each (n, k, d) cell, generates seeded planted instances, reduces them with
the loop and flower rules (enough for the kernel's separator bound), builds
the kernel with the size guard disabled, and prints mean sizes next to the
worst-case bound 2^d k^d + dk.

    python3 scripts/kernel_sizes.py --trials 20 --sizes 12 16 20
"""

from __future__ import annotations

import argparse
import statistics
from dataclasses import dataclass, field

from dfvskit.instances import gen_random_planted
from dfvskit.kernel import kernelize_with_details
from dfvskit.reduce import ReduceConfig, Verdict, reduce_graph


@dataclass
class KernelSizeConfig:
    sizes: list[int] = field(default_factory=lambda: [12, 16, 20])
    budgets: list[int] = field(default_factory=lambda: [1, 2, 3])
    lengths: list[int] = field(default_factory=lambda: [2, 3, 4])
    trials: int = 10
    density: float = 0.6
    seed: int = 0


def run(cfg: KernelSizeConfig) -> list[dict]:
    rows = []
    nice = ReduceConfig(rules=("loops", "flower"))
    for n in cfg.sizes:
        for k in cfg.budgets:
            for d in cfg.lengths:
                before, reduced, kernel, no = [], [], [], 0
                for t in range(cfg.trials):
                    g, _ = gen_random_planted(n, k, d, cfg.seed + 1000 * t + n, cfg.density)
                    s = reduce_graph(g, k, nice)
                    before.append(g.n)
                    if s.verdict is Verdict.NO:
                        no += 1
                        continue
                    reduced.append(s.graph.n)
                    result = kernelize_with_details(s.graph, s.budget, d, use_guard=False)
                    if result is None:
                        no += 1
                        continue
                    kernel.append(result[0].n)
                rows.append({
                    "n": n, "k": k, "d": d,
                    "reduced": statistics.fmean(reduced) if reduced else float("nan"),
                    "kernel": statistics.fmean(kernel) if kernel else float("nan"),
                    "max_kernel": max(kernel, default=0),
                    "bound": 2 ** d * k ** d + d * k,
                    "no": no,
                })
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+")
    ap.add_argument("--budgets", type=int, nargs="+")
    ap.add_argument("--lengths", type=int, nargs="+")
    ap.add_argument("--trials", type=int)
    ap.add_argument("--density", type=float)
    ap.add_argument("--seed", type=int)
    args = {k: v for k, v in vars(ap.parse_args()).items() if v is not None}
    cfg = KernelSizeConfig(**args)
    print(f"{'n':>4} {'k':>2} {'d':>2} {'reduced':>8} {'kernel':>7} {'max':>4} {'bound':>6} {'no':>3}")
    for r in run(cfg):
        print(f"{r['n']:>4} {r['k']:>2} {r['d']:>2} {r['reduced']:>8.1f} {r['kernel']:>7.1f} "
              f"{r['max_kernel']:>4} {r['bound']:>6} {r['no']:>3}")


if __name__ == "__main__":
    main()
