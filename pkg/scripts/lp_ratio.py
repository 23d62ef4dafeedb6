"""How far apart are the two LP relaxations and the true optimum?

Samples seeded random digraphs and reports, per vertex count, the largest and
mean ratio cycles-LP / order-LP and the mean gap between the optimum and the
rounded order-LP bound.

    python3 scripts/lp_ratio.py --samples 200 --max-n 8
"""

from __future__ import annotations

import argparse
import math
import statistics
from collections import defaultdict
from dataclasses import dataclass

from dfvskit.instances import gen_random_digraph
from dfvskit.lp import EPS, cycles_lp_oracle, order_lp_value
from dfvskit.solve import brute_force_dfvs


@dataclass
class LpRatioConfig:
    samples: int = 200
    min_n: int = 3
    max_n: int = 8
    density: float = 0.35
    seed: int = 0


def run(cfg: LpRatioConfig) -> dict[int, dict[str, float]]:
    by_n: dict[int, list[tuple[float, int]]] = defaultdict(list)
    for i in range(cfg.samples):
        n = cfg.min_n + i % (cfg.max_n - cfg.min_n + 1)
        g = gen_random_digraph(n, cfg.density, cfg.seed + i)
        x = order_lp_value(g)
        if x <= EPS:
            continue
        h = cycles_lp_oracle(g)
        opt = len(brute_force_dfvs(g))
        by_n[n].append((h / x, opt - math.ceil(x - EPS)))
    summary = {}
    for n, vals in sorted(by_n.items()):
        ratios = [r for r, _ in vals]
        gaps = [gap for _, gap in vals]
        summary[n] = {"count": len(vals), "max_ratio": max(ratios), "mean_ratio": statistics.fmean(ratios),
                      "mean_gap": statistics.fmean(gaps)}
    return summary


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int)
    ap.add_argument("--min-n", type=int)
    ap.add_argument("--max-n", type=int)
    ap.add_argument("--density", type=float)
    ap.add_argument("--seed", type=int)
    args = {k: v for k, v in vars(ap.parse_args()).items() if v is not None}
    cfg = LpRatioConfig(**args)
    print(f"{'n':>3} {'graphs':>6} {'max h/x':>8} {'mean h/x':>9} {'mean opt-lb':>11}")
    for n, row in run(cfg).items():
        print(f"{n:>3} {row['count']:>6} {row['max_ratio']:>8.3f} {row['mean_ratio']:>9.3f} {row['mean_gap']:>11.2f}")


if __name__ == "__main__":
    main()
