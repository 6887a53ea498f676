"""How the estimated statistical defect of planted sequences approaches r.

For each prefix length the defect carries a finite-prefix bias of roughly
(number of early perturbed terms)/(N/2); the table shows it shrinking.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

import numpy as np

from fuzzystat import generators as gen
from fuzzystat.stat_limits import stat_defect


@dataclass
class Config:
    lengths: list[int] = field(default_factory=lambda: [1_000, 10_000, 100_000, 1_000_000])
    r_values: list[float] = field(default_factory=lambda: [0.1, 0.25])
    a: float = 0.0
    seeds: int = 5


def run(cfg: Config) -> None:
    m = abs(cfg.a) + 1
    print(f"{'N':>9} {'r':>6} {'mean defect - r':>16} {'max':>12}")
    for n in cfg.lengths:
        for r in cfg.r_values:
            excess = [
                stat_defect(gen.planted_sequence(cfg.a, r, m, n, seed=s, mode="random").sequence, cfg.a).defect - r
                for s in range(cfg.seeds)
            ]
            print(f"{n:>9} {r:>6} {np.mean(excess):>16.3e} {np.max(excess):>12.3e}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--lengths", type=int, nargs="+", default=Config().lengths)
    p.add_argument("--seeds", type=int, default=Config.seeds)
    a = p.parse_args()
    run(Config(lengths=a.lengths, seeds=a.seeds))
