"""Density ratios of the even-digit evens across decades.

Prints |K_n|/n at n = 10^d - 1 and n = 10^d for each decade, showing the
ratio swinging between about 1/22 and 5/11 instead of settling.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from fuzzystat import EstimatorConfig
from fuzzystat import generators as gen
from fuzzystat.density import density_profile, estimate_density


@dataclass
class Config:
    max_exponent: int = 6
    tail_fraction: float = 0.9


def run(cfg: Config) -> None:
    horizon = 10**cfg.max_exponent
    K = gen.even_digit_evens(horizon)
    prof = density_profile(K)
    print(f"{'n':>10} {'|K_n|':>8} {'ratio':>10}")
    for d in range(1, cfg.max_exponent + 1):
        for n in (10**d - 1, 10**d):
            if n <= horizon:
                print(f"{n:>10} {prof.counts[n - 1]:>8} {prof.ratio_at(n):>10.6f}")
    est = estimate_density(K, EstimatorConfig(tail_fraction=cfg.tail_fraction))
    lo, hi = est.band
    print(f"tail band [{lo:.4f}, {hi:.4f}] width {est.width:.4f}; limits 1/22={1/22:.4f}, 5/11={5/11:.4f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-exponent", type=int, default=Config.max_exponent)
    p.add_argument("--tail-fraction", type=float, default=Config.tail_fraction)
    a = p.parse_args()
    run(Config(a.max_exponent, a.tail_fraction))
