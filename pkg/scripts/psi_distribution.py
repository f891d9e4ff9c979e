"""Histogram of the index bound and of the canonical element length over
random terms, to see how far the normal form has to reach.

    python3 scripts/psi_distribution.py --terms 3000 --depth 7 --max-lit 50
"""

from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import dataclass, fields

from meadow.element import from_term
from meadow.evaluate import profile
from meadow.term import random_term, size


@dataclass
class PsiConfig:
    terms: int = 3000
    depth: int = 7
    max_lit: int = 50
    seed: int = 0


def bucket(n: int) -> str:
    if n == 0:
        return "0"
    lo = 1
    while lo * 2 <= n:
        lo *= 2
    return f"{lo}-{2 * lo - 1}"


def run(cfg: PsiConfig) -> None:
    psi_hist, k_hist = Counter(), Counter()
    worst = (0, None)
    start = time.perf_counter()
    gaps = 0
    for j in range(cfg.terms):
        t = random_term(cfg.seed + j, cfg.depth, cfg.max_lit)
        prof = profile(t)
        k = from_term(t).k
        psi_hist[bucket(prof.psi)] += 1
        k_hist[bucket(k)] += 1
        gaps += k > prof.psi
        if prof.psi > worst[0]:
            worst = (prof.psi, cfg.seed + j, size(t))
    elapsed = time.perf_counter() - start

    order = sorted(set(psi_hist) | set(k_hist), key=lambda b: int(b.split("-")[0]))
    print(f"{'range':>12s} {'psi':>7s} {'k':>7s}")
    for b in order:
        print(f"{b:>12s} {psi_hist[b]:7d} {k_hist[b]:7d}")
    print(f"largest psi {worst[0]} (seed {worst[1]}, size {worst[2]}); "
          f"terms with k > psi: {gaps}; {elapsed:.1f}s")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(PsiConfig):
        parser.add_argument("--" + f.name.replace("_", "-"), type=int, default=f.default)
    run(PsiConfig(**vars(parser.parse_args())))


if __name__ == "__main__":
    main()
