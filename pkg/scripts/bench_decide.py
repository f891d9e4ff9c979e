"""Time decide_equal on random term pairs of a fixed size.

    python3 scripts/bench_decide.py --nodes 200 --max-lit 1000000 --pairs 60
"""

from __future__ import annotations

import argparse
import random
import statistics
import time
from dataclasses import dataclass, fields

from meadow.normal import decide_equal, z_term
from meadow.rewrite import rewrite_step
from meadow.term import Add, Lit, Mul, random_sized_term


@dataclass
class BenchConfig:
    nodes: int = 200
    max_lit: int = 10**6
    pairs: int = 60
    seed: int = 0


def make_pair(cfg: BenchConfig, j: int):
    rng = random.Random(cfg.seed + j)
    s = random_sized_term(rng.getrandbits(63), cfg.nodes, cfg.max_lit)
    if j % 3 == 0:
        return "independent", s, random_sized_term(rng.getrandbits(63), cfg.nodes, cfg.max_lit)
    if j % 3 == 1:
        t = s
        for _ in range(4):
            t = rewrite_step(t, rng, cfg.max_lit)
        return "rewritten", s, t
    return "perturbed", s, Add(s, Mul(z_term(rng.randrange(6)), Lit(rng.randrange(1, 8))))


def run(cfg: BenchConfig) -> None:
    times: dict[str, list[float]] = {}
    for j in range(cfg.pairs):
        kind, s, t = make_pair(cfg, j)
        start = time.perf_counter()
        verdict = decide_equal(s, t)
        times.setdefault(kind, []).append(time.perf_counter() - start)
        if kind == "rewritten" and not verdict:
            raise SystemExit(f"pair {j}: rewritten pair judged distinct: {verdict}")
    for kind, ts in sorted(times.items()):
        print(f"{kind:12s} n={len(ts):4d} median={statistics.median(ts) * 1e3:8.2f}ms "
              f"max={max(ts) * 1e3:8.2f}ms")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(BenchConfig):
        parser.add_argument("--" + f.name.replace("_", "-"), type=int, default=f.default)
    run(BenchConfig(**vars(parser.parse_args())))


if __name__ == "__main__":
    main()
