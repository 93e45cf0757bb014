"""Listing-success simulation over random subsets.

Trial t at subset size N draws its own RNG stream from (seed, N, t), so
results are reproducible and independent of how trials are chunked across
workers.
"""

from __future__ import annotations

import dataclasses
import random
from concurrent.futures import ProcessPoolExecutor

from .iblt import HashedMapping, MatrixMapping, _splitmix64
from .matrix import MappingMatrix

DEFAULT_TRIALS = 10 ** 5


def trial_rng(seed: int, size: int, t: int) -> random.Random:
    mixed = _splitmix64(_splitmix64(seed) ^ _splitmix64((size << 40) | t))
    return random.Random(mixed)


def sample_subset(rng: random.Random, n: int, size: int) -> list:
    """Uniform size-subset of 1..n by a sparse partial Fisher-Yates shuffle."""
    if size > n:
        raise ValueError(f"size {size} > n {n}")
    repl: dict = {}
    out = []
    for idx in range(size):
        j = rng.randrange(idx, n)
        out.append(repl.get(j, j) + 1)
        repl[j] = repl.get(idx, idx)
    return out


def _run_trial(cells_of, m: int, n: int, subset) -> bool:
    """Insert the subset and peel; success means it lists back exactly."""
    counts = [0] * m
    xors = [0] * m
    for u in subset:
        for c in cells_of[u - 1]:
            counts[c] += 1
            xors[c] ^= u
    stack = [c for c in range(m) if counts[c] == 1]
    while stack:
        c = stack.pop()
        if counts[c] != 1:
            continue
        u = xors[c]
        if not 1 <= u <= n or c not in cells_of[u - 1]:
            continue
        for cell in cells_of[u - 1]:
            counts[cell] -= 1
            xors[cell] ^= u
            if counts[cell] == 1:
                stack.append(cell)
    return not any(counts)


def _mapping_cells(mapping) -> list:
    return [mapping.cells(u) for u in range(1, mapping.n + 1)]


def _chunk_successes(cells_of, m, n, size, seed, t0, t1) -> int:
    wins = 0
    for t in range(t0, t1):
        rng = trial_rng(seed, size, t)
        subset = sample_subset(rng, n, size)
        if _run_trial(cells_of, m, n, subset):
            wins += 1
    return wins


@dataclasses.dataclass(frozen=True)
class SizeResult:
    size: int
    successes: int
    trials: int

    @property
    def rate(self) -> float:
        return self.successes / self.trials


def run_simulation(mapping, sizes, trials: int = DEFAULT_TRIALS,
                   seed: int = 0, workers: int = 1) -> list:
    """Success counts per subset size.  `mapping` is a MatrixMapping,
    HashedMapping, or a bare MappingMatrix."""
    if isinstance(mapping, MappingMatrix):
        mapping = MatrixMapping(mapping)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    cells_of = _mapping_cells(mapping)
    m, n = mapping.m, mapping.n
    results = []
    for size in sizes:
        if workers <= 1:
            wins = _chunk_successes(cells_of, m, n, size, seed, 0, trials)
        else:
            step = -(-trials // workers)
            spans = [(t0, min(t0 + step, trials))
                     for t0 in range(0, trials, step)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = pool.map(
                    _chunk_successes,
                    *zip(*[(cells_of, m, n, size, seed, a, b)
                           for a, b in spans]))
                wins = sum(parts)
        results.append(SizeResult(size, wins, trials))
    return results


__all__ = ["DEFAULT_TRIALS", "SizeResult", "HashedMapping", "MatrixMapping",
           "run_simulation", "sample_subset", "trial_rng"]
