"""Stopping-set oracles.

A non-empty column subset S is a stopping set when no row of the submatrix
M|_S has weight exactly one.  Peeling decodes every set of size <= d iff the
matrix has no stopping set of size <= d, so these oracles are the ground truth
for every construction in the package.

Columns are packed into uint64 words; subsets are enumerated in (size, lex)
order with the innermost level vectorized over numpy, so worst cases of a few
million subsets stay fast.
"""

from __future__ import annotations

import dataclasses
import itertools
from math import comb

import numpy as np

from .matrix import BudgetExceededError, MappingMatrix

DEFAULT_SUBSET_BUDGET = 10 ** 8


@dataclasses.dataclass(frozen=True)
class StoppingReport:
    """Result of a stopping-distance search.

    distance is s(M) when a stopping set of size <= checked_bound exists,
    otherwise the sentinel n+1 ("none found up to the bound"; with
    checked_bound == n that means none at all).  witness is a 1-based tuple.
    """

    mode: str
    distance: int
    witness: tuple | None
    checked_bound: int

    @property
    def found(self) -> bool:
        return self.witness is not None


@dataclasses.dataclass(frozen=True)
class SampledVerdict:
    ok: bool
    witness: tuple | None
    trials: int
    seed: int


def _column_words(matrix: MappingMatrix) -> np.ndarray:
    """(n, w) uint64 array; column i-1 packs rows into ceil(m/64) words."""
    dense = matrix.materialize().dense
    m, n = dense.shape
    w = (m + 63) // 64
    words = np.zeros((n, w), dtype=np.uint64)
    for r in range(m):
        word, bit = divmod(r, 64)
        mask = np.uint64(1 << bit)
        words[dense[r] != 0, word] |= mask
    return words


def is_stopping_set(matrix: MappingMatrix, subset) -> bool:
    """Direct check: subset non-empty and no row of weight one."""
    subset = list(subset)
    if not subset:
        return False
    counts = matrix.counter_array(subset)
    return not bool((counts == 1).any())


def _find_stopping_of_size(cols: np.ndarray, size: int) -> tuple | None:
    """First (lex order) stopping set of exactly `size` columns, 0-based.

    Walks prefixes carrying u1 (rows covered >= once) and u2 (>= twice);
    weight-one rows of a subset are u1 & ~u2.  The last element is vectorized.
    """
    n = cols.shape[0]
    if size < 2 or size > n:
        return None
    zeros = np.zeros(cols.shape[1], dtype=np.uint64)

    def descend(start, depth, u1, u2, prefix):
        if depth == size - 1:
            cand = cols[start:]
            if cand.shape[0] == 0:
                return None
            overlap = u1 & cand
            pure = (u1 | cand) & ~(u2 | overlap)
            bad = ~pure.any(axis=1)
            hits = np.flatnonzero(bad)
            if hits.size:
                return prefix + (start + int(hits[0]),)
            return None
        for j in range(start, n - (size - 1 - depth)):
            cj = cols[j]
            hit = descend(j + 1, depth + 1, u1 | cj, u2 | (u1 & cj),
                          prefix + (j,))
            if hit is not None:
                return hit
        return None

    return descend(0, 0, zeros, zeros, ())


def _check_budget(n: int, max_size: int, budget: int):
    total = 0
    for s in range(2, max_size + 1):
        total += comb(n, s)
        if total > budget:
            raise BudgetExceededError(
                f"exhaustive search over subsets of size <= {max_size} of "
                f"{n} columns needs > {budget} subsets")


def stopping_distance(matrix: MappingMatrix, max_d: int | None = None,
                      budget: int = DEFAULT_SUBSET_BUDGET) -> StoppingReport:
    """Exhaustive stopping distance, searched up to max_d (default n).

    Size-1 subsets are never stopping sets because every column has weight
    >= 1, so the search starts at size 2.
    """
    n = matrix.n
    bound = n if max_d is None else min(max_d, n)
    if bound < 1:
        raise ValueError("max_d must be >= 1")
    _check_budget(n, bound, budget)
    cols = _column_words(matrix)
    for size in range(2, bound + 1):
        hit = _find_stopping_of_size(cols, size)
        if hit is not None:
            witness = tuple(j + 1 for j in hit)
            assert is_stopping_set(matrix, witness)
            return StoppingReport("exhaustive", size, witness, bound)
    return StoppingReport("exhaustive", n + 1, None, bound)


def is_d_decodable(matrix: MappingMatrix, d: int,
                   budget: int = DEFAULT_SUBSET_BUDGET):
    """(ok, witness): ok iff no stopping set of size <= d exists."""
    if not 1 <= d <= matrix.n:
        raise ValueError(f"need 1 <= d <= n, got d={d} n={matrix.n}")
    report = stopping_distance(matrix, max_d=d, budget=budget)
    return (not report.found, report.witness)


def is_d_decodable_sampled(matrix: MappingMatrix, d: int, trials: int,
                           seed: int = 0) -> SampledVerdict:
    """Samples uniform subsets of sizes 1..d; a found stopping set refutes.

    A clean run is evidence, not proof: only exhaustive mode certifies.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 1 <= d <= matrix.n:
        raise ValueError(f"need 1 <= d <= n, got d={d} n={matrix.n}")
    n = matrix.n
    cols = _column_words(matrix)
    rng = np.random.default_rng(seed)
    sizes = rng.integers(1, d + 1, size=trials)
    for t in range(trials):
        size = int(sizes[t])
        picks = rng.choice(n, size=size, replace=False)
        sub = cols[picks]
        u1 = np.zeros(cols.shape[1], dtype=np.uint64)
        u2 = np.zeros_like(u1)
        for row in sub:
            u2 |= u1 & row
            u1 |= row
        if not (u1 & ~u2).any():
            witness = tuple(sorted(int(p) + 1 for p in picks))
            return SampledVerdict(False, witness, t + 1, seed)
    return SampledVerdict(True, None, trials, seed)


def is_d_fpf(matrix: MappingMatrix, d: int,
             budget: int = DEFAULT_SUBSET_BUDGET) -> bool:
    """True iff every (d+1)-column submatrix contains all d+1 unit rows.

    Equivalently: in every (d+1)-subset, each column owns a private row (a
    weight-one row of the subset hitting it).  Implies (d+1)-decodability.
    """
    n = matrix.n
    t = d + 1
    if not 1 <= d < n:
        raise ValueError(f"need 1 <= d < n, got d={d} n={n}")
    if comb(n, t) > budget:
        raise BudgetExceededError(f"C({n},{t}) subsets exceed budget {budget}")
    cols = _column_words(matrix)
    zeros = np.zeros(cols.shape[1], dtype=np.uint64)

    def descend(start, depth, u1, u2, prefix):
        if depth == t - 1:
            cand = cols[start:]
            if cand.shape[0] == 0:
                return True
            overlap = u1 & cand
            pure = (u1 | cand) & ~(u2 | overlap)
            ok = (pure & cand).any(axis=1)
            for j in prefix:
                ok &= (pure & cols[j]).any(axis=1)
            return bool(ok.all())
        for j in range(start, n - (t - 1 - depth)):
            cj = cols[j]
            if not descend(j + 1, depth + 1, u1 | cj, u2 | (u1 & cj),
                           prefix + (j,)):
                return False
        return True

    return descend(0, 0, zeros, zeros, ())


def covering_strength_at_least(matrix: MappingMatrix, d: int) -> bool:
    """True iff every d columns exhibit all 2^d binary row patterns.

    Needs 2^d <= m; returns False outright when that fails.  A strength-d
    matrix is d-decodable (each element's indicator pattern row is private).
    """
    if not 1 <= d <= matrix.n:
        raise ValueError(f"need 1 <= d <= n, got d={d} n={matrix.n}")
    if 2 ** d > matrix.m:
        return False
    dense = matrix.materialize().dense.astype(np.int64)
    full = 2 ** d
    for combo in itertools.combinations(range(matrix.n), d):
        packed = np.zeros(matrix.m, dtype=np.int64)
        for j, c in enumerate(combo):
            packed |= dense[:, c] << j
        if len(np.unique(packed)) != full:
            return False
    return True
