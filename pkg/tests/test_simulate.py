import random

from hypothesis import given, settings, strategies as st

import iblt_lffz as L
from iblt_lffz.simulate import (run_simulation, sample_subset, trial_rng)


def test_sample_subset_is_uniformish():
    rng = random.Random(0)
    counts = [0] * 10
    for _ in range(5000):
        for u in sample_subset(rng, 10, 3):
            counts[u - 1] += 1
    total = sum(counts)
    assert total == 15000
    for c in counts:
        assert 0.08 < c / total < 0.12  # each element ~1/10 of draws


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 50), st.integers(0, 10 ** 9))
def test_sample_subset_valid(n, seed):
    rng = random.Random(seed)
    size = min(5, n)
    out = sample_subset(rng, n, size)
    assert len(out) == len(set(out)) == size
    assert all(1 <= u <= n for u in out)


def test_trial_streams_distinct():
    a = trial_rng(0, 2, 17).random()
    b = trial_rng(0, 2, 18).random()
    c = trial_rng(0, 3, 17).random()
    d = trial_rng(1, 2, 17).random()
    assert len({a, b, c, d}) == 4
    assert trial_rng(0, 2, 17).random() == a


def test_run_simulation_deterministic():
    mat = L.ols(25, 3)
    r1 = run_simulation(mat, [1, 2], trials=500, seed=4)
    r2 = run_simulation(mat, [1, 2], trials=500, seed=4)
    assert [(r.size, r.successes) for r in r1] == \
        [(r.size, r.successes) for r in r2]


def test_run_simulation_worker_invariant():
    mapping = L.HashedMapping(15, 3, 25, seed=0)
    solo = run_simulation(mapping, [2, 3], trials=400, seed=1, workers=1)
    duo = run_simulation(mapping, [2, 3], trials=400, seed=1, workers=2)
    assert [(r.size, r.successes) for r in solo] == \
        [(r.size, r.successes) for r in duo]


def test_guaranteed_zone_is_perfect():
    mat = L.ols(25, 3)
    for res in run_simulation(mat, [1, 2, 3], trials=2000, seed=0):
        assert res.rate == 1.0


def test_hashed_baseline_fails_sometimes():
    # seed chosen so the n=100 universe has a colliding pair (cf. test_iblt)
    mapping = L.HashedMapping(15, 3, 100, seed=0)
    res = run_simulation(mapping, [2], trials=4000, seed=0)[0]
    assert res.rate < 1.0
