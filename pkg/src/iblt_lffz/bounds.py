"""Lower bounds on rows and per-construction upper-bound tables."""

from __future__ import annotations

import dataclasses
import math
from math import comb, isqrt

from . import constructions


def _ceil_log2(x: int) -> int:
    """ceil(log2 x) for a positive integer, exact."""
    return (x - 1).bit_length()


def turan_K(s: int) -> int:
    """Minimum edges of an s-vertex graph whose complement is triangle-free
    (complete bipartite complement, as balanced as possible)."""
    if s < 0:
        raise ValueError("need s >= 0")
    h = s // 2
    return 2 * comb(h, 2) + (s % 2) * h


def exact_m_32(n: int) -> int:
    """Exact minimum rows for a weight-2, 3-decodable matrix on n columns.

    Scans m until C(m,2) - turan_K(m) >= n; that count is the largest
    triangle-free edge set, floor(m/2)*ceil(m/2).  The scan always lands on
    ceil(2*sqrt(n)), which is asserted as a cross-check.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    m = 2
    while comb(m, 2) - turan_K(m) < n:
        m += 1
    closed = isqrt(4 * n - 1) + 1
    assert m == closed, (m, closed)
    return m


def _sphere_packing(n: int, d: int) -> int:
    """Redundancy bound: columns of a d-decodable matrix form a code of
    distance >= d+1, so m >= ceil(log2 sum_{i<=floor(d/2)} C(n,i))."""
    radius = d // 2
    total = sum(comb(n, i) for i in range(radius + 1))
    return _ceil_log2(total)


def lower_bound(n: int, d: int):
    """(value, tag): a proven lower bound on rows for any d-decodable matrix
    over n columns.  Exact for d in {1, 2}, d = n, and the Plotkin regime
    d < n < 1.5(d+1)."""
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d} n={n}")
    if d == 1:
        return 1, "exact-d1"
    if d == n:
        return n, "exact-identity"
    if d == 2:
        return n.bit_length(), "exact-log"
    if 2 * n < 3 * (d + 1):
        return n - 1, "exact-plotkin"
    candidates = [
        (d, "min-size"),
        (n.bit_length(), "log"),
        (_sphere_packing(n, d), "sphere-packing"),
    ]
    return max(candidates)


def lower_bound_k(n: int, d: int, k: int):
    """(value, tag) when every column must have weight exactly k."""
    if k < 1 or k > n:
        raise ValueError(f"need 1 <= k <= n, got k={k}")
    if k == 1:
        # distinct weight-1 columns are forced once d >= 2
        return (n, "exact-weight1") if d >= 2 else (1, "exact-d1")
    if (d, k) == (3, 2):
        return exact_m_32(n), "exact-turan"
    value, tag = lower_bound(n, d)
    candidates = [(value, tag), (k, "min-weight")]
    if d >= 3 and k == d - 1:
        x = (d - 1) / math.e * (n * d / (d - 1)) ** (1.0 / (d - 1))
        candidates.append((math.ceil(x - 1e-9), "weight-d-minus-1"))
    return max(candidates)


@dataclasses.dataclass(frozen=True)
class UpperEntry:
    rows: int
    k: int | None
    constructive: bool  # False for formula-only table entries


@dataclasses.dataclass(frozen=True)
class BoundsRow:
    n: int
    d: int
    k: int | None
    lower: int
    lower_tag: str
    entries: dict
    best: str | None

    def best_rows(self) -> int | None:
        return self.entries[self.best].rows if self.best else None


def upper_bound_table(n: int, d: int, k: int | None = None) -> BoundsRow:
    """Row counts every applicable construction achieves at (n, d[, k]).

    With k given, only exact-weight-k families are listed.  Entries with
    constructive=False quote a known size without a construction here
    (simplex at d=(n-1)/2, LS-LDPC at d=5, k=3, and the extended-Hamming
    style 2*ceil(log2 n) - 1 figure at d=3).
    """
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d} n={n}")
    entries: dict[str, UpperEntry] = {}

    def add(name, rows, kk, constructive=True):
        if rows is not None:
            entries[name] = UpperEntry(int(rows), kk, constructive)

    def want(kk):
        return k is None or k == kk

    if d == n:
        if want(1):
            add("identity", n, 1)
    elif k is None:
        add("identity-plus-ones", n - 1, None)
    if d <= 2:
        if k is None:
            add("unique-columns", n.bit_length(), None)
        else:
            add("unique-columns-weight-k",
                constructions._min_m_choose(n, k), k)
    if d >= 2 and n >= 2:
        eghk = len(constructions._egh_primes(n, d))
        if want(eghk):
            add("egh", constructions.rows_egh(n, d), eghk)
        rows = constructions.rows_ols(n, d)
        if rows is not None and want(d):
            add("ols", rows, d)
        carows = constructions.covering_array_rows(n, d)
        if k is None:
            add("covering-array-random", carows, None)
    if d >= 3:
        if k is None:
            add("recursive-a", constructions.rows_recursive_a(n, d), None)
        if k is not None:
            add("recursive-c", constructions.rows_recursive_c(n, d, k), k)
    if d == 3:
        if k is None:
            add("recursive-b", constructions.rows_recursive_b(n), None)
            add("ext-hamming", 2 * max(1, _ceil_log2(n)) - 1, None,
                constructive=False)
        if want(3):
            add("steiner-triple", constructions.rows_steiner_triple(n), 3)
        if want(2):
            add("bipartite-weight2",
                constructions.rows_bipartite_weight2(n), 2)
    if d == 4:
        rows = constructions.rows_bch_complement(n)
        if rows is not None and want(rows // 2):
            add("bch-complement", rows, rows // 2)
    if d in (3, 5, 7):
        rows = constructions.rows_array_code(n, d)
        if rows is not None and want((d + 1) // 2):
            add("array-code", rows, (d + 1) // 2)
    inv = constructions.rows_inversive_plane(n, d)
    if inv is not None and d >= 2:
        rows, kk, _q = inv
        if want(kk):
            add("inversive-plane", rows, kk)
    if d == 5 and want(3):
        v = 1
        while (2 * v + 1) * (3 * v + 1) < n:
            v += 1
        add("ls-ldpc", 6 * v + 3, 3, constructive=False)
    if n >= 3 and (n & (n + 1)) == 0 and d == (n - 1) // 2 and k is None:
        # n = 2^ell - 1 at half distance: simplex-code stopping redundancy
        add("simplex", n - n.bit_length(), None, constructive=False)

    best = None
    for name, entry in sorted(entries.items()):
        if best is None or entry.rows < entries[best].rows:
            best = name
    if k is None:
        low, tag = lower_bound(n, d)
    else:
        low, tag = lower_bound_k(n, d, k)
    return BoundsRow(n, d, k, low, tag, entries, best)
