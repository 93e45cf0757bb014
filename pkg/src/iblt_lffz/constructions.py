"""Explicit d-decodable mapping matrices.

Each constructor returns a MappingMatrix (generator-backed unless noted) whose
columns can be served lazily, plus a ConstructionSpec recording how it was
built.  rows_* helpers report row counts without materializing anything, for
bound tables over large n.
"""

from __future__ import annotations

import functools
from math import ceil, comb, isqrt, log2

import numpy as np

from . import fields
from .matrix import ConstructionSpec, MappingMatrix


def _vec(m, rows):
    v = np.zeros(m, dtype=np.uint8)
    v[list(rows)] = 1
    return v


def _gen(m, n, col_rows_fn, spec):
    return MappingMatrix.from_generator(
        m, n, lambda i: _vec(m, col_rows_fn(i)), spec=spec)


# ---------------------------------------------------------------------------
# trivial families

def identity_family(n: int, d: int) -> MappingMatrix:
    """I_n when d = n; [I_{n-1} | all-ones] when d < n.

    The second form is n x (n-1)... rather (n-1) x n: n-1 unit columns plus a
    final all-ones column.  It decodes any proper subset, so any d < n.
    """
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d} n={n}")
    if d == n:
        spec = ConstructionSpec.make("identity", n, d)
        return _gen(n, n, lambda i: [i - 1], spec)
    spec = ConstructionSpec.make("identity-plus-ones", n, d)
    m = n - 1

    def col(i):
        return [i - 1] if i < n else list(range(m))

    return _gen(m, n, col, spec)


def unique_columns(n: int) -> MappingMatrix:
    """Columns are the binary encodings of 1..n (row 1 is the MSB); the
    minimum-row 2-decodable matrix with m = ceil(log2(n+1))."""
    if n < 1:
        raise ValueError("need n >= 1")
    m = n.bit_length()  # = ceil(log2(n+1))
    spec = ConstructionSpec.make("unique-columns", n, 2)

    def col(i):
        return [t for t in range(m) if (i >> (m - 1 - t)) & 1]

    return _gen(m, n, col, spec)


def _colex_unrank(idx0: int, k: int) -> list:
    """idx0-th (from 0) weight-k subset in colexicographic order, as an
    ascending list of 0-based positions."""
    out = []
    rem = idx0
    for kk in range(k, 0, -1):
        c = kk - 1
        while comb(c + 1, kk) <= rem:
            c += 1
        rem -= comb(c, kk)
        out.append(c)
    return out[::-1]


def _min_m_choose(n: int, k: int) -> int:
    m = k
    while comb(m, k) < n:
        m += 1
    return m


def unique_columns_weight_k(n: int, k: int) -> MappingMatrix:
    """First n weight-k columns in colex order; 2-decodable, column weight k."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    m = _min_m_choose(n, k)
    spec = ConstructionSpec.make("unique-columns-weight-k", n, 2, k)
    return _gen(m, n, lambda i: _colex_unrank(i - 1, k), spec)


# ---------------------------------------------------------------------------
# EGH (prime residue blocks)

def _egh_primes(n: int, d: int) -> list:
    """k smallest primes whose product reaches n^(d-1), exact arithmetic."""
    target = n ** (d - 1)
    qs, prod = [], 1
    gen = fields.primes()
    while prod < target or not qs:
        q = next(gen)
        qs.append(q)
        prod *= q
    return qs


def egh(n: int, d: int) -> MappingMatrix:
    """One block of q rows per prime q; element u hits row u mod q.

    Product over the primes >= n^(d-1) makes it (d-1)-FPF, hence d-decodable.
    """
    if n < 2 or d < 1:
        raise ValueError(f"need n >= 2 and d >= 1, got n={n} d={d}")
    qs = _egh_primes(n, d)
    offsets = np.concatenate(([0], np.cumsum(qs)))
    m = int(offsets[-1])
    spec = ConstructionSpec.make("egh", n, d, len(qs), primes=tuple(qs))

    def col(u):
        return [int(offsets[j]) + u % q for j, q in enumerate(qs)]

    return _gen(m, n, col, spec)


# ---------------------------------------------------------------------------
# orthogonal-Latin-square family

def _ols_q(n: int) -> int:
    q = fields.next_prime_at_least(max(2, isqrt(max(n - 1, 0)) + 1))
    while q * q < n:
        q = fields.next_prime_at_least(q + 1)
    return q


def ols(n: int, d: int) -> MappingMatrix:
    """d blocks of q rows, q the smallest prime with q^2 >= n.

    Element u = a*q + b + 1 hits row (a + j*b) mod q in block j; the extra
    block (j = q, only when d = q + 1) uses row b.  Two columns share at most
    one row, so column weight d gives a private row in any d-subset.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    q = _ols_q(n)
    if d > q + 1:
        raise ValueError(f"d={d} exceeds q+1={q + 1} for n={n}")
    m = d * q
    spec = ConstructionSpec.make("ols", n, d, d, q=q)

    def col(u):
        a, b = divmod(u - 1, q)
        return sorted(j * q + (b if j == q else (a + j * b) % q)
                      for j in range(d))

    return _gen(m, n, col, spec)


def array_code(q: int, k: int) -> MappingMatrix:
    """k blocks of q rows over n = q^2 columns, row (a + i*b) mod q in block
    i; (2k-1)-decodable for k in {2,3,4} by the array-LDPC stopping distance.
    """
    if not fields.is_prime(q) or q == 2:
        raise ValueError(f"q={q} must be an odd prime")
    if k not in (2, 3, 4):
        raise ValueError(f"k={k} not in {{2,3,4}}")
    if k > q:
        raise ValueError(f"need k <= q, got k={k} q={q}")
    n, m, d = q * q, k * q, 2 * k - 1
    spec = ConstructionSpec.make("array-code", n, d, k, q=q)

    def col(u):
        a, b = divmod(u - 1, q)
        return [i * q + (a + i * b) % q for i in range(k)]

    return _gen(m, n, col, spec)


# ---------------------------------------------------------------------------
# BCH complement

def bch_complement(ell: int) -> MappingMatrix:
    """Rows are the bit-planes of alpha^i and alpha^{3i} over GF(2^ell) plus
    their complements; m = 4*ell, n = 2^ell - 1, 4-decodable, weight 2*ell."""
    if not 2 <= ell <= 16:
        raise ValueError("need 2 <= ell <= 16")
    field = fields.gf2m(ell)
    n = (1 << ell) - 1
    m = 4 * ell
    spec = ConstructionSpec.make("bch-complement", n, 4, 2 * ell, ell=ell)

    def col(u):
        i = u - 1
        top = field.bits(field.alpha_pow(i)) + field.bits(field.alpha_pow(3 * i))
        return [r for r, b in enumerate(top) if b] + \
               [2 * ell + r for r, b in enumerate(top) if not b]

    return _gen(m, n, col, spec)


# ---------------------------------------------------------------------------
# weight-2 bipartite (optimal for d=3, k=2)

def bipartite_weight2(n: int) -> MappingMatrix:
    """Rows split into two halves; column u is a cross pair.  Cross pairs
    form a bipartite (triangle-free) graph, so 3-decodable; m = ceil(2*sqrt(n))
    meets the exact (d=3, k=2) optimum."""
    if n < 1:
        raise ValueError("need n >= 1")
    m = isqrt(4 * n - 1) + 1  # smallest m with m^2 >= 4n, i.e. ceil(2 sqrt n)
    h1 = m // 2
    h2 = m - h1
    assert h1 * h2 >= n
    spec = ConstructionSpec.make("bipartite-weight2", n, 3, 2)

    def col(u):
        a, b = divmod(u - 1, h2)
        return [a, h1 + b]

    return _gen(m, n, col, spec)


# ---------------------------------------------------------------------------
# Steiner triple systems (Bose construction, m = 3 mod 6)

@functools.lru_cache(maxsize=None)
def _bose_blocks(m: int) -> tuple:
    """All triples of the Bose STS on m = 6t+3 points, rows 0-based.

    Point (x, c) maps to row c*v + x with v = 2t+1.  First the v "vertical"
    triples, then for each class c the mixed triples over pairs i < j.
    """
    t = (m - 3) // 6
    v = 2 * t + 1
    half = t + 1  # inverse of 2 mod v
    blocks = [(x, v + x, 2 * v + x) for x in range(v)]
    for c in range(3):
        nxt = ((c + 1) % 3) * v
        for i in range(v):
            for j in range(i + 1, v):
                blocks.append(tuple(sorted(
                    (c * v + i, c * v + j, nxt + ((i + j) * half) % v))))
    assert len(blocks) == m * (m - 1) // 6
    return tuple(blocks)


def steiner_triple(n: int) -> MappingMatrix:
    """First n triples of the smallest Bose system with enough blocks.

    Any two points lie in exactly one triple, so two columns share at most
    one row and weight 3 yields 3-decodability.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    m = 3
    while m * (m - 1) // 6 < n:
        m += 6
    spec = ConstructionSpec.make("steiner-triple", n, 3, 3, m=m)
    return _gen(m, n, lambda u: list(_bose_blocks(m)[u - 1]), spec)


# ---------------------------------------------------------------------------
# inversive planes S(3, q+1, q^2+1)

@functools.lru_cache(maxsize=None)
def _inversive_blocks(q: int) -> tuple:
    """Circles of the inversive plane of order q, as sorted row tuples.

    Points are GF(q^2) plus infinity (row q^2).  Circles are the images of
    GF(q) + infinity under invertible fractional-linear maps.
    """
    pp = fields.prime_power(q)
    if pp is None:
        raise ValueError(f"q={q} is not a prime power")
    p, e = pp
    field = fields.prime_power_field(p, 2 * e)
    inf = q * q
    base = field.subfield_elements(q) + [inf]
    assert len(base) == q + 1

    def apply(a, b, c, d, x):
        if x == inf:
            if c == 0:
                return inf
            return field.mul(a, field.inv(c))
        den = field.add(field.mul(c, x), d)
        if den == 0:
            return inf
        num = field.add(field.mul(a, x), b)
        return field.mul(num, field.inv(den))

    seen = set()
    for a in range(field.size):
        for b in range(field.size):
            for c in range(field.size):
                for d in range(field.size):
                    det = field.sub(field.mul(a, d), field.mul(b, c))
                    if det == 0:
                        continue
                    seen.add(tuple(sorted(apply(a, b, c, d, x)
                                          for x in base)))
    blocks = sorted(seen)
    assert len(blocks) == q ** 3 + q
    return tuple(blocks)


def inversive_plane(q: int, n: int | None = None) -> MappingMatrix:
    """Blocks of S(3, q+1, q^2+1) as columns: m = q^2 + 1, up to q^3 + q
    columns of weight q+1.  Any three points lie in one circle, so three
    columns share at most two rows and the matrix is ceil((q+1)/2)-decodable.
    """
    total = q ** 3 + q
    if n is None:
        n = total
    if not 1 <= n <= total:
        raise ValueError(f"need 1 <= n <= {total}")
    blocks = _inversive_blocks(q)
    m = q * q + 1
    d = (q + 2) // 2  # ceil((q+1)/2)
    spec = ConstructionSpec.make("inversive-plane", n, d, q + 1, q=q)
    return _gen(m, n, lambda u: list(blocks[u - 1]), spec)


# ---------------------------------------------------------------------------
# recursive constructions: plans

class _Plan:
    rows: int
    cols: int

    def col_rows(self, j: int) -> list:
        raise NotImplementedError


class _Identity(_Plan):
    def __init__(self, n):
        self.rows = self.cols = n

    def col_rows(self, j):
        return [j - 1]


class _IdentityPlusOnes(_Plan):
    def __init__(self, n):
        self.rows, self.cols = n - 1, n

    def col_rows(self, j):
        return [j - 1] if j < self.cols else list(range(self.rows))


class _OnesRows(_Plan):
    def __init__(self, k, n):
        self.rows, self.cols = k, n

    def col_rows(self, j):
        return list(range(self.rows))


class _Unique(_Plan):
    def __init__(self, n):
        self.cols = n
        self.rows = n.bit_length()

    def col_rows(self, j):
        return [t for t in range(self.rows) if (j >> (self.rows - 1 - t)) & 1]


class _UniqueWk(_Plan):
    def __init__(self, n, k):
        self.cols, self.k = n, k
        self.rows = _min_m_choose(n, k)

    def col_rows(self, j):
        return _colex_unrank(j - 1, self.k)


class _IdentityOnes(_Plan):
    """[I_d over k-1 all-ones rows], trimmed to n <= d columns."""

    def __init__(self, n, d, k):
        self.cols, self.d = n, d
        self.rows = d + k - 1

    def col_rows(self, j):
        return [j - 1] + list(range(self.d, self.rows))


class _Split(_Plan):
    """i diagonal copies of `half` stacked over i side-by-side copies of
    `full`, trimmed to n columns."""

    def __init__(self, i, half, full, n):
        self.i, self.half, self.full = i, half, full
        self.cols = n
        self.rows = i * half.rows + full.rows

    def col_rows(self, j):
        w = self.half.cols
        b, inner = divmod(j - 1, w)
        inner += 1
        off = b * self.half.rows
        base = self.i * self.half.rows
        return [off + r for r in self.half.col_rows(inner)] + \
               [base + r for r in self.full.col_rows(inner)]


def _quotient_splits(n):
    """Yields (i, ceil(n/i)) for i = 2..ceil(n/2), one i (the smallest) per
    distinct quotient; row counts within a quotient class grow with i."""
    i = 2
    top = (n + 1) // 2
    while i <= top:
        w = -(-n // i)
        yield i, w
        if w <= 2:
            break
        i = max(i + 1, -(-n // (w - 1)))


@functools.lru_cache(maxsize=None)
def _plan_a(n: int, d: int, force_i: int | None = None) -> _Plan:
    if d == 1:
        return _OnesRows(1, n)
    if d == 2:
        return _Unique(n)
    if n <= d:
        return _Identity(n)
    if force_i is None:
        if 2 * n < 3 * (d + 1):
            return _IdentityPlusOnes(n)
        candidates = _quotient_splits(n)
    else:
        if n == d + 1:
            return _IdentityPlusOnes(n)
        candidates = [(force_i, -(-n // force_i))]
    best = None
    for i, w in candidates:
        half = _plan_a(w, d // 2, force_i)
        full = _plan_a(w, d, force_i)
        rows = i * half.rows + full.rows
        if best is None or rows < best.rows:
            best = _Split(i, half, full, n)
    assert best is not None
    return best


def recursive_a(n: int, d: int, force_i: int | None = None) -> MappingMatrix:
    """Divide-and-conquer d-decodable matrix: split the universe into i
    blocks, give each block a floor(d/2)-decodable matrix on its own rows,
    and stack a shared d-decodable matrix on the block quotient.

    The default minimizes rows over the split arity i at every level;
    force_i pins the arity instead (force_i=2 at d=3 reproduces the
    2*ceil(log2 n) - 1 row count of the doubling recurrence).
    """
    if d < 3:
        raise ValueError("need d >= 3 (see unique_columns for d = 2)")
    if n < 1:
        raise ValueError("need n >= 1")
    if force_i is not None and force_i < 2:
        raise ValueError("force_i must be >= 2")
    plan = _plan_a(n, d, force_i)
    extras = {} if force_i is None else {"force_i": force_i}
    spec = ConstructionSpec.make("recursive-a", n, d, **extras)
    return _gen(plan.rows, n, plan.col_rows, spec)


class _B3(_Plan):
    rows, cols = 3, 4

    def col_rows(self, j):
        return [j - 1] if j <= 3 else [0, 1, 2]


class _B4(_Plan):
    rows, cols = 4, 7
    _inner = _B3()

    def col_rows(self, j):
        if j <= 3:
            return [j]
        return [0] + [1 + r for r in self._inner.col_rows(j - 3)]


class _BSplit(_Plan):
    """i selector rows over i copies of M_{m-i}, with three unit columns on
    the last three rows prepended."""

    def __init__(self, m, i, sub):
        self.rows, self.i, self.sub = m, i, sub
        self.cols = 3 + i * sub.cols

    def col_rows(self, j):
        if j <= 3:
            return [self.rows - 3 + (j - 1)]
        b, inner = divmod(j - 4, self.sub.cols)
        return [b] + [self.i + r for r in self.sub.col_rows(inner + 1)]


@functools.lru_cache(maxsize=None)
def _plan_b(m: int) -> _Plan:
    if m == 3:
        return _B3()
    if m == 4:
        return _B4()
    best_i, best_cols = None, -1
    for i in range(2, m - 2):
        cols = 3 + i * _plan_b(m - i).cols
        if cols > best_cols:
            best_i, best_cols = i, cols
    return _BSplit(m, best_i, _plan_b(m - best_i))


def recursive_b_cols(m: int) -> int:
    """Column capacity of the m-row member of the family."""
    if m < 3:
        raise ValueError("need m >= 3")
    return _plan_b(m).cols


def recursive_b(n: int) -> MappingMatrix:
    """Row-driven 3-decodable family: grow m until capacity covers n, then
    trim.  Capacity grows as 3^(m/3), so m ~ (3/log2 3) log2 n."""
    if n < 1:
        raise ValueError("need n >= 1")
    m = 3
    while _plan_b(m).cols < n:
        m += 1
    plan = _plan_b(m)
    spec = ConstructionSpec.make("recursive-b", n, 3, m=m)
    return _gen(m, n, plan.col_rows, spec)


@functools.lru_cache(maxsize=None)
def _plan_c(n: int, d: int, k: int) -> _Plan | None:
    if k < 1:
        return None
    if d == 1:
        return _OnesRows(k, n)
    if d == 2:
        return _UniqueWk(n, k)
    if n <= d:
        return _IdentityOnes(n, d, k)
    if k == 1:
        return None
    best = None
    for i, w in _quotient_splits(n):
        for k1 in range(1, k):
            half = _plan_c(w, d // 2, k1)
            full = _plan_c(w, d, k - k1)
            if half is None or full is None:
                continue
            rows = i * half.rows + full.rows
            if best is None or rows < best.rows:
                best = _Split(i, half, full, n)
    return best


def recursive_c(n: int, d: int, k: int) -> MappingMatrix:
    """Fixed-column-weight variant of the divide-and-conquer recursion: the
    weight budget k splits as k1 + k2 between the per-block and shared parts.
    Infeasible parameter sets (notably k = 1 with d >= 3 and n > d) raise."""
    if n < 1 or d < 1 or k < 1:
        raise ValueError("need n, d, k >= 1")
    plan = _plan_c(n, d, k)
    if plan is None:
        raise ValueError(f"no weight-{k} matrix for n={n}, d={d}")
    spec = ConstructionSpec.make("recursive-c", n, d, k)
    return _gen(plan.rows, n, plan.col_rows, spec)


# ---------------------------------------------------------------------------
# random covering arrays (oracle-gated)

def covering_array_rows(n: int, d: int) -> int:
    return ceil(d * log2(n) / log2(2 ** d / (2 ** d - 1.0)))


def covering_array_random(n: int, d: int, seed: int = 0,
                          max_retries: int = 32) -> MappingMatrix:
    """Random m x n matrix at the probabilistic covering-array size, accepted
    only after the exhaustive oracle certifies d-decodability.

    Column i of attempt r is drawn from a stream keyed (seed, r, i), so the
    accepted matrix is reproducible from (seed, retry) alone.
    """
    from .oracle import is_d_decodable

    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    m = covering_array_rows(n, d)
    last_witness = None
    for retry in range(max_retries):
        bits = np.empty((m, n), dtype=np.uint8)
        for i in range(n):
            rng = np.random.default_rng([seed, retry, i])
            bits[:, i] = rng.integers(0, 2, size=m, dtype=np.uint8)
        if (bits.sum(axis=0) == 0).any():
            continue
        cand = MappingMatrix.from_dense(bits)
        ok, witness = is_d_decodable(cand, d)
        if ok:
            spec = ConstructionSpec.make("covering-array-random", n, d,
                                         seed=seed, retry=retry)
            return MappingMatrix(m, n, dense=bits, spec=spec)
        last_witness = witness
    raise ValueError(
        f"no d-decodable sample in {max_retries} attempts "
        f"(last stopping set: {last_witness})")


# ---------------------------------------------------------------------------
# dispatcher

def build(spec: ConstructionSpec) -> MappingMatrix:
    """Rebuild a matrix from its spec (used by the CLI and file round-trips)."""
    kind, n, d, k = spec.kind, spec.n, spec.d, spec.k
    ex = spec.extras_dict
    if kind in ("identity", "identity-plus-ones"):
        return identity_family(n, d if d is not None else
                               (n if kind == "identity" else n - 1))
    if kind == "unique-columns":
        return unique_columns(n)
    if kind == "unique-columns-weight-k":
        return unique_columns_weight_k(n, k)
    if kind == "egh":
        return egh(n, d)
    if kind == "ols":
        return ols(n, d)
    if kind == "array-code":
        return array_code(ex["q"], k)
    if kind == "bch-complement":
        return bch_complement(ex["ell"])
    if kind == "bipartite-weight2":
        return bipartite_weight2(n)
    if kind == "steiner-triple":
        return steiner_triple(n)
    if kind == "inversive-plane":
        return inversive_plane(ex["q"], n)
    if kind == "recursive-a":
        return recursive_a(n, d, ex.get("force_i"))
    if kind == "recursive-b":
        return recursive_b(n)
    if kind == "recursive-c":
        return recursive_c(n, d, k)
    if kind == "covering-array-random":
        return covering_array_random(n, d, ex.get("seed", 0),
                                     ex.get("max_retries", 32))
    raise ValueError(f"unknown construction kind {kind!r}")


CATALOG = (
    "identity", "identity-plus-ones", "unique-columns",
    "unique-columns-weight-k", "egh", "ols", "recursive-a", "recursive-b",
    "recursive-c", "steiner-triple", "inversive-plane", "array-code",
    "bch-complement", "bipartite-weight2", "covering-array-random",
)


# ---------------------------------------------------------------------------
# row-count-only helpers (no materialization; used by the bounds tables)

def rows_egh(n: int, d: int) -> int:
    return sum(_egh_primes(n, d))


def rows_ols(n: int, d: int) -> int | None:
    q = _ols_q(n)
    return d * q if d <= q + 1 else None


def rows_recursive_a(n: int, d: int, force_i: int | None = None) -> int:
    return _plan_a(n, d, force_i).rows


def rows_recursive_b(n: int) -> int:
    m = 3
    while _plan_b(m).cols < n:
        m += 1
    return m


def rows_recursive_c(n: int, d: int, k: int) -> int | None:
    plan = _plan_c(n, d, k)
    return None if plan is None else plan.rows


def rows_steiner_triple(n: int) -> int:
    m = 3
    while m * (m - 1) // 6 < n:
        m += 6
    return m


def rows_bipartite_weight2(n: int) -> int:
    return isqrt(4 * n - 1) + 1


def rows_bch_complement(n: int) -> int | None:
    ell = max(2, n.bit_length())
    while (1 << ell) - 1 < n:
        ell += 1
    return 4 * ell if ell <= 16 else None


def rows_array_code(n: int, d: int) -> int | None:
    if d not in (3, 5, 7):
        return None
    k = (d + 1) // 2
    q = fields.next_prime_at_least(max(3, k))
    while q * q < n or q == 2:
        q = fields.next_prime_at_least(q + 1)
    return k * q


def rows_inversive_plane(n: int, d: int):
    """(rows, k, q) for the smallest prime power q covering (n, d), else None."""
    q = 2
    while True:
        while fields.prime_power(q) is None:
            q += 1
        if (q + 2) // 2 >= d and q ** 3 + q >= n:
            return q * q + 1, q + 1, q
        q += 1
        if q > 64:
            return None
