"""Invertible Bloom lookup tables driven by an explicit mapping.

Cells hold (count, xorSum).  Keys are integers 1..n; 0 is reserved so an
empty cell's xorSum is never a valid key.  A cell is peelable when its count
is 1 (plain mode) or +/-1 (signed mode, reached via subtract), the xorSum is
a valid key, and that key's mapping actually covers the cell.
"""

from __future__ import annotations

import dataclasses
import random

from .matrix import MappingMatrix

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class MatrixMapping:
    """Cell assignment read off a mapping matrix column."""

    def __init__(self, matrix: MappingMatrix):
        self.matrix = matrix
        self.m = matrix.m
        self.n = matrix.n
        self._cache: dict[int, tuple] = {}

    def cells(self, u: int) -> tuple:
        rows = self._cache.get(u)
        if rows is None:
            rows = self.matrix.column_rows(u)
            self._cache[u] = rows
        return rows


class HashedMapping:
    """Classic baseline: k subtables of floor(m/k) cells, one seeded hash per
    subtable.  Cells beyond k*floor(m/k) stay unused."""

    def __init__(self, m: int, k: int, n: int, seed: int = 0):
        if k < 1 or m < k:
            raise ValueError(f"need 1 <= k <= m, got k={k} m={m}")
        self.m, self.k, self.n, self.seed = m, k, n, seed
        self.subtable = m // k
        self.unused_cells = m - k * self.subtable
        self._cache: dict[int, tuple] = {}

    def cells(self, u: int) -> tuple:
        rows = self._cache.get(u)
        if rows is None:
            base = _splitmix64(self.seed)
            rows = tuple(
                j * self.subtable
                + _splitmix64(base ^ _splitmix64((j << 32) | 1) ^ u)
                % self.subtable
                for j in range(self.k))
            self._cache[u] = rows
        return rows


@dataclasses.dataclass
class ListingOutcome:
    success: bool
    positive: set
    negative: set
    residual: list  # (cell index, count, xorSum) for cells left non-empty


def peel(mapping, counts: list, xors: list, *, signed: bool = False,
         policy: str = "first", rng: random.Random | None = None):
    """Run peeling to completion on a cell state (mutated in place).

    policy orders the peelable cells tried at each step: "first" prefers the
    lowest cell index, "random" shuffles via rng.  Returns a ListingOutcome.

    In signed mode a count of +/-1 can mask several keys whose xor happens
    to spell another valid key for that cell.  Greedily peeling such a cell
    can strand or cycle the decode even when a correct order exists, so the
    peel is a depth-first search over cell choices: a branch that dead-ends
    or revisits a state is abandoned and the next candidate tried.  Whenever
    some sequence of genuinely pure cells empties the table (always, for at
    most d keys on a d-decodable matrix), the search finds one.
    """
    m, n = mapping.m, mapping.n
    ok_counts = (1, -1) if signed else (1,)

    def pure_cells(cnt, xo):
        found = []
        for c in range(m):
            sign = cnt[c]
            if sign not in ok_counts:
                continue
            u = xo[c]
            # reject counts reached by coincidence (multiset, foreign keys)
            if 1 <= u <= n and c in mapping.cells(u):
                found.append((u, sign))
        if policy == "random" and rng is not None:
            rng.shuffle(found)
        return found

    start_cnt, start_xo = list(counts), list(xors)
    visited = {(tuple(start_cnt), tuple(start_xo))}
    frames = [(start_cnt, start_xo,
               pure_cells(start_cnt, start_xo), set(), set())]
    dead_end = None
    budget = max(4096, 4 * (m + n))
    while frames and budget:
        cnt, xo, cand, pos, neg = frames[-1]
        if not any(cnt) and not any(xo):
            counts[:], xors[:] = cnt, xo
            return ListingOutcome(True, pos, neg, [])
        if not cand:
            if dead_end is None:
                dead_end = (cnt, xo, pos, neg)
            frames.pop()
            continue
        u, sign = cand.pop(0)
        budget -= 1
        ncnt, nxo = cnt[:], xo[:]
        for cell in mapping.cells(u):
            ncnt[cell] -= sign
            nxo[cell] ^= u
        key = (tuple(ncnt), tuple(nxo))
        if key in visited:
            continue
        visited.add(key)
        npos, nneg = set(pos), set(neg)
        if sign > 0:
            if u in nneg:
                nneg.discard(u)
            else:
                npos.add(u)
        else:
            if u in npos:
                npos.discard(u)
            else:
                nneg.add(u)
        frames.append((ncnt, nxo, pure_cells(ncnt, nxo), npos, nneg))
    if dead_end is None:
        # budget exhausted mid-search; report the deepest live state
        cnt, xo, _, pos, neg = frames[-1]
        dead_end = (cnt, xo, pos, neg)
    cnt, xo, pos, neg = dead_end
    counts[:], xors[:] = cnt, xo
    residual = [(c, cnt[c], xo[c]) for c in range(m)
                if cnt[c] != 0 or xo[c] != 0]
    return ListingOutcome(False, pos, neg, residual)


class Iblt:
    """A table of m (count, xorSum) cells over a fixed mapping."""

    def __init__(self, mapping, signed: bool = False):
        self.mapping = mapping
        self.signed = signed
        self.counts = [0] * mapping.m
        self.xors = [0] * mapping.m

    @classmethod
    def for_matrix(cls, matrix: MappingMatrix, signed: bool = False) -> "Iblt":
        return cls(MatrixMapping(matrix), signed=signed)

    def _check_key(self, u: int):
        if not 1 <= u <= self.mapping.n:
            raise ValueError(f"key {u} outside 1..{self.mapping.n}")

    def insert(self, u: int):
        self._check_key(u)
        for c in self.mapping.cells(u):
            self.counts[c] += 1
            self.xors[c] ^= u

    def delete(self, u: int):
        self._check_key(u)
        for c in self.mapping.cells(u):
            self.counts[c] -= 1
            self.xors[c] ^= u

    def insert_all(self, keys):
        for u in keys:
            self.insert(u)

    def subtract(self, other: "Iblt") -> "Iblt":
        """Cellwise difference; listing it yields A \\ B as positive keys and
        B \\ A as negative ones."""
        if (self.mapping.m, self.mapping.n) != (other.mapping.m,
                                                other.mapping.n):
            raise ValueError("subtract requires identically mapped tables")
        out = Iblt(self.mapping, signed=True)
        out.counts = [a - b for a, b in zip(self.counts, other.counts)]
        out.xors = [a ^ b for a, b in zip(self.xors, other.xors)]
        return out

    def list_entries(self, policy: str = "first",
                     rng: random.Random | None = None) -> ListingOutcome:
        """Peel a copy of the current state; the table itself is unchanged."""
        return peel(self.mapping, list(self.counts), list(self.xors),
                    signed=self.signed, policy=policy, rng=rng)


def hashed_iblt(m: int, k: int, n: int, seed: int = 0) -> Iblt:
    return Iblt(HashedMapping(m, k, n, seed))
