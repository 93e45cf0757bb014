"""Binary mapping matrices: dense storage, lazily generated columns, text I/O.

A mapping matrix assigns each universe element (column, addressed 1..n) to the
set of table cells (rows) it touches.  Every column must have weight >= 1.
"""

from __future__ import annotations

import dataclasses

import numpy as np

# Cap on m*n bits when materializing a generated matrix.
DEFAULT_MATERIALIZE_BUDGET = 1 << 28


class MatrixError(ValueError):
    pass


class MatrixFormatError(MatrixError):
    """Raised for malformed matrix files."""


class BudgetExceededError(MatrixError):
    """Raised when an operation would exceed its configured budget."""


@dataclasses.dataclass(frozen=True)
class ConstructionSpec:
    """Parameters that fully determine a constructed matrix.

    `extras` is a sorted tuple of (key, value) pairs so specs stay hashable.
    """

    kind: str
    n: int
    d: int | None = None
    k: int | None = None
    extras: tuple = ()

    @staticmethod
    def make(kind, n, d=None, k=None, **extras):
        return ConstructionSpec(kind, n, d, k, tuple(sorted(extras.items())))

    @property
    def extras_dict(self) -> dict:
        return dict(self.extras)

    def describe(self) -> str:
        parts = [f"kind={self.kind}", f"n={self.n}"]
        if self.d is not None:
            parts.append(f"d={self.d}")
        if self.k is not None:
            parts.append(f"k={self.k}")
        parts.extend(f"{key}={val}" for key, val in self.extras)
        return " ".join(parts)


class MappingMatrix:
    """An m x n 0/1 matrix, columns addressed 1..n.

    Backed either by a dense uint8 array or by a pure column function
    (1-based index -> uint8 vector of length m).  Immutable by convention.
    """

    def __init__(self, m: int, n: int, *, dense: np.ndarray | None = None,
                 column_fn=None, spec: ConstructionSpec | None = None,
                 validate: bool = True):
        if m < 1 or n < 1:
            raise MatrixError(f"need m >= 1 and n >= 1, got m={m} n={n}")
        if (dense is None) == (column_fn is None):
            raise MatrixError("exactly one of dense / column_fn required")
        self.m = m
        self.n = n
        self.spec = spec
        self._column_fn = column_fn
        if dense is not None:
            dense = np.ascontiguousarray(dense, dtype=np.uint8)
            if dense.shape != (m, n):
                raise MatrixError(f"dense shape {dense.shape} != ({m}, {n})")
            if validate and (dense > 1).any():
                raise MatrixError("matrix entries must be 0 or 1")
            if validate:
                weights = dense.sum(axis=0)
                if (weights == 0).any():
                    bad = int(np.flatnonzero(weights == 0)[0]) + 1
                    raise MatrixError(f"column {bad} is all-zero")
        self._dense = dense

    @classmethod
    def from_dense(cls, bits, spec=None) -> "MappingMatrix":
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 2:
            raise MatrixError("expected a 2-D array")
        return cls(bits.shape[0], bits.shape[1], dense=bits, spec=spec)

    @classmethod
    def from_generator(cls, m, n, column_fn, spec=None) -> "MappingMatrix":
        return cls(m, n, column_fn=column_fn, spec=spec)

    @property
    def is_dense(self) -> bool:
        return self._dense is not None

    @property
    def dense(self) -> np.ndarray:
        if self._dense is None:
            raise MatrixError("matrix is generator-backed; materialize() first")
        return self._dense

    def _check_index(self, i: int):
        if not 1 <= i <= self.n:
            raise MatrixError(f"column index {i} outside 1..{self.n}")

    def column(self, i: int) -> np.ndarray:
        """Column i (1-based) as a uint8 vector of length m."""
        self._check_index(i)
        if self._dense is not None:
            return self._dense[:, i - 1].copy()
        col = np.asarray(self._column_fn(i), dtype=np.uint8)
        if col.shape != (self.m,):
            raise MatrixError(f"column_fn returned shape {col.shape}")
        return col

    def column_rows(self, i: int) -> tuple:
        """0-based row indices of the ones in column i."""
        return tuple(int(r) for r in np.flatnonzero(self.column(i)))

    def materialize(self, budget: int = DEFAULT_MATERIALIZE_BUDGET) -> "MappingMatrix":
        """Dense copy of this matrix (self if already dense)."""
        if self._dense is not None:
            return self
        if self.m * self.n > budget:
            raise BudgetExceededError(
                f"materializing {self.m}x{self.n} exceeds budget {budget}")
        out = np.empty((self.m, self.n), dtype=np.uint8)
        for i in range(1, self.n + 1):
            out[:, i - 1] = self.column(i)
        return MappingMatrix(self.m, self.n, dense=out, spec=self.spec)

    def counter_array(self, subset) -> np.ndarray:
        """Column sum over a subset of 1-based indices: entry r counts the
        subset columns with a one in row r."""
        counts = np.zeros(self.m, dtype=np.int64)
        seen = set()
        for i in subset:
            if i in seen:
                raise MatrixError(f"duplicate element {i} in subset")
            seen.add(i)
            counts += self.column(i)
        return counts

    def submatrix_columns(self, subset) -> np.ndarray:
        cols = sorted(subset)
        out = np.empty((self.m, len(cols)), dtype=np.uint8)
        for j, i in enumerate(cols):
            out[:, j] = self.column(i)
        return out

    def __repr__(self):
        kind = self.spec.kind if self.spec is not None else (
            "dense" if self.is_dense else "generator")
        return f"MappingMatrix(m={self.m}, n={self.n}, {kind})"


def write_matrix(matrix: MappingMatrix, path, fmt: str = "dense",
                 comments=()) -> None:
    """Write a matrix file.

    Header line: ``IBLTMATRIX v1 <m> <n> <dense|sparse>``.  Dense body: m lines
    of n characters from {0,1}.  Sparse body: n lines, one per column, of
    strictly increasing 1-based row indices.  Lines starting with '#' are
    comments and may appear anywhere after the header.
    """
    if fmt not in ("dense", "sparse"):
        raise MatrixFormatError(f"unknown format {fmt!r}")
    mat = matrix.materialize()
    lines = [f"IBLTMATRIX v1 {mat.m} {mat.n} {fmt}"]
    for comment in comments:
        lines.append(f"# {comment}")
    if matrix.spec is not None:
        lines.append(f"# construction: {matrix.spec.describe()}")
    if fmt == "dense":
        for r in range(mat.m):
            lines.append("".join("1" if v else "0" for v in mat.dense[r]))
    else:
        for i in range(1, mat.n + 1):
            lines.append(" ".join(str(r + 1) for r in mat.column_rows(i)))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_matrix(path) -> MappingMatrix:
    """Parse a matrix file written by write_matrix.  Dense-backed result."""
    with open(path) as fh:
        raw = fh.read().splitlines()
    if not raw:
        raise MatrixFormatError("empty file")
    header = raw[0].split()
    if len(header) != 5 or header[0] != "IBLTMATRIX" or header[1] != "v1":
        raise MatrixFormatError(f"bad header line: {raw[0]!r}")
    try:
        m, n = int(header[2]), int(header[3])
    except ValueError:
        raise MatrixFormatError(f"bad dimensions in header: {raw[0]!r}")
    fmt = header[4]
    if fmt not in ("dense", "sparse"):
        raise MatrixFormatError(f"unknown format {fmt!r} in header")
    if m < 1 or n < 1:
        raise MatrixFormatError(f"bad dimensions m={m} n={n}")
    body = [ln for ln in raw[1:] if not ln.startswith("#")]
    bits = np.zeros((m, n), dtype=np.uint8)
    if fmt == "dense":
        if len(body) != m:
            raise MatrixFormatError(f"expected {m} rows, found {len(body)}")
        for r, line in enumerate(body):
            line = line.strip()
            if len(line) != n or set(line) - {"0", "1"}:
                raise MatrixFormatError(f"bad dense row {r + 1}: {line!r}")
            bits[r] = [c == "1" for c in line]
    else:
        if len(body) != n:
            raise MatrixFormatError(f"expected {n} columns, found {len(body)}")
        for c, line in enumerate(body):
            try:
                rows = [int(tok) for tok in line.split()]
            except ValueError:
                raise MatrixFormatError(f"bad sparse column {c + 1}: {line!r}")
            if not rows:
                raise MatrixFormatError(f"column {c + 1} is all-zero")
            if rows != sorted(set(rows)):
                raise MatrixFormatError(
                    f"column {c + 1} rows not strictly increasing: {line!r}")
            if rows[0] < 1 or rows[-1] > m:
                raise MatrixFormatError(
                    f"column {c + 1} row index outside 1..{m}")
            for r in rows:
                bits[r - 1, c] = 1
    # from_dense re-checks the zero-column invariant for dense bodies
    return MappingMatrix.from_dense(bits)
