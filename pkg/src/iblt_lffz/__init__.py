"""Explicitly constructed IBLT mapping matrices with guaranteed listing.

A matrix is d-decodable when peeling recovers every set of at most d
elements; equivalently its stopping distance exceeds d.  This package builds
such matrices, certifies them with exhaustive and sampled oracles, tabulates
lower bounds, and runs IBLT insert/delete/subtract/list on top of them.
"""

from .matrix import (BudgetExceededError, ConstructionSpec, MappingMatrix,
                     MatrixError, MatrixFormatError, read_matrix,
                     write_matrix)
from .oracle import (StoppingReport, SampledVerdict, covering_strength_at_least,
                     is_d_decodable, is_d_decodable_sampled, is_d_fpf,
                     is_stopping_set, stopping_distance)
from .constructions import (CATALOG, array_code, bch_complement,
                            bipartite_weight2, build, covering_array_random,
                            egh, identity_family, inversive_plane, ols,
                            recursive_a, recursive_b, recursive_b_cols,
                            recursive_c, steiner_triple, unique_columns,
                            unique_columns_weight_k)
from .bounds import (BoundsRow, exact_m_32, lower_bound, lower_bound_k,
                     turan_K, upper_bound_table)
from .iblt import (HashedMapping, Iblt, ListingOutcome, MatrixMapping,
                   hashed_iblt)
from .simulate import run_simulation, sample_subset

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError", "ConstructionSpec", "MappingMatrix", "MatrixError",
    "MatrixFormatError", "read_matrix", "write_matrix",
    "StoppingReport", "SampledVerdict", "covering_strength_at_least",
    "is_d_decodable", "is_d_decodable_sampled", "is_d_fpf",
    "is_stopping_set", "stopping_distance",
    "CATALOG", "array_code", "bch_complement", "bipartite_weight2", "build",
    "covering_array_random", "egh", "identity_family", "inversive_plane",
    "ols", "recursive_a", "recursive_b", "recursive_b_cols", "recursive_c",
    "steiner_triple", "unique_columns", "unique_columns_weight_k",
    "BoundsRow", "exact_m_32", "lower_bound", "lower_bound_k", "turan_K",
    "upper_bound_table",
    "HashedMapping", "Iblt", "ListingOutcome", "MatrixMapping", "hashed_iblt",
    "run_simulation", "sample_subset",
    "__version__",
]
