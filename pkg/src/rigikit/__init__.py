"""Generic rigidity matroids, k-fold circuits and their principal partitions."""

from .ffield import PRIME, FieldMatrix, FieldScalar, RationalMatrix, field_rank, rational_rank
from .graphs import Graph, edge
from .rigidity import (
    DEFAULT_SEED,
    GenericConfiguration,
    PreconditionError,
    RankOracle,
    bridges,
    graphic_rank,
    is_circuit,
    is_independent,
    is_minimally_rigid,
    is_rigid,
    rank_d,
    rigidity_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "PRIME", "FieldMatrix", "FieldScalar", "RationalMatrix", "field_rank", "rational_rank",
    "Graph", "edge", "DEFAULT_SEED", "GenericConfiguration", "PreconditionError", "RankOracle",
    "bridges", "graphic_rank", "is_circuit", "is_independent", "is_minimally_rigid", "is_rigid",
    "rank_d", "rigidity_matrix", "__version__",
]
