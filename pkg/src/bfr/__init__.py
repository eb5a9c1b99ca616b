"""Storage codes that survive whole-block failures.

Subpackages cover exact finite-field arithmetic, classical MDS and
rank-metric codes, product-matrix regenerating codes, combinatorial
designs, block-placement constructions with repair-bandwidth metering,
locality layers, file-size bounds with a min-cut oracle, and a CLI.
"""

from .errors import (
    BfrError,
    CorruptionError,
    EnumerationGuardError,
    FieldMismatchError,
    ParameterError,
    RankErasureError,
    SingularMatrixError,
    UnrecoverableErasureError,
)

__all__ = [
    "BfrError",
    "CorruptionError",
    "EnumerationGuardError",
    "FieldMismatchError",
    "ParameterError",
    "RankErasureError",
    "SingularMatrixError",
    "UnrecoverableErasureError",
]
