"""Index bookkeeping for embedded contact homology with Legendrian boundary.

Exact Conley-Zehnder terms, ECH partitions, braid writhe and linking,
discretized asymptotic operators, ECH/Fredholm index checks, and
verification of user-supplied chain complexes over F2 and F2[t].
"""

from ._jit import JIT_ENABLED
from .core import (
    EMPTY,
    ChordDescriptor,
    Elliptic,
    HalfInt,
    NegativeHyperbolic,
    OrbitChordSet,
    OrbitDescriptor,
    PositiveHyperbolic,
    ReebDatum,
    TrivializationOffset,
)
from .errors import EchKitError, NumericError, PreconditionError

__version__ = "0.1.0"

__all__ = [
    "EMPTY",
    "JIT_ENABLED",
    "ChordDescriptor",
    "EchKitError",
    "Elliptic",
    "HalfInt",
    "NegativeHyperbolic",
    "NumericError",
    "OrbitChordSet",
    "OrbitDescriptor",
    "PositiveHyperbolic",
    "PreconditionError",
    "ReebDatum",
    "TrivializationOffset",
    "__version__",
]
