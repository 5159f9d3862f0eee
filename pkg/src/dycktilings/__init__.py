"""Exact combinatorics of Dyck tilings.

Laurent polynomial arithmetic in q and (p, q), Dyck path and tiling
enumeration, the history and matching bijections, weighted region sums
with three independent computation routes, and the verification suites
that tie them together.  The HTTP service in `service` and the CLI in
`cli` expose the same operations.
"""

from .errors import CapacityError, DivisibilityError, DomainError
from .qpoly import PQPoly, QPoly

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "DivisibilityError",
    "DomainError",
    "PQPoly",
    "QPoly",
    "__version__",
]
