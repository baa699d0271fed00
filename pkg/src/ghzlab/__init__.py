"""Numerical verification of generalized GHZ nonlocality for N qudits of dimension d."""

__version__ = "0.1.0"

from ._limits import (  # noqa: E402
    ConstructionError,
    DimensionOverflowError,
    GhzLabError,
    ParameterError,
)
from .dimensionality import closed_form_overlap, genuineness_report, overlap_matrix  # noqa: E402
from .ghz import GhzSpec, build_ghz, joint_distribution, sample_outcomes, verify_concurrency  # noqa: E402
from .lhv import build_constraints, exhaustive_search, gcd_criterion, verify_assignment  # noqa: E402
from .observables import build_qft, build_x, build_y, build_z, concurrent_set  # noqa: E402

__all__ = [
    "__version__",
    "GhzLabError",
    "ParameterError",
    "DimensionOverflowError",
    "ConstructionError",
    "GhzSpec",
    "build_ghz",
    "build_x",
    "build_y",
    "build_z",
    "build_qft",
    "concurrent_set",
    "verify_concurrency",
    "joint_distribution",
    "sample_outcomes",
    "build_constraints",
    "exhaustive_search",
    "gcd_criterion",
    "verify_assignment",
    "overlap_matrix",
    "closed_form_overlap",
    "genuineness_report",
]
