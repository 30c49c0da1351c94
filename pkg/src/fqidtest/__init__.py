"""Exact polynomial identity testing on finite algebras over small finite fields."""

from __future__ import annotations

__version__ = "0.1.0"

from .algebra import (
    Algebra,
    Ideal,
    builtin,
    enumerate_ideals,
    field_as_algebra,
    heisenberg,
    ideal_generated,
    load_algebra,
    matrix_algebra,
    nilpotency_index,
    quotient,
    restrict,
    save_algebra,
    strictly_upper_triangular_lie,
    truncated,
    upper_triangular,
)
from .bound import (
    exhaustive_min,
    extremal_poly,
    floor_fraction,
    minimize_sequences,
)
from .commpoly import CommPoly, parse_comm, symbolic_coordinates
from .freepoly import Flavor, FreePoly, engel, parse, power_word
from .gf import Field, field_of_order
from .idtest import (
    BlockReport,
    CosetWitness,
    DescentCertificate,
    EvalReport,
    NagataHigmanReport,
    block_statistics,
    coset_identity_search,
    dixon_verdict,
    engel_report,
    evaluate,
    functional_zero_fraction,
    multilinear_descent,
    nagata_higman_check,
    zero_probability,
)

__all__ = [
    "Algebra",
    "BlockReport",
    "CommPoly",
    "CosetWitness",
    "DescentCertificate",
    "EvalReport",
    "Field",
    "Flavor",
    "FreePoly",
    "Ideal",
    "NagataHigmanReport",
    "__version__",
    "block_statistics",
    "builtin",
    "coset_identity_search",
    "dixon_verdict",
    "engel",
    "engel_report",
    "enumerate_ideals",
    "evaluate",
    "exhaustive_min",
    "extremal_poly",
    "field_as_algebra",
    "field_of_order",
    "floor_fraction",
    "functional_zero_fraction",
    "heisenberg",
    "ideal_generated",
    "load_algebra",
    "matrix_algebra",
    "minimize_sequences",
    "multilinear_descent",
    "nagata_higman_check",
    "nilpotency_index",
    "parse",
    "parse_comm",
    "power_word",
    "quotient",
    "restrict",
    "save_algebra",
    "strictly_upper_triangular_lie",
    "symbolic_coordinates",
    "truncated",
    "upper_triangular",
    "zero_probability",
]
