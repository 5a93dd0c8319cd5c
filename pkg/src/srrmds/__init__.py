"""Exact service-rate regions of systematic MDS-coded storage.

Build a systematic generator over a prime field, turn its recovery sets into
a labeled hypergraph, and decide which request-rate vectors it can serve:
by exact LP, by closed-form polytopes where they exist, and by constructive
allocation with checkable certificates.
"""

from .alloc import AllocationCertificate, Infeasible, Method, allocate, verify_certificate
from .codes import GeneratorMatrix, GeneratorSpec, build_generator, enumerate_recovery_sets
from .errors import (
    DegenerateWitness,
    InfeasibleDemand,
    InvalidArgument,
    PreconditionFailed,
    SrrError,
    UnsupportedError,
)
from .field import FieldMatrix, PrimeField, format_rational, parse_rational
from .hypergraph import RecoveryHypergraph, build_hypergraph
from .lp import FeasibilitySolver, feasibility, matching_number, vertex_cover_number
from .srr import (
    HPolytope,
    Unsupported,
    achievable_simplex,
    closed_form_polytope,
    matching_simplex,
    max_demand,
    membership,
    vertices_2d3d,
)

__all__ = [
    "AllocationCertificate",
    "DegenerateWitness",
    "FeasibilitySolver",
    "FieldMatrix",
    "GeneratorMatrix",
    "GeneratorSpec",
    "HPolytope",
    "Infeasible",
    "InfeasibleDemand",
    "InvalidArgument",
    "Method",
    "PreconditionFailed",
    "PrimeField",
    "RecoveryHypergraph",
    "SrrError",
    "Unsupported",
    "UnsupportedError",
    "achievable_simplex",
    "allocate",
    "build_generator",
    "build_hypergraph",
    "closed_form_polytope",
    "enumerate_recovery_sets",
    "feasibility",
    "format_rational",
    "matching_number",
    "matching_simplex",
    "max_demand",
    "membership",
    "parse_rational",
    "vertex_cover_number",
    "verify_certificate",
    "vertices_2d3d",
]
