"""Spans of polar Grassmannians over exact fields: enumeration, predicted dimensions,
spanning-set certificates and lifting of embeddings along quotients."""

from .fields import QQ, make_field, parse_field
from .forms import (build_alternating, build_hermitian, build_quadratic_even,
                    build_quadratic_odd, polarize, radical, witt_params_bruteforce)
from .exterior import SpanAccumulator, WedgeVector, plucker, wedge
from .linalg import Subspace, canonical_subspace
from .polar import decomposition_verify, embedding_span, enumerate_lines, enumerate_points, span_compare
from .spanning import predicted_dim, symplectic_genset, verify_genset
from .certificates import (certificate_hermitian, certificate_quadratic_even,
                           certificate_quadratic_odd, certify_all, verify_certificate)

from .extension import extend_normalize_even, extend_normalize_odd
from .lifting import lift_embedding, lift_vector, nucleus_fixture, validate_quotient

__version__ = "0.1.0"

__all__ = [
    "QQ", "make_field", "parse_field",
    "build_alternating", "build_hermitian", "build_quadratic_even", "build_quadratic_odd",
    "polarize", "radical", "witt_params_bruteforce",
    "SpanAccumulator", "WedgeVector", "plucker", "wedge",
    "Subspace", "canonical_subspace",
    "decomposition_verify", "embedding_span", "enumerate_lines", "enumerate_points", "span_compare",
    "predicted_dim", "symplectic_genset", "verify_genset",
    "certificate_hermitian", "certificate_quadratic_even", "certificate_quadratic_odd",
    "certify_all", "verify_certificate",
    "extend_normalize_even", "extend_normalize_odd",
    "lift_embedding", "lift_vector", "nucleus_fixture", "validate_quotient",
]
