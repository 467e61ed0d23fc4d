"""Exact verification of Euclidean designs on concentric spheres, their
coherent-configuration structure, and feasibility computations for tight
4-designs on two spheres."""

from __future__ import annotations

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .coherent import IntersectionTensor, build_relations, intersection_tensor, scheme_matrices
from .designs import Design, DesignError, read_design, verify_design, write_design
from .families import (family_n2, family_nontight, family_tight, lift_euclidean, schlafli_design,
                       split_spherical)
from .feasibility import alpha1_zero_classify, diophantine_scan, search_tight
from .scalar import Approx, InexactError, Quad, Scalar, format_scalar, parse_scalar
from .two_sphere import TwoSphereParams, closed_form_tensor, nine_equation_residuals

__all__ = [
    "KERNEL_BACKEND", "Approx", "Design", "DesignError", "InexactError", "IntersectionTensor", "Quad",
    "Scalar", "TwoSphereParams", "alpha1_zero_classify", "build_relations", "closed_form_tensor",
    "diophantine_scan", "family_n2", "family_nontight", "family_tight", "format_scalar",
    "intersection_tensor", "lift_euclidean", "nine_equation_residuals", "parse_scalar",
    "read_design", "schlafli_design", "scheme_matrices", "search_tight", "split_spherical",
    "verify_design", "write_design",
]
