"""Exact mod-p wedge powers of cotangent complexes of graded hypersurface
singularities, and the conjugate-filtration dimension tables they feed."""

from .conjugate import (
    ConjugateReport,
    InfiniteGenerationCertificate,
    License,
    SplittingLicense,
    crys_dimensions,
    infinite_generation_certificate,
    low_degree_check,
    splitting_license,
    weight_overlap,
)
from .cotangent import (
    closed_form_wedge,
    lemma21_flags,
    special_fiber_dims,
    wedge_cohomology,
    wedge_complex,
)
from .fieldlin import FpMatrix, kernel_dim, rank
from .komplex import CohomologyTable, GradedFreeComplex, cohomology_table, complex_check, koszul
from .polyring import (
    HilbertTable,
    HypersurfaceRing,
    MultiPoly,
    euler_identity_check,
    jacobian_profile,
    parse_poly,
    partials,
    quotient_hilbert,
)

__version__ = "0.1.0"

__all__ = [
    "CohomologyTable",
    "ConjugateReport",
    "FpMatrix",
    "GradedFreeComplex",
    "HilbertTable",
    "HypersurfaceRing",
    "InfiniteGenerationCertificate",
    "License",
    "MultiPoly",
    "SplittingLicense",
    "closed_form_wedge",
    "cohomology_table",
    "complex_check",
    "crys_dimensions",
    "euler_identity_check",
    "infinite_generation_certificate",
    "jacobian_profile",
    "kernel_dim",
    "koszul",
    "lemma21_flags",
    "low_degree_check",
    "parse_poly",
    "partials",
    "quotient_hilbert",
    "rank",
    "special_fiber_dims",
    "splitting_license",
    "wedge_cohomology",
    "wedge_complex",
    "weight_overlap",
]
