"""Exact Newton-polytope geometry with machine-checkable certificates.

Decides whether the barycenter of the quadratic simplex lies in a support
polytope, emits matching or cover certificates for generic quadratic-form
nondegeneracy, classifies singularity supports as never-Morse or
generically-Morse, and computes Milnor numbers from Newton-diagram
volumes.  All arithmetic is exact.
"""

from .gaussian import GaussianRational
from .kouchnirenko import (
    INFINITE,
    UnboundedRegionError,
    UnderDiagramRegion,
    VolumeVector,
    face_restriction,
    milnor_number,
    under_diagram_region,
    volumes,
)
from .morse import (
    GENERICALLY_MORSE,
    NEVER_MORSE,
    MorseVerdict,
    classify_support,
    genericity_gap_demo,
    is_morse,
    quadratic_restriction,
)
from .poly import (
    ParseError,
    QuadraticForm,
    SparsePolynomial,
    determinant,
    hessian_at_zero,
    monomial,
    parse_polynomial,
    quadratic_part,
)
from .polytope import (
    ConvexCombination,
    LatticePolytope,
    Separation,
    barycenter,
    contains_point,
    is_minimal,
    is_special_vertex,
    lattice_points,
    minimal_subpolytope,
    newton_polyhedron,
    newton_polytope,
    pair_point,
    reduce_special,
    two_delta_points,
)
from .stencil import (
    Certificate,
    CoverCertificate,
    HalfSpace,
    MatchingCertificate,
    Stencil,
    certify,
    certify_via_minimal,
    find_matching,
    min_vertex_cover,
    sample_generic_form,
    separating_halfspace,
    sign_consistency,
    stencil_of,
    witness_O_from_matching,
)

__version__ = "0.1.0"
