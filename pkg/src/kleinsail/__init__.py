"""Exact geometric continued fractions: Klein sails of hyperbolic integer
operators, their Dirichlet symmetry groups, and constructive detection and
certification of palindromic symmetry in dimensions 2 and 3.

All decisions are made in exact arithmetic (rationals, quadratic elements,
cubic number fields); floating point appears only inside prefilters whose
output is re-verified exactly.
"""

from .errors import (
    EmptyPatch,
    InsufficientDepth,
    KleinSailError,
    NonGaloisObstruction,
    NotASymmetry,
    NotGalois,
    NotHyperbolic,
    StructureViolation,
)
from .intmat import (
    IntMatrix,
    charpoly,
    commutant_lattice,
    det,
    is_hyperbolic,
    lll_reduce,
    matrix_from_json,
    matrix_to_json,
)
from .numfield import FieldElement, NumberField, automorphisms
from .polys import IntPolynomial
from .quadratic import (
    PeriodicCF,
    Prop1Report,
    QuadraticSurd,
    cf_expand,
    cf_value,
    eigen_slopes,
    find_symmetries_2d,
    is_cyclic_palindrome,
    klein_polygon,
    operator_from_period,
    prop1_witness_search,
    surd_conjugate,
)
from .sail import (
    GeoCF,
    SailPatch,
    antipode,
    cone_action,
    export_patch,
    geocf_from_operator,
    geocf_from_unit,
    locate_cone,
    patch_from_json,
    sail_patch,
)
from .symmetry import (
    F_MATRICES,
    DirichletGroup,
    Order3Data,
    PalindromeCertificate,
    SymmetryReport,
    canonicalize,
    cone_orbit_structure,
    dirichlet_group,
    find_palindromic,
    is_cf_symmetry,
    make_class_example,
    order3_analysis,
    theorem_check,
)

__version__ = "1.0.0"

__all__ = [
    "DirichletGroup",
    "EmptyPatch",
    "F_MATRICES",
    "FieldElement",
    "GeoCF",
    "InsufficientDepth",
    "IntMatrix",
    "IntPolynomial",
    "KleinSailError",
    "NonGaloisObstruction",
    "NotASymmetry",
    "NotGalois",
    "NotHyperbolic",
    "NumberField",
    "Order3Data",
    "PalindromeCertificate",
    "PeriodicCF",
    "Prop1Report",
    "QuadraticSurd",
    "SailPatch",
    "StructureViolation",
    "SymmetryReport",
    "antipode",
    "automorphisms",
    "canonicalize",
    "cf_expand",
    "cf_value",
    "charpoly",
    "commutant_lattice",
    "cone_action",
    "cone_orbit_structure",
    "det",
    "dirichlet_group",
    "eigen_slopes",
    "export_patch",
    "find_palindromic",
    "find_symmetries_2d",
    "geocf_from_operator",
    "geocf_from_unit",
    "is_cf_symmetry",
    "is_cyclic_palindrome",
    "is_hyperbolic",
    "klein_polygon",
    "lll_reduce",
    "locate_cone",
    "make_class_example",
    "matrix_from_json",
    "matrix_to_json",
    "operator_from_period",
    "order3_analysis",
    "patch_from_json",
    "prop1_witness_search",
    "sail_patch",
    "surd_conjugate",
    "theorem_check",
]
