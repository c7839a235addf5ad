"""Exact-arithmetic workbench for associative conformal algebras.

The package builds conformal algebras two ways — differentially, from a
coefficient algebra with a derivation, and by finite product tables — and
checks the conformal axioms coefficient-by-coefficient against a
brute-force oracle.  On top of that sit growth functions, unital
recognition, identity transport, and a probe for delta-stable ideals.
All arithmetic is over Q, exactly.
"""

from .axioms import (
    CheckReport,
    IdentityReport,
    associativity_report,
    coefficient_locality_report,
    conformal_axioms_report,
    identity_report,
    left_annihilator_probe,
)
from .diff_conformal import (
    ALL_ZERO,
    ConfElem,
    DifferentialAlgebra,
    DongReport,
    coefficient,
    dong_check,
    locality_degree,
    nth_product,
    primitive,
    product_coeff_oracle,
)
from .dsl import (
    AlgebraSpec,
    build,
    build_all,
    load_path,
    parse,
    parse_element,
    pretty,
)
from .errors import (
    BoundExceeded,
    ClosureBoundExceeded,
    ConfalError,
    MismatchWitness,
    NotNilpotent,
    NotUnital,
    ParseError,
    ResourceBound,
)
from .exact_arith import DOp, MatPoly, Poly, rat
from .growth import (
    GrowthReport,
    coeff_growth_check,
    detect_degree,
    enumerate_span,
    growth_table,
    module_rank,
)
from .instances import (
    cur_dual_numbers,
    cur_matrix,
    cur_matrix_presented,
    poly_zero,
    weyl_algebra,
)
from .ore_skew import (
    DdxPlusAd,
    Derivation,
    FinDim,
    LinearAction,
    MatPolyRing,
    OreRing,
    PolyRing,
    ScaledDdx,
    SkewLaurent,
    ZeroDerivation,
    ad_derivation,
    matrix_findim,
    nilpotency_index,
    weyl_instance,
)
from .presented_conformal import (
    PresElem,
    PresentedAlgebra,
    ProductTable,
    check_associativity,
    coeff_assoc_check,
    is_conformal_identity,
)
from .structure import (
    IdealClosure,
    RecognitionResult,
    SimplicityReport,
    TransportResult,
    canonical_rep,
    coefficient_fit_degree,
    delta_stable_closure,
    find_identity,
    peel_components,
    recognition_roundtrip,
    recognize_unital,
    simplicity_probe,
    transport_identity,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_ZERO",
    "AlgebraSpec",
    "BoundExceeded",
    "CheckReport",
    "ClosureBoundExceeded",
    "ConfElem",
    "ConfalError",
    "DOp",
    "DdxPlusAd",
    "Derivation",
    "DifferentialAlgebra",
    "DongReport",
    "FinDim",
    "GrowthReport",
    "IdealClosure",
    "IdentityReport",
    "LinearAction",
    "MatPoly",
    "MatPolyRing",
    "MismatchWitness",
    "NotNilpotent",
    "NotUnital",
    "OreRing",
    "ParseError",
    "Poly",
    "PolyRing",
    "PresElem",
    "PresentedAlgebra",
    "ProductTable",
    "RecognitionResult",
    "ResourceBound",
    "ScaledDdx",
    "SimplicityReport",
    "SkewLaurent",
    "TransportResult",
    "ZeroDerivation",
    "ad_derivation",
    "associativity_report",
    "build",
    "build_all",
    "canonical_rep",
    "check_associativity",
    "coeff_assoc_check",
    "coeff_growth_check",
    "coefficient",
    "coefficient_fit_degree",
    "coefficient_locality_report",
    "conformal_axioms_report",
    "cur_dual_numbers",
    "cur_matrix",
    "cur_matrix_presented",
    "delta_stable_closure",
    "detect_degree",
    "dong_check",
    "enumerate_span",
    "find_identity",
    "growth_table",
    "identity_report",
    "is_conformal_identity",
    "left_annihilator_probe",
    "load_path",
    "locality_degree",
    "matrix_findim",
    "module_rank",
    "nilpotency_index",
    "nth_product",
    "parse",
    "parse_element",
    "peel_components",
    "poly_zero",
    "pretty",
    "primitive",
    "product_coeff_oracle",
    "rat",
    "recognition_roundtrip",
    "recognize_unital",
    "simplicity_probe",
    "transport_identity",
    "weyl_algebra",
    "weyl_instance",
]
