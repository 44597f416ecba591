"""Exact multitors, Koszul homology and excess modules for intersections of
complete intersections in affine space."""

from .ring import (
    GF,
    QQ,
    Elimination,
    FieldError,
    GrevLex,
    Lex,
    ParseError,
    PolyRing,
    Polynomial,
    RingMismatchError,
    leading_term,
    parse_polynomial,
    poly_arith,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    ModuleElement,
    buchberger,
    height,
    krull_dimension,
    membership,
    normal_form,
    syzygies,
)
from .modules import (
    BrokenComplexError,
    FPModule,
    FreeModuleMap,
    HilbertFunction,
    NonHomogeneousError,
    conormal,
    exterior_power,
    hilbert_function,
    is_zero_module,
    kernel,
    restrict_to,
    subquotient,
    tensor_modules,
)
from .complexes import (
    ChainComplex,
    homology,
    koszul_complex,
    koszul_tensor_iso,
    tensor_complexes,
    tensor_with_module,
)
from .intersect import (
    CertificationError,
    CIVariety,
    IntersectionInstance,
    Verdict,
    excess_module,
    is_regular_sequence,
    is_tor_independent,
    les_verify,
    multitor,
    verify_excess_formula,
    verify_self_intersection,
)

__version__ = "0.1.0"
