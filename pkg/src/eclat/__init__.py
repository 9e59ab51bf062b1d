"""eclat: exact lattices from elliptic curves over odd prime fields.

Builds the lattice of principal divisors supported on the rational
places of y^2 = f(x) over GF(p), verifies its structure (generators,
minimum distance, minimal-vector count, well-roundedness, determinant)
by independent brute force, and decodes arbitrary span vectors within a
proven covering bound.
"""

from ._kernel import HAVE_SPEEDUPS, get_kernel
from .analysis import AnalysisReport, CurveSpec, analyze_curve, scan_curves
from .curve import (
    INFINITY,
    Curve,
    CurvePoint,
    GroupStructure,
    PlaceTable,
    enumerate_places,
    group_structure,
    line_m,
    point_add,
    point_negate,
    scalar_mul,
)
from .decoder import CoveringReport, DecodeTrace, covering_bound, covering_report, decode
from .field import FieldElement, PrimeField
from .funcfield import (
    Divisor,
    FunctionWord,
    NotPrincipalError,
    PairFunction,
    factor_principal,
    is_principal,
    pair_function,
    rr_nontrivial,
    torsion_word,
)
from .geometry import (
    Decomposition,
    MinimalVectorSet,
    VerificationError,
    decompose_generator,
    generated_by_minimal,
    is_well_rounded,
    minimal_count_formula,
    minimal_vectors,
    minimum_distance,
    packing_density,
)
from .lattice import LatticeBasis, LatticeReport, basis, contains, generators, hnf, report

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "CoveringReport",
    "Curve",
    "CurvePoint",
    "CurveSpec",
    "DecodeTrace",
    "Decomposition",
    "Divisor",
    "FieldElement",
    "FunctionWord",
    "GroupStructure",
    "HAVE_SPEEDUPS",
    "INFINITY",
    "LatticeBasis",
    "LatticeReport",
    "MinimalVectorSet",
    "NotPrincipalError",
    "PairFunction",
    "PlaceTable",
    "PrimeField",
    "VerificationError",
    "analyze_curve",
    "basis",
    "contains",
    "covering_bound",
    "covering_report",
    "decode",
    "decompose_generator",
    "enumerate_places",
    "factor_principal",
    "generated_by_minimal",
    "generators",
    "get_kernel",
    "group_structure",
    "hnf",
    "is_principal",
    "is_well_rounded",
    "line_m",
    "minimal_count_formula",
    "minimal_vectors",
    "minimum_distance",
    "packing_density",
    "pair_function",
    "point_add",
    "point_negate",
    "report",
    "rr_nontrivial",
    "scalar_mul",
    "scan_curves",
    "torsion_word",
]
