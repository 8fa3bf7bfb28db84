"""Weighted L1-type seminorms on the duals of finite-dimensional C*-algebras.

The toolkit models block-diagonal C*-algebras, Hermitian functionals as
trace-pairing matrices, and the seminorm a positive element induces on the
dual: computed both by a variational decomposition program and by the
compressed trace-norm closed form.  Norm-equivalence constants between
spectral powers certify or refute invertibility, and a randomized harness
turns each guarantee into a seeded, replayable check.
"""

from .algebra import (BlockStructure, Element, add, adjoint, element_from_dict,
                      element_power, element_to_dict, identity, mul,
                      range_projection, scale, spectral_bounds)
from .errors import (BadExponents, BadSpec, CstarnormsError, IndexOutOfRange,
                     NoConvergence, NotHermitian, NotInvertible, NotPositive,
                     NotUnitVector, SingularPower, StructureMismatch,
                     ZeroElement)
from .functionals import (HermitianFunctional, compress, functional_norm,
                          jordan_decompose, pair, rank_one, random_functional)
from .seminorms import (DecompositionSolution, EquivalenceConstants,
                        FaithfulnessResult, InvertibilityDecision,
                        compressed_equivalence_constants, decide_invertibility,
                        empirical_ratio_bounds, equivalence_constants,
                        faithfulness_check, projection_seminorm, r_closed_form,
                        r_variational)
from .spectral import (SpectralDecomposition, hermitian_eig, matrix_power,
                       operator_norm, trace_norm)
from .spectral import range_projection as matrix_range_projection
from .verify import (FixedSpectrum, GeneratorSpec, KernelSpectrum,
                     UniformSpectrum, VerificationReport, blowup_study,
                     check_closed_form, check_invertibility_theorem,
                     check_power_inequality, check_range_projection_limit,
                     constants_table_csv, generate_positive, run_suites)

__version__ = "0.1.0"

__all__ = [
    "BlockStructure", "Element", "HermitianFunctional",
    "SpectralDecomposition", "DecompositionSolution", "EquivalenceConstants",
    "FaithfulnessResult", "InvertibilityDecision", "VerificationReport",
    "GeneratorSpec", "UniformSpectrum", "FixedSpectrum", "KernelSpectrum",
    "identity", "add", "mul", "scale", "adjoint", "element_power",
    "spectral_bounds", "range_projection", "matrix_range_projection",
    "element_to_dict", "element_from_dict",
    "hermitian_eig", "matrix_power", "operator_norm", "trace_norm",
    "pair", "functional_norm", "jordan_decompose", "compress", "rank_one",
    "random_functional",
    "r_closed_form", "r_variational", "equivalence_constants",
    "empirical_ratio_bounds", "faithfulness_check", "decide_invertibility",
    "compressed_equivalence_constants", "projection_seminorm",
    "generate_positive", "check_closed_form", "check_power_inequality",
    "check_invertibility_theorem", "check_range_projection_limit",
    "blowup_study", "run_suites", "constants_table_csv",
    "CstarnormsError", "NotHermitian", "NoConvergence", "NotPositive",
    "SingularPower", "StructureMismatch", "IndexOutOfRange", "NotUnitVector",
    "NotInvertible", "ZeroElement", "BadExponents", "BadSpec",
]
