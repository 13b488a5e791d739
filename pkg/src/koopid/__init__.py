"""Koopman-spectrum computation and nonlinear PDE / graphon identification
from snapshot data.

The package simulates dictionary-defined 1-D dynamics, fits a
finite-dimensional approximation of the composition (Koopman) operator on a
basis of observable functionals, extracts its spectrum, and identifies
governing-equation coefficients through the principal matrix logarithm of the
fitted operator.
"""

from .errors import (
    BlowUpError,
    BranchCutError,
    DomainError,
    IllConditionedWarning,
    InsufficientDataError,
    InvalidInputError,
    KoopidError,
    NumericError,
    PreconditionError,
    RankDeficiencyError,
    RankDeficiencyWarning,
    ShapeError,
)
from .fields import Field, Grid1D, derivative, inner_product, pointwise_map
from .identify import (
    ConvergenceReport,
    IdentificationResult,
    direct_identify,
    lifting_identify,
    reconstruct_operator,
    true_coefficients,
    ts_convergence_study,
    weak_residual,
)
from .koopman import (
    KoopmanFit,
    SpectrumMode,
    SpectrumResult,
    build_data_matrices,
    edmd_fit,
    eval_eigenfunctional,
    spectrum,
)
from .linalg import EigenDecomposition, eig, expm, logm, lstsq_fit, pinv
from .observables import (
    Bump,
    ConstantWeight,
    FunctionalSpec,
    InnerProductPower,
    LiftedTerm,
    PointEvaluation,
    PowerLaw,
    WeightSpec,
    build_burgers_basis,
    build_lifting_basis,
    eval_functional,
)
from .operators import (
    Constant,
    Dictionary,
    GraphonKernel,
    KernelSpec,
    MonomialDerivative,
    TermSpec,
    apply_rhs,
    apply_term,
)
from .simulate import (
    BUILTIN_MODELS,
    EXPERIMENT_DEFAULTS,
    ICFamily,
    Model,
    SnapshotDataset,
    burgers_model,
    generate_pairs,
    graphon_model,
    heat_model,
    integrate,
    pde1_model,
)

__version__ = "0.1.0"
