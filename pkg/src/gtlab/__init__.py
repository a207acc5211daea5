"""Matrix functional calculus and randomized checks of multivariate Golden-Thompson inequalities."""

from .calculus import (
    QuadratureRule,
    check_dq_inequality,
    check_homogeneous_convex_quotient,
    dd_exp,
    dd_log,
    frechet_exp,
    frechet_log,
    frechet_log_quadrature,
    q_form,
    q_form_oracle,
)
from .errors import (
    ContractionError,
    DimensionError,
    EigenError,
    ExpOverflowError,
    GTLabError,
    MatrixFormatError,
    NotHermitianError,
    NotPositiveDefiniteError,
    SingularMatrixError,
    UnknownFormError,
)
from .inequalities import (
    DiscreteDistribution,
    check_classical_gt,
    check_expectation,
    check_gt_extended,
    check_gt_logdiff,
    check_gt_multi,
    check_interpolation,
    check_lemma_main,
    check_q_contraction,
    helmholtz_bound,
)
from .matcore import (
    SpectralDecomposition,
    as_hermitian,
    as_positive_definite,
    decode_matrix,
    encode_matrix,
    hermitian_eig,
    matrix_exp,
    matrix_log,
    operator_norm,
    trace_real,
)
from .reports import TrialReport
from .tracefn import (
    ContractionTuple,
    PhiSpec,
    block_embed,
    check_block_identity,
    augment,
    check_homogeneity,
    concavity_midpoint_probe,
    concavity_second_derivative_probe,
    multi_evaluator,
    phi_multi,
    phi_augmented,
    phi_scalar_weights,
    phi_single,
    single_evaluator,
)

__version__ = "0.1.0"
