"""State-vector simulator, analytics and verification suite for Grover search."""

from .factorization import (
    CurvePoint,
    FactorProblem,
    FactorResult,
    MultipleSolutionsError,
    NoSolutionError,
    build_factor_instance,
    curve_to_csv,
    probability_curve,
    run_factor_search,
)
from .grover import (
    GroverAngles,
    GroverInstance,
    OptimalIterations,
    TwoDState,
    closed_form_state,
    diffusion,
    grover_angles,
    grover_operator,
    initial_plane_state,
    max_t_in_period,
    monotonic_decrease_range,
    monotonic_increase_range,
    optimal_iterations,
    oracle,
    rotation_step_2d,
    state_after_iterations,
    success_probability,
    tau_perp,
    uniform_superposition,
)
from .linalg import (
    DimensionMismatchError,
    hermitian_conjugate,
    is_unitary,
    matmul,
    matrix_list_gen,
    matrix_pow,
    matvec,
    tensor_product_list,
    unitary_columns_orthonormal,
)
from .states import (
    NonUnitaryOperatorError,
    NormalizationError,
    QState,
    basis_state,
    evolve,
    hadamard,
    make_qstate,
    measurement_probability,
    n_hadamard,
    projector,
    projector_completeness,
    sample_measurement,
    zero_state,
)
from .verification import (
    CHECK_IDS,
    CheckResult,
    VerificationConfig,
    VerificationReport,
    run_all,
    run_check,
)

__version__ = "0.1.0"
