"""Finite-dimensional frame toolkit: weak R-duals with machine-checkable
certificates, and Gabor systems on Z_N."""

from .errors import (
    BadCutoffError,
    BadLatticeError,
    CriticalDensityError,
    DeficitOrderError,
    DimensionCaseError,
    EmptySpanError,
    FixtureParseError,
    FrameDualError,
    GateFailedError,
    HypothesisFailedError,
    NotHermitianError,
    NotInvertibleError,
    NotParsevalComplementError,
    NotParsevalError,
    NotPositiveDefiniteError,
    NotTightError,
    NumericalFailureError,
    ShapeMismatchError,
    ZeroMatrixError,
    ZeroWindowError,
)
from .frames import (
    FrameAnalysis,
    VectorFamily,
    analyze,
    canonical_dual,
    frame_operator,
    gram_matrix,
    inner,
    load_family,
    parseval_tighten,
    project_onto_span,
    save_family,
    span_projector,
    synthesis_matrix,
)
from .gabor import (
    AdjointSystem,
    GaborLattice,
    GaborSystem,
    adjoint_system,
    canonical_tight_window,
    duality_check,
    gabor_system,
    promote_to_r_dual,
    run_exploration,
    tight_gabor_weak_r_dual,
)
from .numerics import (
    DEFAULT_TOL,
    EigenDecomposition,
    Tolerance,
    hermitian_eig,
    orthonormal_span_basis,
    psd_inverse_sqrt,
    svd_rank_nullspace,
)
from .rduality import (
    ConjugateLinearMap,
    DimensionReport,
    WeakRDualCertificate,
    build_orthonormal_v,
    build_parseval_v,
    certify_weak_r_dual,
    characterize,
    characterizing_sequence,
    characterizing_sequence_bounds,
    commuting_parseval_family,
    completeness_implies_invariance,
    cross_gram,
    dimension_report,
    dual_commutation_residual,
    dual_commuting_parseval,
    find_conjugate_witness,
    gram_invariance_residual,
    interleave_double_prime,
    interleave_double_star,
    interleave_prime,
    interleave_star,
    interleaved_weak_r_dual,
    synthesized_gram_invariance_residual,
    transfer_via_coisometry,
    verify_conjugate_witness,
    weak_r_dual,
)

__version__ = "0.1.0"
