"""Fast multivariate-normal, Toeplitz and elliptical slice sampling routines."""

from ._gpfast import (
    DimensionMismatch,
    GpfastError,
    InvalidState,
    IoError,
    NonFiniteLikelihood,
    NotEvenlySpaced,
    NotPositiveDefinite,
    ShrinkLimitExceeded,
    SingularMatrix,
    baseline_ess_run,
    baseline_invert,
    baseline_log_det,
    baseline_log_dmvnorm,
    cholesky,
    durbin,
    ess_run,
    invert,
    log_det,
    log_dmvnorm,
    materialize,
    rmvnorm,
    run_demo,
    se_covariance,
    se_toeplitz_row,
    toeplitz_log_det,
    trench_invert,
)

__version__ = "0.1.0"
