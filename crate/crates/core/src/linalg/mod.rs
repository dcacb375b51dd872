// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! Small dense linear algebra: complex matrices, Iwasawa factorization,
//! Hermitian eigensolve, exp/log, real least squares.

mod eigen;
mod expm;
mod iwasawa;
mod matrix;
mod real;

use thiserror::Error;

pub use eigen::hermitian_eigen;
pub use expm::{matrix_exp, matrix_log, positive_function, positive_log};
pub use iwasawa::{iwasawa_algebra_split, iwasawa_factor, IwasawaFactors};
pub use matrix::{c, r, ComplexMatrix, C64, I};
pub use real::{independent_subset, lstsq_min_norm, lstsq_real, null_space, numerical_rank, svd, LstsqSolution, RealMatrix, Svd};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is near singular (smallest singular value bound {0:e})")]
    NearSingular(f64),
    #[error("matrix is singular")]
    Singular,
    #[error("determinant {0} is not 1")]
    NotSpecial(C64),
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not positive definite (eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("least-squares system is rank deficient (singular value ratio {0:e})")]
    RankDeficient(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite entries")]
    NonFinite,
}
