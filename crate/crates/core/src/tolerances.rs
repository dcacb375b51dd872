// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! Numerical thresholds of the algorithms, in one place.
//!
//! Acceptance thresholds of the verification checks live separately in
//! [`crate::report::CheckTolerances`], because the CLI may rescale those.

/// Algorithmic thresholds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// |det(m) − 1| accepted by the Iwasawa factorization.
    pub iwasawa_det: f64,
    /// Smallest singular value accepted by the Iwasawa factorization.
    pub iwasawa_min_sv: f64,
    /// Hermitian defect accepted by the eigensolver (relative to max entry).
    pub hermitian: f64,
    /// Eigenvalue floor for the positive logarithm.
    pub positive_floor: f64,
    /// Relative singular value threshold of least squares.
    pub lstsq_rcond: f64,
    /// Relative rank threshold for tangent frames.
    pub frame_rank: f64,
    /// Defect accepted for membership in the spherical subgroup.
    pub subgroup: f64,
    /// Central finite-difference step for form and derivative checks.
    pub fd_step: f64,
    /// Absolute tolerance of the adaptive Simpson rule.
    pub quad_abs: f64,
    /// Error estimate above which quadrature reports failure.
    pub quad_fail: f64,
    /// Node budget of the adaptive Simpson rule.
    pub quad_max_nodes: usize,
    /// Local error per unit time of the Liouville flow, relative to the
    /// local speed of the witness.
    pub flow_rel: f64,
    /// Smallest admissible flow step.
    pub flow_min_step: f64,
    /// Longest backward horizon of the Nagano construction.
    pub flow_horizon: f64,
    /// Eigenvalue gap below which eigenlines are not identified.
    pub eigen_gap: f64,
    /// Modulus threshold for eigenline position tests.
    pub eigenline: f64,
    /// |E² + F²| below which Λ is singular.
    pub singular_locus: f64,
    /// Residual accepted when recovering a witness for a raw point.
    pub witness_residual: f64,
}

/// Default thresholds.
pub const TOL: Tolerances = Tolerances {
    iwasawa_det: 1e-10,
    iwasawa_min_sv: 1e-8,
    hermitian: 1e-10,
    positive_floor: 1e-10,
    lstsq_rcond: 1e-9,
    frame_rank: 1e-9,
    subgroup: 1e-10,
    fd_step: 1e-5,
    quad_abs: 1e-10,
    quad_fail: 1e-8,
    quad_max_nodes: 1 << 16,
    flow_rel: 1e-8,
    flow_min_step: 1e-12,
    flow_horizon: 60.0,
    eigen_gap: 1e-6,
    eigenline: 1e-8,
    singular_locus: 1e-10,
    witness_residual: 1e-9,
};

impl Default for Tolerances {
    fn default() -> Self {
        TOL
    }
}
