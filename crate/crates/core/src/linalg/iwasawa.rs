// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! Group Iwasawa factorization m = g·l·e by Gram–Schmidt, and the matching
//! Lie-algebra split 𝔰𝔩(n,ℂ) = 𝔰𝔲(n) ⊕ 𝔞 ⊕ 𝔫.

use super::matrix::{r, ComplexMatrix, C64, I};
use super::LinalgError;
use crate::tolerances::TOL;

/// m = unitary · unipotent · diagonal.
#[derive(Clone, Debug)]
pub struct IwasawaFactors {
    /// Special unitary factor g.
    pub unitary: ComplexMatrix,
    /// Unit upper-triangular factor l.
    pub unipotent: ComplexMatrix,
    /// Positive real diagonal factor e (determinant 1).
    pub diagonal: ComplexMatrix,
}

impl IwasawaFactors {
    /// The non-compact part m = l·e.
    pub fn le(&self) -> ComplexMatrix {
        &self.unipotent * &self.diagonal
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        &self.unitary * &self.le()
    }
}

/// Factor m (det 1) as g·l·e with modified Gram–Schmidt (two passes).
pub fn iwasawa_factor(m: &ComplexMatrix) -> Result<IwasawaFactors, LinalgError> {
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let det = m.det();
    if (det - r(1.0)).norm() > TOL.iwasawa_det {
        return Err(LinalgError::NotSpecial(det));
    }
    let n = m.n();
    let mut q = m.clone();
    let mut rr = ComplexMatrix::zeros(n);
    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let mut dot = C64::new(0.0, 0.0);
                for k in 0..n {
                    dot += q[(k, i)].conj() * q[(k, j)];
                }
                rr[(i, j)] += dot;
                for k in 0..n {
                    let qki = q[(k, i)];
                    q[(k, j)] -= dot * qki;
                }
            }
        }
        let norm = (0..n).map(|k| q[(k, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm <= f64::MIN_POSITIVE {
            return Err(LinalgError::NearSingular(0.0));
        }
        rr[(j, j)] = r(norm);
        for k in 0..n {
            q[(k, j)] /= norm;
        }
    }
    // σ_min(R) ≥ 1/‖R⁻¹‖_F
    let rinv = rr.inverse()?;
    let sv_lower = 1.0 / rinv.fro_norm();
    if sv_lower < TOL.iwasawa_min_sv / (n as f64).sqrt() {
        return Err(LinalgError::NearSingular(sv_lower));
    }
    let diag: Vec<f64> = (0..n).map(|j| rr[(j, j)].re).collect();
    let unipotent = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            r(1.0)
        } else if i < j {
            rr[(i, j)] / diag[j]
        } else {
            r(0.0)
        }
    });
    Ok(IwasawaFactors {
        unitary: q,
        unipotent,
        diagonal: ComplexMatrix::from_real_diag(&diag),
    })
}

/// Split M ∈ 𝔰𝔩(n,ℂ) as M = u + b with u ∈ 𝔰𝔲(n) and b upper triangular
/// with real diagonal (the Lie algebra of the A·N factor).
pub fn iwasawa_algebra_split(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = m.n();
    let lower = m.strict_lower();
    let mut u = &lower - &lower.adjoint();
    for i in 0..n {
        u[(i, i)] = I * m[(i, i)].im;
    }
    let b = m - &u;
    (u, b)
}
