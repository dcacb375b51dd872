// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! Matrix exponential (Padé 13 with scaling and squaring) and the
//! logarithm of positive Hermitian matrices.

use super::eigen::hermitian_eigen;
use super::matrix::{r, ComplexMatrix};
use super::LinalgError;
use crate::tolerances::TOL;

/// Padé(13) numerator coefficients b_0..b_13 (Higham 2005).
const B13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

const THETA_13: f64 = 5.371_920_351_148_152;

/// exp(m) by scaling and squaring.
pub fn matrix_exp(m: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let n = m.n();
    let norm = m.norm_1();
    if norm == 0.0 {
        return Ok(ComplexMatrix::identity(n));
    }
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a = m.scale_re(0.5f64.powi(s));
    let id = ComplexMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let comb = |c6: f64, c4: f64, c2: f64, c0: f64| {
        let mut t = a6.scale_re(c6);
        t += &a4.scale_re(c4);
        t += &a2.scale_re(c2);
        t += &id.scale_re(c0);
        t
    };
    let u_inner = &a6 * (a6.scale_re(B13[13]) + a4.scale_re(B13[11]) + a2.scale_re(B13[9]));
    let u = &a * (u_inner + comb(B13[7], B13[5], B13[3], B13[1]));
    let v_inner = &a6 * (a6.scale_re(B13[12]) + a4.scale_re(B13[10]) + a2.scale_re(B13[8]));
    let v = v_inner + comb(B13[6], B13[4], B13[2], B13[0]);
    let mut result = (&v - &u).solve(&(&v + &u))?;
    for _ in 0..s {
        result = &result * &result;
    }
    if !result.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    Ok(result)
}

/// Principal logarithm by inverse scaling and squaring: Denman–Beavers
/// square roots until ‖m − I‖₁ ≤ 1/4, then the Gregory series.
pub fn matrix_log(m: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let n = m.n();
    let id = ComplexMatrix::identity(n);
    let mut a = m.clone();
    let mut k = 0;
    while (&a - &id).norm_1() > 0.25 {
        if k > 60 {
            return Err(LinalgError::NearSingular(0.0));
        }
        // Denman–Beavers
        let mut y = a.clone();
        let mut z = id.clone();
        for _ in 0..100 {
            let yi = y.inverse()?;
            let zi = z.inverse()?;
            let ny = (&y + &zi).scale_re(0.5);
            let nz = (&z + &yi).scale_re(0.5);
            let done = ny.dist(&y) <= 1e-15 * ny.max_abs();
            y = ny;
            z = nz;
            if done {
                break;
            }
        }
        a = y;
        k += 1;
    }
    // log(a) = 2 atanh-series in w = (a − I)(a + I)⁻¹
    let w = (&a - &id).solve_right(&(&a + &id))?;
    let w2 = &w * &w;
    let mut term = w.clone();
    let mut sum = w.clone();
    for j in 1..200 {
        term = &term * &w2;
        let add = term.scale_re(1.0 / (2 * j + 1) as f64);
        sum += &add;
        if add.max_abs() <= 1e-18 * sum.max_abs().max(1e-300) {
            break;
        }
    }
    Ok(sum.scale_re(2.0 * f64::powi(2.0, k)))
}

/// Hermitian logarithm of a positive definite Hermitian matrix.
pub fn positive_log(p: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    positive_function(p, f64::ln)
}

/// Apply a scalar function to the spectrum of a positive Hermitian matrix.
pub fn positive_function(p: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix, LinalgError> {
    let (vals, vecs) = hermitian_eigen(p)?;
    if let Some(&min) = vals.last() {
        if min <= TOL.positive_floor {
            return Err(LinalgError::NotPositive(min));
        }
    }
    let d = ComplexMatrix::from_diag(&vals.iter().map(|&l| r(f(l))).collect::<Vec<_>>());
    Ok(&(&vecs * &d) * &vecs.adjoint())
}
