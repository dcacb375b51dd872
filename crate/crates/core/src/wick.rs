// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! Wick rotation on the sl(2,ℂ) model.
//!
//! Points are written p = E·σz + F·σx + Z·σy (permuted Pauli frame). The
//! compact orbit X is the unit sphere of real (e, f, z), its complexification
//! is the quadric E² + F² + Z² = 1, and Ψ sends X* onto the real hyperboloid
//! e² + f² − z² = 1 in 𝔰𝔩(2,ℝ) (third basis vector −i·σy).

use thiserror::Error;

use crate::linalg::{c, ComplexMatrix, C64, I};
use crate::orbit::{OrbitError, OrbitModel, OrbitPoint, TangentVector};
use crate::potential::{beta, PotentialError};
use crate::tolerances::TOL;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WickError {
    #[error("point on the singular locus E² + F² = 0 (|E² + F²| = {0:e})")]
    OnSingularLocus(f64),
    #[error("radicand crosses the branch cut along the path to w = {re} + {im}i")]
    BranchCut { re: f64, im: f64 },
    #[error("point is not real (imaginary part {0:e})")]
    NotReal(f64),
    #[error("model is not the 2×2 Weyl model")]
    WrongModel,
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

fn sigma_e() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
}

fn sigma_f() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EFZPoint {
    pub e: C64,
    pub f: C64,
    pub z: C64,
    pub quadric_value: C64,
}

impl EFZPoint {
    pub fn new(e: C64, f: C64, z: C64) -> Self {
        Self {
            e,
            f,
            z,
            quadric_value: e * e + f * f + z * z,
        }
    }

    pub fn real(e: f64, f: f64, z: f64) -> Self {
        Self::new(c(e, 0.0), c(f, 0.0), c(z, 0.0))
    }

    /// Coordinates of a traceless 2×2 matrix.
    pub fn from_matrix(p: &ComplexMatrix) -> Self {
        let coef = |s: ComplexMatrix| p.trace_product(&s) * 0.5;
        Self::new(coef(sigma_e()), coef(sigma_f()), coef(sigma_z()))
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        &(&sigma_e().scale(self.e) + &sigma_f().scale(self.f)) + &sigma_z().scale(self.z)
    }

    /// E² + F².
    pub fn s(&self) -> C64 {
        self.e * self.e + self.f * self.f
    }

    pub fn in_b(&self) -> bool {
        self.s().norm() >= TOL.singular_locus
    }

    pub fn imag_defect(&self) -> f64 {
        self.e.im.abs().max(self.f.im.abs()).max(self.z.im.abs())
    }

    pub fn as_array(&self) -> [C64; 3] {
        [self.e, self.f, self.z]
    }

    pub fn dist(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Real 𝔰𝔩(2,ℝ)-frame coordinates (e, f, z) with p = e·σz + f·σx + z·(−iσy).
    pub fn sl2r_coords(&self) -> [f64; 3] {
        let z = self.z * I;
        [self.e.re, self.f.re, z.re]
    }
}

fn check_b(p: &EFZPoint) -> Result<C64, WickError> {
    let s = p.s();
    if s.norm() < TOL.singular_locus {
        return Err(WickError::OnSingularLocus(s.norm()));
    }
    Ok(s)
}

/// Λ = (E·Z²/S, F·Z²/S, −Z) with S = E² + F²; on real points Re Λ = −Y.
pub fn lambda_field(p: &EFZPoint) -> Result<[C64; 3], WickError> {
    let s = check_b(p)?;
    let z2 = p.z * p.z;
    Ok([p.e * z2 / s, p.f * z2 / s, -p.z])
}

/// Λ as a tangent vector of the orbit model at p.
pub fn lambda_tangent(model: &OrbitModel, p: &ComplexMatrix) -> Result<TangentVector, WickError> {
    let l = lambda_field(&EFZPoint::from_matrix(p))?;
    let value = EFZPoint::new(l[0], l[1], l[2]).to_matrix();
    Ok(model.generator_of(p, &value)?)
}

/// 1 + (Z²/S)(1 − e^{2w}).
pub fn radicand(p: &EFZPoint, w: C64) -> Result<C64, WickError> {
    let s = check_b(p)?;
    Ok(c(1.0, 0.0) + p.z * p.z / s * (c(1.0, 0.0) - (w * 2.0).exp()))
}

const BRANCH_SAMPLES: usize = 256;

/// Φ_w, the flow of −Λ for complex time w, in closed form with the principal
/// square root. The radicand is tracked along the segment [0, w].
pub fn flow_phi(p: &EFZPoint, w: C64) -> Result<EFZPoint, WickError> {
    check_b(p)?;
    let mut prev = radicand(p, c(0.0, 0.0))?;
    for k in 1..=BRANCH_SAMPLES {
        let cur = radicand(p, w * (k as f64 / BRANCH_SAMPLES as f64))?;
        if cur.norm() < TOL.singular_locus {
            return Err(WickError::OnSingularLocus(cur.norm()));
        }
        let crosses = prev.im.signum() != cur.im.signum() && {
            // real value where the chord meets the real axis
            let t = prev.im / (prev.im - cur.im);
            prev.re + t * (cur.re - prev.re) < 0.0
        };
        let lands = cur.im == 0.0 && cur.re < 0.0;
        if crosses || lands {
            return Err(WickError::BranchCut { re: w.re, im: w.im });
        }
        prev = cur;
    }
    let root = prev.sqrt();
    Ok(EFZPoint::new(root * p.e, root * p.f, w.exp() * p.z))
}

/// First real time w > 0 at which the radicand of a real point vanishes, by
/// bisection. None when z = 0 (the flow is trivial there).
pub fn singular_time(p: &EFZPoint) -> Result<Option<f64>, WickError> {
    let g = |w: f64| radicand(p, c(w, 0.0)).map(|r| r.re);
    if p.z.norm() < 1e-300 {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while g(hi)? > 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e3 {
            return Ok(None);
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * hi.max(1.0) {
            break;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// Closed-form root ½·ln(1 + S/Z²) of the radicand for real points.
pub fn singular_time_closed_form(p: &EFZPoint) -> f64 {
    0.5 * (1.0 + p.s().re / (p.z * p.z).re).ln()
}

/// Ψ = Φ at time −iπ/2: (√(1 + 2z²/S)·e, √(1 + 2z²/S)·f, −i·z).
pub fn wick_psi(p: &EFZPoint) -> Result<EFZPoint, WickError> {
    let defect = p.imag_defect();
    if defect > 1e-12 {
        return Err(WickError::NotReal(defect));
    }
    let s = check_b(p)?.re;
    let root = (1.0 + 2.0 * p.z.re * p.z.re / s).sqrt();
    Ok(EFZPoint::new(c(root * p.e.re, 0.0), c(root * p.f.re, 0.0), -I * p.z))
}

/// |e'² + f'² − z'² − quadric(p)| for Ψ(p) in 𝔰𝔩(2,ℝ) coordinates.
pub fn hyperboloid_defect(p: &EFZPoint, image: &EFZPoint) -> f64 {
    let [e, f, z] = image.sl2r_coords();
    (e * e + f * f - z * z - p.quadric_value.re).abs()
}

/// |Killing quadratic of Φ_w(p) − that of p|.
pub fn quadric_drift(p: &EFZPoint, w: C64) -> Result<f64, WickError> {
    Ok((flow_phi(p, w)?.quadric_value - p.quadric_value).norm())
}

fn check_model(model: &OrbitModel) -> Result<(), WickError> {
    if model.n() != 2 {
        return Err(WickError::WrongModel);
    }
    Ok(())
}

/// Central difference of a map F on EFZ coordinates along a tangent vector of
/// X, realised by moving the witness: h·exp(±ε c).
fn push_along<F>(model: &OrbitModel, p: &OrbitPoint, t: &TangentVector, step: f64, f: F) -> Result<ComplexMatrix, WickError>
where
    F: Fn(&EFZPoint) -> Result<EFZPoint, WickError>,
{
    let coords = model.frame_coords(p, &t.value)?;
    let cgen = ComplexMatrix::real_combination(&model.frame_generators, &coords);
    let h = &p.witness()?.h;
    let eval = |sgn: f64| -> Result<ComplexMatrix, WickError> {
        let g = h * &crate::linalg::matrix_exp(&cgen.scale_re(sgn * step)).map_err(OrbitError::from)?;
        let q = model.point_projected(&g)?;
        Ok(f(&EFZPoint::from_matrix(&q.value))?.to_matrix())
    };
    Ok((&eval(1.0)? - &eval(-1.0)?).scale_re(0.5 / step))
}

/// (Re Ω(Ψ_* t1, Ψ_* t2), ω(t1, t2)) with ω = −Im Ω on X (both raw KKS).
pub fn duality_pair(
    model: &OrbitModel,
    p: &OrbitPoint,
    t1: &TangentVector,
    t2: &TangentVector,
    step: f64,
) -> Result<(f64, f64), WickError> {
    check_model(model)?;
    let image = wick_psi(&EFZPoint::from_matrix(&p.value))?.to_matrix();
    let d1 = push_along(model, p, t1, step, wick_psi)?;
    let d2 = push_along(model, p, t2, step, wick_psi)?;
    let u1 = model.generator_of(&image, &d1)?;
    let u2 = model.generator_of(&image, &d2)?;
    Ok((model.kks_omega(&u1, &u2)?.re, model.omega_kks(t1, t2)?))
}

/// |Re Ω(Ψ_* t1, Ψ_* t2) − ω(t1, t2)|.
pub fn check_duality_forms(
    model: &OrbitModel,
    p: &OrbitPoint,
    t1: &TangentVector,
    t2: &TangentVector,
    step: f64,
) -> Result<f64, WickError> {
    let (lhs, rhs) = duality_pair(model, p, t1, t2, step)?;
    Ok((lhs - rhs).abs())
}

/// |Re Ω(Ψ_* t1, Ψ_* t2) + ω(t1, t2)|. Since Φ_w*Ω = e^w·Ω, Ψ*Ω = −i·Ω and
/// Ψ*Re Ω = Im Ω = −ω on X.
pub fn check_duality_forms_reversed(
    model: &OrbitModel,
    p: &OrbitPoint,
    t1: &TangentVector,
    t2: &TangentVector,
    step: f64,
) -> Result<f64, WickError> {
    let (lhs, rhs) = duality_pair(model, p, t1, t2, step)?;
    Ok((lhs + rhs).abs())
}

/// |Ω(Φ_s* t1, Φ_s* t2) − e^s·Ω(t1, t2)| for real s.
pub fn check_anti_liouville(
    model: &OrbitModel,
    p: &OrbitPoint,
    t1: &TangentVector,
    t2: &TangentVector,
    s: f64,
    step: f64,
) -> Result<f64, WickError> {
    check_model(model)?;
    let flow = |q: &EFZPoint| flow_phi(q, c(s, 0.0));
    let image = flow(&EFZPoint::from_matrix(&p.value))?.to_matrix();
    let d1 = push_along(model, p, t1, step, flow)?;
    let d2 = push_along(model, p, t2, step, flow)?;
    let u1 = model.generator_of(&image, &d1)?;
    let u2 = model.generator_of(&image, &d2)?;
    let lhs = model.kks_omega(&u1, &u2)?;
    Ok((lhs - model.kks_omega(t1, t2)? * s.exp()).norm())
}

/// max |Ψ(σ p) − (−θ)(Ψ(p))| with σ(p) = p̄ on X and −θ(q) = q† on X∨.
pub fn check_involution(p: &EFZPoint) -> Result<f64, WickError> {
    let sp = EFZPoint::from_matrix(&p.to_matrix().conj());
    let lhs = wick_psi(&sp)?.to_matrix();
    let rhs = wick_psi(p)?.to_matrix().adjoint();
    Ok(lhs.dist(&rhs))
}

/// ||z(Ψ(p))| − |z(p)||.
pub fn momentum_defect(p: &EFZPoint) -> Result<f64, WickError> {
    Ok((wick_psi(p)?.z.norm() - p.z.norm()).abs())
}

/// The Euler field Ξ at p: the fiber vector p − h·x of p over its section
/// point h·x.
pub fn xi_euler(model: &OrbitModel, p: &OrbitPoint) -> Result<TangentVector, WickError> {
    let w = p.witness()?;
    let section = &(&w.h * &model.x) * &w.h_inv;
    Ok(model.generator_of(&p.value, &(&p.value - &section))?)
}

fn contraction(model: &OrbitModel, p: &OrbitPoint, sign: f64, t: &TangentVector) -> Result<C64, WickError> {
    check_model(model)?;
    let xi = xi_euler(model, p)?;
    let lam = lambda_tangent(model, &p.value)?;
    let field = TangentVector {
        base: p.value.clone(),
        generator: &xi.generator + &lam.generator.scale_re(sign),
        value: &xi.value + &lam.value.scale_re(sign),
    };
    Ok(model.kks_omega(&field, t)?)
}

/// |ι_{Ξ−Λ}Ω(t) − β(t)|, the identity as printed.
pub fn check_appendix_identity(model: &OrbitModel, p: &OrbitPoint, t: &TangentVector) -> Result<f64, WickError> {
    let lhs = contraction(model, p, -1.0, t)?;
    Ok((lhs - beta(model, p, t)?).norm())
}

/// |ι_{Ξ+Λ}Ω(t) + β(t)|, the sign-consistent form (Ξ Liouville, Λ
/// anti-Liouville).
pub fn check_appendix_corrected(model: &OrbitModel, p: &OrbitPoint, t: &TangentVector) -> Result<f64, WickError> {
    let lhs = contraction(model, p, 1.0, t)?;
    Ok((lhs + beta(model, p, t)?).norm())
}
