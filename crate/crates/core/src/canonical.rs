// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! Liouville flow on X*, the Nagano map ψ: X* → T*L, and the momentum maps
//! ν on X and μ on T*L.
//!
//! The flow is integrated on the witness h ∈ K^ℂ with a commutator-free
//! Lie-group Runge–Kutta scheme of order 4 (right action h' = h·c_Y(h)).
//! ψ(p) = (q, ξ) where q = lim Φ₋ₜ(p) and ξ represents the covector
//! w ↦ ω_q(v, w), v = lim eᵗ(Φ₋ₜ(p) − q).

use thiserror::Error;

use crate::lie::LieError;
use crate::linalg::{independent_subset, lstsq_real, matrix_exp, ComplexMatrix, LinalgError, RealMatrix, I};
use crate::orbit::{OrbitError, OrbitModel, OrbitPoint, TangentVector, KAEHLER_SCALE};
use crate::potential::{liouville_generator, PotentialError};
use crate::tolerances::TOL;

/// Covector convention p = COVECTOR_SIGN · ι_v ω, chosen so that ψ*dλ = +ω
/// with dλ = Σ dp ∧ dq.
pub const COVECTOR_SIGN: f64 = 1.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CanonicalError {
    #[error("step size collapsed to {0:e}")]
    StepCollapse(f64),
    #[error("trajectory left X* at time {0}")]
    LeftDomain(f64),
    #[error("backward flow did not converge within horizon {0}")]
    NoConvergence(f64),
    #[error("orbit is nearly degenerate (eigenvalue gap {0:e})")]
    NearDegenerate(f64),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl From<CanonicalError> for String {
    fn from(e: CanonicalError) -> Self {
        e.to_string()
    }
}

#[derive(Clone, Debug)]
pub struct FlowResult {
    pub endpoint: OrbitPoint,
    pub time: f64,
    pub steps: usize,
    pub converged: bool,
    pub limit_point: Option<OrbitPoint>,
    pub asymptotic_vector: Option<TangentVector>,
}

/// A point of T*L: base q ∈ L, an orthonormal frame of T_qL for
/// ⟨A, B⟩ = 4n·Re tr(A·B†), covector coefficients in that frame and the
/// ambient representative ξ = Σ covector_j w_j.
#[derive(Clone, Debug)]
pub struct CotangentPoint {
    pub base: OrbitPoint,
    pub frame: Vec<ComplexMatrix>,
    pub covector: Vec<f64>,
    pub xi: ComplexMatrix,
    /// Largest backward horizon used.
    pub horizon: f64,
    /// Residual of the asymptotic fit.
    pub fit_residual: f64,
}

/// ⟨A, B⟩ = 4n·Re tr(A·B†), twice the real Killing pairing against −θ.
pub fn frame_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    4.0 * a.n() as f64 * a.real_inner(b)
}

/// Generator of ±Y at the projected point with witness h.
fn generator_at(model: &OrbitModel, h: &ComplexMatrix, sign: f64) -> Result<ComplexMatrix, CanonicalError> {
    let p = model.point_projected(h)?;
    Ok(liouville_generator(model, &p)?.scale_re(sign))
}

/// One CF4 step from h0 with first stage k1.
fn cf4_step(
    model: &OrbitModel,
    h0: &ComplexMatrix,
    k1: &ComplexMatrix,
    dt: f64,
    sign: f64,
) -> Result<ComplexMatrix, CanonicalError> {
    let y2 = h0 * &matrix_exp(&k1.scale_re(0.5 * dt))?;
    let k2 = generator_at(model, &y2, sign)?;
    let y3 = h0 * &matrix_exp(&k2.scale_re(0.5 * dt))?;
    let k3 = generator_at(model, &y3, sign)?;
    let y4 = &y2 * &matrix_exp(&(&k3 - &k1.scale_re(0.5)).scale_re(dt))?;
    let k4 = generator_at(model, &y4, sign)?;
    let k23 = &k2 + &k3;
    let first = &(&k1.scale_re(0.25) + &k23.scale_re(1.0 / 6.0)) - &k4.scale_re(1.0 / 12.0);
    let second = &(&k4.scale_re(0.25) + &k23.scale_re(1.0 / 6.0)) - &k1.scale_re(1.0 / 12.0);
    Ok(&(h0 * &matrix_exp(&first.scale_re(dt))?) * &matrix_exp(&second.scale_re(dt))?)
}

/// Integrate ±Y on the witness and record it at the requested times
/// (absolute values, increasing). Returns the witnesses and the step count.
pub fn flow_witness(
    model: &OrbitModel,
    h: &ComplexMatrix,
    times: &[f64],
    sign: f64,
) -> Result<(Vec<ComplexMatrix>, usize), CanonicalError> {
    let n = model.n();
    let id = ComplexMatrix::identity(n);
    let mut out = Vec::with_capacity(times.len());
    let mut cur = h.clone();
    let mut t = 0.0;
    let mut dt: f64 = 0.05;
    let mut steps = 0usize;
    let domain = |e: CanonicalError, t: f64| -> CanonicalError {
        match e {
            CanonicalError::Orbit(OrbitError::Linalg(_)) | CanonicalError::Potential(_) if sign > 0.0 => {
                CanonicalError::LeftDomain(t)
            }
            other => other,
        }
    };
    for &target in times {
        while target - t > 1e-14 {
            let k1 = generator_at(model, &cur, sign).map_err(|e| domain(e, t))?;
            let speed = k1.max_abs();
            if speed < 1e-300 {
                t = target;
                break;
            }
            let mut accepted = false;
            while !accepted {
                // keep the exponentials of each stage moderate
                dt = dt.min(0.5 / speed);
                let last = target - t <= dt;
                let step = if last { target - t } else { dt };
                let attempt = || -> Result<(ComplexMatrix, ComplexMatrix), CanonicalError> {
                    let big = cf4_step(model, &cur, &k1, step, sign)?;
                    let half = cf4_step(model, &cur, &k1, 0.5 * step, sign)?;
                    let k1h = generator_at(model, &half, sign)?;
                    let small = cf4_step(model, &half, &k1h, 0.5 * step, sign)?;
                    let delta = &(&small.inverse()? * &big) - &id;
                    Ok((small, delta))
                };
                let ratio = match attempt() {
                    Ok((small, delta)) => {
                        let err = delta.max_abs();
                        let allowed = TOL.flow_rel * step * speed
                            + 64.0 * f64::EPSILON * cur.max_abs() * cur.inverse()?.max_abs();
                        let ratio = err / allowed;
                        if ratio <= 1.0 {
                            // local extrapolation, applied in 𝔨^ℂ to stay on the group
                            let d = (&delta + &model.ctx.theta_sigma(&delta)).scale_re(0.5);
                            let d = &d - &id.scale(d.trace() / n as f64);
                            cur = &small * &matrix_exp(&d.scale_re(1.0 / 15.0))?;
                            t += step;
                            steps += 1;
                            accepted = true;
                            if !last {
                                dt *= (0.9 * ratio.max(1e-10).powf(-0.2)).clamp(0.2, 2.0);
                            }
                        }
                        ratio
                    }
                    Err(e) if step < 1e3 * TOL.flow_min_step => return Err(domain(e, t)),
                    Err(_) => f64::INFINITY,
                };
                if !accepted {
                    dt = step * (0.9 * ratio.powf(-0.2)).clamp(0.2, 1.0);
                    if dt < TOL.flow_min_step {
                        return Err(CanonicalError::StepCollapse(dt));
                    }
                }
            }
        }
        out.push(cur.clone());
    }
    Ok((out, steps))
}

/// Φ_t(p) for the Liouville field Y (t < 0 flows backward).
pub fn flow_y(model: &OrbitModel, p: &OrbitPoint, t: f64) -> Result<FlowResult, CanonicalError> {
    let h = &p.witness()?.h;
    if t == 0.0 {
        return Ok(FlowResult {
            endpoint: p.clone(),
            time: 0.0,
            steps: 0,
            converged: true,
            limit_point: None,
            asymptotic_vector: None,
        });
    }
    let sign = t.signum();
    let (hs, steps) = flow_witness(model, h, &[t.abs()], sign)?;
    Ok(FlowResult {
        endpoint: model.point_projected(&hs[0])?,
        time: t,
        steps,
        converged: true,
        limit_point: None,
        asymptotic_vector: None,
    })
}

/// Least-squares fit of samples X(u_k) by a polynomial of the given degree
/// in u; returns the coefficient matrices and the max residual.
fn poly_fit(us: &[f64], xs: &[ComplexMatrix], degree: usize) -> Result<(Vec<ComplexMatrix>, f64), CanonicalError> {
    let n = xs[0].n();
    let rows: Vec<Vec<f64>> = us.iter().map(|&u| (0..=degree).map(|k| u.powi(k as i32)).collect()).collect();
    let a = RealMatrix::from_rows(&rows);
    let data: Vec<Vec<f64>> = xs.iter().map(ComplexMatrix::to_real_vec).collect();
    let len = data[0].len();
    let mut coeffs = vec![vec![0.0; len]; degree + 1];
    let mut residual: f64 = 0.0;
    for e in 0..len {
        let b: Vec<f64> = data.iter().map(|d| d[e]).collect();
        let sol = lstsq_real(&a, &b)?;
        residual = residual.max(sol.residual);
        for (row, x) in coeffs.iter_mut().zip(&sol.x) {
            row[e] = *x;
        }
    }
    Ok((coeffs.iter().map(|c| ComplexMatrix::from_real_vec(n, c)).collect(), residual))
}

/// Orthonormal frame of T_qL = {[k, q] : k ∈ 𝔨} for [`frame_inner`].
pub fn lagrangian_frame(model: &OrbitModel, q: &ComplexMatrix) -> Vec<ComplexMatrix> {
    let raw: Vec<ComplexMatrix> = model.ctx.basis_k.iter().map(|k| k.commutator(q)).collect();
    let cols: Vec<Vec<f64>> = raw.iter().map(ComplexMatrix::to_real_vec).collect();
    let mut out: Vec<ComplexMatrix> = Vec::new();
    for i in independent_subset(&cols, TOL.frame_rank) {
        let mut w = raw[i].clone();
        for _ in 0..2 {
            for o in &out {
                let d = frame_inner(&w, o);
                w -= &o.scale_re(d);
            }
        }
        let norm = frame_inner(&w, &w).sqrt();
        out.push(w.scale_re(1.0 / norm));
    }
    out
}

/// Backward horizons used by the asymptotic fit.
#[derive(Clone, Copy, Debug)]
pub struct NaganoOptions {
    pub first_horizon: f64,
    pub spacing: f64,
    pub samples: usize,
    pub degree: usize,
}

impl Default for NaganoOptions {
    fn default() -> Self {
        Self {
            first_horizon: 3.0,
            spacing: 0.5,
            samples: 10,
            degree: 7,
        }
    }
}

/// Smallest eigenvalue gap of the orbit spec; flows on near-degenerate
/// orbits lose accuracy and are rejected.
pub fn check_gap(model: &OrbitModel) -> Result<(), CanonicalError> {
    let gap = model
        .roots
        .positive_roots
        .iter()
        .map(|r| r.2)
        .fold(f64::INFINITY, f64::min);
    if gap < 1e-3 {
        return Err(CanonicalError::NearDegenerate(gap));
    }
    Ok(())
}

pub fn nagano_map(model: &OrbitModel, p: &OrbitPoint) -> Result<CotangentPoint, CanonicalError> {
    nagano_map_with(model, p, NaganoOptions::default())
}

pub fn nagano_map_with(model: &OrbitModel, p: &OrbitPoint, opts: NaganoOptions) -> Result<CotangentPoint, CanonicalError> {
    check_gap(model)?;
    let h = &p.witness()?.h;
    let mut first = opts.first_horizon;
    loop {
        let times: Vec<f64> = (0..opts.samples).map(|k| first + opts.spacing * k as f64).collect();
        let (hs, _) = flow_witness(model, h, &times, -1.0)?;
        let values: Vec<ComplexMatrix> = hs
            .iter()
            .map(|g| model.point_projected(g).map(|q| q.value))
            .collect::<Result<_, _>>()?;
        // Φ₋ₜ(p) = q + e^{−T} v + O(e^{−2T}); fit in u = e^{−(T − first)}
        let us: Vec<f64> = times.iter().map(|t| (first - t).exp()).collect();
        let (coeffs, residual) = poly_fit(&us, &values, opts.degree)?;
        let scale = p.value.max_abs().max(1.0);
        let horizon = *times.last().unwrap_or(&first);
        if residual > 1e-9 * scale {
            if horizon + 4.0 > TOL.flow_horizon {
                return Err(CanonicalError::NoConvergence(horizon));
            }
            first += 4.0;
            continue;
        }
        // the fit is Hermitian up to rounding
        let q = (&coeffs[0] + &coeffs[0].adjoint()).scale_re(0.5);
        let v = (&coeffs[1] + &coeffs[1].adjoint()).scale_re(first.exp() * 0.5);
        let frame = lagrangian_frame(model, &q);
        let covector = if v.max_abs() < 1e-300 {
            vec![0.0; frame.len()]
        } else {
            let tv = model.generator_of(&q, &v)?;
            frame
                .iter()
                .map(|w| {
                    let tw = model.generator_of(&q, w)?;
                    Ok(COVECTOR_SIGN * model.omega(&tv, &tw)?)
                })
                .collect::<Result<Vec<f64>, OrbitError>>()?
        };
        let mut xi = ComplexMatrix::zeros(model.n());
        for (c, w) in covector.iter().zip(&frame) {
            xi += &w.scale_re(*c);
        }
        return Ok(CotangentPoint {
            base: OrbitPoint::raw(q),
            frame,
            covector,
            xi,
            horizon,
            fit_residual: residual,
        });
    }
}

/// dλ(δ₁, δ₂) = ⟨δ₁ξ, δ₂q⟩ − ⟨δ₂ξ, δ₁q⟩ for λ = ⟨ξ, dq⟩.
pub fn dlambda(dq1: &ComplexMatrix, dxi1: &ComplexMatrix, dq2: &ComplexMatrix, dxi2: &ComplexMatrix) -> f64 {
    frame_inner(dxi1, dq2) - frame_inner(dxi2, dq1)
}

/// Central-difference derivative of ψ along the witness direction c ∈ 𝔨^ℂ.
pub fn psi_derivative(
    model: &OrbitModel,
    p: &OrbitPoint,
    c: &ComplexMatrix,
    step: f64,
) -> Result<(ComplexMatrix, ComplexMatrix), CanonicalError> {
    let h = &p.witness()?.h;
    let plus = model.point_projected(&(h * &matrix_exp(&c.scale_re(step))?))?;
    let minus = model.point_projected(&(h * &matrix_exp(&c.scale_re(-step))?))?;
    let a = nagano_map(model, &plus)?;
    let b = nagano_map(model, &minus)?;
    let inv = 0.5 / step;
    Ok((
        (&a.base.value - &b.base.value).scale_re(inv),
        (&a.xi - &b.xi).scale_re(inv),
    ))
}

/// |dλ(ψ_* t₁, ψ_* t₂) − ω(t₁, t₂)| by central differences.
pub fn check_symplecto(
    model: &OrbitModel,
    p: &OrbitPoint,
    t1: &TangentVector,
    t2: &TangentVector,
    step: f64,
) -> Result<f64, CanonicalError> {
    let c1 = ComplexMatrix::real_combination(&model.frame_generators, &model.frame_coords(p, &t1.value)?);
    let c2 = ComplexMatrix::real_combination(&model.frame_generators, &model.frame_coords(p, &t2.value)?);
    let (dq1, dx1) = psi_derivative(model, p, &c1, step)?;
    let (dq2, dx2) = psi_derivative(model, p, &c2, step)?;
    Ok((dlambda(&dq1, &dx1, &dq2, &dx2) - model.omega(t1, t2)?).abs())
}

/// ν(p)(k_j) = ¼·Re killing(−i·(i𝔨-part of p), k_j) on the 𝔨 basis, the
/// momentum map of the K action for ω with ι_{[c,p]}ω = −dν_c.
pub fn momentum_nu(model: &OrbitModel, p: &ComplexMatrix) -> Vec<f64> {
    let ik = model.ctx.component_split(p).ik_part;
    let a = ik.scale(-I);
    model
        .ctx
        .basis_k
        .iter()
        .map(|k| KAEHLER_SCALE * model.ctx.kill(&a, k).re)
        .collect()
}

/// μ(q, ξ)(k_j) = ⟨ξ, [k_j, q]⟩.
pub fn momentum_mu(model: &OrbitModel, cp: &CotangentPoint) -> Vec<f64> {
    model
        .ctx
        .basis_k
        .iter()
        .map(|k| frame_inner(&cp.xi, &k.commutator(&cp.base.value)))
        .collect()
}

/// max_j |ν(p)(k_j) − μ(ψ(p))(k_j)|.
pub fn check_momentum_compat(model: &OrbitModel, p: &OrbitPoint) -> Result<f64, CanonicalError> {
    let cp = nagano_map(model, p)?;
    let nu = momentum_nu(model, &p.value);
    let mu = momentum_mu(model, &cp);
    Ok(nu.iter().zip(&mu).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
}

/// k·p for k ∈ K, carrying the witness k·h.
pub fn act_k(model: &OrbitModel, k: &ComplexMatrix, p: &OrbitPoint) -> Result<OrbitPoint, CanonicalError> {
    Ok(model.point_projected(&(k * &p.witness()?.h))?)
}

/// σ(p), carrying the witness (h†)⁻¹.
pub fn act_sigma(model: &OrbitModel, p: &OrbitPoint) -> Result<OrbitPoint, CanonicalError> {
    Ok(model.point_projected(&p.witness()?.h.adjoint().inverse()?)?)
}

/// Distance between two cotangent points (base and ambient covector).
pub fn cotangent_dist(a: &CotangentPoint, b: &CotangentPoint) -> f64 {
    a.base.value.dist(&b.base.value).max(a.xi.dist(&b.xi))
}

/// The cotangent lift of k ∈ K: (k q k†, k ξ k†).
pub fn lift_k(k: &ComplexMatrix, cp: &CotangentPoint) -> (ComplexMatrix, ComplexMatrix) {
    let ka = k.adjoint();
    (&(k * &cp.base.value) * &ka, &(k * &cp.xi) * &ka)
}

/// Unit check that the base lies on L (fixed by the involution).
pub fn base_on_l(model: &OrbitModel, cp: &CotangentPoint) -> f64 {
    model.ctx.sigma(&cp.base.value).dist(&cp.base.value)
}

/// max(|δq|, |δξ − ξ|) for the central difference of ψ along the flow of Y
/// at t = 0. ψ_*Y is the Euler field ξ·∂/∂ξ, so both vanish.
pub fn check_euler(model: &OrbitModel, p: &OrbitPoint, step: f64) -> Result<f64, CanonicalError> {
    let cp = nagano_map(model, p)?;
    let plus = nagano_map(model, &flow_y(model, p, step)?.endpoint)?;
    let minus = nagano_map(model, &flow_y(model, p, -step)?.endpoint)?;
    let inv = 0.5 / step;
    let dq = (&plus.base.value - &minus.base.value).scale_re(inv);
    let dxi = (&plus.xi - &minus.xi).scale_re(inv);
    Ok(dq.max_abs().max(dxi.dist(&cp.xi)))
}

/// |Φ_s(Φ_t(p)) − Φ_{s+t}(p)|.
pub fn check_flow_additivity(model: &OrbitModel, p: &OrbitPoint, s: f64, t: f64) -> Result<f64, CanonicalError> {
    let two = flow_y(model, &flow_y(model, p, t)?.endpoint, s)?;
    let one = flow_y(model, p, s + t)?;
    Ok(two.endpoint.value.dist(&one.endpoint.value))
}

/// |ω(Φ_t* t₁, Φ_t* t₂) − eᵗω(t₁, t₂)| / |eᵗω(t₁, t₂)| with the transported
/// vectors taken by central differences along witness directions c₁, c₂.
pub fn check_liouville_scaling(
    model: &OrbitModel,
    p: &OrbitPoint,
    c1: &ComplexMatrix,
    c2: &ComplexMatrix,
    t: f64,
    step: f64,
) -> Result<f64, CanonicalError> {
    let h = &p.witness()?.h;
    let end = flow_y(model, p, t)?.endpoint;
    let transport = |c: &ComplexMatrix| -> Result<TangentVector, CanonicalError> {
        let mut image = [ComplexMatrix::zeros(model.n()), ComplexMatrix::zeros(model.n())];
        for (slot, sgn) in image.iter_mut().zip([1.0, -1.0]) {
            let start = model.point_projected(&(h * &matrix_exp(&c.scale_re(sgn * step))?))?;
            *slot = flow_y(model, &start, t)?.endpoint.value;
        }
        let v = (&image[0] - &image[1]).scale_re(0.5 / step);
        Ok(model.generator_of_within(&end.value, &v, 1e-5)?)
    };
    let before = model.omega(&model.pushforward(p, c1)?, &model.pushforward(p, c2)?)?;
    let after = model.omega(&transport(c1)?, &transport(c2)?)?;
    let want = t.exp() * before;
    Ok((after - want).abs() / want.abs().max(1e-300))
}

/// Generator c ∈ 𝔨^ℂ at the witness of q with Π_*(h_q c) = v, where v is the
/// normal vector to L with ω_q(v, w_j) = covector_j / COVECTOR_SIGN.
fn asymptotic_generator(model: &OrbitModel, qp: &OrbitPoint, cp: &CotangentPoint) -> Result<ComplexMatrix, CanonicalError> {
    let frame = model.frame(qp)?;
    let mut rows = Vec::with_capacity(2 * cp.frame.len());
    let mut rhs = Vec::with_capacity(2 * cp.frame.len());
    for (w, cov) in cp.frame.iter().zip(&cp.covector) {
        let tw = model.generator_of(&qp.value, w)?;
        let jw = model.complex_structure_j(qp, &tw)?;
        rows.push(frame.iter().map(|f| model.omega(f, &tw)).collect::<Result<Vec<f64>, _>>()?);
        rhs.push(cov / COVECTOR_SIGN);
        rows.push(frame.iter().map(|f| model.omega(f, &jw)).collect::<Result<Vec<f64>, _>>()?);
        rhs.push(0.0);
    }
    let sol = lstsq_real(&RealMatrix::from_rows(&rows), &rhs)?;
    Ok(ComplexMatrix::real_combination(&model.frame_generators, &sol.x))
}

/// ψ⁻¹(q, s·ξ) by the forward flow: start at Π(h_q·exp(e^{−T}·s·c)) on the
/// unstable manifold of q and flow Y for time T.
pub fn psi_inverse(model: &OrbitModel, cp: &CotangentPoint, s: f64, horizon: f64) -> Result<OrbitPoint, CanonicalError> {
    let qp = model.find_witness(&cp.base.value)?;
    if s == 0.0 || cp.xi.max_abs() < 1e-300 {
        return Ok(qp);
    }
    let c = asymptotic_generator(model, &qp, cp)?;
    let start = &qp.witness()?.h * &matrix_exp(&c.scale_re(s * (-horizon).exp()))?;
    let end = flow_y(model, &model.point_projected(&start)?, horizon)?.endpoint;
    if !model.in_dense_orbit(&end.value) {
        return Err(CanonicalError::LeftDomain(horizon));
    }
    Ok(end)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::AlgebraContext;
    use crate::linalg::{c, C64};

    fn su2() -> OrbitModel {
        OrbitModel::new(AlgebraContext::weyl(2).unwrap(), &[1.0, -1.0]).unwrap()
    }

    fn rotation(z: C64) -> ComplexMatrix {
        let j0 = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        matrix_exp(&j0.scale(z)).unwrap()
    }

    #[test]
    fn backward_flow_scales_height() {
        let m = su2();
        let b: f64 = 0.5;
        let p = m.point_projected(&rotation(c(0.2, b))).unwrap();
        let z0 = p.value[(1, 0)].im;
        let f = flow_y(&m, &p, -1.5).unwrap();
        let z1 = f.endpoint.value[(1, 0)].im;
        assert!((z1 - (-1.5f64).exp() * z0).abs() < 1e-9, "{z1} {}", (-1.5f64).exp() * z0);
    }

    #[test]
    fn su2_nagano_golden() {
        let m = su2();
        let (a, b) = (0.3, 0.4);
        let p = m.point_projected(&rotation(c(a, b))).unwrap();
        let cp = nagano_map(&m, &p).unwrap();
        let theta = 2.0 * a;
        let want_q = ComplexMatrix::from_real_rows(&[&[theta.cos(), theta.sin()], &[theta.sin(), -theta.cos()]]);
        assert!(cp.base.value.dist(&want_q) < 1e-8, "{:?}", cp.base.value);
        // p_θ = ⟨ξ, ∂θ q⟩
        let dtheta = ComplexMatrix::from_real_rows(&[&[-theta.sin(), theta.cos()], &[theta.cos(), theta.sin()]]);
        let p_theta = frame_inner(&cp.xi, &dtheta);
        assert!((p_theta + (2.0 * b).tanh()).abs() < 1e-6, "{p_theta}");
    }

    #[test]
    fn euler_and_inverse() {
        let m = su2();
        let p = m.point_projected(&rotation(c(0.3, 0.4))).unwrap();
        assert!(check_euler(&m, &p, 1e-3).unwrap() < 1e-5);
        assert!(check_flow_additivity(&m, &p, 0.4, -0.7).unwrap() < 1e-7);
        let j0 = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        for t in [-1.0, -0.3, 0.3] {
            let res = check_liouville_scaling(&m, &p, &j0, &j0.times_i(), t, 1e-4).unwrap();
            assert!(res < 1e-4, "{t} {res}");
        }
        let cp = nagano_map(&m, &p).unwrap();
        let back = psi_inverse(&m, &cp, 1.0, 10.0).unwrap();
        assert!(back.value.dist(&p.value) < 1e-3, "{}", back.value.dist(&p.value));
        let half = psi_inverse(&m, &cp, 0.5, 10.0).unwrap();
        let cph = nagano_map(&m, &half).unwrap();
        assert!(cph.xi.dist(&cp.xi.scale_re(0.5)) < 1e-3);
    }
}
