// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! The section 1-form ζ on K^ℂ(x), its real part β on X*, the Kähler
//! potential obtained by line integration of ½ Re ζ, and the Liouville
//! field Y = ½ grad h.

use thiserror::Error;

use crate::lie::LieError;
use crate::linalg::{iwasawa_algebra_split, matrix_exp, matrix_log, ComplexMatrix, LinalgError, C64};
use crate::orbit::{OrbitError, OrbitModel, OrbitPoint, PointKind, TangentVector, KAEHLER_SCALE};
use crate::tolerances::TOL;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PotentialError {
    #[error("quadrature error estimate {0:e} above threshold")]
    QuadratureFailure(f64),
    #[error("Kaehler metric is degenerate (pivot {0:e})")]
    MetricDegenerate(f64),
    #[error("algebra element is not in k^C (defect {0:e})")]
    NotInKc(f64),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug)]
pub struct PotentialEvaluation {
    pub point: OrbitPoint,
    pub value: f64,
    pub path_nodes: usize,
    pub estimated_error: f64,
}

/// ζ at a witnessed point as the linear functional c ↦ κ·tr(A·c).
#[derive(Clone, Debug)]
pub struct ZetaForm {
    a: ComplexMatrix,
    scale: f64,
}

impl ZetaForm {
    pub fn eval(&self, c: &ComplexMatrix) -> C64 {
        self.a.trace_product(c) * self.scale
    }
}

/// With h·s† = g·m (m = l·e): ζ(c) = killing(y − m·y·m⁻¹, (m s)·c·(m s)⁻¹).
pub fn zeta_form(model: &OrbitModel, p: &OrbitPoint) -> Result<ZetaForm, PotentialError> {
    let w = p.witness()?;
    let m = w.factors.le();
    let m_inv = m.inverse()?;
    let yt = &model.y - &(&(&m * &model.y) * &m_inv);
    let s = model.ctx.conjugator();
    let ms = &m * &s;
    let ms_inv = &s.adjoint() * &m_inv;
    Ok(ZetaForm {
        a: &(&ms_inv * &yt) * &ms,
        scale: model.ctx.killing_scale,
    })
}

fn kc_defect(model: &OrbitModel, c: &ComplexMatrix) -> f64 {
    model.ctx.theta_sigma(c).dist(c)
}

/// ζ_{h·x}(h_* c) for h ∈ K^ℂ and c ∈ 𝔨^ℂ.
pub fn zeta(model: &OrbitModel, h: &ComplexMatrix, c: &ComplexMatrix) -> Result<C64, PotentialError> {
    let defect = model.ctx.subgroup_defect(h);
    if !(defect < TOL.subgroup * h.max_abs().max(1.0)) {
        return Err(LieError::NotInSubgroup(defect).into());
    }
    let d = kc_defect(model, c);
    if d > 1e-10 * c.max_abs().max(1.0) {
        return Err(PotentialError::NotInKc(d));
    }
    let p = model.point_projected(h)?;
    Ok(zeta_form(model, &p)?.eval(c))
}

/// ζ by its definition ⟨Π(h·x) − h·x, h·c·h⁻¹⟩, without the Iwasawa shortcut.
pub fn zeta_direct(model: &OrbitModel, h: &ComplexMatrix, c: &ComplexMatrix) -> Result<C64, PotentialError> {
    let p = model.point_projected(h)?;
    let w = p.witness()?;
    let hx = &(h * &model.x) * &w.h_inv;
    let hc = &(h * c) * &w.h_inv;
    Ok(model.ctx.killing(&(&p.value - &hx), &hc)?)
}

/// β(t_i) = Re ζ(c_i) on the frame.
pub fn beta_frame(model: &OrbitModel, p: &OrbitPoint) -> Result<Vec<f64>, PotentialError> {
    let z = zeta_form(model, p)?;
    Ok(model.frame_generators.iter().map(|c| z.eval(c).re).collect())
}

/// β(t) for a tangent vector of X at a witnessed projected point.
pub fn beta(model: &OrbitModel, p: &OrbitPoint, t: &TangentVector) -> Result<f64, PotentialError> {
    if p.witness()?.kind != PointKind::Projected {
        return Err(OrbitError::MissingWitness.into());
    }
    let coords = model.frame_coords(p, &t.value)?;
    let b = beta_frame(model, p)?;
    Ok(coords.iter().zip(&b).map(|(x, y)| x * y).sum())
}

/// Adaptive Simpson on [a, b].
pub struct Quadrature {
    pub value: f64,
    pub nodes: usize,
    pub error: f64,
}

pub fn adaptive_simpson(
    f: &mut dyn FnMut(f64) -> Result<f64, PotentialError>,
    a: f64,
    b: f64,
    tol: f64,
    max_nodes: usize,
) -> Result<Quadrature, PotentialError> {
    let fa = f(a)?;
    let fm = f(0.5 * (a + b))?;
    let fb = f(b)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut nodes = 3;
    let mut error = 0.0;
    let value = simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0, max_nodes, &mut nodes, &mut error)?;
    Ok(Quadrature { value, nodes, error })
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &mut dyn FnMut(f64) -> Result<f64, PotentialError>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
    max_nodes: usize,
    nodes: &mut usize,
    error: &mut f64,
) -> Result<f64, PotentialError> {
    let m = 0.5 * (a + b);
    let flm = f(0.5 * (a + m))?;
    let frm = f(0.5 * (m + b))?;
    *nodes += 2;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let diff = left + right - whole;
    if diff.abs() <= 15.0 * tol || depth >= 40 || *nodes >= max_nodes {
        *error += diff.abs() / 15.0;
        return Ok(left + right + diff / 15.0);
    }
    let l = simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_nodes, nodes, error)?;
    let r = simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_nodes, nodes, error)?;
    Ok(l + r)
}

/// ∫₀¹ ½ Re ζ(γ(t), c) dt along γ(t) = start·exp(t c).
pub fn integrate_ray(model: &OrbitModel, start: &ComplexMatrix, c: &ComplexMatrix) -> Result<Quadrature, PotentialError> {
    let mut f = |t: f64| -> Result<f64, PotentialError> {
        let g = start * &matrix_exp(&c.scale_re(t))?;
        let p = model.point_projected(&g)?;
        Ok(0.5 * zeta_form(model, &p)?.eval(c).re)
    };
    let q = adaptive_simpson(&mut f, 0.0, 1.0, TOL.quad_abs, TOL.quad_max_nodes)?;
    if q.error > TOL.quad_fail {
        return Err(PotentialError::QuadratureFailure(q.error));
    }
    Ok(q)
}

/// Potential h(p) by the Cartan ray u·exp(t·i·eta) from K(x) to the witness.
pub fn potential(model: &OrbitModel, p: &OrbitPoint) -> Result<PotentialEvaluation, PotentialError> {
    let h = &p.witness()?.h;
    let (u, eta) = model.ctx.cartan_decompose_kc(h)?;
    let q = integrate_ray(model, &u, &eta.times_i())?;
    Ok(PotentialEvaluation {
        point: p.clone(),
        value: q.value,
        path_nodes: q.nodes,
        estimated_error: q.error,
    })
}

/// The same potential along a two-segment path bent by `detour` ∈ 𝔨: the ray
/// to m = u·exp(i(eta/2 + detour)), then m·exp(t·log(m⁻¹h)).
pub fn potential_bent(model: &OrbitModel, p: &OrbitPoint, detour: &ComplexMatrix) -> Result<f64, PotentialError> {
    let h = &p.witness()?.h;
    let (u, eta) = model.ctx.cartan_decompose_kc(h)?;
    let mid = &u * &matrix_exp(&(&eta.scale_re(0.5) + detour).times_i())?;
    let first = potential(model, &model.point_projected(&mid)?)?.value;
    let step = matrix_log(&(&mid.inverse()? * h))?;
    let second = integrate_ray(model, &mid, &step)?;
    Ok(first + second.value)
}

/// G_ij = ω(t_i, J t_j) on the frame.
pub fn kaehler_gram(model: &OrbitModel, p: &OrbitPoint) -> Result<Vec<Vec<f64>>, PotentialError> {
    let frame = model.frame(p)?;
    let fj = model.frame_j(p)?;
    let d = frame.len();
    let mut g = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..d {
            g[i][j] = model.omega(&frame[i], &fj[j])?;
        }
    }
    Ok(g)
}

/// Solve G·x = b for symmetric positive definite G by Cholesky.
pub fn spd_solve(g: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>, PotentialError> {
    let d = g.len();
    let scale = (0..d).fold(0.0f64, |m, i| m.max(g[i][i].abs())).max(f64::MIN_POSITIVE);
    let mut l = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..=i {
            let sym = 0.5 * (g[i][j] + g[j][i]);
            let s: f64 = sym - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            if i == j {
                if !(s > 1e-12 * scale) {
                    return Err(PotentialError::MetricDegenerate(s));
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    let mut z = vec![0.0; d];
    for i in 0..d {
        z[i] = (b[i] - (0..i).map(|k| l[i][k] * z[k]).sum::<f64>()) / l[i][i];
    }
    let mut x = vec![0.0; d];
    for i in (0..d).rev() {
        x[i] = (z[i] - (i + 1..d).map(|k| l[k][i] * x[k]).sum::<f64>()) / l[i][i];
    }
    Ok(x)
}

/// [`kaehler_gram`] evaluated after conjugating by the unitary factor g, where
/// p becomes the diagonal y and the Killing pairing is a weighted diagonal.
pub fn kaehler_gram_reduced(model: &OrbitModel, p: &OrbitPoint) -> Result<Vec<Vec<f64>>, PotentialError> {
    let w = p.witness()?;
    if w.kind != PointKind::Projected {
        return kaehler_gram(model, p);
    }
    let g = &w.factors.unitary;
    let a = &g.adjoint() * &w.h;
    let a_inv = &w.h_inv * g;
    let n = model.n();
    let ys: Vec<f64> = (0..n).map(|k| model.y[(k, k)].re).collect();
    let mut us = Vec::with_capacity(model.frame_generators.len());
    let mut vs = Vec::with_capacity(model.frame_generators.len());
    for c in &model.frame_generators {
        let wc = &(&a * c) * &a_inv;
        vs.push(iwasawa_algebra_split(&wc.times_i()).0);
        us.push(iwasawa_algebra_split(&wc).0);
    }
    let scale = -KAEHLER_SCALE * model.ctx.killing_scale;
    let d = us.len();
    let mut out = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..d {
            let (u, v) = (&us[i], &vs[j]);
            let mut acc = 0.0;
            for k in 0..n {
                let mut diag = C64::new(0.0, 0.0);
                for l in 0..n {
                    diag += u[(k, l)] * v[(l, k)] - v[(k, l)] * u[(l, k)];
                }
                acc += ys[k] * diag.im;
            }
            out[i][j] = scale * acc;
        }
    }
    Ok(out)
}

/// Frame coordinates of Y = ½ grad h: G·y = ½ dh with dh = ½ β.
pub fn liouville_coords(model: &OrbitModel, p: &OrbitPoint) -> Result<Vec<f64>, PotentialError> {
    let g = kaehler_gram_reduced(model, p)?;
    let rhs: Vec<f64> = beta_frame(model, p)?.iter().map(|b| 0.25 * b).collect();
    spd_solve(&g, &rhs)
}

pub fn liouville_field(model: &OrbitModel, p: &OrbitPoint) -> Result<TangentVector, PotentialError> {
    let y = liouville_coords(model, p)?;
    Ok(TangentVector::combination(&p.value, &model.frame(p)?, &y))
}

/// c_Y ∈ 𝔨^ℂ with Y = Π_*(h_* c_Y).
pub fn liouville_generator(model: &OrbitModel, p: &OrbitPoint) -> Result<ComplexMatrix, PotentialError> {
    let y = liouville_coords(model, p)?;
    Ok(ComplexMatrix::real_combination(&model.frame_generators, &y))
}

/// Fourth-order central second difference of f at 0.
fn second_difference(f: &mut dyn FnMut(f64) -> Result<f64, PotentialError>, step: f64) -> Result<f64, PotentialError> {
    let f0 = f(0.0)?;
    let (p1, m1, p2, m2) = (f(step)?, f(-step)?, f(2.0 * step)?, f(-2.0 * step)?);
    Ok((16.0 * (p1 + m1) - (p2 + m2) - 30.0 * f0) / (12.0 * step * step))
}

/// ½Δ of w ↦ h(Π(h_p·exp(w·c))) at w = 0 next to ω(Π_*c, Π_*(ic)); the two
/// agree when ω = i∂∂̄h.
pub fn kaehler_identity(model: &OrbitModel, p: &OrbitPoint, c: &ComplexMatrix, step: f64) -> Result<(f64, f64), PotentialError> {
    let h = p.witness()?.h.clone();
    let along = |dir: C64| {
        let h = h.clone();
        move |s: f64| -> Result<f64, PotentialError> {
            let w = &h * &matrix_exp(&c.scale(dir * s))?;
            Ok(potential(model, &model.point_projected(&w)?)?.value)
        }
    };
    let lap = second_difference(&mut along(C64::new(1.0, 0.0)), step)? + second_difference(&mut along(C64::new(0.0, 1.0)), step)?;
    let t1 = model.pushforward(p, c)?;
    let t2 = model.pushforward(p, &c.times_i())?;
    Ok((0.5 * lap, model.omega(&t1, &t2)?))
}

/// Hessian of the potential at x on the directions exp(i·s·η)·x, η running
/// over 𝔨 modulo the isotropy of x (Richardson-corrected second differences).
pub fn hessian_at_base(model: &OrbitModel, step: f64) -> Result<Vec<Vec<f64>>, PotentialError> {
    let images: Vec<Vec<f64>> = model.ctx.basis_k.iter().map(|k| k.commutator(&model.x).to_real_vec()).collect();
    let dirs: Vec<ComplexMatrix> = crate::linalg::independent_subset(&images, TOL.frame_rank)
        .into_iter()
        .map(|i| model.ctx.basis_k[i].clone())
        .collect();
    let quad = |eta: &ComplexMatrix| -> Result<f64, PotentialError> {
        let at = |s: f64| -> Result<f64, PotentialError> {
            let h = matrix_exp(&eta.scale_re(s).times_i())?;
            Ok(potential(model, &model.point_projected(&h)?)?.value)
        };
        Ok((16.0 * at(step)? - at(2.0 * step)?) / (12.0 * step * step))
    };
    let diag: Vec<f64> = dirs.iter().map(&quad).collect::<Result<_, _>>()?;
    let d = dirs.len();
    let mut out = vec![vec![0.0; d]; d];
    for i in 0..d {
        out[i][i] = 2.0 * diag[i];
        for j in 0..i {
            let q = quad(&(&dirs[i] + &dirs[j]))?;
            out[i][j] = q - diag[i] - diag[j];
            out[j][i] = out[i][j];
        }
    }
    Ok(out)
}
