// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! The four worked models, their charts, and seeded samplers.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::gz::OrbitClass;
use crate::lie::{AlgebraContext, LieError};
use crate::linalg::{c, matrix_exp, ComplexMatrix, C64};
use crate::orbit::{OrbitError, OrbitModel, OrbitPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Su2Weyl,
    Su3Weyl,
    Su3Flags,
    Sl2cWick,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::Su2Weyl, ModelKind::Su3Weyl, ModelKind::Su3Flags, ModelKind::Sl2cWick];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Su2Weyl => "su2-weyl",
            ModelKind::Su3Weyl => "su3-weyl",
            ModelKind::Su3Flags => "su3-flags",
            ModelKind::Sl2cWick => "sl2c-wick",
        }
    }

    pub fn default_spec(self) -> Vec<f64> {
        match self {
            ModelKind::Su2Weyl | ModelKind::Sl2cWick => vec![1.0, -1.0],
            ModelKind::Su3Weyl => vec![1.0, 0.3, -1.3],
            ModelKind::Su3Flags => vec![1.0, 0.0, -1.0],
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            ModelKind::Su2Weyl | ModelKind::Sl2cWick => 2,
            ModelKind::Su3Weyl | ModelKind::Su3Flags => 3,
        }
    }

    pub fn build(self, spec: &[f64]) -> Result<OrbitModel, OrbitError> {
        let ctx = match self {
            ModelKind::Su2Weyl | ModelKind::Sl2cWick => AlgebraContext::weyl(2)?,
            ModelKind::Su3Weyl => AlgebraContext::weyl(3)?,
            ModelKind::Su3Flags => AlgebraContext::tau(),
        };
        if spec.len() != self.dimension() {
            return Err(LieError::DimensionMismatch(spec.len(), self.dimension()).into());
        }
        OrbitModel::new(ctx, spec)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelKind::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown model `{s}` (expected su2-weyl, su3-weyl, su3-flags or sl2c-wick)"))
    }
}

/// exp(z·J₀) with J₀ = [[0, −1], [1, 0]], the su(2) chart witness at z = a + ib.
pub fn su2_rotation(z: C64) -> ComplexMatrix {
    let j0 = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
    matrix_exp(&j0.scale(z)).expect("2×2 exponential is finite")
}

pub fn su2_chart_point(model: &OrbitModel, a: f64, b: f64) -> Result<OrbitPoint, OrbitError> {
    model.point_projected(&su2_rotation(c(a, b)))
}

/// Pauli coordinates (e, f, z) of p = e·σz + f·σx + z·σy.
pub fn pauli_coords(p: &ComplexMatrix) -> [f64; 3] {
    [p[(0, 0)].re, p[(0, 1)].re, p[(1, 0)].im]
}

/// Cylindrical coordinates (θ, z) of a point of the su(2) sphere.
pub fn cylindrical(p: &ComplexMatrix) -> (f64, f64) {
    let [e, f, z] = pauli_coords(p);
    (f.atan2(e), z)
}

/// ∂/∂θ at the equator point of angle θ.
pub fn equator_dtheta(theta: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[-theta.sin(), theta.cos()], &[theta.cos(), theta.sin()]])
}

/// The equator point cos θ·σz + sin θ·σx.
pub fn equator_point(theta: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[theta.cos(), theta.sin()], &[theta.sin(), -theta.cos()]])
}

/// n×n grid over [0, π) × [0.05, 2].
pub fn su2_grid(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let a = std::f64::consts::PI * i as f64 / n as f64;
            let b = if n == 1 { 0.05 } else { 0.05 + 1.95 * j as f64 / (n - 1) as f64 };
            out.push((a, b));
        }
    }
    out
}

/// exp(b·diag(1, −1, 0)), the flags-curve witness.
pub fn flags_curve_witness(b: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_diag(&[b.exp(), (-b).exp(), 1.0])
}

/// Per-sample generator: the master seed picks the key, the sample index the
/// stream, so parallel and serial runs draw identical values.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian_combination(rng: &mut ChaCha20Rng, basis: &[ComplexMatrix], scale: f64) -> ComplexMatrix {
    let coeffs: Vec<f64> = basis.iter().map(|_| scale * rng.sample::<f64, _>(StandardNormal)).collect();
    ComplexMatrix::real_combination(basis, &coeffs)
}

/// A random element of K, exp of a Gaussian combination of the 𝔨 basis.
pub fn random_k(model: &OrbitModel, rng: &mut ChaCha20Rng) -> ComplexMatrix {
    let g = gaussian_combination(rng, &model.ctx.basis_k, 1.5);
    matrix_exp(&g).expect("exponential of a small anti-Hermitian matrix")
}

/// A random witness k·exp(i·η) ∈ K^ℂ with Gaussian η of the given spread.
pub fn random_witness(model: &OrbitModel, rng: &mut ChaCha20Rng, spread: f64) -> ComplexMatrix {
    let k = random_k(model, rng);
    let eta = gaussian_combination(rng, &model.ctx.basis_k, spread);
    &k * &matrix_exp(&eta.times_i()).expect("exponential of a moderate matrix")
}

pub fn random_point(model: &OrbitModel, rng: &mut ChaCha20Rng, spread: f64) -> Result<OrbitPoint, OrbitError> {
    model.point_projected(&random_witness(model, rng, spread))
}

/// A random point of the sl(2) sphere away from the poles (|z| < 0.95).
pub fn random_sphere_point(rng: &mut ChaCha20Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 && (v[2] / n).abs() < 0.95 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// A random unitary of size n, exp of a Gaussian anti-Hermitian matrix.
pub fn random_unitary(rng: &mut ChaCha20Rng, n: usize) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let z = c(rng.sample(StandardNormal), rng.sample(StandardNormal)) * 2.0;
            if i == j {
                a[(i, i)] = c(0.0, z.im);
            } else {
                a[(i, j)] = z;
                a[(j, i)] = -z.conj();
            }
        }
    }
    matrix_exp(&a).expect("exponential of an anti-Hermitian matrix")
}

fn random_vec(rng: &mut ChaCha20Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect()
}

fn orthonormalize(cols: &mut [Vec<C64>]) {
    for i in 0..cols.len() {
        for j in 0..i {
            let d: C64 = cols[j].iter().zip(&cols[i]).map(|(a, b)| a.conj() * b).sum();
            let prev = cols[j].clone();
            for (x, p) in cols[i].iter_mut().zip(&prev) {
                *x -= d * p;
            }
        }
        let n = cols[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[i].iter_mut() {
            *x /= n;
        }
    }
}

/// A point of the flags orbit (1, 0, −1) in the requested K^ℂ-orbit class,
/// built from prescribed top and bottom eigenlines.
pub fn flags_class_point(rng: &mut ChaCha20Rng, class: OrbitClass) -> ComplexMatrix {
    let e3 = vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
    let in_w = |rng: &mut ChaCha20Rng| {
        let mut v = random_vec(rng, 3);
        v[2] = c(0.0, 0.0);
        v
    };
    let (top, bottom) = match class {
        OrbitClass::EdgeB => (e3, random_vec(rng, 3)),
        OrbitClass::EdgeA => (random_vec(rng, 3), e3),
        OrbitClass::EdgeC => (in_w(rng), in_w(rng)),
        OrbitClass::FaceA => (in_w(rng), random_vec(rng, 3)),
        OrbitClass::FaceB => (random_vec(rng, 3), in_w(rng)),
        OrbitClass::OpenDense => (random_vec(rng, 3), random_vec(rng, 3)),
    };
    // the prescribed line goes first so orthonormalization keeps it
    let bottom_first = matches!(class, OrbitClass::EdgeA | OrbitClass::FaceB);
    let mut cols = if bottom_first {
        vec![bottom, top, random_vec(rng, 3)]
    } else {
        vec![top, bottom, random_vec(rng, 3)]
    };
    orthonormalize(&mut cols);
    let (u_top, u_bottom) = if bottom_first { (&cols[1], &cols[0]) } else { (&cols[0], &cols[1]) };
    ComplexMatrix::from_fn(3, |i, j| u_top[i] * u_top[j].conj() - u_bottom[i] * u_bottom[j].conj())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gz::classify_matrix;

    #[test]
    fn model_names_round_trip() {
        for m in ModelKind::ALL {
            assert_eq!(m.name().parse::<ModelKind>().unwrap(), m);
        }
        assert!("su4".parse::<ModelKind>().is_err());
    }

    #[test]
    fn chart_matches_cylindrical_profile() {
        let m = ModelKind::Su2Weyl.build(&[1.0, -1.0]).unwrap();
        let p = su2_chart_point(&m, 0.3, 0.4).unwrap();
        let (theta, z) = cylindrical(&p.value);
        assert!((theta - 0.6).abs() < 1e-12);
        assert!((z - 0.8f64.tanh()).abs() < 1e-12);
    }

    #[test]
    fn streams_are_reproducible() {
        let m = ModelKind::Su3Flags.build(&[1.0, 0.0, -1.0]).unwrap();
        let a = random_witness(&m, &mut sample_rng(7, 3), 0.5);
        let b = random_witness(&m, &mut sample_rng(7, 3), 0.5);
        let c2 = random_witness(&m, &mut sample_rng(7, 4), 0.5);
        assert_eq!(a.dist(&b), 0.0);
        assert!(a.dist(&c2) > 1e-3);
        assert!(m.ctx.in_spherical_subgroup(&a));
    }

    #[test]
    fn class_representatives() {
        let mut rng = sample_rng(1, 0);
        for class in [
            OrbitClass::OpenDense,
            OrbitClass::FaceA,
            OrbitClass::FaceB,
            OrbitClass::EdgeA,
            OrbitClass::EdgeB,
            OrbitClass::EdgeC,
        ] {
            let p = flags_class_point(&mut rng, class);
            assert!(p.hermitian_defect() < 1e-12);
            assert_eq!(classify_matrix(&p).unwrap(), class);
        }
    }
}
