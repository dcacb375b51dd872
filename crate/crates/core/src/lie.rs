// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! Matrix models of 𝔰𝔲(n) ⊂ 𝔰𝔩(n,ℂ): Killing form, the involutions θ, σ, τ,
//! the six-way eigenspace split, chamber base points and root spaces, and
//! the Cartan decomposition of the spherical subgroup K^ℂ.

use thiserror::Error;

use crate::linalg::{
    independent_subset, matrix_exp, positive_function, positive_log, r, ComplexMatrix, LinalgError, C64, I,
};
use crate::tolerances::TOL;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("element is not in the spherical subgroup (defect {0:e})")]
    NotInSubgroup(f64),
    #[error("invalid orbit spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which antiholomorphic involution σ commutes with θ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionKind {
    /// Entrywise conjugation; fixed real form 𝔰𝔩(n,ℝ), K = SO(n).
    WeylSigma,
    /// z ↦ −I₁₂ z† I₁₂ on 𝔰𝔩(3,ℂ); fixed real form 𝔰𝔲(2,1), K = S(U(2)×U(1)).
    Tau,
}

/// Simultaneous θ/σ eigenspace components of z.
#[derive(Clone, Debug)]
pub struct ComponentSplit {
    /// θ = +1 (𝔤).
    pub g_part: ComplexMatrix,
    /// θ = −1 (i𝔤).
    pub ig_part: ComplexMatrix,
    /// θ = +1, σ = +1.
    pub k_part: ComplexMatrix,
    /// θ = −1, σ = +1.
    pub s_part: ComplexMatrix,
    /// θ = −1, σ = −1.
    pub ik_part: ComplexMatrix,
    /// θ = +1, σ = −1.
    pub is_part: ComplexMatrix,
}

/// Positive root spaces of a chamber element.
#[derive(Clone, Debug)]
pub struct RootDatum {
    /// Traceless diagonal Hermitian matrices spanning the Cartan subalgebra of i𝔤.
    pub cartan_basis: Vec<ComplexMatrix>,
    /// (j, k, α) with j < k and α = y_j − y_k > 0.
    pub positive_roots: Vec<(usize, usize, f64)>,
    /// E_jk for the positive roots, in the diagonal frame.
    pub projectors: Vec<ComplexMatrix>,
}

/// Theta: z ↦ −z†. Fixed set is 𝔰𝔲(n).
pub fn theta(z: &ComplexMatrix) -> ComplexMatrix {
    -z.adjoint()
}

/// A matrix Lie algebra model with its involution data.
#[derive(Clone, Debug)]
pub struct AlgebraContext {
    pub n: usize,
    pub kind: InvolutionKind,
    /// Killing form is killing_scale · tr(ab).
    pub killing_scale: f64,
    /// Basis of 𝔰𝔲(n): E_jk − E_kj, i(E_jk + E_kj), i(E_jj − E_{j+1,j+1}).
    pub basis_g: Vec<ComplexMatrix>,
    /// Basis of 𝔨 = 𝔤^σ.
    pub basis_k: Vec<ComplexMatrix>,
    /// s with s·x·s† diagonal; None for the Weyl case.
    pub conjugator_s: Option<ComplexMatrix>,
}

fn su_basis(n: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(n * n - 1);
    for j in 0..n {
        for k in j + 1..n {
            out.push(&ComplexMatrix::unit(n, j, k) - &ComplexMatrix::unit(n, k, j));
            out.push((&ComplexMatrix::unit(n, j, k) + &ComplexMatrix::unit(n, k, j)).times_i());
        }
    }
    for j in 0..n - 1 {
        out.push((&ComplexMatrix::unit(n, j, j) - &ComplexMatrix::unit(n, j + 1, j + 1)).times_i());
    }
    out
}

/// diag(1, 1, −1).
fn i12() -> ComplexMatrix {
    ComplexMatrix::from_real_diag(&[1.0, 1.0, -1.0])
}

impl AlgebraContext {
    /// 𝔰𝔲(n) with entrywise conjugation.
    pub fn weyl(n: usize) -> Result<Self, LieError> {
        if !(2..=8).contains(&n) {
            return Err(LieError::InvalidSpec(format!("matrix size {n} outside 2..=8")));
        }
        Ok(Self::build(n, InvolutionKind::WeylSigma, None))
    }

    /// 𝔰𝔲(3) with the τ involution and its diagonalizing conjugator.
    pub fn tau() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = ComplexMatrix::from_rows(&[
            vec![r(h), r(0.0), I * h],
            vec![r(0.0), r(1.0), r(0.0)],
            vec![I * h, r(0.0), r(h)],
        ]);
        Self::build(3, InvolutionKind::Tau, Some(s))
    }

    fn build(n: usize, kind: InvolutionKind, conjugator_s: Option<ComplexMatrix>) -> Self {
        let basis_g = su_basis(n);
        let mut ctx = Self {
            n,
            kind,
            killing_scale: 2.0 * n as f64,
            basis_g,
            basis_k: Vec::new(),
            conjugator_s,
        };
        let projected: Vec<ComplexMatrix> = ctx
            .basis_g
            .iter()
            .map(|b| (b + &ctx.sigma(b)).scale_re(0.5))
            .collect();
        let cols: Vec<Vec<f64>> = projected.iter().map(ComplexMatrix::to_real_vec).collect();
        ctx.basis_k = independent_subset(&cols, 1e-10)
            .into_iter()
            .map(|i| projected[i].clone())
            .collect();
        ctx
    }

    /// 2n·tr(ab).
    pub fn killing(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64, LieError> {
        if a.n() != self.n {
            return Err(LieError::DimensionMismatch(a.n(), self.n));
        }
        if b.n() != self.n {
            return Err(LieError::DimensionMismatch(b.n(), self.n));
        }
        Ok(self.kill(a, b))
    }

    /// Unchecked Killing form for internal use.
    #[inline]
    pub(crate) fn kill(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
        a.trace_product(b) * self.killing_scale
    }

    pub fn sigma(&self, z: &ComplexMatrix) -> ComplexMatrix {
        match self.kind {
            InvolutionKind::WeylSigma => z.conj(),
            InvolutionKind::Tau => {
                let i = i12();
                -(&(&i * &z.adjoint()) * &i)
            }
        }
    }

    /// The holomorphic involution θσ on 𝔤^ℂ; its fixed set is 𝔨^ℂ.
    pub fn theta_sigma(&self, z: &ComplexMatrix) -> ComplexMatrix {
        theta(&self.sigma(z))
    }

    /// θσ integrated to the group: (gᵀ)⁻¹ for the Weyl case, I₁₂ g I₁₂ for τ.
    pub fn group_theta_sigma(&self, g: &ComplexMatrix) -> Result<ComplexMatrix, LieError> {
        Ok(match self.kind {
            InvolutionKind::WeylSigma => g.transpose().inverse()?,
            InvolutionKind::Tau => {
                let i = i12();
                &(&i * g) * &i
            }
        })
    }

    /// Distance of g from K^ℂ = (θσ-fixed) ∩ SL(n,ℂ).
    pub fn subgroup_defect(&self, g: &ComplexMatrix) -> f64 {
        if g.n() != self.n {
            return f64::INFINITY;
        }
        match self.group_theta_sigma(g) {
            Ok(img) => img.dist(g).max((g.det() - r(1.0)).norm()),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn in_spherical_subgroup(&self, g: &ComplexMatrix) -> bool {
        self.subgroup_defect(g) < TOL.subgroup * g.max_abs().max(1.0)
    }

    pub fn component_split(&self, z: &ComplexMatrix) -> ComponentSplit {
        let tz = theta(z);
        let g_part = (z + &tz).scale_re(0.5);
        let ig_part = (z - &tz).scale_re(0.5);
        let sg = self.sigma(&g_part);
        let sig = self.sigma(&ig_part);
        ComponentSplit {
            k_part: (&g_part + &sg).scale_re(0.5),
            is_part: (&g_part - &sg).scale_re(0.5),
            s_part: (&ig_part + &sig).scale_re(0.5),
            ik_part: (&ig_part - &sig).scale_re(0.5),
            g_part,
            ig_part,
        }
    }

    /// Real basis {k_j} ∪ {i·k_j} of 𝔨^ℂ.
    pub fn basis_kc(&self) -> Vec<ComplexMatrix> {
        let mut out = self.basis_k.clone();
        out.extend(self.basis_k.iter().map(ComplexMatrix::times_i));
        out
    }

    pub fn conjugator(&self) -> ComplexMatrix {
        self.conjugator_s.clone().unwrap_or_else(|| ComplexMatrix::identity(self.n))
    }

    /// Diagonal chamber element diag(spec) after validating the spec.
    pub fn chamber_element(&self, spec: &[f64]) -> Result<ComplexMatrix, LieError> {
        if spec.len() != self.n {
            return Err(LieError::InvalidSpec(format!("{} eigenvalues for n = {}", spec.len(), self.n)));
        }
        if spec.iter().any(|v| !v.is_finite()) {
            return Err(LieError::InvalidSpec("non-finite eigenvalue".into()));
        }
        if spec.windows(2).any(|w| w[0] < w[1]) {
            return Err(LieError::InvalidSpec("eigenvalues not descending".into()));
        }
        let scale = spec.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        if spec.iter().sum::<f64>().abs() > 1e-12 * scale {
            return Err(LieError::InvalidSpec("eigenvalues do not sum to zero".into()));
        }
        Ok(ComplexMatrix::from_real_diag(spec))
    }

    /// The unique point of the orbit in the positive chamber of the active
    /// Cartan: diag(spec) for Weyl, s†·diag(spec)·s for τ.
    pub fn base_point(&self, spec: &[f64]) -> Result<ComplexMatrix, LieError> {
        let y = self.chamber_element(spec)?;
        let x = match &self.conjugator_s {
            None => y,
            Some(s) => &(&s.adjoint() * &y) * s,
        };
        // x must lie in the σ-fixed part of i𝔤
        let defect = self.sigma(&x).dist(&x);
        if defect > 1e-12 * x.max_abs().max(1.0) {
            return Err(LieError::InvalidSpec(format!("base point not fixed by the involution ({defect:e})")));
        }
        Ok(x)
    }

    /// Root data of the diagonal chamber element diag(spec).
    pub fn root_datum(&self, spec: &[f64]) -> Result<RootDatum, LieError> {
        self.chamber_element(spec)?;
        let n = self.n;
        let cartan_basis = (0..n - 1)
            .map(|j| &ComplexMatrix::unit(n, j, j) - &ComplexMatrix::unit(n, j + 1, j + 1))
            .collect();
        let scale = spec.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let mut positive_roots = Vec::new();
        let mut projectors = Vec::new();
        for j in 0..n {
            for k in j + 1..n {
                let alpha = spec[j] - spec[k];
                // ties go to the centralizer
                if alpha > 1e-12 * scale {
                    positive_roots.push((j, k, alpha));
                    projectors.push(ComplexMatrix::unit(n, j, k));
                }
            }
        }
        Ok(RootDatum {
            cartan_basis,
            positive_roots,
            projectors,
        })
    }

    /// h = u·exp(i·eta) with u ∈ K and eta ∈ 𝔨, from the polar decomposition.
    pub fn cartan_decompose_kc(&self, h: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix), LieError> {
        let defect = self.subgroup_defect(h);
        if !(defect < TOL.subgroup * h.max_abs().max(1.0)) {
            return Err(LieError::NotInSubgroup(defect));
        }
        let hh = &h.adjoint() * h;
        let inv_sqrt = positive_function(&hh, |l| 1.0 / l.sqrt())?;
        let u = h * &inv_sqrt;
        // i·eta = ½ log(h†h)
        let eta = positive_log(&hh)?.scale(c_neg_half_i());
        Ok((u, eta))
    }
}

#[inline]
fn c_neg_half_i() -> C64 {
    C64::new(0.0, -0.5)
}

/// u·exp(i·eta).
pub fn cartan_compose(u: &ComplexMatrix, eta: &ComplexMatrix) -> Result<ComplexMatrix, LieError> {
    Ok(u * &matrix_exp(&eta.times_i())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn killing_values() {
        let ctx = AlgebraContext::weyl(2).unwrap();
        let d = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        assert!(close(ctx.killing(&d, &d).unwrap(), r(8.0), 1e-15));
        assert!(close(ctx.killing(&ComplexMatrix::zeros(2), &d).unwrap(), r(0.0), 1e-300));
        let ctx3 = AlgebraContext::weyl(3).unwrap();
        let d3 = ComplexMatrix::from_real_diag(&[1.0, 0.0, -1.0]);
        assert!(close(ctx3.killing(&d3, &d3).unwrap(), r(12.0), 1e-15));
        assert!(matches!(ctx3.killing(&d, &d), Err(LieError::DimensionMismatch(2, 3))));
    }

    #[test]
    fn basis_sizes() {
        let w = AlgebraContext::weyl(3).unwrap();
        assert_eq!(w.basis_g.len(), 8);
        assert_eq!(w.basis_k.len(), 3);
        let t = AlgebraContext::tau();
        assert_eq!(t.basis_k.len(), 4);
        for b in t.basis_k.iter().chain(&t.basis_g) {
            assert!(b.anti_hermitian_defect() < 1e-15);
            assert!(b.trace().norm() < 1e-15);
        }
        for b in &t.basis_k {
            assert!(t.sigma(b).dist(b) < 1e-15);
        }
    }

    #[test]
    fn tau_base_point() {
        let t = AlgebraContext::tau();
        let x = t.base_point(&[1.0, 0.0, -1.0]).unwrap();
        let want = ComplexMatrix::from_rows(&[
            vec![r(0.0), r(0.0), I],
            vec![r(0.0), r(0.0), r(0.0)],
            vec![-I, r(0.0), r(0.0)],
        ]);
        assert!(x.dist(&want) < 1e-15);
        assert!(t.sigma(&x).dist(&x) < 1e-15);
        let s = t.conjugator();
        assert!((&s * &s.adjoint()).dist(&ComplexMatrix::identity(3)) < 1e-15);
        assert!((s.det() - r(1.0)).norm() < 1e-15);
    }

    #[test]
    fn weyl_base_points_and_bad_specs() {
        let w = AlgebraContext::weyl(3).unwrap();
        let x = w.base_point(&[1.0, 0.0, -1.0]).unwrap();
        assert!(x.dist(&ComplexMatrix::from_real_diag(&[1.0, 0.0, -1.0])) == 0.0);
        assert!(matches!(w.base_point(&[0.0, 1.0, -1.0]), Err(LieError::InvalidSpec(_))));
        assert!(matches!(w.base_point(&[1.0, 0.5, -1.0]), Err(LieError::InvalidSpec(_))));
    }

    #[test]
    fn component_split_of_imaginary_diagonal() {
        let w = AlgebraContext::weyl(2).unwrap();
        let z = ComplexMatrix::from_diag(&[I, -I]);
        let parts = w.component_split(&z);
        assert!(parts.is_part.dist(&z) < 1e-15);
        for p in [&parts.k_part, &parts.s_part, &parts.ik_part, &parts.ig_part] {
            assert!(p.max_abs() < 1e-15);
        }
    }

    #[test]
    fn cartan_decomposition_of_imaginary_rotation() {
        let w = AlgebraContext::weyl(2).unwrap();
        let b: f64 = 0.7;
        let h = ComplexMatrix::from_rows(&[
            vec![r(b.cosh()), c(0.0, -b.sinh())],
            vec![c(0.0, b.sinh()), r(b.cosh())],
        ]);
        let (u, eta) = w.cartan_decompose_kc(&h).unwrap();
        assert!(u.dist(&ComplexMatrix::identity(2)) < 1e-13);
        assert!(matrix_exp(&eta.times_i()).unwrap().dist(&h) < 1e-13);
        assert!(w.sigma(&eta).dist(&eta) < 1e-13);
    }

    #[test]
    fn roots_skip_ties() {
        let w = AlgebraContext::weyl(3).unwrap();
        let rd = w.root_datum(&[1.0, 1.0, -2.0]).unwrap();
        assert_eq!(rd.positive_roots.len(), 2);
        let y = ComplexMatrix::from_real_diag(&[1.0, 1.0, -2.0]);
        for (e, &(_, _, alpha)) in rd.projectors.iter().zip(&rd.positive_roots) {
            assert!(y.commutator(e).dist(&e.scale_re(alpha)) < 1e-15);
        }
    }
}
