// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! The complex orbit O = G^ℂ(x), its real forms X and X∨, the Iwasawa
//! ruling projection Π, tangent frames, the KKS form and the complex
//! structure induced on X.
//!
//! Points of X* are normally produced from a witness h ∈ K^ℂ: the projected
//! point is Π(h·x) = g·y·g† where h·s† = g·l·e, the section point is h·x.

use std::sync::OnceLock;

use thiserror::Error;

use crate::gz;
use crate::lie::{AlgebraContext, InvolutionKind, LieError, RootDatum};
use crate::linalg::{
    hermitian_eigen, independent_subset, iwasawa_algebra_split, iwasawa_factor, lstsq_real, null_space, r, svd, ComplexMatrix,
    IwasawaFactors, LinalgError, RealMatrix, C64,
};
use crate::tolerances::TOL;

/// ω = −KAEHLER_SCALE · Im Ω is the Kähler form with −Im Ω/4 = i∂∂̄h.
pub const KAEHLER_SCALE: f64 = 0.25;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrbitError {
    #[error("point has no K^C witness")]
    MissingWitness,
    #[error("tangent vectors live at different base points")]
    BasePointMismatch,
    #[error("tangent decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("matrix is not on the orbit (invariant defect {0:e})")]
    NotOnOrbit(f64),
    #[error("point is not in the dense orbit X*")]
    NotInDenseOrbit,
    #[error("witness does not reproduce the point (residual {0:e})")]
    WitnessResidual(f64),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Whether the witness h represents Π(h·x) or h·x itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Projected,
    Section,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub h: ComplexMatrix,
    pub h_inv: ComplexMatrix,
    /// Iwasawa factors of h·s†.
    pub factors: IwasawaFactors,
    pub kind: PointKind,
}

#[derive(Clone, Debug)]
pub struct OrbitPoint {
    pub value: ComplexMatrix,
    pub witness: Option<Witness>,
    frame_cache: OnceLock<Vec<TangentVector>>,
}

impl OrbitPoint {
    /// A raw point without witness.
    pub fn raw(value: ComplexMatrix) -> Self {
        Self {
            value,
            witness: None,
            frame_cache: OnceLock::new(),
        }
    }

    pub fn witness(&self) -> Result<&Witness, OrbitError> {
        self.witness.as_ref().ok_or(OrbitError::MissingWitness)
    }

    /// The unitary Iwasawa factor g with value = g·y·g† (projected points).
    pub fn unitary(&self) -> Result<&ComplexMatrix, OrbitError> {
        Ok(&self.witness()?.factors.unitary)
    }
}

/// Tangent vector [u, p] at the point with value `base`.
#[derive(Clone, Debug)]
pub struct TangentVector {
    pub base: ComplexMatrix,
    pub generator: ComplexMatrix,
    pub value: ComplexMatrix,
}

impl TangentVector {
    pub fn new(base: &ComplexMatrix, generator: ComplexMatrix) -> Self {
        let value = generator.commutator(base);
        Self {
            base: base.clone(),
            generator,
            value,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            base: self.base.clone(),
            generator: self.generator.scale_re(s),
            value: self.value.scale_re(s),
        }
    }

    pub fn combination(base: &ComplexMatrix, vectors: &[TangentVector], coeffs: &[f64]) -> Self {
        let gens: Vec<ComplexMatrix> = vectors.iter().map(|t| t.generator.clone()).collect();
        Self::new(base, ComplexMatrix::real_combination(&gens, coeffs))
    }
}

/// Classification returned by [`OrbitModel::membership`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    XStar,
    X,
    XVee,
    OOnly,
    NotOnOrbit,
}

/// An orbit through a chamber point together with its involution data.
#[derive(Clone, Debug)]
pub struct OrbitModel {
    pub ctx: AlgebraContext,
    pub spec: Vec<f64>,
    /// diag(spec).
    pub y: ComplexMatrix,
    /// s†·y·s.
    pub x: ComplexMatrix,
    pub roots: RootDatum,
    /// Real basis of a complement of the isotropy of x in 𝔨^ℂ.
    pub frame_generators: Vec<ComplexMatrix>,
    s_adj: ComplexMatrix,
}

impl OrbitModel {
    pub fn new(ctx: AlgebraContext, spec: &[f64]) -> Result<Self, OrbitError> {
        let x = ctx.base_point(spec)?;
        let y = ctx.chamber_element(spec)?;
        let roots = ctx.root_datum(spec)?;
        let s_adj = ctx.conjugator().adjoint();
        let kc = ctx.basis_kc();
        let images: Vec<Vec<f64>> = kc.iter().map(|c| c.commutator(&x).to_real_vec()).collect();
        let dec = svd(&RealMatrix::from_columns(&images));
        let smax = dec.s.first().copied().unwrap_or(0.0);
        let mut frame_generators = Vec::new();
        for (j, &sv) in dec.s.iter().enumerate() {
            if sv > TOL.frame_rank * smax {
                frame_generators.push(ComplexMatrix::real_combination(&kc, dec.v.column(j)));
            }
        }
        let dim_x = 2 * roots.positive_roots.len();
        if frame_generators.len() != dim_x {
            return Err(OrbitError::DecompositionFailed(format!(
                "K^C orbit of x has dimension {} but X has {}",
                frame_generators.len(),
                dim_x
            )));
        }
        Ok(Self {
            ctx,
            spec: spec.to_vec(),
            y,
            x,
            roots,
            frame_generators,
            s_adj,
        })
    }

    pub fn n(&self) -> usize {
        self.ctx.n
    }

    /// Real dimension of X.
    pub fn dim(&self) -> usize {
        self.frame_generators.len()
    }

    fn witness_for(&self, h: &ComplexMatrix, kind: PointKind) -> Result<Witness, OrbitError> {
        if h.n() != self.n() {
            return Err(LieError::DimensionMismatch(h.n(), self.n()).into());
        }
        let factors = iwasawa_factor(&(h * &self.s_adj))?;
        Ok(Witness {
            h: h.clone(),
            h_inv: h.inverse()?,
            factors,
            kind,
        })
    }

    /// Π(h·x) = g·y·g† with h·s† = g·l·e.
    pub fn point_projected(&self, h: &ComplexMatrix) -> Result<OrbitPoint, OrbitError> {
        let w = self.witness_for(h, PointKind::Projected)?;
        let g = &w.factors.unitary;
        let value = &(g * &self.y) * &g.adjoint();
        Ok(OrbitPoint {
            value,
            witness: Some(w),
            frame_cache: OnceLock::new(),
        })
    }

    /// h·x on the section K^ℂ(x).
    pub fn point_section(&self, h: &ComplexMatrix) -> Result<OrbitPoint, OrbitError> {
        let w = self.witness_for(h, PointKind::Section)?;
        let value = &(h * &self.x) * &w.h_inv;
        Ok(OrbitPoint {
            value,
            witness: Some(w),
            frame_cache: OnceLock::new(),
        })
    }

    /// Π of a section point (or of any witnessed point).
    pub fn project_pi(&self, p: &OrbitPoint) -> Result<OrbitPoint, OrbitError> {
        self.point_projected(&p.witness()?.h)
    }

    pub fn base(&self) -> OrbitPoint {
        self.point_projected(&ComplexMatrix::identity(self.n()))
            .expect("identity witness always factors")
    }

    /// Tangent vector of t ↦ Π(h·exp(t c)·x) (or h·exp(t c)·x) at t = 0.
    pub fn pushforward(&self, p: &OrbitPoint, c: &ComplexMatrix) -> Result<TangentVector, OrbitError> {
        let w = p.witness()?;
        let hc = &(&w.h * c) * &w.h_inv;
        let generator = match w.kind {
            PointKind::Section => hc,
            PointKind::Projected => {
                let g = &w.factors.unitary;
                let ga = g.adjoint();
                let (u, _) = iwasawa_algebra_split(&(&(&ga * &hc) * g));
                &(g * &u) * &ga
            }
        };
        Ok(TangentVector::new(&p.value, generator))
    }

    /// Frame t_i = Π_*(h_* c_i) of the tangent space at a witnessed point.
    pub fn frame(&self, p: &OrbitPoint) -> Result<Vec<TangentVector>, OrbitError> {
        if let Some(f) = p.frame_cache.get() {
            return Ok(f.clone());
        }
        let f: Vec<TangentVector> = self
            .frame_generators
            .iter()
            .map(|c| self.pushforward(p, c))
            .collect::<Result<_, _>>()?;
        Ok(p.frame_cache.get_or_init(|| f).clone())
    }

    /// J t_i = Π_*(h_* (i c_i)).
    pub fn frame_j(&self, p: &OrbitPoint) -> Result<Vec<TangentVector>, OrbitError> {
        self.frame_generators
            .iter()
            .map(|c| self.pushforward(p, &c.times_i()))
            .collect()
    }

    /// Coordinates of a tangent value in the frame.
    pub fn frame_coords(&self, p: &OrbitPoint, value: &ComplexMatrix) -> Result<Vec<f64>, OrbitError> {
        let frame = self.frame(p)?;
        let cols: Vec<Vec<f64>> = frame.iter().map(|t| t.value.to_real_vec()).collect();
        let sol = lstsq_real(&RealMatrix::from_columns(&cols), &value.to_real_vec())?;
        let scale = value.fro_norm().max(1e-300);
        if sol.residual > 1e-7 * scale.max(1.0) {
            return Err(OrbitError::DecompositionFailed(format!(
                "vector is not tangent (residual {:e})",
                sol.residual
            )));
        }
        Ok(sol.x)
    }

    /// Ω(t1, t2) = killing(p, [u1, u2]).
    pub fn kks_omega(&self, t1: &TangentVector, t2: &TangentVector) -> Result<C64, OrbitError> {
        if t1.base.dist(&t2.base) > 1e-12 * t1.base.max_abs().max(1.0) {
            return Err(OrbitError::BasePointMismatch);
        }
        Ok(self.ctx.kill(&t1.base, &t1.generator.commutator(&t2.generator)))
    }

    /// −Im Ω, the real KKS form.
    pub fn omega_kks(&self, t1: &TangentVector, t2: &TangentVector) -> Result<f64, OrbitError> {
        Ok(-self.kks_omega(t1, t2)?.im)
    }

    /// The Kähler form ω = −Im Ω / 4.
    pub fn omega(&self, t1: &TangentVector, t2: &TangentVector) -> Result<f64, OrbitError> {
        Ok(KAEHLER_SCALE * self.omega_kks(t1, t2)?)
    }

    /// Gram matrix ω(t_i, t_j) of a list of tangent vectors.
    pub fn omega_matrix(&self, ts: &[TangentVector]) -> Result<Vec<Vec<f64>>, OrbitError> {
        let mut m = vec![vec![0.0; ts.len()]; ts.len()];
        for i in 0..ts.len() {
            for j in i + 1..ts.len() {
                let w = self.omega(&ts[i], &ts[j])?;
                m[i][j] = w;
                m[j][i] = -w;
            }
        }
        Ok(m)
    }

    /// {g·E·g† : E ∈ 𝔫(y)} at a projected point.
    pub fn fiber_tangent_basis(&self, p: &OrbitPoint) -> Result<Vec<ComplexMatrix>, OrbitError> {
        let w = p.witness()?;
        if w.kind != PointKind::Projected {
            return Err(OrbitError::MissingWitness);
        }
        let g = &w.factors.unitary;
        let ga = g.adjoint();
        Ok(self.roots.projectors.iter().map(|e| &(g * e) * &ga).collect())
    }

    /// J t: write i·t as a tangent vector of X plus a fiber vector and keep
    /// the X part.
    pub fn complex_structure_j(&self, p: &OrbitPoint, t: &TangentVector) -> Result<TangentVector, OrbitError> {
        let images: Vec<Vec<f64>> = self
            .ctx
            .basis_g
            .iter()
            .map(|b| b.commutator(&p.value).to_real_vec())
            .collect();
        let picked = independent_subset(&images, TOL.frame_rank);
        let mut cols: Vec<Vec<f64>> = picked.iter().map(|&i| images[i].clone()).collect();
        for f in self.fiber_tangent_basis(p)? {
            cols.push(f.to_real_vec());
            cols.push(f.times_i().to_real_vec());
        }
        let target = t.value.times_i().to_real_vec();
        let sol = lstsq_real(&RealMatrix::from_columns(&cols), &target)
            .map_err(|e| OrbitError::DecompositionFailed(e.to_string()))?;
        if sol.residual > 1e-8 * t.value.fro_norm().max(1.0) {
            return Err(OrbitError::DecompositionFailed(format!("residual {:e}", sol.residual)));
        }
        let gens: Vec<ComplexMatrix> = picked.iter().map(|&i| self.ctx.basis_g[i].clone()).collect();
        let generator = ComplexMatrix::real_combination(&gens, &sol.x[..picked.len()]);
        Ok(TangentVector::new(&p.value, generator))
    }

    /// Some generator u with [u, p] = value, by minimum-norm least squares
    /// over 𝔰𝔩(n,ℂ).
    pub fn generator_of(&self, p: &ComplexMatrix, value: &ComplexMatrix) -> Result<TangentVector, OrbitError> {
        self.generator_of_within(p, value, 1e-7)
    }

    /// As `generator_of`, accepting a normal component up to `rel_tol`·‖value‖.
    /// The tangential part is kept; finite-difference vectors carry an
    /// O(step²) normal error.
    pub fn generator_of_within(
        &self,
        p: &ComplexMatrix,
        value: &ComplexMatrix,
        rel_tol: f64,
    ) -> Result<TangentVector, OrbitError> {
        let mut gens = self.ctx.basis_g.clone();
        gens.extend(self.ctx.basis_g.iter().map(ComplexMatrix::times_i));
        let cols: Vec<Vec<f64>> = gens.iter().map(|b| b.commutator(p).to_real_vec()).collect();
        let sol = crate::linalg::lstsq_min_norm(&RealMatrix::from_columns(&cols), &value.to_real_vec(), TOL.lstsq_rcond)?;
        if sol.residual > rel_tol * value.fro_norm().max(1.0) {
            return Err(OrbitError::DecompositionFailed(format!(
                "vector is not tangent to the orbit (residual {:e})",
                sol.residual
            )));
        }
        let generator = ComplexMatrix::real_combination(&gens, &sol.x);
        Ok(TangentVector::new(p, generator))
    }

    /// max_k |tr(p^k) − Σ y_j^k| relative, for k = 1..n.
    pub fn orbit_defect(&self, p: &ComplexMatrix) -> f64 {
        if p.n() != self.n() {
            return f64::INFINITY;
        }
        let mut pk = ComplexMatrix::identity(self.n());
        let mut worst: f64 = 0.0;
        for k in 1..=self.n() {
            pk = &pk * p;
            let want: f64 = self.spec.iter().map(|v| v.powi(k as i32)).sum();
            let scale = self.spec.iter().map(|v| v.abs().powi(k as i32)).sum::<f64>().max(1.0);
            worst = worst.max((pk.trace() - r(want)).norm() / scale);
        }
        worst
    }

    /// Position of a raw matrix relative to O, X, X∨ and X*.
    pub fn membership(&self, p: &ComplexMatrix) -> Membership {
        if !p.is_finite() || self.orbit_defect(p) > 1e-8 {
            return Membership::NotOnOrbit;
        }
        let scale = p.max_abs().max(1.0);
        if p.hermitian_defect() < 1e-9 * scale {
            return if self.in_dense_orbit(p) { Membership::XStar } else { Membership::X };
        }
        if self.ctx.sigma(p).dist(p) < 1e-9 * scale {
            return Membership::XVee;
        }
        Membership::OOnly
    }

    /// X* test for a point of X.
    pub fn in_dense_orbit(&self, p: &ComplexMatrix) -> bool {
        match self.ctx.kind {
            InvolutionKind::WeylSigma => self.weyl_cholesky(p).map(|(_, _, m)| m > 1e-10).unwrap_or(false),
            InvolutionKind::Tau => matches!(gz::classify_orbit(self, p), Ok(gz::OrbitClass::OpenDense)),
        }
    }

    /// Unitary g with p = g·y·g† (descending eigenvalues, det 1).
    fn eigen_unitary(&self, p: &ComplexMatrix) -> Result<ComplexMatrix, OrbitError> {
        let (_, mut g) = hermitian_eigen(p)?;
        let det = g.det();
        let phase = det.conj() / det.norm();
        for i in 0..self.n() {
            g[(i, 0)] *= phase;
        }
        Ok(g)
    }

    /// Complex symmetric Cholesky gᵀg = bᵀb with b upper triangular; also
    /// returns min |b_kk|², which vanishes off X*.
    fn weyl_cholesky(&self, p: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix, f64), OrbitError> {
        let n = self.n();
        let g = self.eigen_unitary(p)?;
        let sm = &g.transpose() * &g;
        let mut b = ComplexMatrix::zeros(n);
        let mut min_pivot = f64::INFINITY;
        for k in 0..n {
            let mut d = sm[(k, k)];
            for i in 0..k {
                d -= b[(i, k)] * b[(i, k)];
            }
            min_pivot = min_pivot.min(d.norm());
            if d.norm() < 1e-300 {
                return Ok((g, b, 0.0));
            }
            let bkk = d.sqrt();
            b[(k, k)] = bkk;
            for j in k + 1..n {
                let mut v = sm[(k, j)];
                for i in 0..k {
                    v -= b[(i, k)] * b[(i, j)];
                }
                b[(k, j)] = v / bkk;
            }
        }
        Ok((g, b, min_pivot))
    }

    /// Recover a K^ℂ witness h with Π(h·x) = p for a raw point of X*.
    pub fn find_witness(&self, p: &ComplexMatrix) -> Result<OrbitPoint, OrbitError> {
        if p.hermitian_defect() > 1e-9 * p.max_abs().max(1.0) {
            return Err(OrbitError::NotInDenseOrbit);
        }
        let defect = self.orbit_defect(p);
        if defect > 1e-8 {
            return Err(OrbitError::NotOnOrbit(defect));
        }
        let h = match self.ctx.kind {
            InvolutionKind::WeylSigma => {
                let (g, mut b, min_pivot) = self.weyl_cholesky(p)?;
                if min_pivot <= 1e-10 {
                    return Err(OrbitError::NotInDenseOrbit);
                }
                // det b = ±1; flip the last row to land in SO(n,ℂ)
                if (b.det() - r(1.0)).norm() > 0.5 {
                    let n = self.n();
                    for j in 0..n {
                        b[(n - 1, j)] = -b[(n - 1, j)];
                    }
                }
                &g * &b.inverse()?
            }
            InvolutionKind::Tau => self.tau_witness(p)?,
        };
        let point = self.point_projected(&h)?;
        let residual = point.value.dist(p);
        if residual > TOL.witness_residual * p.max_abs().max(1.0) * 10.0 {
            return Err(OrbitError::WitnessResidual(residual));
        }
        Ok(point)
    }

    /// Block-diagonal h with g†·h·s† upper triangular, from the null space of
    /// the three strictly-lower conditions.
    fn tau_witness(&self, p: &ComplexMatrix) -> Result<ComplexMatrix, OrbitError> {
        let g = self.eigen_unitary(p)?;
        let ga = g.adjoint();
        // unknowns: h00 h01 h10 h11 h22
        let slots = [(0usize, 0usize), (0, 1), (1, 0), (1, 1), (2, 2)];
        let basis: Vec<ComplexMatrix> = slots
            .iter()
            .map(|&(i, j)| &(&ga * &ComplexMatrix::unit(3, i, j)) * &self.s_adj)
            .collect();
        let lower = [(1usize, 0usize), (2, 0), (2, 1)];
        // real 6×10 system in (Re, Im) of the five unknowns
        let mut rows = vec![vec![0.0; 10]; 6];
        for (k, b) in basis.iter().enumerate() {
            for (e, &(i, j)) in lower.iter().enumerate() {
                let z = b[(i, j)];
                // z·(a + ib) = (z.re a − z.im b) + i(z.im a + z.re b)
                rows[2 * e][2 * k] = z.re;
                rows[2 * e][2 * k + 1] = -z.im;
                rows[2 * e + 1][2 * k] = z.im;
                rows[2 * e + 1][2 * k + 1] = z.re;
            }
        }
        let kernel = null_space(&RealMatrix::from_rows(&rows), 1e-9);
        let build = |v: &[f64]| {
            let mut h = ComplexMatrix::zeros(3);
            for (k, &(i, j)) in slots.iter().enumerate() {
                h[(i, j)] = C64::new(v[2 * k], v[2 * k + 1]);
            }
            h
        };
        let mut best: Option<(f64, ComplexMatrix)> = None;
        let candidates = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0), (0.5, 1.3), (1.7, -0.4)];
        for (idx, ka) in kernel.iter().enumerate() {
            for kb in kernel.iter().skip(idx) {
                for &(ca, cb) in &candidates {
                    let v: Vec<f64> = ka.iter().zip(kb).map(|(x, y)| ca * x + cb * y).collect();
                    let norm = v.iter().map(|t| t * t).sum::<f64>().sqrt();
                    if norm == 0.0 {
                        continue;
                    }
                    let h = build(&v).scale_re(1.0 / norm);
                    let d = h.det().norm();
                    if best.as_ref().map_or(true, |(bd, _)| d > *bd) {
                        best = Some((d, h));
                    }
                }
            }
        }
        let (d, h) = best.ok_or(OrbitError::NotInDenseOrbit)?;
        if d < 1e-10 {
            return Err(OrbitError::NotInDenseOrbit);
        }
        let det = h.det();
        let root = det.powf(1.0 / 3.0);
        Ok(h.scale(root.inv()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, matrix_exp, I};

    fn su2() -> OrbitModel {
        OrbitModel::new(AlgebraContext::weyl(2).unwrap(), &[1.0, -1.0]).unwrap()
    }

    fn flags() -> OrbitModel {
        OrbitModel::new(AlgebraContext::tau(), &[1.0, 0.0, -1.0]).unwrap()
    }

    fn rotation(z: C64) -> ComplexMatrix {
        let j0 = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        matrix_exp(&j0.scale(z)).unwrap()
    }

    fn pauli(e: f64, f: f64, z: f64) -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![r(e), c(f, -z)], vec![c(f, z), r(-e)]])
    }

    #[test]
    fn kks_hand_example() {
        let m = su2();
        let y = m.y.clone();
        let t1 = TangentVector::new(&y, ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]));
        let t2 = TangentVector::new(&y, ComplexMatrix::from_rows(&[vec![r(0.0), I], vec![I, r(0.0)]]));
        let w = m.kks_omega(&t1, &t2).unwrap();
        assert!((w - c(0.0, 16.0)).norm() < 1e-14);
        assert!((m.omega_kks(&t1, &t2).unwrap() + 16.0).abs() < 1e-14);
        assert!(m.kks_omega(&t1, &t1).unwrap().norm() < 1e-15);
        let other = TangentVector::new(&ComplexMatrix::identity(2), t2.generator.clone());
        assert!(matches!(m.kks_omega(&t1, &other), Err(OrbitError::BasePointMismatch)));
    }

    #[test]
    fn su2_projection_is_hyperbolic_chart() {
        let m = su2();
        for &(a, b) in &[(0.0, 0.5), (0.3, 0.4), (2.0, -1.1), (1.0, 1.7)] {
            let p = m.point_projected(&rotation(c(a, b))).unwrap();
            let want = pauli((2.0 * a).cos() / (2.0 * b).cosh(), (2.0 * a).sin() / (2.0 * b).cosh(), (2.0 * b).tanh());
            assert!(p.value.dist(&want) < 1e-12, "{a} {b}");
        }
    }

    #[test]
    fn flags_projection_matches_curve() {
        let m = flags();
        for b in [-0.7f64, 0.0, 0.5, 1.3] {
            let h = ComplexMatrix::from_real_diag(&[b.exp(), (-b).exp(), 1.0]);
            let p = m.point_projected(&h).unwrap();
            assert!(p.value.dist(&gz::flags_curve_point(b)) < 1e-12);
        }
        assert!(m.base().value.dist(&m.x) < 1e-15);
    }

    #[test]
    fn frame_j_agrees_with_fiber_projection() {
        for m in [su2(), flags()] {
            let h = if m.n() == 2 {
                rotation(c(0.4, 0.3))
            } else {
                let k = &m.ctx.basis_k;
                let gen = ComplexMatrix::real_combination(&m.ctx.basis_kc(), &[0.3, -0.2, 0.5, 0.1, 0.2, 0.4, -0.3, 0.25][..2 * k.len()]);
                matrix_exp(&gen).unwrap()
            };
            let p = m.point_projected(&h).unwrap();
            let frame = m.frame(&p).unwrap();
            let fj = m.frame_j(&p).unwrap();
            for (t, jt) in frame.iter().zip(&fj) {
                let generic = m.complex_structure_j(&p, t).unwrap();
                assert!(generic.value.dist(&jt.value) < 1e-9);
                let jj = m.complex_structure_j(&p, &generic).unwrap();
                assert!(jj.value.dist(&t.value.scale_re(-1.0)) < 1e-8);
            }
            // X is Lagrangian for Re Ω, and the Kähler metric is positive
            for t in &frame {
                for u in &frame {
                    assert!(m.kks_omega(t, u).unwrap().re.abs() < 1e-10);
                }
            }
            for (t, jt) in frame.iter().zip(&fj) {
                assert!(m.omega(t, jt).unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn witness_recovery() {
        for m in [su2(), flags(), OrbitModel::new(AlgebraContext::weyl(3).unwrap(), &[1.0, 0.2, -1.2]).unwrap()] {
            let kc = m.ctx.basis_kc();
            let coeffs: Vec<f64> = (0..kc.len()).map(|i| 0.37 * ((i as f64) * 1.3).sin()).collect();
            let h = matrix_exp(&ComplexMatrix::real_combination(&kc, &coeffs)).unwrap();
            let p = m.point_projected(&h).unwrap();
            assert_eq!(m.membership(&p.value), Membership::XStar);
            let q = m.find_witness(&p.value).unwrap();
            assert!(q.value.dist(&p.value) < 1e-9);
            assert!(m.ctx.in_spherical_subgroup(&q.witness().unwrap().h));
        }
    }

    #[test]
    fn membership_examples() {
        let m = su2();
        assert_eq!(m.membership(&m.x), Membership::XStar);
        assert_eq!(m.membership(&pauli(0.0, 0.0, 1.0)), Membership::X);
        assert_eq!(m.membership(&ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.5, 0.0]])), Membership::XVee);
        assert_eq!(m.membership(&ComplexMatrix::from_real_diag(&[2.0, -2.0])), Membership::NotOnOrbit);
        let f = flags();
        assert_eq!(f.membership(&f.x), Membership::XStar);
        assert_eq!(f.membership(&ComplexMatrix::from_real_diag(&[1.0, 0.0, -1.0])), Membership::X);
    }

    #[test]
    fn sigma_witness() {
        for m in [su2(), flags()] {
            let kc = m.ctx.basis_kc();
            let coeffs: Vec<f64> = (0..kc.len()).map(|i| 0.29 * ((i as f64) * 0.7 + 0.2).cos()).collect();
            let h = matrix_exp(&ComplexMatrix::real_combination(&kc, &coeffs)).unwrap();
            let p = m.point_projected(&h).unwrap();
            let hs = h.adjoint().inverse().unwrap();
            let q = m.point_projected(&hs).unwrap();
            assert!(q.value.dist(&m.ctx.sigma(&p.value)) < 1e-12);
        }
    }

    #[test]
    fn fiber_and_section_dimensions() {
        for m in [su2(), flags()] {
            let kc = m.ctx.basis_kc();
            let coeffs: Vec<f64> = (0..kc.len()).map(|i| 0.21 * (i as f64 + 0.5).sin()).collect();
            let h = matrix_exp(&ComplexMatrix::real_combination(&kc, &coeffs)).unwrap();
            let p = m.point_projected(&h).unwrap();
            let fib = m.fiber_tangent_basis(&p).unwrap();
            let mut cols: Vec<Vec<f64>> = m.frame(&p).unwrap().iter().map(|t| t.value.to_real_vec()).collect();
            for f in &fib {
                cols.push(f.to_real_vec());
                cols.push(f.times_i().to_real_vec());
            }
            let n = m.n();
            let dim_o = 2 * (n * n - n);
            assert_eq!(crate::linalg::numerical_rank(&cols, 1e-9), dim_o.min(m.dim() + 2 * fib.len()));
            assert_eq!(m.dim() + 2 * fib.len(), 2 * m.roots.positive_roots.len() * 2);
            // the section is Lagrangian for Ω
            let sec = m.point_section(&h).unwrap();
            let ts: Vec<TangentVector> = kc.iter().map(|c| m.pushforward(&sec, c).unwrap()).collect();
            for a in &ts {
                for b in &ts {
                    assert!(m.kks_omega(a, b).unwrap().norm() < 1e-9);
                }
            }
        }
    }
}
