// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! Gelfand–Zeitlin map on 3×3 Hermitian matrices, its polytope, and the
//! six S(GL₂×GL₁)-orbits on the flag manifold.

use thiserror::Error;

use crate::linalg::{hermitian_eigen, r, ComplexMatrix, LinalgError, I};
use crate::orbit::OrbitModel;
use crate::tolerances::TOL;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GzError {
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("expected a 3x3 matrix, got {0}x{0}")]
    Dimension(usize),
    #[error("eigenvalue gap {0:e} too small to identify eigenlines")]
    Degenerate(f64),
    #[error("interlacing violated by {0:e}")]
    Interlacing(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GZValue {
    pub lambda1: f64,
    pub lambda2_hi: f64,
    pub lambda2_lo: f64,
}

impl GZValue {
    pub fn as_array(&self) -> [f64; 3] {
        [self.lambda1, self.lambda2_hi, self.lambda2_lo]
    }

    pub fn dist(&self, other: &GZValue) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// The six orbits. Edges are closed, faces are the two divisors not
/// containing the origin, OpenDense is X*.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitClass {
    OpenDense,
    FaceA,
    FaceB,
    EdgeA,
    EdgeB,
    EdgeC,
}

fn check_input(p: &ComplexMatrix) -> Result<(), GzError> {
    if p.n() != 3 {
        return Err(GzError::Dimension(p.n()));
    }
    let d = p.hermitian_defect();
    if d > 1e-9 * p.max_abs().max(1.0) {
        return Err(GzError::NotHermitian(d));
    }
    Ok(())
}

/// (p₀₀, eigenvalues of the top-left 2×2 block, descending).
pub fn gz_map(p: &ComplexMatrix) -> Result<GZValue, GzError> {
    check_input(p)?;
    let (mu, _) = hermitian_eigen(p)?;
    let a = p[(0, 0)].re;
    let d = p[(1, 1)].re;
    let b = p[(0, 1)];
    let mean = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let v = GZValue {
        lambda1: a,
        lambda2_hi: mean + rad,
        lambda2_lo: mean - rad,
    };
    let gaps = [
        v.lambda2_hi - mu[0],
        mu[1] - v.lambda2_hi,
        v.lambda2_lo - mu[1],
        mu[2] - v.lambda2_lo,
        v.lambda1 - v.lambda2_hi,
        v.lambda2_lo - v.lambda1,
    ];
    let worst = gaps.iter().fold(f64::NEG_INFINITY, |m, &g| m.max(g));
    if worst > 1e-9 * p.max_abs().max(1.0) {
        return Err(GzError::Interlacing(worst));
    }
    Ok(v)
}

/// Orbit of the flag (top eigenline, top two eigenlines) relative to
/// ℂ³ = span(e₁, e₂) ⊕ ℂe₃.
pub fn classify_matrix(p: &ComplexMatrix) -> Result<OrbitClass, GzError> {
    check_input(p)?;
    let (mu, v) = hermitian_eigen(p)?;
    let gap = (mu[0] - mu[1]).min(mu[1] - mu[2]);
    if gap < TOL.eigen_gap {
        return Err(GzError::Degenerate(gap));
    }
    // third component modulus, and in-plane modulus, of the extreme eigenlines
    let third = |j: usize| v[(2, j)].norm();
    let planar = |j: usize| (v[(0, j)].norm_sqr() + v[(1, j)].norm_sqr()).sqrt();
    let eps = TOL.eigenline;
    let top_in_w = third(0) < eps;
    let bottom_in_w = third(2) < eps;
    let class = if planar(0) < eps {
        OrbitClass::EdgeB
    } else if planar(2) < eps {
        OrbitClass::EdgeA
    } else if top_in_w && bottom_in_w {
        OrbitClass::EdgeC
    } else if top_in_w {
        OrbitClass::FaceA
    } else if bottom_in_w {
        OrbitClass::FaceB
    } else {
        OrbitClass::OpenDense
    };
    Ok(class)
}

/// Classification of a point of X of the model.
pub fn classify_orbit(model: &OrbitModel, p: &ComplexMatrix) -> Result<OrbitClass, GzError> {
    if model.n() != 3 {
        return Err(GzError::Dimension(model.n()));
    }
    classify_matrix(p)
}

/// Whether a class sits on the GZ facet it should: EdgeA on λ₂ = (μ₁, μ₂),
/// EdgeB on (μ₂, μ₃), EdgeC on (μ₁, μ₃), FaceA on λ₂hi = μ₁, FaceB on
/// λ₂lo = μ₃. OpenDense is unconstrained.
pub fn facet_consistent(class: OrbitClass, v: &GZValue, spec: &[f64], tol: f64) -> bool {
    let (m1, m2, m3) = (spec[0], spec[1], spec[2]);
    let on = |a: f64, b: f64| (a - b).abs() < tol;
    match class {
        OrbitClass::OpenDense => true,
        OrbitClass::FaceA => on(v.lambda2_hi, m1),
        OrbitClass::FaceB => on(v.lambda2_lo, m3),
        OrbitClass::EdgeA => on(v.lambda2_hi, m1) && on(v.lambda2_lo, m2),
        OrbitClass::EdgeB => on(v.lambda2_hi, m2) && on(v.lambda2_lo, m3),
        OrbitClass::EdgeC => on(v.lambda2_hi, m1) && on(v.lambda2_lo, m3),
    }
}

/// The projected flags curve Π(h(b)·x) for h(b) = diag(e^b, e^{−b}, 1) on the
/// orbit through s†·diag(1, 0, −1)·s.
pub fn flags_curve_point(b: f64) -> ComplexMatrix {
    let t = b.tanh();
    let sech = 1.0 / b.cosh();
    ComplexMatrix::from_rows(&[
        vec![r(t), r(0.0), I * sech],
        vec![r(0.0), r(0.0), r(0.0)],
        vec![-I * sech, r(0.0), r(-t)],
    ])
}

pub fn curve_image(b: f64) -> Result<GZValue, GzError> {
    gz_map(&flags_curve_point(b))
}

/// Convex hull of the GZ vertex images, facets found by brute force over
/// vertex triples.
#[derive(Clone, Debug)]
pub struct GzPolytope {
    pub vertices: Vec<[f64; 3]>,
    /// Outward normal n and offset c with n·v ≤ c inside.
    pub facets: Vec<([f64; 3], f64)>,
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl GzPolytope {
    /// Vertices are the images of the six diagonal matrices of the orbit and
    /// of a matrix whose top 2×2 block is μ₂·I.
    pub fn for_spec(spec: &[f64]) -> Result<Self, GzError> {
        let mut vertices: Vec<[f64; 3]> = Vec::new();
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut mats: Vec<ComplexMatrix> = perms
            .iter()
            .map(|p| ComplexMatrix::from_real_diag(&[spec[p[0]], spec[p[1]], spec[p[2]]]))
            .collect();
        let (m1, m2, m3) = (spec[0], spec[1], spec[2]);
        let off = ((m1 - m2) * (m2 - m3)).max(0.0).sqrt();
        mats.push(ComplexMatrix::from_real_rows(&[
            &[m2, 0.0, off],
            &[0.0, m2, 0.0],
            &[off, 0.0, m1 + m3 - m2],
        ]));
        for m in &mats {
            let v = gz_map(m)?.as_array();
            if !vertices.iter().any(|w| sub(*w, v).iter().all(|d| d.abs() < 1e-12)) {
                vertices.push(v);
            }
        }
        Ok(Self::hull(vertices))
    }

    pub fn hull(vertices: Vec<[f64; 3]>) -> Self {
        let mut facets: Vec<([f64; 3], f64)> = Vec::new();
        let k = vertices.len();
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    let n = cross(sub(vertices[b], vertices[a]), sub(vertices[c], vertices[a]));
                    let len = dot(n, n).sqrt();
                    if len < 1e-12 {
                        continue;
                    }
                    let mut n = [n[0] / len, n[1] / len, n[2] / len];
                    let mut off = dot(n, vertices[a]);
                    let side: Vec<f64> = vertices.iter().map(|v| dot(n, *v) - off).collect();
                    let above = side.iter().any(|&s| s > 1e-10);
                    let below = side.iter().any(|&s| s < -1e-10);
                    if above && below {
                        continue;
                    }
                    if above {
                        n = [-n[0], -n[1], -n[2]];
                        off = -off;
                    }
                    if !facets.iter().any(|(m, o)| sub(*m, n).iter().all(|d| d.abs() < 1e-9) && (o - off).abs() < 1e-9) {
                        facets.push((n, off));
                    }
                }
            }
        }
        Self { vertices, facets }
    }

    pub fn contains(&self, v: &GZValue, tol: f64) -> bool {
        let p = v.as_array();
        self.facets.iter().all(|(n, off)| dot(*n, p) <= off + tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::AlgebraContext;

    #[test]
    fn chamber_images() {
        let ctx = AlgebraContext::tau();
        let x = ctx.base_point(&[1.0, 0.0, -1.0]).unwrap();
        assert!(gz_map(&x).unwrap().dist(&GZValue { lambda1: 0.0, lambda2_hi: 0.0, lambda2_lo: 0.0 }) < 1e-12);
        let d = ComplexMatrix::from_real_diag(&[1.0, 0.0, -1.0]);
        assert!(gz_map(&d).unwrap().dist(&GZValue { lambda1: 1.0, lambda2_hi: 1.0, lambda2_lo: 0.0 }) < 1e-12);
    }

    #[test]
    fn seven_vertices() {
        let poly = GzPolytope::for_spec(&[1.0, 0.0, -1.0]).unwrap();
        assert_eq!(poly.vertices.len(), 7);
        for v in [
            [0.0, 0.0, 0.0],
            [1.0, 1.0, 0.0],
            [1.0, 1.0, -1.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, 0.0, -1.0],
        ] {
            assert!(poly.vertices.iter().any(|w| sub(*w, v).iter().all(|d| d.abs() < 1e-12)));
        }
        // λ₁ ≤ λ₂hi is a facet, (1, 0, 0) is outside
        let out = GZValue { lambda1: 1.0, lambda2_hi: 0.0, lambda2_lo: 0.0 };
        assert!(!poly.contains(&out, 1e-9));
    }

    #[test]
    fn classes_of_diagonal_points() {
        let d = |a: f64, b: f64, c: f64| ComplexMatrix::from_real_diag(&[a, b, c]);
        let spec = [1.0, 0.0, -1.0];
        for (m, want) in [
            (d(1.0, 0.0, -1.0), OrbitClass::EdgeA),
            (d(0.0, 1.0, -1.0), OrbitClass::EdgeA),
            (d(1.0, -1.0, 0.0), OrbitClass::EdgeC),
            (d(-1.0, 1.0, 0.0), OrbitClass::EdgeC),
            (d(0.0, -1.0, 1.0), OrbitClass::EdgeB),
            (d(-1.0, 0.0, 1.0), OrbitClass::EdgeB),
        ] {
            let class = classify_matrix(&m).unwrap();
            assert_eq!(class, want);
            assert!(facet_consistent(class, &gz_map(&m).unwrap(), &spec, 1e-9));
        }
        let x = AlgebraContext::tau().base_point(&spec).unwrap();
        assert_eq!(classify_matrix(&x).unwrap(), OrbitClass::OpenDense);
        assert!(matches!(classify_matrix(&d(1.0, 1.0, -2.0)), Err(GzError::Degenerate(_))));
    }

    #[test]
    fn curve_tends_to_vertex() {
        let mut last = -1.0;
        for b in [0.0, 0.5, 1.0, 3.0, 10.0] {
            let v = curve_image(b).unwrap();
            assert!((v.lambda1 - b.tanh()).abs() < 1e-12);
            assert!(v.lambda1 > last && v.lambda1 < 1.0 || b == 0.0);
            last = v.lambda1;
        }
    }
}
