// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! Real dense matrices, one-sided Jacobi SVD and least squares.

use super::LinalgError;
use crate::tolerances::TOL;

/// Column-major real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Build from columns of equal length.
    pub fn from_columns(columns: &[Vec<f64>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        assert!(columns.iter().all(|c| c.len() == rows), "ragged columns");
        Self {
            rows,
            cols,
            data: columns.concat(),
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nr, nc);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), nc, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.rows + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[j * self.rows + i] = v;
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![0.0; self.rows];
        for (j, &xj) in x.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.column(j)) {
                *o += a * xj;
            }
        }
        out
    }
}

/// Thin singular value decomposition a = U·diag(s)·Vᵀ, singular values descending.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: RealMatrix,
    pub s: Vec<f64>,
    pub v: RealMatrix,
}

/// One-sided Jacobi (Hestenes) SVD. Works for any shape.
pub fn svd(a: &RealMatrix) -> Svd {
    if a.rows < a.cols {
        let t = svd(&a.transpose());
        return Svd { u: t.v, s: t.s, v: t.u };
    }
    let (m, k) = (a.rows, a.cols);
    let mut w = a.clone();
    let mut v = RealMatrix::identity(k);
    for _sweep in 0..80 {
        let mut rotated = false;
        for i in 0..k {
            for j in i + 1..k {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for r in 0..m {
                    let wi = w.get(r, i);
                    let wj = w.get(r, j);
                    alpha += wi * wi;
                    beta += wj * wj;
                    gamma += wi * wj;
                }
                if gamma.abs() <= 1e-15 * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for r in 0..m {
                    let wi = w.get(r, i);
                    let wj = w.get(r, j);
                    w.set(r, i, cs * wi - sn * wj);
                    w.set(r, j, sn * wi + cs * wj);
                }
                for r in 0..k {
                    let vi = v.get(r, i);
                    let vj = v.get(r, j);
                    v.set(r, i, cs * vi - sn * vj);
                    v.set(r, j, sn * vi + cs * vj);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..k).map(|j| w.column(j).iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&p, &q| norms[q].partial_cmp(&norms[p]).unwrap_or(std::cmp::Ordering::Equal));
    let mut u = RealMatrix::zeros(m, k);
    let mut vs = RealMatrix::zeros(k, k);
    let mut s = Vec::with_capacity(k);
    for (dst, &src) in order.iter().enumerate() {
        let sv = norms[src];
        s.push(sv);
        for r in 0..m {
            u.set(r, dst, if sv > 0.0 { w.get(r, src) / sv } else { 0.0 });
        }
        for r in 0..k {
            vs.set(r, dst, v.get(r, src));
        }
    }
    Svd { u, s, v: vs }
}

/// Least-squares solution with its residual norm ‖a·x − b‖₂.
#[derive(Clone, Debug)]
pub struct LstsqSolution {
    pub x: Vec<f64>,
    pub residual: f64,
    pub rank: usize,
}

fn pseudo_solve(a: &RealMatrix, b: &[f64], dec: &Svd, rank: usize) -> LstsqSolution {
    let mut x = vec![0.0; a.cols];
    for (idx, &sv) in dec.s.iter().enumerate().take(rank) {
        let coef: f64 = dec.u.column(idx).iter().zip(b).map(|(u, b)| u * b).sum::<f64>() / sv;
        for (xi, vi) in x.iter_mut().zip(dec.v.column(idx)) {
            *xi += coef * vi;
        }
    }
    let ax = a.mul_vec(&x);
    let residual = ax.iter().zip(b).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
    LstsqSolution { x, residual, rank }
}

/// Full-column-rank least squares; RankDeficient when σ_min ≤ rcond·σ_max.
pub fn lstsq_real(a: &RealMatrix, b: &[f64]) -> Result<LstsqSolution, LinalgError> {
    if b.len() != a.rows {
        return Err(LinalgError::DimensionMismatch(format!("rhs length {} vs {} rows", b.len(), a.rows)));
    }
    if a.rows < a.cols {
        return Err(LinalgError::RankDeficient(0.0));
    }
    let dec = svd(a);
    let smax = dec.s.first().copied().unwrap_or(0.0);
    let smin = dec.s.last().copied().unwrap_or(0.0);
    if smax == 0.0 || smin <= TOL.lstsq_rcond * smax {
        return Err(LinalgError::RankDeficient(if smax > 0.0 { smin / smax } else { 0.0 }));
    }
    Ok(pseudo_solve(a, b, &dec, a.cols))
}

/// Minimum-norm least squares, truncating singular values below rcond·σ_max.
pub fn lstsq_min_norm(a: &RealMatrix, b: &[f64], rcond: f64) -> Result<LstsqSolution, LinalgError> {
    if b.len() != a.rows {
        return Err(LinalgError::DimensionMismatch(format!("rhs length {} vs {} rows", b.len(), a.rows)));
    }
    let dec = svd(a);
    let smax = dec.s.first().copied().unwrap_or(0.0);
    let rank = dec.s.iter().take_while(|&&s| s > rcond * smax && s > 0.0).count();
    Ok(pseudo_solve(a, b, &dec, rank))
}

/// Numerical rank of a set of real vectors.
pub fn numerical_rank(columns: &[Vec<f64>], rcond: f64) -> usize {
    if columns.is_empty() {
        return 0;
    }
    let dec = svd(&RealMatrix::from_columns(columns));
    let smax = dec.s.first().copied().unwrap_or(0.0);
    dec.s.iter().filter(|&&s| s > rcond * smax && s > 0.0).count()
}

/// Orthonormal basis of the null space of a, padding wide systems with
/// zero rows so the thin SVD is square.
pub fn null_space(a: &RealMatrix, rcond: f64) -> Vec<Vec<f64>> {
    let (m, k) = (a.rows, a.cols);
    let padded = if m < k {
        let mut p = RealMatrix::zeros(k, k);
        for i in 0..m {
            for j in 0..k {
                p.set(i, j, a.get(i, j));
            }
        }
        p
    } else {
        a.clone()
    };
    let dec = svd(&padded);
    let smax = dec.s.first().copied().unwrap_or(0.0);
    (0..k)
        .filter(|&j| !(dec.s[j] > rcond * smax))
        .map(|j| dec.v.column(j).to_vec())
        .collect()
}

/// Greedy selection of a maximal linearly independent subset (indices),
/// by Gram–Schmidt with a relative threshold.
pub fn independent_subset(columns: &[Vec<f64>], rel_tol: f64) -> Vec<usize> {
    let scale = columns
        .iter()
        .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut picked = Vec::new();
    for (idx, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        for _ in 0..2 {
            for q in &basis {
                let d: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= d * qi;
                }
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > rel_tol * scale && norm > 0.0 {
            basis.push(v.iter().map(|x| x / norm).collect());
            picked.push(idx);
        }
    }
    picked
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_system_returns_rhs() {
        let a = RealMatrix::identity(3);
        let sol = lstsq_real(&a, &[1.0, -2.0, 3.5]).unwrap();
        for (x, w) in sol.x.iter().zip([1.0, -2.0, 3.5]) {
            assert!((x - w).abs() < 1e-15);
        }
    }

    #[test]
    fn inconsistent_system_residual_matches_projection() {
        // columns e1, e2 in R^3; b = (1, 2, 3): residual is |3|
        let a = RealMatrix::from_columns(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
        let sol = lstsq_real(&a, &[1.0, 2.0, 3.0]).unwrap();
        assert!((sol.residual - 3.0).abs() < 1e-12);
        assert!((sol.x[0] - 1.0).abs() < 1e-14 && (sol.x[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rank_deficient_is_reported() {
        let a = RealMatrix::from_columns(&[vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]]);
        assert!(matches!(lstsq_real(&a, &[1.0, 1.0, 1.0]), Err(LinalgError::RankDeficient(_))));
        let sol = lstsq_min_norm(&a, &[1.0, 2.0, 3.0], 1e-9).unwrap();
        assert_eq!(sol.rank, 1);
        assert!(sol.residual < 1e-12);
    }

    #[test]
    fn null_space_of_wide_system() {
        let a = RealMatrix::from_rows(&[vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
        let ns = null_space(&a, 1e-9);
        assert_eq!(ns.len(), 1);
        let v = a.mul_vec(&ns[0]);
        assert!(v.iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn svd_reconstructs_wide_matrix() {
        let a = RealMatrix::from_rows(&[vec![1.0, 2.0, 0.5], vec![-1.0, 0.3, 4.0]]);
        let d = svd(&a);
        for i in 0..2 {
            for j in 0..3 {
                let v: f64 = (0..d.s.len()).map(|k| d.u.get(i, k) * d.s[k] * d.v.get(j, k)).sum();
                assert!((v - a.get(i, j)).abs() < 1e-13);
            }
        }
    }
}
