// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! Cyclic Jacobi eigensolver for Hermitian matrices.

use super::matrix::{r, ComplexMatrix, C64};
use super::LinalgError;
use crate::tolerances::TOL;

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a Hermitian matrix: eigenvalues in descending
/// order and a unitary matrix of eigenvectors (columns).
///
/// Each eigenvector column is phase-normalized so that its largest entry
/// is real and positive, which makes the output deterministic.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix), LinalgError> {
    let defect = m.hermitian_defect();
    if defect > TOL.hermitian * m.max_abs().max(1.0) {
        return Err(LinalgError::NotHermitian(defect));
    }
    let n = m.n();
    // symmetrize so the iteration sees an exactly Hermitian matrix
    let mut a = (m + &m.adjoint()).scale_re(0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = a.fro_norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap_or(std::cmp::Ordering::Equal));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vecs = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        let (imax, _) = (0..n)
            .map(|i| (i, v[(i, src)].norm()))
            .fold((0, -1.0), |b, cur| if cur.1 > b.1 + 1e-12 { cur } else { b });
        let ph = v[(imax, src)];
        let ph = if ph.norm() > 0.0 { ph.conj() / ph.norm() } else { r(1.0) };
        for i in 0..n {
            vecs[(i, col)] = v[(i, src)] * ph;
        }
    }
    Ok((values, vecs))
}

/// One complex Jacobi rotation annihilating a[p][q].
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag < 1e-300 {
        return;
    }
    let n = a.n();
    let e = apq / mag;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = t * cs;
    let ec = e.conj();
    // J = [[c, s], [-s ē, c ē]] in the (p, q) plane; A ← J† A J, V ← V J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * cs - akq * ec * sn;
        a[(k, q)] = akp * sn + akq * ec * cs;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * cs - vkq * ec * sn;
        v[(k, q)] = vkp * sn + vkq * ec * cs;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * cs - aqk * e * sn;
        a[(q, k)] = apk * sn + aqk * e * cs;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = r(a[(p, p)].re);
    a[(q, q)] = r(a[(q, q)].re);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::c;

    #[test]
    fn pauli_y_like_matrix() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(0.0, 0.0)]]);
        let (vals, vecs) = hermitian_eigen(&m).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] + 1.0).abs() < 1e-14);
        let d = ComplexMatrix::from_real_diag(&vals);
        assert!((&m * &vecs).dist(&(&vecs * &d)) < 1e-14);
    }

    #[test]
    fn diagonal_input_keeps_identity_vectors() {
        let m = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        let (vals, vecs) = hermitian_eigen(&m).unwrap();
        assert_eq!(vals, vec![1.0, -1.0]);
        assert!(vecs.dist(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eigen(&m), Err(LinalgError::NotHermitian(_))));
    }
}
