// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;

use orbitcanon::canonical::{act_k, act_sigma, momentum_nu};
use orbitcanon::gz::gz_map;
use orbitcanon::linalg::{c, hermitian_eigen, iwasawa_factor, matrix_exp, matrix_log, ComplexMatrix};
use orbitcanon::models::{random_k, random_point, random_unitary, sample_rng, ModelKind};
use orbitcanon::potential::potential;
use orbitcanon::wick::{flow_phi, EFZPoint};

fn entries(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
}

fn matrix(n: usize, v: &[(f64, f64)]) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |i, j| c(v[i * n + j].0, v[i * n + j].1))
}

fn hermitian(n: usize, v: &[(f64, f64)]) -> ComplexMatrix {
    let m = matrix(n, v);
    (&m + &m.adjoint()).scale_re(0.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigen_reconstructs(v in entries(3)) {
        let h = hermitian(3, &v);
        let (vals, vecs) = hermitian_eigen(&h).unwrap();
        prop_assert!(vals.windows(2).all(|w| w[0] >= w[1]));
        let d = ComplexMatrix::from_real_diag(&vals);
        let back = &(&vecs * &d) * &vecs.adjoint();
        prop_assert!(back.dist(&h) < 1e-11);
        prop_assert!((&vecs * &vecs.adjoint()).dist(&ComplexMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn exp_log_round_trip(v in entries(3)) {
        let a = matrix(3, &v).scale_re(0.5);
        let e = matrix_exp(&a).unwrap();
        let back = matrix_log(&e).unwrap();
        prop_assert!(back.dist(&a) < 1e-10);
    }

    #[test]
    fn iwasawa_factors(v in entries(3)) {
        let a = matrix(3, &v);
        let tr = a.trace() * (1.0 / 3.0);
        let traceless = &a - &ComplexMatrix::identity(3).scale(tr);
        let m = matrix_exp(&traceless).unwrap();
        let f = iwasawa_factor(&m).unwrap();
        prop_assert!(f.reconstruct().dist(&m) < 1e-10 * m.max_abs().max(1.0));
        prop_assert!((&f.unitary * &f.unitary.adjoint()).dist(&ComplexMatrix::identity(3)) < 1e-12);
        for i in 0..3 {
            prop_assert!((f.unipotent[(i, i)] - c(1.0, 0.0)).norm() < 1e-12);
            prop_assert!(f.diagonal[(i, i)].re > 0.0 && f.diagonal[(i, i)].im.abs() < 1e-12);
            for j in 0..i {
                prop_assert!(f.unipotent[(i, j)].norm() < 1e-12);
            }
        }
    }

    #[test]
    fn gz_interlaces_and_ignores_phases(seed in 0u64..1_000_000, phases in prop::array::uniform3(0.0f64..6.3)) {
        let y = ComplexMatrix::from_real_diag(&[1.0, 0.3, -1.3]);
        let u = random_unitary(&mut sample_rng(seed, 0), 3);
        let p = &(&u * &y) * &u.adjoint();
        let v = gz_map(&p).unwrap();
        prop_assert!(1.0 + 1e-10 >= v.lambda2_hi && v.lambda2_hi + 1e-10 >= 0.3);
        prop_assert!(0.3 + 1e-10 >= v.lambda2_lo && v.lambda2_lo + 1e-10 >= -1.3);
        prop_assert!(v.lambda2_hi + 1e-10 >= v.lambda1 && v.lambda1 + 1e-10 >= v.lambda2_lo);
        let d = ComplexMatrix::from_diag(&phases.map(|t| c(t.cos(), t.sin())));
        let w = gz_map(&(&(&d * &p) * &d.adjoint())).unwrap();
        prop_assert!(v.dist(&w) < 1e-12);
    }

    #[test]
    fn wick_flow_group_law(e in -1.0f64..1.0, f in 0.2f64..1.0, z in -1.0f64..1.0, s in -0.5f64..0.0, t in -0.5f64..0.0) {
        let p = EFZPoint::real(e, f, z);
        let one = flow_phi(&p, c(s + t, 0.0)).unwrap();
        let two = flow_phi(&flow_phi(&p, c(s, 0.0)).unwrap(), c(t, 0.0)).unwrap();
        prop_assert!(one.dist(&two) < 1e-12);
        prop_assert!((one.quadric_value - p.quadric_value).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn potential_nonnegative_and_invariant(seed in 0u64..1_000_000, kind_ix in 0usize..3) {
        let kind = [ModelKind::Su2Weyl, ModelKind::Su3Weyl, ModelKind::Su3Flags][kind_ix];
        let m = kind.build(&kind.default_spec()).unwrap();
        let mut rng = sample_rng(seed, 0);
        let p = random_point(&m, &mut rng, 0.5).unwrap();
        let h = potential(&m, &p).unwrap().value;
        prop_assert!(h >= 0.0);
        let k = random_k(&m, &mut rng);
        let hk = potential(&m, &act_k(&m, &k, &p).unwrap()).unwrap().value;
        let hs = potential(&m, &act_sigma(&m, &p).unwrap()).unwrap().value;
        prop_assert!((hk - h).abs() < 1e-8);
        prop_assert!((hs - h).abs() < 1e-8);
        // K(x) is the zero set
        let on_k = m.point_projected(&k).unwrap();
        prop_assert!(potential(&m, &on_k).unwrap().value.abs() < 1e-8);
    }

    #[test]
    fn momentum_nu_is_equivariant(seed in 0u64..1_000_000) {
        let kind = ModelKind::Su3Flags;
        let m = kind.build(&kind.default_spec()).unwrap();
        let mut rng = sample_rng(seed, 1);
        let p = random_point(&m, &mut rng, 0.5).unwrap();
        let k = random_k(&m, &mut rng);
        let kp = &(&k * &p.value) * &k.adjoint();
        let lhs = momentum_nu(&m, &kp);
        // ν(k·p)(b) = ν(p)(k⁻¹·b·k), expanded on the 𝔨 basis through the trace pairing
        let nu = momentum_nu(&m, &p.value);
        let gram: Vec<Vec<f64>> = m.ctx.basis_k.iter()
            .map(|a| m.ctx.basis_k.iter().map(|b| (a * &b.adjoint()).trace().re).collect())
            .collect();
        for (j, b) in m.ctx.basis_k.iter().enumerate() {
            let back = &(&k.adjoint() * b) * &k;
            let coeffs: Vec<f64> = m.ctx.basis_k.iter().map(|a| (&back * &a.adjoint()).trace().re).collect();
            let sol = solve(&gram, &coeffs);
            let rhs: f64 = sol.iter().zip(&nu).map(|(a, b)| a * b).sum();
            prop_assert!((lhs[j] - rhs).abs() < 1e-10);
        }
    }
}

/// Small dense Gaussian elimination for the Gram system.
fn solve(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().zip(b).map(|(r, v)| {
        let mut r = r.clone();
        r.push(*v);
        r
    }).collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap();
        m.swap(col, piv);
        for row in 0..n {
            if row != col {
                let f = m[row][col] / m[col][col];
                let pivot = m[col].clone();
                for (x, p) in m[row][col..].iter_mut().zip(&pivot[col..]) {
                    *x -= f * p;
                }
            }
        }
    }
    (0..n).map(|i| m[i][n] / m[i][i]).collect()
}
