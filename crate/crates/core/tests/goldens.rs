// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! Frozen values. Closed forms where one exists; the Wick image was frozen
//! from an RK4 integration of dp/dw = −Λ(p) along w ∈ [0, −iπ/2] (2·10⁴
//! steps), independent of the closed-form flow.

use orbitcanon::canonical::{frame_inner, nagano_map};
use orbitcanon::gz::{curve_image, gz_map};
use orbitcanon::linalg::{c, ComplexMatrix, C64};
use orbitcanon::models::{equator_dtheta, equator_point, flags_curve_witness, su2_chart_point, ModelKind};
use orbitcanon::orbit::OrbitModel;
use orbitcanon::potential::{hessian_at_base, potential, zeta};
use orbitcanon::wick::{flow_phi, singular_time, singular_time_closed_form, wick_psi, EFZPoint};

const WICK_IMAGE: [(f64, f64); 3] = [(0.9270988054797359, 0.0), (0.7416790443837791, 0.0), (0.0, -0.64)];
const SINGULAR_TIME: f64 = 0.44628710262841953;
const H_AT_HALF: f64 = 0.8675616609660542;
/// (b, 3 ln cosh b, 6 tanh b, tanh b)
const CURVE: [(f64, f64, f64, f64); 2] = [
    (0.5, 0.36034352087483235, 2.7727029435600583, 0.46211715726000974),
    (1.0, 1.3013424914490814, 4.569564935734589, 0.7615941559557649),
];
const P_THETA_AT_0_7: f64 = -0.8853516482022625;

fn model(kind: ModelKind) -> OrbitModel {
    kind.build(&kind.default_spec()).unwrap()
}

fn close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() < tol, "{a} vs {b}");
}

#[test]
fn su2_potential_at_half() {
    let m = model(ModelKind::Su2Weyl);
    let p = su2_chart_point(&m, 0.0, 0.5).unwrap();
    close(potential(&m, &p).unwrap().value, H_AT_HALF, 1e-10);
    // a-independence
    let q = su2_chart_point(&m, 1.1, 0.5).unwrap();
    close(potential(&m, &q).unwrap().value, H_AT_HALF, 1e-10);
}

#[test]
fn su2_hessian_at_base() {
    let m = model(ModelKind::Su2Weyl);
    let hess = hessian_at_base(&m, 0.01).unwrap();
    assert_eq!(hess.len(), 1);
    // h = 2 ln cosh 2b has second derivative 8 at b = 0
    close(hess[0][0], 8.0, 1e-5);
}

#[test]
fn su2_nagano_point() {
    let m = model(ModelKind::Su2Weyl);
    let p = su2_chart_point(&m, 0.3, 0.7).unwrap();
    let cp = nagano_map(&m, &p).unwrap();
    assert!(cp.base.value.dist(&equator_point(0.6)) < 1e-7);
    close(frame_inner(&cp.xi, &equator_dtheta(0.6)), P_THETA_AT_0_7, 1e-7);
}

#[test]
fn wick_image_matches_integrated_flow() {
    let p = EFZPoint::real(0.6, 0.48, 0.64);
    let img = wick_psi(&p).unwrap();
    for (got, want) in img.as_array().iter().zip(WICK_IMAGE) {
        assert!((got - C64::new(want.0, want.1)).norm() < 1e-12, "{got} vs {want:?}");
    }
    // group law on the way
    let half = flow_phi(&flow_phi(&p, c(0.0, -0.25 * std::f64::consts::PI)).unwrap(), c(0.0, -0.25 * std::f64::consts::PI)).unwrap();
    assert!(half.dist(&img) < 1e-12);
}

#[test]
fn wick_singular_time() {
    let p = EFZPoint::real(0.6, 0.48, 0.64);
    close(singular_time_closed_form(&p), SINGULAR_TIME, 1e-14);
    close(singular_time(&p).unwrap().unwrap(), SINGULAR_TIME, 1e-10);
}

#[test]
fn flags_curve_values() {
    let m = model(ModelKind::Su3Flags);
    let cdir = ComplexMatrix::from_real_diag(&[1.0, -1.0, 0.0]);
    for (b, h, z, t) in CURVE {
        let p = m.point_projected(&flags_curve_witness(b)).unwrap();
        close(potential(&m, &p).unwrap().value, h, 1e-10);
        let zv = zeta(&m, &flags_curve_witness(b), &cdir).unwrap();
        assert!((zv - c(z, 0.0)).norm() < 1e-10, "{zv} vs {z}");
        let v = curve_image(b).unwrap();
        close(v.lambda1, t, 1e-14);
        close(v.lambda2_hi, t, 1e-14);
        close(v.lambda2_lo, 0.0, 1e-14);
    }
}

#[test]
fn gz_vertices() {
    let m = model(ModelKind::Su3Flags);
    assert!(gz_map(&m.x).unwrap().as_array().iter().all(|v| v.abs() < 1e-12));
    let d = gz_map(&ComplexMatrix::from_real_diag(&[1.0, 0.0, -1.0])).unwrap();
    assert_eq!(d.as_array(), [1.0, 1.0, 0.0]);
}
