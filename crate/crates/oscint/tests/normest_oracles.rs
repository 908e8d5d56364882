//! Independent oracles for the operator-norm machinery: dense SVD at λ = 0,
//! the Kronecker tensor identity for direct-sum phases, and witness behavior.

use approx::assert_relative_eq;
use oscint::corpus;
use oscint::normest::{
    estimate_norm, lower_bound_witness, AmplitudeSpec, BumpKind, DiscretizedOperator,
};
use oscint::poly::parse_phase;

#[test]
fn four_dimensional_lambda_zero_matches_dense_svd() {
    // 4D amplitude-only kernel on a tiny grid vs an explicit dense SVD
    let s = corpus::direct_sum_phase();
    let amp = AmplitudeSpec::standard(4);
    let n = 8;
    let est = estimate_norm(&s, 0.0, &amp, n, 1e-10, 2000, 11).unwrap();
    let op = DiscretizedOperator::new(&s, 0.0, &amp, n).unwrap();
    let (nx, nz) = (op.x_size(), op.z_size());
    // rebuild the dense matrix entry by entry through apply() on unit vectors
    let mut dense = nalgebra::DMatrix::<f64>::zeros(nx, nz);
    for j in 0..nz {
        let mut e = vec![num_complex::Complex64::new(0.0, 0.0); nz];
        e[j] = num_complex::Complex64::new(1.0, 0.0);
        let col = op.apply(&e);
        for i in 0..nx {
            dense[(i, j)] = col[i].re;
        }
    }
    let sv = dense.svd(false, false).singular_values[0];
    assert_relative_eq!(est.norm, sv, max_relative = 1e-8);
}

#[test]
fn tensor_identity_holds_even_under_resolved() {
    // the 4D direct-sum kernel is the Kronecker square of the 1D kernel on
    // matching grids, at any λ and any resolution
    let s4 = corpus::direct_sum_phase();
    let s1 = corpus::cubic_1d_phase();
    let amp4 = AmplitudeSpec::standard(4);
    let amp1 = AmplitudeSpec::standard(2);
    for &(lambda, n) in &[(3.0, 16), (12.0, 24)] {
        let n4 = estimate_norm(&s4, lambda, &amp4, n, 1e-7, 400, 3).unwrap();
        let n1 = estimate_norm(&s1, lambda, &amp1, n, 1e-7, 400, 3).unwrap();
        assert_relative_eq!(n4.norm, n1.norm * n1.norm, max_relative = 1e-4);
    }
}

#[test]
fn constant_amplitude_4d_tensor_identity() {
    let s4 = corpus::direct_sum_phase();
    let s1 = corpus::cubic_1d_phase();
    let amp4 = AmplitudeSpec::new(vec![(-1.0, 1.0); 4], BumpKind::ConstantOnBox);
    let amp1 = AmplitudeSpec::new(vec![(-1.0, 1.0); 2], BumpKind::ConstantOnBox);
    let n4 = estimate_norm(&s4, 5.0, &amp4, 20, 1e-7, 400, 9).unwrap();
    let n1 = estimate_norm(&s1, 5.0, &amp1, 20, 1e-7, 400, 9).unwrap();
    assert_relative_eq!(n4.norm, n1.norm * n1.norm, max_relative = 1e-4);
}

#[test]
fn witness_stays_below_estimate_on_4d_grid() {
    let s0 = corpus::s0_phase();
    let amp = AmplitudeSpec::standard(4);
    let (x0, z0, eps) = oscint::normest::default_witness_base(&s0, &amp);
    let n = 32;
    for &lambda in &[5.0, 20.0] {
        let w = lower_bound_witness(&s0, lambda, &amp, n, &x0, &z0, eps).unwrap();
        let est = estimate_norm(&s0, lambda, &amp, n, 1e-5, 300, 1).unwrap();
        assert!(
            w.ratio <= est.norm * (1.0 + 1e-9),
            "lambda {lambda}: witness {} vs norm {} (n {n}, seed 1, tol 1e-5)",
            w.ratio,
            est.norm
        );
    }
}

#[test]
fn witness_rejects_base_outside_support() {
    let s = corpus::cubic_1d_phase();
    let amp = AmplitudeSpec::standard(2);
    let err = lower_bound_witness(&s, 50.0, &amp, 64, &[2.0], &[0.4], 0.3);
    assert!(err.is_err());
}

#[test]
fn phase_conjugation_makes_witness_effective() {
    // at the base point the witness integrand is phase-aligned, so the ratio
    // is a sizable fraction of the norm rather than a cancellation artifact
    let s = parse_phase("x1^2*z1 + x1*z1^2", 1, 1).unwrap();
    let amp = AmplitudeSpec::standard(2);
    let (x0, z0, eps) = oscint::normest::default_witness_base(&s, &amp);
    let w = lower_bound_witness(&s, 300.0, &amp, 1400, &x0, &z0, eps).unwrap();
    let est = estimate_norm(&s, 300.0, &amp, 1400, 1e-5, 200, 1).unwrap();
    assert!(
        w.ratio > 0.2 * est.norm,
        "witness {} vs norm {}",
        w.ratio,
        est.norm
    );
}
