//! The mixed-Hessian map is a linear isomorphism onto the compatible-matrix
//! space: compatibility testing, the explicit inverse, and round trips.
//!
//! Run: `cargo run --example hessian_isomorphism`

use oscint::corpus;
use oscint::hessmap::{mixed_hessian, HessianMatrix};
use oscint::poly::{parse_hompoly, HomPoly, PhasePoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let s0 = corpus::s0_phase();
    println!("reference cubic S0 = {s0}");
    let h = mixed_hessian(&s0).expect("cubic has degree >= 2");
    println!("mixed Hessian:");
    for i in 0..2 {
        for j in 0..2 {
            println!("  H[{}][{}] = {}", i + 1, j + 1, h.entry(i, j));
        }
    }
    let report = h.is_compatible();
    println!("compatible: {}", report.compatible);

    let recovered = h.hessian_inverse().expect("compatible matrix inverts");
    println!("inverse recovers S0 exactly: {}", recovered == s0);

    // a matrix that is not a Hessian
    let bad = HessianMatrix::new(
        2,
        2,
        vec![
            parse_hompoly("z1", 2, 2).unwrap(),
            parse_hompoly("z2", 2, 2).unwrap(),
            parse_hompoly("0*z1 - z2", 2, 2).unwrap(),
            parse_hompoly("z1", 2, 2).unwrap(),
        ],
    )
    .unwrap();
    let bad_report = bad.is_compatible();
    println!(
        "[[z1, z2], [-z2, z1]] compatible: {} (violations: {:?})",
        bad_report.compatible, bad_report.violations
    );

    // build a phase from a matrix instead: the rank-one witness construction
    let witness = HessianMatrix::new(
        2,
        2,
        vec![
            parse_hompoly("x1^2", 2, 2).unwrap(),
            HomPoly::zero(2, 2, 2),
            parse_hompoly("z1^2", 2, 2).unwrap(),
            parse_hompoly("x2^2 + z2^2", 2, 2).unwrap(),
        ],
    )
    .unwrap();
    let phase = witness.hessian_inverse().expect("compatible");
    println!("phase with Hessian [[x1^2, 0], [z1^2, x2^2+z2^2]]: {phase}");

    // random round trips across several spaces
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut ok = 0;
    for trial in 0..100 {
        let (nx, nz, m) = [(1usize, 1usize, 4u32), (2, 2, 3), (2, 2, 5), (3, 2, 3)][trial % 4];
        let s = PhasePoly::random(nx, nz, m, 9, &mut rng);
        if mixed_hessian(&s).unwrap().hessian_inverse().unwrap() == s {
            ok += 1;
        }
    }
    println!("round trips on random phases: {ok}/100 exact");
}
