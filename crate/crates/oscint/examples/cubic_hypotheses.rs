//! Hypothesis checking for (2+2) cubics: the reference cubic passes, the
//! direct sum of two one-dimensional cubics fails with vanishing Schur
//! complements, and the critical-variety geometry is classified.
//!
//! Run: `cargo run --example cubic_hypotheses`

use oscint::corpus;
use oscint::cubic22::{check_thm14, classify_geometry, sigma1_diagnostic};
use oscint::poly::rat_string;

fn main() {
    for (label, phase) in [
        ("S0", corpus::s0_phase()),
        ("direct sum", corpus::direct_sum_phase()),
    ] {
        let rep = check_thm14(&phase).expect("(2+2) cubic");
        println!("{label}: {phase}");
        println!("  P = {:?}", fmt_mat(&rep.blocks.p));
        println!("  Q = {:?}", fmt_mat(&rep.blocks.q));
        println!("  R = {:?}", fmt_mat(&rep.blocks.r));
        println!("  P, R nonsingular:        {}", rep.pr_nonsingular.holds);
        println!("  Schur complements:       {}", rep.schur_nonsingular.holds);
        println!(
            "  cross resultants:        {}",
            rep.cross_resultants_nonzero.holds
        );
        println!(
            "  indefinite-pair checks:  {} (required: {})",
            rep.indefinite_resultants_nonzero.holds, rep.indefinite_case_applicable
        );
        println!("  all applicable pass:     {}", rep.passes());
        match classify_geometry(&phase) {
            Ok(g) => {
                println!("  Phi signature (+,-,0):   {:?}", g.phi_signature);
                println!("  Gamma_R: {:?}, Gamma_L: {:?}", g.gamma_r, g.gamma_l);
            }
            Err(e) => println!("  geometry: {e}"),
        }
        println!();
    }

    // sigma_1 behaves like the distance to the critical cone
    let s0 = corpus::s0_phase();
    println!("singular-value diagnostic along a ray crossing the cone:");
    for t in [-1.5, -1.0, -0.75, -0.5, 0.0, 0.5] {
        let point = [0.3, 0.7, t, 1.0];
        let (s1, s2, phi) = sigma1_diagnostic(&s0, &point).unwrap();
        println!("  z1 = {t:5.2}: sigma1 = {s1:9.3e}, sigma2 = {s2:9.3e}, |Phi| = {phi:9.3e}");
    }
}

fn fmt_mat(m: &oscint::ratmat::RatMat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| rat_string(m.get(i, j))).collect())
        .collect()
}
