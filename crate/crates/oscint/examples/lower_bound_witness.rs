//! The scaled-bump lower-bound witness `f_λ(z) = λ^{n_z/2m} f(λ^{1/m} z)`:
//! its Rayleigh ratio never exceeds the norm estimate on a shared grid, and
//! its decay tracks the universal lower bound `λ^{-(n_x+n_z)/2m}`.
//!
//! Run: `cargo run --release --example lower_bound_witness`

use oscint::corpus;
use oscint::normest::{
    default_witness_base, estimate_norm, fit_loglog, lower_bound_witness, AmplitudeSpec, BumpKind,
};

fn main() {
    let s = corpus::cubic_1d_phase();
    let amp = AmplitudeSpec::new(vec![(-1.0, 1.0); 2], BumpKind::SmoothCompact);
    let (x0, z0, eps) = default_witness_base(&s, &amp);
    println!("phase {s}; witness centered at x0 = {x0:?}, z0 = {z0:?}, eps = {eps}");
    println!("universal lower-bound exponent: -(n_x+n_z)/2m = -1/3");

    let mut ratios = Vec::new();
    println!("lambda      witness      norm estimate");
    for k in 0..6 {
        let lambda = 50.0 * 1.65f64.powi(k);
        let n = 700.max((3.2 * lambda) as usize);
        let w = lower_bound_witness(&s, lambda, &amp, n, &x0, &z0, eps).unwrap();
        let est = estimate_norm(&s, lambda, &amp, n, 1e-4, 40, 7).unwrap();
        println!(
            "{lambda:8.1}  {:10.6}  {:10.6}   (ratio <= norm: {})",
            w.ratio,
            est.norm,
            w.ratio <= est.norm
        );
        ratios.push((lambda, w.ratio));
    }
    let fit = fit_loglog(&ratios, 0.25).unwrap();
    println!(
        "witness-ratio slope: {:.4} (lower-bound exponent -1/3 = -0.3333)",
        fit.slope
    );
}
