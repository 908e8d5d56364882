//! Numerical λ-sweep of `‖T_λ‖` for a one-dimensional cubic phase, fitted
//! against the predicted decay rate.
//!
//! Run: `cargo run --release --example norm_sweep`

use oscint::corpus;
use oscint::normest::{geometric_lambdas, sweep_and_fit, AmplitudeSpec, BumpKind, GridPolicy};
use oscint::poly::rat_string;
use oscint::predict::{predict_decay, PredictOptions};

fn main() {
    let s = corpus::cubic_1d_phase();
    let prediction = predict_decay(&s, &PredictOptions::default()).unwrap();
    println!(
        "phase {s}: predicted rate lambda^-({}) [{}]",
        rat_string(prediction.rate.as_ref().unwrap()),
        prediction.source.tag()
    );

    let amp = AmplitudeSpec::new(vec![(-1.0, 1.0); 2], BumpKind::ConstantOnBox);
    let lambdas = geometric_lambdas(50.0, 400.0, 6);
    let sweep = sweep_and_fit(
        &s,
        &lambdas,
        &amp,
        GridPolicy::Auto { cap: 4096 },
        1e-4,
        40,
        7,
        0.25,
        false,
    )
    .unwrap();

    println!("lambda        norm        grid  iters  resolved");
    for r in &sweep.rows {
        println!(
            "{:9.2}  {:10.6}  {:5}  {:5}  {}",
            r.lambda, r.norm, r.grid_n, r.iterations, r.resolved
        );
    }
    println!(
        "fitted log-log slope over [{:.0}, {:.0}]: {:.4} +/- {:.4}",
        sweep.fit.window.0, sweep.fit.window.1, sweep.fit.slope, sweep.fit.stderr
    );
}
