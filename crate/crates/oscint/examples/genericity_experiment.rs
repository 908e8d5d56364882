//! Genericity experiment: random rational (2+2) cubics almost always satisfy
//! the rank-one condition and the full cubic hypothesis set.
//!
//! Run: `cargo run --example genericity_experiment`

use oscint::predict::{genericity, PredictOptions};

fn main() {
    let opts = PredictOptions::default();
    for seed in [1u64, 2, 3] {
        let rep = genericity(2, 2, 3, 100, seed, &opts);
        println!(
            "seed {seed}: rank-one {}/{}  cubic hypotheses {}/{}",
            rep.rank_one_passes,
            rep.trials,
            rep.cubic_passes.unwrap(),
            rep.trials
        );
    }
    // quartics in (2+2) satisfy rank-one generically as well
    let rep = genericity(
        2,
        2,
        4,
        25,
        1,
        &PredictOptions {
            grid: 2000,
            certify: true,
            seed: 1,
        },
    );
    println!(
        "(2+2) quartics, certified rank-one: {}/{}",
        rep.rank_one_passes, rep.trials
    );
}
