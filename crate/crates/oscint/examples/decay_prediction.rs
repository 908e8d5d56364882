//! The decay-rate decision tree over the built-in corpus, with the verified
//! hypothesis ledger for each phase.
//!
//! Run: `cargo run --example decay_prediction`

use oscint::corpus;
use oscint::poly::rat_string;
use oscint::predict::{predict_decay, ConditionStatus, PredictOptions};

fn main() {
    let opts = PredictOptions {
        grid: 4000,
        certify: false,
        seed: 7,
    };
    for (name, _, phase) in corpus::all() {
        let p = predict_decay(&phase, &opts).expect("nonzero phase");
        let rate = p
            .rate
            .as_ref()
            .map(rat_string)
            .unwrap_or_else(|| "-".into());
        let log = match p.log_power {
            0 => String::new(),
            1 => " * log(lambda)".into(),
            k => format!(" * log^{k}(lambda)"),
        };
        println!(
            "{name}: ||T|| <~ lambda^-({rate}){log}   [{}]",
            p.source.tag()
        );
        println!(
            "    universal lower bound: lambda^-({})",
            rat_string(&p.lower_bound_rate)
        );
        if let Some(dm) = &p.delta_mod {
            println!("    modified Newton distance: {}", rat_string(dm));
        }
        for h in &p.hypotheses {
            let status = match &h.status {
                ConditionStatus::Holds { method, .. } => format!("holds ({method})"),
                ConditionStatus::Fails { method, .. } => format!("fails ({method})"),
                ConditionStatus::Undetermined { .. } => "undetermined".into(),
            };
            println!("    - {}: {}", h.condition, status);
        }
        println!();
    }
}
