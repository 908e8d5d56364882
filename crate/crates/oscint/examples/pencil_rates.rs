//! Pencil phases `x1 phi1(z) + x2 phi2(z)`: detection, the common-direction
//! multiplicity `s`, decay rates and exact modified Newton distances.
//!
//! Run: `cargo run --example pencil_rates`

use oscint::pencil::{detect_pencil, pencil_rate};
use oscint::poly::{parse_phase, rat_string};

fn main() {
    let cases = [
        "x1*z1^2*z2 + x2*z1*z2^2",
        "x1*z1^2 + x2*z2^2",
        "x1*z1*z2 + x2*z1*z2",
        "x1*z1^3 + x2*z2^3",
        "x1*z1^2*z2 + x2*z1^2*z2",
    ];
    for src in cases {
        let s = parse_phase(src, 2, 2).unwrap();
        match detect_pencil(&s) {
            Some(p) => {
                let pred = pencil_rate(&p);
                let dir = p
                    .direction
                    .as_ref()
                    .map(|d| d.to_string())
                    .unwrap_or_else(|| "-".into());
                println!(
                    "{src}: d = {}, s = {} (at {dir}), r = {}, delta_mod = {}",
                    p.d,
                    p.s,
                    rat_string(&pred.rate.unwrap()),
                    rat_string(&pred.delta_mod.unwrap()),
                );
            }
            None => println!("{src}: not a (genuine) pencil"),
        }
    }

    // not pencils: quadratic-in-x terms, or a vanishing form
    for src in ["x1^2*z1 + x1*z1^2", "x1*z1^3"] {
        let s = parse_phase(src, 2, 2).unwrap();
        println!("{src}: pencil = {}", detect_pencil(&s).is_some());
    }
}
