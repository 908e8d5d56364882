//! Newton distances, the effect of rotations, and the modified-distance
//! search that undoes them.
//!
//! Run: `cargo run --example newton_distance`

use oscint::corpus;
use oscint::newton::{modified_newton_distance, newton_distance};
use oscint::poly::{parse_phase, rat_string, Rat};
use oscint::ratmat::RatMat;

fn rq(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn main() {
    let show = |label: &str, s: &oscint::poly::PhasePoly| {
        let nd = newton_distance(s).expect("nonzero");
        println!("delta({label}) = {}", rat_string(&nd.delta));
    };

    let sparse = parse_phase("x1^2*z1 + x1*z1^2", 2, 2).unwrap();
    show("x1^2 z1 + x1 z1^2", &sparse);
    show("S0", &corpus::s0_phase());
    show("(x^3 z + x z^3)/3", &corpus::nondegenerate_quartic_1d());
    show("rank-one quartic", &corpus::rank_one_m4_phase());

    // rotate x and z by the 3-4-5 angle (not a multiple of pi, yet exactly
    // rational): the Newton distance is not invariant and drops to 3/4
    let rot = RatMat::from_rows(vec![vec![rq(3, 5), rq(-4, 5)], vec![rq(4, 5), rq(3, 5)]]);
    let rotated = sparse.compose_linear(&rot, &rot).unwrap();
    show("rotated phase", &rotated);

    // the modified search realigns with the hidden linear factors and
    // recovers 3/2
    let modified = modified_newton_distance(&rotated, 200, 7).expect("nonzero");
    println!(
        "modified search on the rotated phase: delta >= {} (exact: {}, found by {:?})",
        rat_string(&modified.delta),
        modified.exact,
        modified.kind
    );
    if let (Some(a), Some(b)) = (&modified.transform_a, &modified.transform_b) {
        let realigned = rotated.compose_linear(a, b).unwrap();
        println!("realigned phase: {realigned}");
    }

    // pencils have an exact modified distance: max(d/2, s)
    let pencil = corpus::pencil_d3_phase();
    let m = modified_newton_distance(&pencil, 10, 1).expect("nonzero");
    println!(
        "pencil {}: delta_mod = {} exactly ({})",
        pencil,
        rat_string(&m.delta),
        if m.exact {
            "pencil fast path"
        } else {
            "lower bound"
        }
    );
}
