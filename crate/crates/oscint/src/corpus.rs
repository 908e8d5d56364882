//! Built-in example phases used by the CLI `examples` subcommand, the test
//! suites and the runnable examples.

use crate::poly::{parse_phase, PhasePoly};

/// The reference (2+2) cubic
/// `S⁰ = x₁(z₁²+z₂²) + x₂z₁z₂ + z₁(2x₁²−x₂²) + z₂(x₁²+3x₂²)`:
/// satisfies every hypothesis of the cubic decay theorem, with
/// `‖T_λ‖ ≲ λ^{-2/3}`.
pub fn s0_phase() -> PhasePoly {
    parse_phase(
        "x1*z1^2 + x1*z2^2 + x2*z1*z2 + 2*x1^2*z1 - x2^2*z1 + x1^2*z2 + 3*x2^2*z2",
        2,
        2,
    )
    .expect("s0")
}

/// Direct sum of two one-dimensional cubics,
/// `x₁z₁² + x₁²z₁ + x₂z₂² + x₂²z₂`: decays like λ^{-2/3} by tensoring the
/// one-dimensional result, yet fails the Schur-complement hypothesis (the
/// complements vanish identically and the critical variety is a normal
/// crossing).
pub fn direct_sum_phase() -> PhasePoly {
    parse_phase("x1*z1^2 + x1^2*z1 + x2*z2^2 + x2^2*z2", 2, 2).expect("direct sum")
}

/// The (1+1) cubic `x²z + xz²` with decay rate `λ^{-1/3}`.
pub fn cubic_1d_phase() -> PhasePoly {
    parse_phase("x1^2*z1 + x1*z1^2", 1, 1).expect("1d cubic")
}

/// Quartic `(x³z + xz³)/3` in (1+1): the single Hessian entry `x² + z²`
/// never vanishes off the origin.
pub fn nondegenerate_quartic_1d() -> PhasePoly {
    parse_phase("1/3*x1^3*z1 + 1/3*x1*z1^3", 1, 1).expect("1d quartic")
}

/// The rank-one witness quartic `(x₁³z₁ + x₂z₁³ + x₂³z₂ + x₂z₂³)/3` in (2+2):
/// its Hessian entries `x₁², z₁², x₂²+z₂²` vanish jointly only at the origin.
pub fn rank_one_m4_phase() -> PhasePoly {
    parse_phase(
        "1/3*x1^3*z1 + 1/3*x2*z1^3 + 1/3*x2^3*z2 + 1/3*x2*z2^3",
        2,
        2,
    )
    .expect("rank one m4")
}

/// Pencil phase `x₁z₁²z₂ + x₂z₁z₂²` (forms of degree d = 3, common direction
/// multiplicity s = 1): rate `λ^{-1/3} log λ`.
pub fn pencil_d3_phase() -> PhasePoly {
    parse_phase("x1*z1^2*z2 + x2*z1*z2^2", 2, 2).expect("pencil d3")
}

/// The (1+1) quadratic `xz` (nondegenerate constant Hessian, rate `λ^{-1/2}`).
pub fn bilinear_phase() -> PhasePoly {
    parse_phase("x1*z1", 1, 1).expect("xz")
}

/// Named corpus entries in display order.
pub fn all() -> Vec<(&'static str, &'static str, PhasePoly)> {
    vec![
        (
            "s0",
            "reference (2+2) cubic passing every cubic-theorem hypothesis",
            s0_phase(),
        ),
        (
            "direct-sum",
            "direct sum of two (1+1) cubics; Schur complements vanish",
            direct_sum_phase(),
        ),
        ("cubic-1d", "(1+1) cubic x^2 z + x z^2", cubic_1d_phase()),
        (
            "rank-one-m4",
            "(2+2) quartic rank-one witness",
            rank_one_m4_phase(),
        ),
        (
            "pencil-d3",
            "pencil phase x1 z1^2 z2 + x2 z1 z2^2",
            pencil_d3_phase(),
        ),
    ]
}

/// Looks up a corpus phase by name.
pub fn by_name(name: &str) -> Option<PhasePoly> {
    all()
        .into_iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, _, p)| p)
}
