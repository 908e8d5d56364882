//! Phases built from pencils of binary forms, `S = x₁φ₁(z) + x₂φ₂(z)` with
//! `φ₁, φ₂` of common degree `d`: structural detection, the multiplicity
//! invariant `s`, the decay rate `min(1/d, 1/(2s))` (log power 1) and the
//! exact modified Newton distance `max(d/2, s)`.

use crate::binres::{self, BinaryForm, Direction};
use crate::poly::{PhasePoly, Rat};
use crate::predict::{ConditionStatus, DecayPrediction, HypothesisRecord, RateSource};
use num_traits::Zero;

/// A detected pencil phase.
#[derive(Clone, Debug)]
pub struct PencilPhase {
    /// Common degree of the two forms.
    pub d: u32,
    pub phi1: BinaryForm,
    pub phi2: BinaryForm,
    /// Largest common real-direction multiplicity.
    pub s: u32,
    /// A direction attaining `s`, when `s >= 1`.
    pub direction: Option<Direction>,
}

/// Structural detection: succeeds exactly when every term is linear in `x`
/// and both coefficient forms are nonzero (a degenerate pencil with a zero
/// form has a flat direction and is excluded).
pub fn detect_pencil(s: &PhasePoly) -> Option<PencilPhase> {
    if s.n_x() != 2 || s.n_z() != 2 || s.is_zero() {
        return None;
    }
    let d = s.degree().checked_sub(1)?;
    let mut phi1 = vec![Rat::zero(); d as usize + 1];
    let mut phi2 = vec![Rat::zero(); d as usize + 1];
    for (idx, c) in s.poly().terms() {
        if idx.x_degree() != 1 {
            return None;
        }
        let v_power = idx.beta[1] as usize;
        if idx.alpha[0] == 1 {
            phi1[v_power] = c.clone();
        } else {
            phi2[v_power] = c.clone();
        }
    }
    let phi1 = BinaryForm::new(phi1);
    let phi2 = BinaryForm::new(phi2);
    if phi1.is_zero() || phi2.is_zero() {
        return None;
    }
    let ps = binres::pencil_s(&phi1, &phi2).ok()?;
    Some(PencilPhase {
        d,
        phi1,
        phi2,
        s: ps.s,
        direction: ps.direction,
    })
}

/// Decay prediction for a pencil: `‖T_λ‖ <= C λ^{-r} log λ` with
/// `r = min(1/d, 1/(2s))` (`1/(2s)` read as +∞ when `s = 0`), sharp up to the
/// log factor, and `r = 1/(2 δ_mod)` with `δ_mod = max(d/2, s)`.
pub fn pencil_rate(p: &PencilPhase) -> DecayPrediction {
    let d = p.d as i64;
    let inv_d = Rat::new(1.into(), d.into());
    let rate = if p.s == 0 {
        inv_d
    } else {
        let inv_2s = Rat::new(1.into(), (2 * p.s as i64).into());
        inv_d.min(inv_2s)
    };
    let delta_mod = {
        let half_d = Rat::new(d.into(), 2.into());
        let s_rat = Rat::from_integer((p.s as i64).into());
        if s_rat > half_d {
            s_rat
        } else {
            half_d
        }
    };
    // m = d + 1, n_x + n_z = 4
    let lower = Rat::new(4.into(), (2 * (d + 1)).into());
    DecayPrediction {
        rate: Some(rate),
        log_power: 1,
        source: RateSource::Prop45,
        hypotheses: vec![HypothesisRecord {
            condition: format!("pencil structure with d = {}, s = {}", p.d, p.s),
            status: ConditionStatus::holds_exact(),
        }],
        lower_bound_rate: lower,
        delta_mod: Some(delta_mod),
        sharp_lower_bound: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::poly::parse_phase;

    fn rq(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn detects_degree_three_pencil() {
        let p = detect_pencil(&corpus::pencil_d3_phase()).unwrap();
        assert_eq!(p.d, 3);
        assert_eq!(p.s, 1);
        assert_eq!(p.phi1, BinaryForm::parse("z1^2*z2").unwrap());
        assert_eq!(p.phi2, BinaryForm::parse("z1*z2^2").unwrap());
        assert!(p.direction.is_some());
    }

    #[test]
    fn rejects_nonlinear_in_x() {
        assert!(detect_pencil(&corpus::s0_phase()).is_none());
    }

    #[test]
    fn rejects_degenerate_pencil() {
        // x1 z1^3 alone leaves phi2 = 0
        let s = parse_phase("x1*z1^3", 2, 2).unwrap();
        assert!(detect_pencil(&s).is_none());
    }

    #[test]
    fn rate_for_d3_s1() {
        let p = detect_pencil(&corpus::pencil_d3_phase()).unwrap();
        let pred = pencil_rate(&p);
        assert_eq!(pred.rate.unwrap(), rq(1, 3));
        assert_eq!(pred.log_power, 1);
        assert_eq!(pred.delta_mod.unwrap(), rq(3, 2));
        assert!(pred.sharp_lower_bound);
    }

    #[test]
    fn rate_for_coprime_squares() {
        // phi1 = z1^2, phi2 = z2^2: d = 2, s = 0, r = 1/2, delta_mod = 1
        let s = parse_phase("x1*z1^2 + x2*z2^2", 2, 2).unwrap();
        let p = detect_pencil(&s).unwrap();
        assert_eq!(p.s, 0);
        let pred = pencil_rate(&p);
        assert_eq!(pred.rate.unwrap(), rq(1, 2));
        assert_eq!(pred.delta_mod.unwrap(), rq(1, 1));
    }

    #[test]
    fn rate_for_shared_product_form() {
        // phi1 = phi2 = z1 z2: d = 2, s = 1, r = min(1/2, 1/2) = 1/2
        let s = parse_phase("x1*z1*z2 + x2*z1*z2", 2, 2).unwrap();
        let p = detect_pencil(&s).unwrap();
        assert_eq!(p.s, 1);
        let pred = pencil_rate(&p);
        assert_eq!(pred.rate.unwrap(), rq(1, 2));
        assert_eq!(pred.delta_mod.unwrap(), rq(1, 1));
    }

    #[test]
    fn rate_equals_reciprocal_of_twice_delta_mod() {
        for src in [
            "x1*z1^2*z2 + x2*z1*z2^2",
            "x1*z1^2 + x2*z2^2",
            "x1*z1*z2 + x2*z1*z2",
            "x1*z1^3 + x2*z2^3",
            "x1*z1^2*z2 + x2*z1^2*z2",
        ] {
            let s = parse_phase(src, 2, 2).unwrap();
            let p = detect_pencil(&s).unwrap();
            let pred = pencil_rate(&p);
            let two_delta = Rat::from_integer(2.into()) * pred.delta_mod.unwrap();
            assert_eq!(
                pred.rate.unwrap(),
                Rat::new(1.into(), 1.into()) / two_delta,
                "{src}"
            );
        }
    }

    #[test]
    fn rate_invariant_under_z_substitution() {
        use crate::ratmat::RatMat;
        let b = RatMat::from_rows(vec![vec![rq(2, 1), rq(1, 3)], vec![rq(-1, 2), rq(1, 1)]]);
        assert!(!b.det().is_zero());
        for src in [
            "x1*z1^2*z2 + x2*z1*z2^2",
            "x1*z1^2 + x2*z2^2",
            "x1*z1*z2 + x2*z1*z2",
        ] {
            let s = parse_phase(src, 2, 2).unwrap();
            let p0 = detect_pencil(&s).unwrap();
            let t = s.compose_linear(&RatMat::identity(2), &b).unwrap();
            let p1 = detect_pencil(&t).expect("substitution preserves x-linearity");
            assert_eq!(pencil_rate(&p0).rate, pencil_rate(&p1).rate, "{src}");
            assert_eq!(p0.s, p1.s, "{src}");
        }
    }
}
