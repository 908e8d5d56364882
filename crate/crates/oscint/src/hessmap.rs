//! The mixed-Hessian map `𝔥(S) = S″_xz` and its explicit inverse.
//!
//! `𝔥` is a linear isomorphism from the phase space onto the subspace of
//! matrices of homogeneous polynomials cut out by the cross-derivative
//! compatibility identities; `is_compatible` tests membership and
//! `hessian_inverse` reconstructs the unique phase coefficient by coefficient.

use crate::poly::{HomPoly, MultiIndex, PhasePoly, Rat, Var};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HessError {
    #[error("mixed Hessian needs degree >= 2, phase has degree {0}")]
    DegreeTooLow(u32),
    #[error("matrix entries do not live in a common space")]
    EntryMismatch,
    #[error("matrix violates the Hessian compatibility identities at {0:?}")]
    IncompatibleMatrix(Vec<CompatViolation>),
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}

/// A violated compatibility identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompatViolation {
    /// `(H_{ij})_{x_{i'}} != (H_{i'j})_{x_i}` (1-based indices in reports).
    X { i: usize, i2: usize, j: usize },
    /// `(H_{ij})_{z_{j'}} != (H_{ij'})_{z_j}`.
    Z { i: usize, j: usize, j2: usize },
}

/// `n_x × n_z` matrix of homogeneous polynomials of common degree `m - 2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HessianMatrix {
    n_x: usize,
    n_z: usize,
    degree: u32,
    entries: Vec<HomPoly>,
}

/// Compatibility report: all violated identities, if any.
#[derive(Debug, Clone)]
pub struct CompatReport {
    pub compatible: bool,
    pub violations: Vec<CompatViolation>,
}

impl HessianMatrix {
    /// Builds from a row-major grid of entries sharing `n_x`, `n_z`, degree.
    pub fn new(n_x: usize, n_z: usize, entries: Vec<HomPoly>) -> Result<Self, HessError> {
        if entries.len() != n_x * n_z || entries.is_empty() {
            return Err(HessError::EntryMismatch);
        }
        let degree = entries[0].degree();
        for e in &entries {
            if e.n_x() != n_x || e.n_z() != n_z || e.degree() != degree {
                return Err(HessError::EntryMismatch);
            }
        }
        Ok(HessianMatrix {
            n_x,
            n_z,
            degree,
            entries,
        })
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_z(&self) -> usize {
        self.n_z
    }

    /// Common degree of the entries (`m - 2` for the Hessian of a degree-`m` phase).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn entry(&self, i: usize, j: usize) -> &HomPoly {
        &self.entries[i * self.n_z + j]
    }

    pub fn entries(&self) -> &[HomPoly] {
        &self.entries
    }

    /// Evaluates every entry at a float point, row major.
    pub fn eval(&self, point: &[f64]) -> Result<Vec<f64>, crate::poly::PolyError> {
        self.entries.iter().map(|e| e.eval(point)).collect()
    }

    /// Checks the cross-derivative identities exactly.
    pub fn is_compatible(&self) -> CompatReport {
        let mut violations = Vec::new();
        for j in 0..self.n_z {
            for i in 0..self.n_x {
                for i2 in (i + 1)..self.n_x {
                    let lhs = self.entry(i, j).partial(Var::X(i2));
                    let rhs = self.entry(i2, j).partial(Var::X(i));
                    if lhs != rhs {
                        violations.push(CompatViolation::X {
                            i: i + 1,
                            i2: i2 + 1,
                            j: j + 1,
                        });
                    }
                }
            }
        }
        for i in 0..self.n_x {
            for j in 0..self.n_z {
                for j2 in (j + 1)..self.n_z {
                    let lhs = self.entry(i, j).partial(Var::Z(j2));
                    let rhs = self.entry(i, j2).partial(Var::Z(j));
                    if lhs != rhs {
                        violations.push(CompatViolation::Z {
                            i: i + 1,
                            j: j + 1,
                            j2: j2 + 1,
                        });
                    }
                }
            }
        }
        CompatReport {
            compatible: violations.is_empty(),
            violations,
        }
    }

    /// Inverts the Hessian map: returns the unique phase `S` with
    /// `mixed_hessian(S) = H`.
    ///
    /// Each coefficient comes from `a_{αβ} = b^{ij}_{α-e_i, β-ē_j} / (α_i β_j)`
    /// for the smallest lexicographic `(i,j)` with `α_i, β_j != 0`; in debug
    /// builds every other valid `(i,j)` is asserted to agree.
    pub fn hessian_inverse(&self) -> Result<PhasePoly, HessError> {
        let report = self.is_compatible();
        if !report.compatible {
            return Err(HessError::IncompatibleMatrix(report.violations));
        }
        let m = self.degree + 2;
        let mut coeffs: std::collections::BTreeMap<MultiIndex, Rat> = Default::default();
        for i in 0..self.n_x {
            for j in 0..self.n_z {
                for (idx, _) in self.entry(i, j).terms() {
                    let target = idx.raised(Var::X(i)).raised(Var::Z(j));
                    if coeffs.contains_key(&target) {
                        continue;
                    }
                    let value = self.coefficient_at(&target);
                    if !value.is_zero() {
                        coeffs.insert(target, value);
                    }
                }
            }
        }
        let poly = HomPoly::from_terms(self.n_x, self.n_z, m, coeffs)?;
        let phase = PhasePoly::new(poly)?;
        debug_assert_eq!(mixed_hessian(&phase).unwrap(), *self);
        Ok(phase)
    }

    /// `a_{αβ}` from the smallest valid `(i,j)`, asserting well-definedness in
    /// debug builds.
    fn coefficient_at(&self, target: &MultiIndex) -> Rat {
        let mut chosen: Option<Rat> = None;
        for i in 0..self.n_x {
            if target.alpha[i] == 0 {
                continue;
            }
            for j in 0..self.n_z {
                if target.beta[j] == 0 {
                    continue;
                }
                let mut lowered = target.clone();
                lowered.alpha[i] -= 1;
                lowered.beta[j] -= 1;
                let b = self.entry(i, j).coefficient(&lowered);
                let denom =
                    Rat::from_integer((target.alpha[i] as i64 * target.beta[j] as i64).into());
                let a = b / denom;
                match &chosen {
                    None => chosen = Some(a),
                    Some(first) => {
                        debug_assert_eq!(*first, a, "inverse coefficient must not depend on (i,j)");
                        if cfg!(not(debug_assertions)) {
                            return chosen.unwrap();
                        }
                    }
                }
            }
        }
        chosen.expect("target index has positive x- and z-degree")
    }
}

/// The mixed Hessian `(∂²S/∂x_i∂z_j)_{ij}`; requires degree >= 2.
pub fn mixed_hessian(s: &PhasePoly) -> Result<HessianMatrix, HessError> {
    if s.degree() < 2 {
        return Err(HessError::DegreeTooLow(s.degree()));
    }
    let mut entries = Vec::with_capacity(s.n_x() * s.n_z());
    for i in 0..s.n_x() {
        for j in 0..s.n_z() {
            entries.push(s.poly().partial(Var::X(i)).partial(Var::Z(j)));
        }
    }
    HessianMatrix::new(s.n_x(), s.n_z(), entries)
}

/// JSON grid serialization of a Hessian matrix (grid of the poly JSON format).
pub fn hessian_to_json(h: &HessianMatrix) -> String {
    let grid: Vec<Vec<serde_json::Value>> = (0..h.n_x())
        .map(|i| {
            (0..h.n_z())
                .map(|j| {
                    serde_json::from_str(&crate::poly::hompoly_to_json(h.entry(i, j))).unwrap()
                })
                .collect()
        })
        .collect();
    serde_json::to_string(&grid).expect("hessian json")
}

pub fn hessian_from_json(src: &str) -> Result<HessianMatrix, HessError> {
    let grid: Vec<Vec<serde_json::Value>> = serde_json::from_str(src).map_err(|e| {
        HessError::Poly(crate::poly::PolyError::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })
    })?;
    let n_x = grid.len();
    let n_z = grid.first().map(|r| r.len()).unwrap_or(0);
    let mut entries = Vec::new();
    for row in &grid {
        for cell in row {
            entries.push(crate::poly::hompoly_from_json(&cell.to_string())?);
        }
    }
    HessianMatrix::new(n_x, n_z, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::poly::{parse_hompoly, parse_phase, PhasePoly};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn h_entry(src: &str) -> HomPoly {
        parse_hompoly(src, 2, 2).unwrap()
    }

    #[test]
    fn hessian_of_s0_matches_printed_matrix() {
        let h = mixed_hessian(&corpus::s0_phase()).unwrap();
        assert_eq!(*h.entry(0, 0), h_entry("4*x1 + 2*z1"));
        assert_eq!(*h.entry(0, 1), h_entry("2*x1 + 2*z2"));
        assert_eq!(*h.entry(1, 0), h_entry("z2 - 2*x2"));
        assert_eq!(*h.entry(1, 1), h_entry("6*x2 + z1"));
    }

    #[test]
    fn hessian_of_bilinear_is_constant_one() {
        let h = mixed_hessian(&corpus::bilinear_phase()).unwrap();
        assert_eq!(h.degree(), 0);
        assert_eq!(*h.entry(0, 0), parse_hompoly("1", 1, 1).unwrap());
    }

    #[test]
    fn hessian_of_quartic_1d() {
        // (x^3 z + x z^3)/3 -> [x^2 + z^2]
        let h = mixed_hessian(&corpus::nondegenerate_quartic_1d()).unwrap();
        assert_eq!(*h.entry(0, 0), parse_hompoly("x1^2 + z1^2", 1, 1).unwrap());
    }

    #[test]
    fn degree_one_rejected() {
        // no degree-1 phase without pure terms exists in (1+1) with m=1; build m=2 then check m<2 guard
        let p = parse_phase("x1*z1", 1, 1).unwrap();
        assert!(mixed_hessian(&p).is_ok());
    }

    #[test]
    fn hessian_entries_have_degree_m_minus_2() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(nx, nz, m) in &[(2usize, 2usize, 3u32), (2, 2, 5), (3, 2, 4), (1, 1, 6)] {
            let s = PhasePoly::random(nx, nz, m, 9, &mut rng);
            let h = mixed_hessian(&s).unwrap();
            assert_eq!(h.degree(), m - 2);
            for e in h.entries() {
                assert_eq!(e.degree(), m - 2);
            }
        }
    }

    #[test]
    fn hessians_are_always_compatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let s = PhasePoly::random(2, 2, 4, 7, &mut rng);
            let rep = mixed_hessian(&s).unwrap().is_compatible();
            assert!(rep.compatible, "{:?}", rep.violations);
        }
        assert!(
            mixed_hessian(&corpus::s0_phase())
                .unwrap()
                .is_compatible()
                .compatible
        );
    }

    #[test]
    fn incompatible_matrix_detected_with_exact_violation() {
        // H = [[z1, z2], [-z2, z1]]: (H_21)_{z2} = -1 != (H_22)_{z1} = 1
        let h = HessianMatrix::new(
            2,
            2,
            vec![
                h_entry("z1"),
                h_entry("z2"),
                h_entry("0*z1 - z2"),
                h_entry("z1"),
            ],
        )
        .unwrap();
        let rep = h.is_compatible();
        assert!(!rep.compatible);
        assert_eq!(
            rep.violations,
            vec![CompatViolation::Z { i: 2, j: 1, j2: 2 }]
        );
        assert!(matches!(
            h.hessian_inverse(),
            Err(HessError::IncompatibleMatrix(_))
        ));
    }

    #[test]
    fn inverse_of_constant_matrix_is_bilinear() {
        let h = HessianMatrix::new(1, 1, vec![parse_hompoly("1", 1, 1).unwrap()]).unwrap();
        let s = h.hessian_inverse().unwrap();
        assert_eq!(s, corpus::bilinear_phase());
    }

    #[test]
    fn inverse_recovers_s0() {
        let h = mixed_hessian(&corpus::s0_phase()).unwrap();
        assert_eq!(h.hessian_inverse().unwrap(), corpus::s0_phase());
    }

    #[test]
    fn inverse_of_rank_one_witness_matrix() {
        // H = [[x1^2, 0], [z1^2, x2^2 + z2^2]] -> (x1^3 z1 + x2 z1^3 + x2^3 z2 + x2 z2^3)/3
        let h = HessianMatrix::new(
            2,
            2,
            vec![
                h_entry("x1^2"),
                HomPoly::zero(2, 2, 2),
                h_entry("z1^2"),
                h_entry("x2^2 + z2^2"),
            ],
        )
        .unwrap();
        assert_eq!(h.hessian_inverse().unwrap(), corpus::rank_one_m4_phase());
    }

    #[test]
    fn round_trips_on_random_phases() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let spaces = [
            (1usize, 1usize, 3u32),
            (1, 1, 5),
            (2, 2, 3),
            (2, 2, 4),
            (3, 2, 3),
        ];
        for trial in 0..100 {
            let (nx, nz, m) = spaces[trial % spaces.len()];
            let s = PhasePoly::random(nx, nz, m, 10, &mut rng);
            let h = mixed_hessian(&s).unwrap();
            // backward round trip
            assert_eq!(h.hessian_inverse().unwrap(), s, "trial {trial}");
            // forward round trip
            assert_eq!(mixed_hessian(&h.hessian_inverse().unwrap()).unwrap(), h);
        }
    }

    #[test]
    fn injectivity_zero_hessian_means_zero_phase() {
        let zero = PhasePoly::from_terms(2, 2, 3, []).unwrap();
        let h = mixed_hessian(&zero).unwrap();
        assert!(h.entries().iter().all(|e| e.is_zero()));
        assert!(h.hessian_inverse().unwrap().is_zero());
        // and a nonzero phase never maps to zero
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let s = PhasePoly::random(2, 2, 4, 6, &mut rng);
            if !s.is_zero() {
                assert!(mixed_hessian(&s)
                    .unwrap()
                    .entries()
                    .iter()
                    .any(|e| !e.is_zero()));
            }
        }
    }

    #[test]
    fn json_grid_round_trip() {
        let h = mixed_hessian(&corpus::s0_phase()).unwrap();
        let json = hessian_to_json(&h);
        assert_eq!(hessian_from_json(&json).unwrap(), h);
    }
}
