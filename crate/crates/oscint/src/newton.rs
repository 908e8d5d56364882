//! Newton polytope, Newton distance `δ(S)` and the modified Newton distance
//! `δ_mod(S) = sup δ(S(Ax, Bz))` over separate invertible linear changes of
//! `x` and `z`.
//!
//! `δ(S)` is the smallest `t` with `(t, …, t)` in the convex hull of the
//! coefficient support shifted by the positive orthant; it is computed as an
//! exact rational linear program. `δ_mod` is approached from below by a
//! deterministic candidate search (identity, axis permutations, transforms
//! aligned with common linear factors of the degree slices) plus seeded random
//! rational transforms; for pencil phases it is returned exactly.

mod simplex;

use crate::binres::{self, Direction};
use crate::pencil;
use crate::poly::{MultiIndex, PhasePoly, Rat};
use crate::ratmat::{permutation_matrices, random_invertible, RatMat};
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

pub use simplex::LpResult;

#[derive(Debug, Error, PartialEq)]
pub enum NewtonError {
    #[error("the zero polynomial has no Newton distance")]
    ZeroPolynomial,
}

/// Newton distance together with its LP certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonData {
    /// Support points with nonzero coefficient, in canonical term order.
    pub support: Vec<MultiIndex>,
    /// The Newton distance `δ(S)`, an exact rational.
    pub delta: Rat,
    /// Convex weights over `support` with `Σ wᵢ pᵢ <= δ·𝟙` componentwise.
    pub certificate: Vec<Rat>,
}

impl NewtonData {
    /// Re-verifies the certificate: weights sum to one, are nonnegative, and
    /// the weighted support point is dominated by the diagonal point.
    pub fn certificate_valid(&self) -> bool {
        let n = self.support[0].alpha.len() + self.support[0].beta.len();
        let mut sum = Rat::zero();
        let mut combo = vec![Rat::zero(); n];
        for (w, p) in self.certificate.iter().zip(&self.support) {
            if w.is_negative() {
                return false;
            }
            sum += w;
            for (c, e) in combo.iter_mut().zip(p.point()) {
                *c += w * Rat::from_integer((e as i64).into());
            }
        }
        sum == Rat::one() && combo.iter().all(|c| *c <= self.delta)
    }
}

/// Exact Newton distance of a nonzero phase polynomial.
///
/// LP over weights `w >= 0`: minimize `t` subject to `Σw = 1` and
/// `Σ wᵢ pᵢ[c] <= t` for every coordinate `c`.
pub fn newton_distance(s: &PhasePoly) -> Result<NewtonData, NewtonError> {
    if s.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    let support: Vec<MultiIndex> = s.poly().terms().map(|(i, _)| i.clone()).collect();
    let k = support.len();
    let n = s.n_x() + s.n_z();
    // variables: w_0..w_{k-1}, t, slack_0..slack_{n-1}
    let nv = k + 1 + n;
    let mut c = vec![Rat::zero(); nv];
    c[k] = Rat::one();
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(1 + n);
    let mut b = Vec::with_capacity(1 + n);
    let mut row = vec![Rat::zero(); nv];
    for cell in row.iter_mut().take(k) {
        *cell = Rat::one();
    }
    a.push(row);
    b.push(Rat::one());
    for coord in 0..n {
        let mut row = vec![Rat::zero(); nv];
        for (i, p) in support.iter().enumerate() {
            row[i] = Rat::from_integer((p.point()[coord] as i64).into());
        }
        row[k] = -Rat::one();
        row[k + 1 + coord] = Rat::one();
        a.push(row);
        b.push(Rat::zero());
    }
    match simplex::solve_min(&c, &a, &b) {
        LpResult::Optimal { x, objective } => {
            let data = NewtonData {
                support,
                delta: objective,
                certificate: x[..k].to_vec(),
            };
            debug_assert!(data.certificate_valid());
            debug_assert!(
                data.delta
                    >= Rat::new(
                        (s.degree() as i64).into(),
                        ((s.n_x() + s.n_z()) as i64).into()
                    ),
                "delta below the homogeneity bound m/(n_x+n_z)"
            );
            Ok(data)
        }
        // the feasible set is nonempty (any vertex weight 1, t = max coord)
        // and t >= 0 bounds the objective below
        other => unreachable!("newton LP must have an optimum, got {other:?}"),
    }
}

/// Whether `(t, …, t)` already lies in the shifted support hull — used to
/// verify optimality by re-solving at `t = δ − ε`.
pub fn diagonal_feasible(s: &PhasePoly, t: &Rat) -> Result<bool, NewtonError> {
    if s.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    let support: Vec<MultiIndex> = s.poly().terms().map(|(i, _)| i.clone()).collect();
    let k = support.len();
    let n = s.n_x() + s.n_z();
    let nv = k + n;
    let mut a: Vec<Vec<Rat>> = Vec::new();
    let mut b = Vec::new();
    let mut row = vec![Rat::zero(); nv];
    for cell in row.iter_mut().take(k) {
        *cell = Rat::one();
    }
    a.push(row);
    b.push(Rat::one());
    for coord in 0..n {
        let mut row = vec![Rat::zero(); nv];
        for (i, p) in support.iter().enumerate() {
            row[i] = Rat::from_integer((p.point()[coord] as i64).into());
        }
        row[k + coord] = Rat::one();
        a.push(row);
        b.push(t.clone());
    }
    Ok(simplex::feasible(&a, &b))
}

/// How a reported transform candidate was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateKind {
    Identity,
    Permutation,
    FactorAligned,
    Random,
    PencilExact,
}

/// Result of the modified-Newton-distance search.
#[derive(Clone, Debug)]
pub struct ModifiedNewton {
    /// Best Newton distance found; a certified lower bound for `δ_mod(S)`,
    /// and the exact value when `exact` is set.
    pub delta: Rat,
    /// True when the pencil fast path applies and `delta` equals `δ_mod`.
    pub exact: bool,
    pub transform_a: Option<RatMat>,
    pub transform_b: Option<RatMat>,
    /// Certificate for the transformed phase attaining `delta`, when a
    /// rational attaining transform is known.
    pub certificate: Option<NewtonData>,
    pub kind: CandidateKind,
}

/// Invertible rational matrix sending the linear form `ℓ` to the first
/// coordinate: `ℓ(M w) = w₁`.
fn align_form_to_first_coordinate(l0: &Rat, l1: &Rat) -> RatMat {
    let norm = l0 * l0 + l1 * l1;
    RatMat::from_rows(vec![
        vec![l0 / &norm, -l1.clone()],
        vec![l1 / &norm, l0.clone()],
    ])
}

/// Candidate alignment transforms from common rational linear factors of the
/// degree slices (two-variable sides only).
///
/// For each slice of fixed x-degree, the coefficients over z-monomials are
/// binary forms in x; a common rational linear factor of those forms marks a
/// direction whose alignment can sparsify the support (and so raise δ).
fn factor_alignment_candidates(s: &PhasePoly) -> (Vec<RatMat>, Vec<RatMat>) {
    let mut out_x = Vec::new();
    let mut out_z = Vec::new();
    if s.n_x() == 2 {
        for k in 1..s.degree() {
            if let Some(g) = slice_gcd_x(s, k) {
                for (a, b) in rational_linear_factors(&g) {
                    out_x.push(align_form_to_first_coordinate(&a, &b));
                }
            }
        }
    }
    if s.n_z() == 2 {
        let t = s.transpose_roles();
        for k in 1..t.degree() {
            if let Some(g) = slice_gcd_x(&t, k) {
                for (a, b) in rational_linear_factors(&g) {
                    out_z.push(align_form_to_first_coordinate(&a, &b));
                }
            }
        }
    }
    out_x.dedup();
    out_z.dedup();
    (out_x, out_z)
}

/// Gcd over the z-monomials of the x-coefficient forms in the slice of
/// x-degree `k` (requires `n_x == 2`).
fn slice_gcd_x(s: &PhasePoly, k: u32) -> Option<binres::BinaryForm> {
    use std::collections::BTreeMap;
    let mut by_beta: BTreeMap<Vec<u32>, Vec<Rat>> = BTreeMap::new();
    for (idx, c) in s.poly().terms() {
        if idx.x_degree() != k {
            continue;
        }
        let coeffs = by_beta
            .entry(idx.beta.clone())
            .or_insert_with(|| vec![Rat::zero(); k as usize + 1]);
        coeffs[idx.alpha[1] as usize] = c.clone();
    }
    let mut gcd: Option<binres::BinaryForm> = None;
    for coeffs in by_beta.into_values() {
        let f = binres::BinaryForm::new(coeffs);
        if f.is_zero() {
            continue;
        }
        gcd = Some(match gcd {
            None => f,
            Some(g) => binres::gcd_form(&g, &f).ok()?,
        });
        if gcd.as_ref().is_some_and(|g| g.degree() == 0) {
            return None;
        }
    }
    gcd.filter(|g| g.degree() >= 1)
}

/// Real rational linear factors `(a, b)` (for `a·u + b·v`) of a binary form.
fn rational_linear_factors(g: &binres::BinaryForm) -> Vec<(Rat, Rat)> {
    let mut out = Vec::new();
    if g.v_power() >= 1 {
        out.push((Rat::zero(), Rat::one()));
    }
    let dehom: Vec<Rat> = g.coeffs().iter().rev().cloned().collect();
    for root in crate::binres::univar::rational_roots(&dehom) {
        out.push((Rat::one(), -root));
    }
    out
}

fn seeded_rng(seed: u64, index: u64) -> ChaCha8Rng {
    // splitmix-style per-index seeding keeps samples independent of schedule
    let mut v = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    v ^= v >> 30;
    v = v.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    v ^= v >> 27;
    ChaCha8Rng::seed_from_u64(v)
}

/// Searches for the modified Newton distance.
///
/// Evaluates `δ(S(Ax, Bz))` over the identity, all axis permutations,
/// factor-aligned structural candidates and `samples` seeded random rational
/// transforms (entries in `[-1, 1]`, regenerated until `|det| > 0.1`), and
/// returns the maximum: a certified lower bound for `δ_mod(S)`. For genuine
/// pencil phases the exact value `max(d/2, s)` is returned instead.
pub fn modified_newton_distance(
    s: &PhasePoly,
    samples: usize,
    seed: u64,
) -> Result<ModifiedNewton, NewtonError> {
    if s.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }

    if let Some(p) = pencil::detect_pencil(s) {
        return Ok(pencil_fast_path(s, &p));
    }

    let base = newton_distance(s)?;
    let id_x = RatMat::identity(s.n_x());
    let id_z = RatMat::identity(s.n_z());
    let mut best = ModifiedNewton {
        delta: base.delta.clone(),
        exact: false,
        transform_a: Some(id_x.clone()),
        transform_b: Some(id_z.clone()),
        certificate: Some(base),
        kind: CandidateKind::Identity,
    };

    let consider = |a: &RatMat, b: &RatMat, kind: CandidateKind, best: &mut ModifiedNewton| {
        let t = s.compose_linear(a, b).expect("shape-preserving transform");
        if t.is_zero() {
            return;
        }
        let nd = newton_distance(&t).expect("nonzero transform");
        if nd.delta > best.delta {
            *best = ModifiedNewton {
                delta: nd.delta.clone(),
                exact: false,
                transform_a: Some(a.clone()),
                transform_b: Some(b.clone()),
                certificate: Some(nd),
                kind,
            };
        }
    };

    // axis permutations (δ is permutation-invariant, but they compose with the
    // structural candidates below into genuinely new transforms)
    let perms_x = permutation_matrices(s.n_x());
    let perms_z = permutation_matrices(s.n_z());
    for pa in &perms_x {
        for pb in &perms_z {
            consider(pa, pb, CandidateKind::Permutation, &mut best);
        }
    }

    // structural candidates from common linear factors of degree slices
    let (mut cand_x, mut cand_z) = factor_alignment_candidates(s);
    cand_x.push(id_x.clone());
    cand_z.push(id_z.clone());
    for a in &cand_x {
        for b in &cand_z {
            consider(a, b, CandidateKind::FactorAligned, &mut best);
        }
    }

    // seeded random transforms, deterministic per index
    let results: Vec<(Rat, usize, RatMat, RatMat)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(seed, i as u64);
            let a = random_invertible(s.n_x(), 1024, 0.1, &mut rng);
            let b = random_invertible(s.n_z(), 1024, 0.1, &mut rng);
            let t = s.compose_linear(&a, &b).expect("transform");
            let delta = if t.is_zero() {
                Rat::zero()
            } else {
                newton_distance(&t).expect("nonzero").delta
            };
            (delta, i, a, b)
        })
        .collect();
    // deterministic merge: larger delta wins, ties to the smaller index
    let mut winner: Option<&(Rat, usize, RatMat, RatMat)> = None;
    for r in &results {
        let better = match winner {
            None => true,
            Some(w) => r.0 > w.0,
        };
        if better {
            winner = Some(r);
        }
    }
    if let Some((delta, _, a, b)) = winner {
        if *delta > best.delta {
            let t = s.compose_linear(a, b).unwrap();
            let nd = newton_distance(&t).unwrap();
            best = ModifiedNewton {
                delta: nd.delta.clone(),
                exact: false,
                transform_a: Some(a.clone()),
                transform_b: Some(b.clone()),
                certificate: Some(nd),
                kind: CandidateKind::Random,
            };
        }
    }

    Ok(best)
}

/// Exact `δ_mod` for pencil phases: `max(d/2, s)`, with an attaining rational
/// transform when the maximizing direction is rational.
fn pencil_fast_path(s: &PhasePoly, p: &pencil::PencilPhase) -> ModifiedNewton {
    let d = Rat::from_integer((p.d as i64).into());
    let half_d = &d / Rat::from_integer(2.into());
    let s_rat = Rat::from_integer((p.s as i64).into());
    let id_x = RatMat::identity(2);
    let id_z = RatMat::identity(2);
    if s_rat <= half_d {
        // δ(S(Ax,Bz)) = d/2 for every transform; identity attains it
        let cert = newton_distance(s).expect("nonzero pencil");
        debug_assert_eq!(cert.delta, half_d);
        return ModifiedNewton {
            delta: half_d,
            exact: true,
            transform_a: Some(id_x),
            transform_b: Some(id_z),
            certificate: Some(cert),
            kind: CandidateKind::PencilExact,
        };
    }
    match &p.direction {
        Some(Direction::Exact(a, b)) => {
            let bm = align_form_to_first_coordinate(a, b);
            let t = s.compose_linear(&id_x, &bm).expect("pencil transform");
            let cert = newton_distance(&t).expect("nonzero");
            debug_assert_eq!(cert.delta, s_rat);
            ModifiedNewton {
                delta: s_rat,
                exact: true,
                transform_a: Some(id_x),
                transform_b: Some(bm),
                certificate: Some(cert),
                kind: CandidateKind::PencilExact,
            }
        }
        _ => ModifiedNewton {
            // the value is exact even when the maximizing direction is
            // irrational; no rational attaining transform exists then
            delta: s_rat,
            exact: true,
            transform_a: None,
            transform_b: None,
            certificate: None,
            kind: CandidateKind::PencilExact,
        },
    }
}
