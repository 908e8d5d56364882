//! Hypothesis verification (nondegenerate-Hessian and rank-one conditions)
//! and the decay-rate decision tree.
//!
//! Exact checks are used wherever the structure allows them: constant
//! Hessians, single-entry (1+1) Hessians via Sturm counts, linear-form entries
//! (cubics) via exact rank, and (2+2) cubics via the definiteness of the
//! determinant form. Everything else falls back to seeded sphere sampling,
//! optionally upgraded to a rigorous interval branch-and-bound certificate.

pub mod interval;

use crate::binres::univar;
use crate::cubic22;
use crate::hessmap::{self, HessianMatrix};
use crate::newton;
use crate::pencil;
use crate::poly::{rat_string, HomPoly, PhasePoly, Rat};
use crate::ratmat::RatMat;
use interval::Certify;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PredictError {
    #[error("the zero phase has no decay prediction")]
    ZeroPhase,
    #[error(transparent)]
    Hess(#[from] hessmap::HessError),
    #[error(transparent)]
    Newton(#[from] newton::NewtonError),
    #[error(transparent)]
    Cubic(#[from] cubic22::CubicError),
}

/// How a condition was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMethod {
    Exact,
    Sampled,
    Certified,
}

impl std::fmt::Display for CheckMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckMethod::Exact => write!(f, "exact"),
            CheckMethod::Sampled => write!(f, "sampled"),
            CheckMethod::Certified => write!(f, "certified"),
        }
    }
}

/// Status of a hypothesis check.
#[derive(Clone, Debug, PartialEq)]
pub enum ConditionStatus {
    Holds {
        method: CheckMethod,
        detail: String,
    },
    Fails {
        method: CheckMethod,
        witness: Option<Vec<f64>>,
    },
    Undetermined {
        reason: String,
    },
}

impl ConditionStatus {
    pub fn holds(&self) -> bool {
        matches!(self, ConditionStatus::Holds { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self, ConditionStatus::Fails { .. })
    }

    pub fn holds_exact() -> Self {
        ConditionStatus::Holds {
            method: CheckMethod::Exact,
            detail: String::new(),
        }
    }

    pub fn method(&self) -> Option<CheckMethod> {
        match self {
            ConditionStatus::Holds { method, .. } | ConditionStatus::Fails { method, .. } => {
                Some(*method)
            }
            ConditionStatus::Undetermined { .. } => None,
        }
    }
}

/// One line of the hypothesis ledger attached to a prediction.
#[derive(Clone, Debug)]
pub struct HypothesisRecord {
    pub condition: String,
    pub status: ConditionStatus,
}

/// Which result supplied the predicted rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RateSource {
    ThmA,
    ThmB,
    ThmC,
    Thm11,
    Thm12,
    Thm14,
    Prop45,
    HormanderM2,
    NoTheorem,
}

impl RateSource {
    /// The stable report tag used in JSON output.
    pub fn tag(&self) -> &'static str {
        match self {
            RateSource::ThmA => "ThmA",
            RateSource::ThmB => "ThmB",
            RateSource::ThmC => "ThmC",
            RateSource::Thm11 => "Thm1.1",
            RateSource::Thm12 => "Thm1.2",
            RateSource::Thm14 => "Thm1.4",
            RateSource::Prop45 => "Prop4.5",
            RateSource::HormanderM2 => "Hormander-m2",
            RateSource::NoTheorem => "NoTheoremApplies",
        }
    }
}

impl std::fmt::Display for RateSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// Predicted decay `‖T_λ‖ <= C λ^{-r} (log λ)^p` plus the verified-hypothesis
/// ledger and the universal lower bound `‖T_λ‖ >= c λ^{-(n_x+n_z)/(2m)}`.
#[derive(Clone, Debug)]
pub struct DecayPrediction {
    /// `r`; `None` when no covered result applies.
    pub rate: Option<Rat>,
    /// `p`, the log power.
    pub log_power: u32,
    pub source: RateSource,
    pub hypotheses: Vec<HypothesisRecord>,
    /// `(n_x + n_z) / (2m)` from the scaled-bump witness.
    pub lower_bound_rate: Rat,
    /// Modified Newton distance, attached by the pencil route.
    pub delta_mod: Option<Rat>,
    /// Whether the rate is also a lower bound (up to the log factor).
    pub sharp_lower_bound: bool,
}

/// Options shared by the hypothesis checks.
#[derive(Clone, Copy, Debug)]
pub struct PredictOptions {
    /// Sphere sample count for non-exact checks.
    pub grid: usize,
    /// Run interval branch-and-bound certification for non-exact checks.
    pub certify: bool,
    pub seed: u64,
}

impl Default for PredictOptions {
    fn default() -> Self {
        PredictOptions {
            grid: 10_000,
            certify: false,
            seed: 0,
        }
    }
}

/// Interval-certification cell tolerance.
const CERTIFY_TOL: f64 = 1e-6;
const CERTIFY_MAX_CELLS: usize = 2_000_000;

fn constant_matrix(h: &HessianMatrix) -> Option<RatMat> {
    if h.degree() != 0 {
        return None;
    }
    let mut m = RatMat::zeros(h.n_x(), h.n_z());
    for i in 0..h.n_x() {
        for j in 0..h.n_z() {
            let e = h.entry(i, j);
            let c = e
                .terms()
                .next()
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::zero);
            m.set(i, j, c);
        }
    }
    Some(m)
}

/// Binary form of a (1+1) Hessian entry (`u = x`, `v = z`).
fn entry_as_binary_form(e: &HomPoly) -> crate::binres::BinaryForm {
    let d = e.degree() as usize;
    let mut coeffs = vec![Rat::zero(); d + 1];
    for (idx, c) in e.terms() {
        coeffs[idx.beta[0] as usize] = c.clone();
    }
    crate::binres::BinaryForm::new(coeffs)
}

/// Does a (1+1) binary form have a real projective zero? Returns a witness
/// direction when it does.
fn real_projective_zero(f: &crate::binres::BinaryForm) -> Option<Vec<f64>> {
    if f.is_zero() {
        return Some(vec![1.0, 0.0]);
    }
    if f.v_power() >= 1 {
        return Some(vec![1.0, 0.0]);
    }
    let dehom: Vec<Rat> = f.coeffs().iter().rev().cloned().collect();
    let sf = univar::squarefree_part(&dehom);
    if univar::count_real_roots(&sf) == 0 {
        return None;
    }
    let roots = univar::isolate_real_roots(&sf);
    let t = roots[0].approx(&sf);
    let n = (1.0 + t * t).sqrt();
    Some(vec![t / n, 1.0 / n])
}

fn seeded_sphere_points(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<f64> = (0..n).map(|_| normal.sample(&mut rng)).collect();
        let norm: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-8 {
            out.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    out
}

fn smallest_singular_value(h: &HessianMatrix, point: &[f64]) -> f64 {
    let vals = h.eval(point).expect("dimension checked");
    let m = nalgebra::DMatrix::from_row_slice(h.n_x(), h.n_z(), &vals);
    let sv = m.singular_values();
    sv.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Rational snap candidates for a float near-zero cell center: the raw
/// dyadic point plus a variant with tiny coordinates zeroed (structured
/// common zeros usually sit on coordinate subspaces).
fn snap_candidates(center: &[f64]) -> Vec<Vec<Rat>> {
    let to_rat = |v: f64| Rat::from_float(v).unwrap_or_else(Rat::zero);
    let raw: Vec<Rat> = center.iter().map(|&v| to_rat(v)).collect();
    let mut out: Vec<Vec<Rat>> = vec![raw.clone()];
    // zero out every coordinate below a threshold
    for threshold in [1e-4, 0.05] {
        let snapped: Vec<Rat> = center
            .iter()
            .map(|&v| {
                if v.abs() < threshold {
                    Rat::zero()
                } else {
                    to_rat(v)
                }
            })
            .collect();
        out.push(snapped);
    }
    // zero out each single coordinate (common zeros often sit on coordinate
    // hyperplanes regardless of how close the search got to them)
    for k in 0..center.len() {
        let mut p = raw.clone();
        p[k] = Rat::zero();
        out.push(p);
    }
    out.retain(|p| !p.iter().all(|c| c.is_zero()));
    out.dedup();
    out
}

/// Exact check: do all entries vanish at some snap candidate (a verified
/// witness that the rank-one condition fails)?
fn exact_common_zero(h: &HessianMatrix, center: &[f64]) -> Option<Vec<f64>> {
    for point in snap_candidates(center) {
        if point.iter().all(|c| c.is_zero()) {
            continue;
        }
        let all_zero = h
            .entries()
            .iter()
            .all(|e| e.eval_exact(&point).map(|v| v.is_zero()).unwrap_or(false));
        if all_zero {
            return Some(
                point
                    .iter()
                    .map(|c| c.to_f64().unwrap_or(f64::NAN))
                    .collect(),
            );
        }
    }
    None
}

/// Exact check: does the evaluated Hessian drop below full column rank at
/// some snap candidate?
fn exact_rank_drop(h: &HessianMatrix, center: &[f64]) -> Option<Vec<f64>> {
    for point in snap_candidates(center) {
        if point.iter().all(|c| c.is_zero()) {
            continue;
        }
        let mut m = RatMat::zeros(h.n_x(), h.n_z());
        let mut ok = true;
        for i in 0..h.n_x() {
            for j in 0..h.n_z() {
                match h.entry(i, j).eval_exact(&point) {
                    Ok(v) => m.set(i, j, v),
                    Err(_) => ok = false,
                }
            }
        }
        if ok && m.rank() < h.n_z() {
            return Some(
                point
                    .iter()
                    .map(|c| c.to_f64().unwrap_or(f64::NAN))
                    .collect(),
            );
        }
    }
    None
}

fn certify_rank_one(h: &HessianMatrix) -> ConditionStatus {
    match interval::certify_some_entry_nonzero(h.entries(), CERTIFY_TOL, CERTIFY_MAX_CELLS) {
        Certify::Positive { lower_bound } => ConditionStatus::Holds {
            method: CheckMethod::Certified,
            detail: format!("some entry exceeds {lower_bound:.3e} on every boundary cell"),
        },
        Certify::NearZero { center, upper } => match exact_common_zero(h, &center) {
            Some(witness) => ConditionStatus::Fails {
                method: CheckMethod::Exact,
                witness: Some(witness),
            },
            None => ConditionStatus::Undetermined {
                reason: format!("near-common-zero cell at {center:?} (entry bound {upper:.3e})"),
            },
        },
        Certify::Exhausted {
            cells_used,
            candidate,
        } => match candidate.and_then(|c| exact_common_zero(h, &c)) {
            Some(witness) => ConditionStatus::Fails {
                method: CheckMethod::Exact,
                witness: Some(witness),
            },
            None => ConditionStatus::Undetermined {
                reason: format!("certification budget exhausted after {cells_used} cells"),
            },
        },
    }
}

fn certify_full_rank(h: &HessianMatrix) -> ConditionStatus {
    match interval::certify_full_column_rank(
        h.entries(),
        h.n_x(),
        h.n_z(),
        CERTIFY_TOL,
        CERTIFY_MAX_CELLS,
    ) {
        Certify::Positive { lower_bound } => ConditionStatus::Holds {
            method: CheckMethod::Certified,
            detail: format!("Gram determinant >= {lower_bound:.3e} on the unit cube boundary"),
        },
        Certify::NearZero { center, upper } => match exact_rank_drop(h, &center) {
            Some(witness) => ConditionStatus::Fails {
                method: CheckMethod::Exact,
                witness: Some(witness),
            },
            None => ConditionStatus::Undetermined {
                reason: format!("near-singular cell at {center:?} (Gram bound {upper:.3e})"),
            },
        },
        Certify::Exhausted {
            cells_used,
            candidate,
        } => match candidate.and_then(|c| exact_rank_drop(h, &c)) {
            Some(witness) => ConditionStatus::Fails {
                method: CheckMethod::Exact,
                witness: Some(witness),
            },
            None => ConditionStatus::Undetermined {
                reason: format!("certification budget exhausted after {cells_used} cells"),
            },
        },
    }
}

/// Checks the full-rank (nondegenerate-Hessian) condition
/// `rank S″_xz = n_z` for all `(x,z) != 0`.
pub fn check_hormander(
    s: &PhasePoly,
    opts: &PredictOptions,
) -> Result<ConditionStatus, PredictError> {
    if s.is_zero() {
        return Err(PredictError::ZeroPhase);
    }
    if s.n_x() < s.n_z() {
        // rank can never reach n_z
        return Ok(ConditionStatus::Fails {
            method: CheckMethod::Exact,
            witness: None,
        });
    }
    let h = hessmap::mixed_hessian(s)?;

    if s.degree() == 2 {
        let m = constant_matrix(&h).expect("degree-2 phase has constant Hessian");
        return Ok(if m.rank() == s.n_z() {
            ConditionStatus::Holds {
                method: CheckMethod::Exact,
                detail: "constant Hessian has full rank".into(),
            }
        } else {
            ConditionStatus::Fails {
                method: CheckMethod::Exact,
                witness: None,
            }
        });
    }

    if s.n_x() == 1 && s.n_z() == 1 {
        let f = entry_as_binary_form(h.entry(0, 0));
        return Ok(match real_projective_zero(&f) {
            None => ConditionStatus::Holds {
                method: CheckMethod::Exact,
                detail: "Hessian entry has no real projective zero".into(),
            },
            Some(w) => ConditionStatus::Fails {
                method: CheckMethod::Exact,
                witness: Some(w),
            },
        });
    }

    if s.n_x() == 2 && s.n_z() == 2 && s.degree() == 3 {
        // rank 2 off the origin <=> the quadratic form det S''_xz is definite
        let pqr = cubic22::extract_pqr(s)?;
        let phi = pqr.phi_matrix();
        let (pos, neg, zero) = phi.symmetric_signature();
        if zero == 0 && (pos == 0 || neg == 0) {
            return Ok(ConditionStatus::Holds {
                method: CheckMethod::Exact,
                detail: "determinant form is definite".into(),
            });
        }
        let witness = isotropic_direction(&phi);
        return Ok(ConditionStatus::Fails {
            method: CheckMethod::Exact,
            witness,
        });
    }

    // sampled / certified path
    if opts.certify {
        let status = certify_full_rank(&h);
        if !matches!(status, ConditionStatus::Undetermined { .. }) {
            return Ok(status);
        }
        // fall through to sampling with the undetermined note attached
        let sampled = sampled_min(&h, opts, smallest_singular_value);
        return Ok(merge_undetermined(status, sampled));
    }
    Ok(sampled_min(&h, opts, smallest_singular_value))
}

/// Checks the rank-one condition: some Hessian entry is nonzero at every
/// point off the origin.
pub fn check_rank_one(
    s: &PhasePoly,
    opts: &PredictOptions,
) -> Result<ConditionStatus, PredictError> {
    if s.is_zero() {
        return Err(PredictError::ZeroPhase);
    }
    let h = hessmap::mixed_hessian(s)?;

    if s.degree() == 2 {
        let m = constant_matrix(&h).expect("constant Hessian");
        return Ok(if m.is_zero() {
            ConditionStatus::Fails {
                method: CheckMethod::Exact,
                witness: None,
            }
        } else {
            ConditionStatus::Holds {
                method: CheckMethod::Exact,
                detail: "constant nonzero Hessian".into(),
            }
        });
    }

    if s.n_x() == 1 && s.n_z() == 1 {
        let f = entry_as_binary_form(h.entry(0, 0));
        return Ok(match real_projective_zero(&f) {
            None => ConditionStatus::Holds {
                method: CheckMethod::Exact,
                detail: "single entry has no real projective zero".into(),
            },
            Some(w) => ConditionStatus::Fails {
                method: CheckMethod::Exact,
                witness: Some(w),
            },
        });
    }

    if s.degree() == 3 {
        // entries are linear forms: a common zero is a kernel vector of the
        // stacked coefficient matrix
        let n = s.n_x() + s.n_z();
        let mut rows = Vec::new();
        for e in h.entries() {
            let mut row = vec![Rat::zero(); n];
            for (idx, c) in e.terms() {
                let pos = idx
                    .point()
                    .iter()
                    .position(|&p| p == 1)
                    .expect("linear form");
                row[pos] = c.clone();
            }
            rows.push(row);
        }
        let m = RatMat::from_rows(rows);
        if m.rank() == n {
            return Ok(ConditionStatus::Holds {
                method: CheckMethod::Exact,
                detail: "linear entries have trivial common kernel".into(),
            });
        }
        let witness = m
            .kernel_vector()
            .map(|v| v.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect());
        return Ok(ConditionStatus::Fails {
            method: CheckMethod::Exact,
            witness,
        });
    }

    if opts.certify {
        let status = certify_rank_one(&h);
        if !matches!(status, ConditionStatus::Undetermined { .. }) {
            return Ok(status);
        }
        let sampled = sampled_min(&h, opts, |h, p| {
            h.eval(p)
                .unwrap()
                .iter()
                .fold(0.0f64, |m, v| m.max(v.abs()))
        });
        return Ok(merge_undetermined(status, sampled));
    }
    Ok(sampled_min(&h, opts, |h, p| {
        h.eval(p)
            .unwrap()
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }))
}

/// Sampled minimum of a pointwise functional over the unit sphere.
fn sampled_min(
    h: &HessianMatrix,
    opts: &PredictOptions,
    f: impl Fn(&HessianMatrix, &[f64]) -> f64 + Sync,
) -> ConditionStatus {
    let n = h.entry(0, 0).n_x() + h.entry(0, 0).n_z();
    let points = seeded_sphere_points(n, opts.grid.max(1), opts.seed);
    let (min_val, min_idx) = points
        .par_iter()
        .enumerate()
        .map(|(i, p)| (f(h, p), i))
        .reduce(
            || (f64::INFINITY, usize::MAX),
            |a, b| {
                if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    if min_val < 1e-9 {
        ConditionStatus::Fails {
            method: CheckMethod::Sampled,
            witness: points.get(min_idx).cloned(),
        }
    } else {
        ConditionStatus::Holds {
            method: CheckMethod::Sampled,
            detail: format!(
                "min over {} sphere points: {min_val:.3e} (seed {})",
                points.len(),
                opts.seed
            ),
        }
    }
}

fn merge_undetermined(cert: ConditionStatus, sampled: ConditionStatus) -> ConditionStatus {
    match (cert, sampled) {
        (ConditionStatus::Undetermined { reason }, ConditionStatus::Holds { detail, .. }) => {
            ConditionStatus::Undetermined {
                reason: format!("{reason}; sampling says {detail}"),
            }
        }
        (ConditionStatus::Undetermined { .. }, fails @ ConditionStatus::Fails { .. }) => fails,
        (c, _) => c,
    }
}

/// Isotropic direction of an indefinite or degenerate symmetric form, as a
/// float witness.
fn isotropic_direction(m: &RatMat) -> Option<Vec<f64>> {
    if let Some(k) = m.kernel_vector() {
        let v: Vec<f64> = k.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
        let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        return Some(v.into_iter().map(|a| a / n).collect());
    }
    let n = m.rows();
    let fm = nalgebra::DMatrix::from_fn(n, n, |i, j| m.get(i, j).to_f64().unwrap_or(f64::NAN));
    let eig = nalgebra::SymmetricEigen::new(fm);
    let mut pos: Option<(f64, Vec<f64>)> = None;
    let mut neg: Option<(f64, Vec<f64>)> = None;
    for (k, &val) in eig.eigenvalues.iter().enumerate() {
        let vec: Vec<f64> = eig.eigenvectors.column(k).iter().cloned().collect();
        if val > 0.0 && pos.as_ref().is_none_or(|(v, _)| val > *v) {
            pos = Some((val, vec.clone()));
        }
        if val < 0.0 && neg.as_ref().is_none_or(|(v, _)| val < *v) {
            neg = Some((val, vec));
        }
    }
    let ((lp, vp), (ln, vn)) = (pos?, neg?);
    // q(a vp + b vn) = a^2 lp + b^2 ln = 0 at a = sqrt(-ln), b = sqrt(lp)
    let a = (-ln).sqrt();
    let b = lp.sqrt();
    let w: Vec<f64> = vp.iter().zip(&vn).map(|(p, q)| a * p + b * q).collect();
    let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
    Some(w.into_iter().map(|v| v / norm).collect())
}

/// Decomposition `S = Σ_j P_j(x) z^{m-j}` for (2+1) phases, indexed by the
/// x-degree `j`; used by the two-variable-times-one result.
fn thm_b_candidate(s: &PhasePoly) -> Option<(Rat, u32, Vec<HypothesisRecord>)> {
    if s.n_x() != 2 || s.n_z() != 1 {
        return None;
    }
    let m = s.degree();
    let mut forms: std::collections::BTreeMap<u32, Vec<Rat>> = Default::default();
    for (idx, c) in s.poly().terms() {
        let j = idx.x_degree();
        let form = forms
            .entry(j)
            .or_insert_with(|| vec![Rat::zero(); j as usize + 1]);
        form[idx.alpha[1] as usize] = c.clone();
    }
    let j_min = *forms.keys().next()?;
    let j_max = *forms.keys().last()?;
    // j_min <= 2m/3 <= j_max
    let window = 3 * j_min <= 2 * m && 3 * j_max >= 2 * m;
    let nondeg = |coeffs: &Vec<Rat>| {
        let f = crate::binres::BinaryForm::new(coeffs.clone());
        if f.degree() == 0 {
            return true;
        }
        if f.v_power() > 1 {
            return false;
        }
        let dehom: Vec<Rat> = f.coeffs().iter().rev().cloned().collect();
        univar::deg(&univar::gcd(&dehom, &univar::derivative(&dehom))) == 0
    };
    let nd_min = nondeg(&forms[&j_min]);
    let nd_max = nondeg(&forms[&j_max]);
    let mut ledger = vec![
        HypothesisRecord {
            condition: format!(
                "slice window: j_min = {j_min} <= 2m/3 and j_max = {j_max} >= 2m/3 (m = {m})"
            ),
            status: if window {
                ConditionStatus::holds_exact()
            } else {
                ConditionStatus::Fails {
                    method: CheckMethod::Exact,
                    witness: None,
                }
            },
        },
        HypothesisRecord {
            condition: "lowest and highest x-degree slices are nondegenerate forms".into(),
            status: if nd_min && nd_max {
                ConditionStatus::holds_exact()
            } else {
                ConditionStatus::Fails {
                    method: CheckMethod::Exact,
                    witness: None,
                }
            },
        },
    ];
    if !(window && nd_min && nd_max) {
        ledger.push(HypothesisRecord {
            condition: "two-by-one slice result applies".into(),
            status: ConditionStatus::Fails {
                method: CheckMethod::Exact,
                witness: None,
            },
        });
        return None;
    }
    let (r, p) = if m >= 4 {
        (Rat::new(3.into(), (2 * m as i64).into()), 0)
    } else if m == 3 {
        (Rat::new(1.into(), 2.into()), 1)
    } else {
        (Rat::new(1.into(), 2.into()), 0)
    };
    ledger.push(HypothesisRecord {
        condition: "two-by-one slice result applies".into(),
        status: ConditionStatus::holds_exact(),
    });
    Some((r, p, ledger))
}

/// Does the (1+1) split-index hypothesis hold: coefficients `a_j != 0` for
/// some `j <= m/2` and some `k >= m/2`?
fn thm_a_hypothesis(s: &PhasePoly) -> bool {
    if s.n_x() != 1 || s.n_z() != 1 {
        return false;
    }
    let m = s.degree();
    let mut low = false;
    let mut high = false;
    for (idx, _) in s.poly().terms() {
        let j = idx.alpha[0];
        if 2 * j <= m {
            low = true;
        }
        if 2 * j >= m {
            high = true;
        }
    }
    low && high
}

/// Runs the decay-rate decision tree and returns the best prediction with the
/// full hypothesis ledger.
///
/// Candidate routes, all evaluated when applicable: constant-Hessian rank for
/// `m = 2`; the (1+1) Newton-distance rate; the nondegenerate-Hessian rates;
/// the rank-one rates; the (2+1) slice result; the (2+2) cubic theorem; and
/// the pencil rate. The largest `r` wins, ties broken by smaller log power.
pub fn predict_decay(
    s: &PhasePoly,
    opts: &PredictOptions,
) -> Result<DecayPrediction, PredictError> {
    if s.is_zero() {
        return Err(PredictError::ZeroPhase);
    }
    // the operator and its adjoint share norms; normalize to n_x >= n_z
    let normalized;
    let s_norm = if s.n_x() < s.n_z() {
        normalized = s.transpose_roles();
        &normalized
    } else {
        s
    };
    // the tree fires a theorem only on proof: exact structure or an interval
    // certificate; bare sampling is recorded in the ledger but never decides
    let check_opts = PredictOptions {
        certify: true,
        ..*opts
    };
    let nx = s_norm.n_x() as i64;
    let nz = s_norm.n_z() as i64;
    let m = s_norm.degree() as i64;
    let lower_bound_rate = Rat::new((nx + nz).into(), (2 * m).into());
    let cap = Rat::new(nz.into(), 2.into());

    let mut ledger: Vec<HypothesisRecord> = Vec::new();
    if s.n_x() < s.n_z() {
        ledger.push(HypothesisRecord {
            condition: "adjoint normalization: roles of x and z swapped so n_x >= n_z".into(),
            status: ConditionStatus::holds_exact(),
        });
    }
    // (rate, log power, source, sharp, delta_mod)
    let mut candidates: Vec<(Rat, u32, RateSource, bool, Option<Rat>)> = Vec::new();

    if m == 2 {
        let h = hessmap::mixed_hessian(s_norm)?;
        let rank = constant_matrix(&h).expect("constant Hessian").rank() as i64;
        ledger.push(HypothesisRecord {
            condition: format!("constant Hessian rank = {rank}"),
            status: ConditionStatus::holds_exact(),
        });
        candidates.push((
            Rat::new(rank.into(), 2.into()),
            0,
            RateSource::HormanderM2,
            false,
            None,
        ));
    }

    if nx == 1 && nz == 1 {
        let nd = newton::newton_distance(s_norm)?;
        let r = Rat::one() / (Rat::from_integer(2.into()) * &nd.delta);
        let thma = thm_a_hypothesis(s_norm);
        ledger.push(HypothesisRecord {
            condition: format!("(1+1) Newton distance delta = {}", rat_string(&nd.delta)),
            status: ConditionStatus::holds_exact(),
        });
        ledger.push(HypothesisRecord {
            condition: "(1+1) split-index hypothesis (coefficients on both sides of m/2)".into(),
            status: if thma {
                ConditionStatus::holds_exact()
            } else {
                ConditionStatus::Fails {
                    method: CheckMethod::Exact,
                    witness: None,
                }
            },
        });
        let source = if thma && r == Rat::new(1.into(), m.into()) {
            RateSource::ThmA
        } else {
            RateSource::ThmC
        };
        candidates.push((r, 0, source, false, None));
    }

    if m >= 3 {
        let horm = check_hormander(s_norm, &check_opts)?;
        ledger.push(HypothesisRecord {
            condition: "full-rank Hessian condition off the origin".into(),
            status: horm.clone(),
        });
        if horm.holds() {
            let (r, p) = if m * nz > nx + nz {
                (Rat::new((nx + nz).into(), (2 * m).into()), 0)
            } else if m * nz == nx + nz {
                (Rat::new(nz.into(), 2.into()), 1)
            } else {
                (Rat::new(nz.into(), 2.into()), 0)
            };
            candidates.push((r, p, RateSource::Thm11, false, None));
        }

        let rank_one = check_rank_one(s_norm, &check_opts)?;
        ledger.push(HypothesisRecord {
            condition: "rank-one condition off the origin".into(),
            status: rank_one.clone(),
        });
        if rank_one.holds() {
            let (r, p) = if m > nx + nz {
                (Rat::new((nx + nz).into(), (2 * m).into()), 0)
            } else if m == nx + nz {
                (Rat::new(1.into(), 2.into()), 1)
            } else {
                (Rat::new(1.into(), 2.into()), 0)
            };
            candidates.push((r, p, RateSource::Thm12, false, None));
        }
    }

    if let Some((r, p, mut sub)) = thm_b_candidate(s_norm) {
        ledger.append(&mut sub);
        candidates.push((r, p, RateSource::ThmB, false, None));
    }

    if nx == 2 && nz == 2 && m == 3 {
        let rep = cubic22::check_thm14(s_norm)?;
        let cond = |c: cubic22::ConditionOutcome| {
            if c.holds {
                ConditionStatus::holds_exact()
            } else if c.evaluable {
                ConditionStatus::Fails {
                    method: CheckMethod::Exact,
                    witness: None,
                }
            } else {
                ConditionStatus::Undetermined {
                    reason: "not evaluable (P or R singular)".into(),
                }
            }
        };
        ledger.push(HypothesisRecord {
            condition: "P and R nonsingular".into(),
            status: cond(rep.pr_nonsingular),
        });
        ledger.push(HypothesisRecord {
            condition: "Schur complements nonsingular".into(),
            status: cond(rep.schur_nonsingular),
        });
        ledger.push(HypothesisRecord {
            condition: "cross resultants nonzero".into(),
            status: cond(rep.cross_resultants_nonzero),
        });
        if rep.indefinite_case_applicable {
            ledger.push(HypothesisRecord {
                condition: "indefinite-pair resultants nonzero".into(),
                status: cond(rep.indefinite_resultants_nonzero),
            });
        }
        if rep.passes() {
            candidates.push((
                Rat::new(2.into(), 3.into()),
                0,
                RateSource::Thm14,
                true,
                None,
            ));
        }
    }

    // pencil structure, on the phase or its adjoint
    let pencil_found =
        pencil::detect_pencil(s_norm).or_else(|| pencil::detect_pencil(&s_norm.transpose_roles()));
    if let Some(p) = pencil_found {
        let pr = pencil::pencil_rate(&p);
        ledger.push(HypothesisRecord {
            condition: format!("pencil structure: d = {}, s = {}", p.d, p.s),
            status: ConditionStatus::holds_exact(),
        });
        candidates.push((
            pr.rate.clone().unwrap(),
            pr.log_power,
            RateSource::Prop45,
            true,
            pr.delta_mod.clone(),
        ));
    }

    // best: largest r, ties to the smaller log power, then declaration order
    let mut best: Option<(Rat, u32, RateSource, bool, Option<Rat>)> = None;
    for c in candidates {
        let better = match &best {
            None => true,
            Some(b) => c.0 > b.0 || (c.0 == b.0 && c.1 < b.1),
        };
        if better {
            best = Some(c);
        }
    }

    Ok(match best {
        Some((r, p, source, sharp, delta_mod)) => {
            debug_assert!(r <= cap, "rate {r} above the n_z/2 cap");
            DecayPrediction {
                rate: Some(r),
                log_power: p,
                source,
                hypotheses: ledger,
                lower_bound_rate,
                delta_mod,
                sharp_lower_bound: sharp,
            }
        }
        None => DecayPrediction {
            rate: None,
            log_power: 0,
            source: RateSource::NoTheorem,
            hypotheses: ledger,
            lower_bound_rate,
            delta_mod: None,
            sharp_lower_bound: false,
        },
    })
}

/// Outcome of a batch genericity experiment over random rational phases.
#[derive(Clone, Debug)]
pub struct GenericityReport {
    pub trials: usize,
    pub rank_one_passes: usize,
    /// Hypothesis-checker passes; only counted for (2+2) cubics.
    pub cubic_passes: Option<usize>,
    pub seed: u64,
}

/// Samples `trials` random rational phases (independent per-index seeds) and
/// counts how many satisfy the rank-one condition and, for (2+2) cubics, the
/// full cubic hypothesis set.
pub fn genericity(
    nx: usize,
    nz: usize,
    m: u32,
    trials: usize,
    seed: u64,
    opts: &PredictOptions,
) -> GenericityReport {
    let is_cubic22 = nx == 2 && nz == 2 && m == 3;
    let results: Vec<(bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let s = PhasePoly::random(nx, nz, m, 1000, &mut rng);
            if s.is_zero() {
                return (false, false);
            }
            let r1 = check_rank_one(&s, opts).map(|c| c.holds()).unwrap_or(false);
            let c = if is_cubic22 {
                cubic22::check_thm14(&s)
                    .map(|r| r.passes())
                    .unwrap_or(false)
            } else {
                false
            };
            (r1, c)
        })
        .collect();
    let rank_one_passes = results.iter().filter(|(r, _)| *r).count();
    let cubic_passes = is_cubic22.then(|| results.iter().filter(|(_, c)| *c).count());
    GenericityReport {
        trials,
        rank_one_passes,
        cubic_passes,
        seed,
    }
}
