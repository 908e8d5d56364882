//! Cubic phases in (2+2)-dimensions: the quadratic form `Φ = det S″_xz` in
//! block form `Φ = ½xᵗPx + xᵗQz + ½zᵗRz`, the nonsingularity/resultant
//! hypothesis checker for the λ^{-2/3} decay theorem, and the conic geometry
//! of the critical variety `Σ = {Φ = 0}`.
//!
//! All hypothesis checks are exact rational arithmetic; floats appear only in
//! the singular-value diagnostic.

use crate::binres::{self, BinaryForm};
use crate::hessmap;
use crate::poly::{HomPoly, MultiIndex, PhasePoly, Rat};
use crate::ratmat::RatMat;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CubicError {
    #[error("phase must be a cubic in (2+2)-dimensions, got ({0}+{1}) degree {2}")]
    WrongShape(usize, usize, u32),
    #[error("geometry classification requires the nonsingularity conditions; {0}")]
    PreconditionFailed(String),
    #[error("point must be nonzero")]
    ZeroPoint,
    #[error(transparent)]
    Hess(#[from] hessmap::HessError),
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}

/// The blocks of `Φ = ½xᵗPx + xᵗQz + ½zᵗRz`, with `P`, `R` symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFormPqr {
    pub p: RatMat,
    pub q: RatMat,
    pub r: RatMat,
}

impl QuadraticFormPqr {
    /// The symmetric 4×4 matrix `[[P, Q], [Qᵗ, R]]` representing `Φ`.
    pub fn phi_matrix(&self) -> RatMat {
        let mut m = RatMat::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                m.set(i, j, self.p.get(i, j).clone());
                m.set(i, 2 + j, self.q.get(i, j).clone());
                m.set(2 + j, i, self.q.get(i, j).clone());
                m.set(2 + i, 2 + j, self.r.get(i, j).clone());
            }
        }
        m
    }

    /// Rebuilds `½xᵗPx + xᵗQz + ½zᵗRz` as a degree-2 polynomial.
    pub fn resynthesize(&self) -> HomPoly {
        let half = Rat::new(1.into(), 2.into());
        let mut terms: Vec<(MultiIndex, Rat)> = Vec::new();
        let idx = |a: [u32; 2], b: [u32; 2]| MultiIndex::new(a.to_vec(), b.to_vec());
        for i in 0..2 {
            for j in 0..2 {
                let mut a = [0u32; 2];
                a[i] += 1;
                a[j] += 1;
                terms.push((idx(a, [0, 0]), &half * self.p.get(i, j)));
                let mut b = [0u32; 2];
                b[i] += 1;
                b[j] += 1;
                terms.push((idx([0, 0], b), &half * self.r.get(i, j)));
                let mut a2 = [0u32; 2];
                a2[i] = 1;
                let mut b2 = [0u32; 2];
                b2[j] = 1;
                terms.push((idx(a2, b2), self.q.get(i, j).clone()));
            }
        }
        HomPoly::from_terms(2, 2, 2, terms).expect("quadratic resynthesis")
    }
}

fn require_cubic22(s: &PhasePoly) -> Result<(), CubicError> {
    if s.n_x() != 2 || s.n_z() != 2 || s.degree() != 3 {
        return Err(CubicError::WrongShape(s.n_x(), s.n_z(), s.degree()));
    }
    Ok(())
}

/// `Φ = det S″_xz` as a polynomial (degree 2 for a (2+2) cubic).
pub fn phi_polynomial(s: &PhasePoly) -> Result<HomPoly, CubicError> {
    let h = hessmap::mixed_hessian(s)?;
    Ok(h.entry(0, 0)
        .mul(h.entry(1, 1))?
        .sub(&h.entry(0, 1).mul(h.entry(1, 0))?)?)
}

/// Expands `det S″_xz` and matches it coefficient-by-coefficient into `P, Q, R`.
pub fn extract_pqr(s: &PhasePoly) -> Result<QuadraticFormPqr, CubicError> {
    require_cubic22(s)?;
    let phi = phi_polynomial(s)?;
    let coef = |a: [u32; 2], b: [u32; 2]| phi.coefficient(&MultiIndex::new(a.to_vec(), b.to_vec()));
    let two = Rat::from_integer(2.into());
    let p = RatMat::from_rows(vec![
        vec![&two * coef([2, 0], [0, 0]), coef([1, 1], [0, 0])],
        vec![coef([1, 1], [0, 0]), &two * coef([0, 2], [0, 0])],
    ]);
    let r = RatMat::from_rows(vec![
        vec![&two * coef([0, 0], [2, 0]), coef([0, 0], [1, 1])],
        vec![coef([0, 0], [1, 1]), &two * coef([0, 0], [0, 2])],
    ]);
    let q = RatMat::from_rows(vec![
        vec![coef([1, 0], [1, 0]), coef([1, 0], [0, 1])],
        vec![coef([0, 1], [1, 0]), coef([0, 1], [0, 1])],
    ]);
    let out = QuadraticFormPqr { p, q, r };
    debug_assert_eq!(out.resynthesize(), phi);
    Ok(out)
}

/// Outcome of one hypothesis, with an evaluability annotation so dependent
/// conditions report `false` instead of erroring when their inputs are
/// singular.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionOutcome {
    pub holds: bool,
    pub evaluable: bool,
}

impl ConditionOutcome {
    fn of(holds: bool) -> Self {
        ConditionOutcome {
            holds,
            evaluable: true,
        }
    }

    fn not_evaluable() -> Self {
        ConditionOutcome {
            holds: false,
            evaluable: false,
        }
    }
}

/// Full hypothesis report for the cubic decay theorem, with every
/// intermediate determinant and resultant retained as an exact rational.
#[derive(Clone, Debug)]
pub struct CubicHypothesisReport {
    pub blocks: QuadraticFormPqr,
    /// P and R nonsingular.
    pub pr_nonsingular: ConditionOutcome,
    /// P − QR⁻¹Qᵗ and R − QᵗP⁻¹Q nonsingular.
    pub schur_nonsingular: ConditionOutcome,
    /// The two cross resultants (x-side and z-side) are nonzero.
    pub cross_resultants_nonzero: ConditionOutcome,
    /// Extra resultants required only when both P and R are indefinite.
    pub indefinite_resultants_nonzero: ConditionOutcome,
    /// Whether the indefinite-pair condition was required.
    pub indefinite_case_applicable: bool,
    pub det_p: Rat,
    pub det_r: Rat,
    pub det_p_schur: Option<Rat>,
    pub det_r_schur: Option<Rat>,
    /// `Res[xᵗ(P−QR⁻¹Qᵗ)x, xᵗQR⁻¹(R−QᵗP⁻¹Q)R⁻¹Qᵗx]`.
    pub res_cross_x: Option<Rat>,
    /// `Res[zᵗ(R−QᵗP⁻¹Q)z, zᵗQᵗP⁻¹(P−QR⁻¹Qᵗ)P⁻¹Qz]`.
    pub res_cross_z: Option<Rat>,
    /// `Res[xᵗPx, xᵗ(P−QR⁻¹Qᵗ)x]`.
    pub res_p_x: Option<Rat>,
    /// `Res[zᵗRz, zᵗ(R−QᵗP⁻¹Q)z]`.
    pub res_r_z: Option<Rat>,
    /// Schur complements, kept for the geometry step.
    pub p_schur: Option<RatMat>,
    pub r_schur: Option<RatMat>,
}

impl CubicHypothesisReport {
    /// All applicable conditions hold.
    pub fn passes(&self) -> bool {
        self.pr_nonsingular.holds
            && self.schur_nonsingular.holds
            && self.cross_resultants_nonzero.holds
            && (!self.indefinite_case_applicable || self.indefinite_resultants_nonzero.holds)
    }
}

/// Resultant of two quadratic forms given by symmetric 2×2 matrices, with the
/// zero form mapped to a zero resultant (a shared root exists trivially).
fn form_resultant(m1: &RatMat, m2: &RatMat) -> Rat {
    let f = BinaryForm::from_quadratic_form(m1);
    let g = BinaryForm::from_quadratic_form(m2);
    if f.is_zero() || g.is_zero() {
        return Rat::zero();
    }
    binres::resultant(&f, &g).expect("nonzero forms")
}

/// Evaluates every hypothesis of the cubic decay theorem in exact arithmetic.
pub fn check_thm14(s: &PhasePoly) -> Result<CubicHypothesisReport, CubicError> {
    let blocks = extract_pqr(s)?;
    let det_p = blocks.p.det();
    let det_r = blocks.r.det();
    let pr_nonsingular = ConditionOutcome::of(!det_p.is_zero() && !det_r.is_zero());
    // a 2x2 symmetric matrix is indefinite exactly when its determinant is negative
    let indefinite_case_applicable = det_p.is_negative() && det_r.is_negative();

    if !pr_nonsingular.holds {
        return Ok(CubicHypothesisReport {
            blocks,
            pr_nonsingular,
            schur_nonsingular: ConditionOutcome::not_evaluable(),
            cross_resultants_nonzero: ConditionOutcome::not_evaluable(),
            indefinite_resultants_nonzero: ConditionOutcome::not_evaluable(),
            indefinite_case_applicable,
            det_p,
            det_r,
            det_p_schur: None,
            det_r_schur: None,
            res_cross_x: None,
            res_cross_z: None,
            res_p_x: None,
            res_r_z: None,
            p_schur: None,
            r_schur: None,
        });
    }

    let p_inv = blocks.p.inverse().expect("det P != 0");
    let r_inv = blocks.r.inverse().expect("det R != 0");
    let qt = blocks.q.transpose();
    let p_schur = blocks
        .p
        .sub(&blocks.q.mul(&r_inv).unwrap().mul(&qt).unwrap())
        .unwrap();
    let r_schur = blocks
        .r
        .sub(&qt.mul(&p_inv).unwrap().mul(&blocks.q).unwrap())
        .unwrap();
    let det_p_schur = p_schur.det();
    let det_r_schur = r_schur.det();
    let schur_nonsingular = ConditionOutcome::of(!det_p_schur.is_zero() && !det_r_schur.is_zero());

    let qr_inv = blocks.q.mul(&r_inv).unwrap();
    let cross_x_matrix = qr_inv
        .mul(&r_schur)
        .unwrap()
        .mul(&qr_inv.transpose())
        .unwrap();
    let res_cross_x = form_resultant(&p_schur, &cross_x_matrix);
    let qtp_inv = qt.mul(&p_inv).unwrap();
    let cross_z_matrix = qtp_inv
        .mul(&p_schur)
        .unwrap()
        .mul(&qtp_inv.transpose())
        .unwrap();
    let res_cross_z = form_resultant(&r_schur, &cross_z_matrix);
    let cross_resultants_nonzero =
        ConditionOutcome::of(!res_cross_x.is_zero() && !res_cross_z.is_zero());

    let res_p_x = form_resultant(&blocks.p, &p_schur);
    let res_r_z = form_resultant(&blocks.r, &r_schur);
    let indefinite_resultants_nonzero = if indefinite_case_applicable {
        ConditionOutcome::of(!res_p_x.is_zero() && !res_r_z.is_zero())
    } else {
        ConditionOutcome::of(true)
    };

    Ok(CubicHypothesisReport {
        blocks,
        pr_nonsingular,
        schur_nonsingular,
        cross_resultants_nonzero,
        indefinite_resultants_nonzero,
        indefinite_case_applicable,
        det_p,
        det_r,
        det_p_schur: Some(det_p_schur),
        det_r_schur: Some(det_r_schur),
        res_cross_x: Some(res_cross_x),
        res_cross_z: Some(res_cross_z),
        res_p_x: Some(res_p_x),
        res_r_z: Some(res_r_z),
        p_schur: Some(p_schur),
        r_schur: Some(r_schur),
    })
}

/// Conic type of a level set `wᵗMw = ε` for a nonsingular symmetric 2×2 `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConicKind {
    /// `M` definite: the level set is an ellipse or empty depending on the sign of ε.
    EllipseOrEmpty,
    /// `M` indefinite: a hyperbola.
    Hyperbola,
}

/// Geometry of the critical variety and of the projected fold curves.
#[derive(Clone, Debug)]
pub struct GeometryReport {
    /// Signature (positive, negative, zero) of the 4×4 matrix of `Φ`.
    pub phi_signature: (usize, usize, usize),
    /// `Φ` definite: the punctured critical variety is empty and the
    /// nondegenerate-Hessian decay estimate applies directly.
    pub sigma_empty: bool,
    /// Type of `Γ_R^ε = {z : zᵗ(R−QᵗP⁻¹Q)z = ε}`.
    pub gamma_r: ConicKind,
    /// Type of `Γ_L^ε = {x : xᵗ(P−QR⁻¹Qᵗ)x = ε}`.
    pub gamma_l: ConicKind,
    pub p_schur: RatMat,
    pub r_schur: RatMat,
    /// Null directions (unit vectors) of the quadratic forms of P, R and the
    /// two Schur complements; `None` for definite blocks.
    pub null_dirs_p: Option<[[f64; 2]; 2]>,
    pub null_dirs_r: Option<[[f64; 2]; 2]>,
    pub null_dirs_p_schur: Option<[[f64; 2]; 2]>,
    pub null_dirs_r_schur: Option<[[f64; 2]; 2]>,
}

/// Null directions of `w ↦ wᵗMw` for symmetric 2×2 `M`, as unit vectors.
pub fn null_directions(m: &RatMat) -> Option<[[f64; 2]; 2]> {
    use num_traits::ToPrimitive;
    let a = m.get(0, 0).to_f64()?;
    let b = m.get(0, 1).to_f64()?;
    let c = m.get(1, 1).to_f64()?;
    // a u^2 + 2b uv + c v^2 = 0
    let disc = b * b - a * c;
    if disc < 0.0 {
        return None;
    }
    let unit = |u: f64, v: f64| {
        let n = (u * u + v * v).sqrt();
        [u / n, v / n]
    };
    if a != 0.0 {
        let t1 = (-b + disc.sqrt()) / a;
        let t2 = (-b - disc.sqrt()) / a;
        Some([unit(t1, 1.0), unit(t2, 1.0)])
    } else if b != 0.0 {
        // v (2b u + c v) = 0
        Some([unit(1.0, 0.0), unit(-c, 2.0 * b)])
    } else if c != 0.0 {
        Some([unit(1.0, 0.0), unit(1.0, 0.0)])
    } else {
        None
    }
}

/// Classifies the critical-variety geometry; requires the nonsingularity
/// conditions to hold.
pub fn classify_geometry(s: &PhasePoly) -> Result<GeometryReport, CubicError> {
    let report = check_thm14(s)?;
    if !report.pr_nonsingular.holds {
        return Err(CubicError::PreconditionFailed("P or R is singular".into()));
    }
    if !report.schur_nonsingular.holds {
        return Err(CubicError::PreconditionFailed(
            "a Schur complement is singular".into(),
        ));
    }
    let p_schur = report.p_schur.clone().unwrap();
    let r_schur = report.r_schur.clone().unwrap();
    let phi = report.blocks.phi_matrix();
    let signature = phi.symmetric_signature();
    let sigma_empty = signature.2 == 0 && (signature.0 == 0 || signature.1 == 0);
    let kind = |m: &RatMat| {
        if m.det().is_negative() {
            ConicKind::Hyperbola
        } else {
            ConicKind::EllipseOrEmpty
        }
    };
    Ok(GeometryReport {
        phi_signature: signature,
        sigma_empty,
        gamma_r: kind(&r_schur),
        gamma_l: kind(&p_schur),
        null_dirs_p: null_directions(&report.blocks.p),
        null_dirs_r: null_directions(&report.blocks.r),
        null_dirs_p_schur: null_directions(&p_schur),
        null_dirs_r_schur: null_directions(&r_schur),
        p_schur,
        r_schur,
    })
}

/// Singular values `σ₁ <= σ₂` of `S″_xz` at a nonzero point, plus `|Φ(point)|`.
///
/// `σ₁σ₂ = |Φ|` for 2×2 matrices, and `σ₁` scales like the distance to the
/// critical variety.
pub fn sigma1_diagnostic(s: &PhasePoly, point: &[f64]) -> Result<(f64, f64, f64), CubicError> {
    require_cubic22(s)?;
    if point.iter().all(|&v| v == 0.0) {
        return Err(CubicError::ZeroPoint);
    }
    let h = hessmap::mixed_hessian(s)?;
    let vals = h.eval(point)?;
    let (a, b, c, d) = (vals[0], vals[1], vals[2], vals[3]);
    let e = (a + d) / 2.0;
    let f = (a - d) / 2.0;
    let g = (c + b) / 2.0;
    let hh = (c - b) / 2.0;
    let q = (e * e + hh * hh).sqrt();
    let r = (f * f + g * g).sqrt();
    let sigma2 = q + r;
    let sigma1 = (q - r).abs();
    let phi = (a * d - b * c).abs();
    Ok((sigma1, sigma2, phi))
}
