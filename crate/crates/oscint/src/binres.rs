//! Exact resultants, gcds and real-linear-factor multiplicities for binary
//! forms (homogeneous polynomials in two variables `u, v`).
//!
//! Everything is exact rational arithmetic: the resultant is a Sylvester
//! determinant, the gcd is a dehomogenized Euclid run re-lifted together with
//! the common `v`-power, and real linear factors come from Sturm counts and
//! square-free decomposition rather than floating root finding.

pub mod univar;

use crate::poly::{rat_string, Rat};
use crate::ratmat::RatMat;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;
use univar::UPoly;

#[derive(Debug, Error, PartialEq)]
pub enum BinresError {
    #[error("the zero form is not a valid input here")]
    ZeroForm,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("direction (0,0) is not a valid linear form")]
    ZeroDirection,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Binary form of degree `d`: `coeffs[k]` multiplies `u^{d-k} v^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryForm {
    coeffs: Vec<Rat>,
}

impl BinaryForm {
    /// Builds from descending-`u` coefficients; the degree is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(c.into()))
                .collect(),
        )
    }

    /// Quadratic form `w^t M w` of a symmetric 2×2 matrix as `[m11, 2 m12, m22]`.
    pub fn from_quadratic_form(m: &RatMat) -> Self {
        assert!(m.rows() == 2 && m.cols() == 2 && m.is_symmetric());
        BinaryForm::new(vec![
            m.get(0, 0).clone(),
            m.get(0, 1) + m.get(1, 0),
            m.get(1, 1).clone(),
        ])
    }

    /// Parses either a comma-separated coefficient list (descending `u`-power,
    /// e.g. `"1,0,-1"`) or an expression in `z1, z2` (e.g. `"z1^2 - z2^2"`,
    /// with `u = z1`, `v = z2`).
    pub fn parse(src: &str) -> Result<Self, BinresError> {
        let src = src.trim();
        if src.contains('z') {
            let p = crate::poly::parse_hompoly(src, 0, 2)
                .map_err(|e| BinresError::Parse(e.to_string()))?;
            let d = p.degree() as usize;
            let mut coeffs = vec![Rat::zero(); d + 1];
            for (idx, c) in p.terms() {
                coeffs[idx.beta[1] as usize] = c.clone();
            }
            Ok(BinaryForm::new(coeffs))
        } else {
            let coeffs: Result<Vec<Rat>, _> = src
                .split(',')
                .map(|t| crate::poly::parse_rat(t.trim()))
                .collect();
            Ok(BinaryForm::new(
                coeffs.map_err(|e| BinresError::Parse(e.to_string()))?,
            ))
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, u: &Rat, v: &Rat) -> Rat {
        let d = self.degree();
        let mut acc = Rat::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut m = c.clone();
            for _ in 0..(d - k) {
                m *= u;
            }
            for _ in 0..k {
                m *= v;
            }
            acc += m;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        BinaryForm::new(self.coeffs.iter().map(|k| k * c).collect())
    }

    /// Power of `v` dividing the form (the multiplicity of the root `(1:0)`).
    pub fn v_power(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len() - 1)
    }

    /// Dehomogenization `p(t) = f(t, 1)` as an ascending dense polynomial.
    fn dehomogenize(&self) -> UPoly {
        univar::trim(self.coeffs.iter().rev().cloned().collect())
    }

    /// Lifts an ascending polynomial of degree `e` back to a binary form of
    /// degree `e` (descending-u coefficients).
    fn rehomogenize(p: &UPoly) -> BinaryForm {
        let p = univar::trim(p.clone());
        BinaryForm::new(p.iter().rev().cloned().collect())
    }

    /// Multiplies by `v^k`.
    fn shift_v(&self, k: usize) -> BinaryForm {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BinaryForm::new(coeffs)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let d = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let up = d - k;
            let mono = match (up, k) {
                (0, 0) => String::new(),
                (a, 0) if a > 1 => format!("u^{a}"),
                (1, 0) => "u".into(),
                (0, b) if b > 1 => format!("v^{b}"),
                (0, 1) => "v".into(),
                (1, 1) => "u*v".into(),
                (1, b) => format!("u*v^{b}"),
                (a, 1) => format!("u^{a}*v"),
                (a, b) => format!("u^{a}*v^{b}"),
            };
            let cs = rat_string(&c.abs());
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{cs}")?;
            } else if cs == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{cs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Sylvester resultant of two nonzero binary forms. Zero exactly when the
/// forms share a projective complex root; degree `d_g` in the coefficients of
/// `f` and `d_f` in those of `g`.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Result<Rat, BinresError> {
    if f.is_zero() || g.is_zero() {
        return Err(BinresError::ZeroForm);
    }
    let df = f.degree();
    let dg = g.degree();
    if df == 0 {
        return Ok(pow_rat(&f.coeffs[0], dg as u32));
    }
    if dg == 0 {
        return Ok(pow_rat(&g.coeffs[0], df as u32));
    }
    let n = df + dg;
    let mut syl = RatMat::zeros(n, n);
    for row in 0..dg {
        for (k, c) in f.coeffs.iter().enumerate() {
            syl.set(row, row + k, c.clone());
        }
    }
    for row in 0..df {
        for (k, c) in g.coeffs.iter().enumerate() {
            syl.set(dg + row, row + k, c.clone());
        }
    }
    Ok(syl.det())
}

fn pow_rat(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Monic gcd of two nonzero binary forms over the rationals, including the
/// common `v`-power ("monic" meaning the first nonzero coefficient is 1).
pub fn gcd_form(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm, BinresError> {
    if f.is_zero() || g.is_zero() {
        return Err(BinresError::ZeroForm);
    }
    let vf = f.v_power();
    let vg = g.v_power();
    let pf = f.dehomogenize();
    let pg = g.dehomogenize();
    let gcd_poly = univar::gcd(&pf, &pg);
    let lifted = BinaryForm::rehomogenize(&gcd_poly);
    Ok(lifted.shift_v(vf.min(vg)))
}

/// Exact multiplicity of the linear form `a·u + b·v` in a nonzero binary form.
pub fn real_linear_multiplicity(f: &BinaryForm, a: &Rat, b: &Rat) -> Result<u32, BinresError> {
    if f.is_zero() {
        return Err(BinresError::ZeroForm);
    }
    if a.is_zero() && b.is_zero() {
        return Err(BinresError::ZeroDirection);
    }
    if a.is_zero() {
        return Ok(f.v_power() as u32);
    }
    // a != 0: the form vanishes at (u:v) = (b:-a), i.e. at t = -b/a in the v=1 chart
    let root = -(b / a);
    let divisor: UPoly = vec![-root.clone(), Rat::one()];
    let mut cur = f.dehomogenize();
    let mut mult = 0u32;
    while univar::eval(&cur, &root).is_zero() {
        cur = univar::div_exact(&cur, &divisor);
        mult += 1;
    }
    Ok(mult)
}

/// A reported direction `(a, b)` for the linear form `a·u + b·v`.
#[derive(Clone, Debug, PartialEq)]
pub enum Direction {
    Exact(Rat, Rat),
    Approx(f64, f64),
}

impl Direction {
    pub fn approx(&self) -> (f64, f64) {
        match self {
            Direction::Exact(a, b) => (
                a.to_f64().unwrap_or(f64::NAN),
                b.to_f64().unwrap_or(f64::NAN),
            ),
            Direction::Approx(a, b) => (*a, *b),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Exact(a, b) => write!(f, "({}, {})", rat_string(a), rat_string(b)),
            Direction::Approx(a, b) => write!(f, "({a:.12}, {b:.12})"),
        }
    }
}

/// `s` of a pencil: the largest, over real directions `(a,b)`, of the minimum
/// multiplicity of `a·u + b·v` in the two forms, with an achieving direction.
#[derive(Clone, Debug)]
pub struct PencilS {
    pub s: u32,
    pub direction: Option<Direction>,
}

/// Computes `s = max_{(a,b)} min(mult(φ1), mult(φ2))` exactly.
///
/// The minimum of the multiplicities of any linear factor equals its
/// multiplicity in `gcd(φ1, φ2)`, so only the gcd's real-factor structure is
/// needed: its `v`-power plus a square-free decomposition of the
/// dehomogenization, keeping factors with at least one real root (Sturm).
pub fn pencil_s(phi1: &BinaryForm, phi2: &BinaryForm) -> Result<PencilS, BinresError> {
    if phi1.is_zero() || phi2.is_zero() {
        return Err(BinresError::ZeroForm);
    }
    if phi1.degree() != phi2.degree() {
        return Err(BinresError::DegreeMismatch(phi1.degree(), phi2.degree()));
    }
    if phi1.degree() == 0 {
        return Ok(PencilS {
            s: 0,
            direction: None,
        });
    }
    let g = gcd_form(phi1, phi2)?;
    let mut best: Option<(u32, Direction)> = None;
    let vp = g.v_power() as u32;
    if vp >= 1 {
        best = Some((vp, Direction::Exact(Rat::zero(), Rat::one())));
    }
    let dehom = g.dehomogenize();
    if univar::deg(&dehom) >= 1 {
        for (factor, mult) in univar::squarefree_decomposition(&dehom) {
            if best.as_ref().is_some_and(|(s, _)| *s >= mult) {
                continue;
            }
            if univar::count_real_roots(&factor) == 0 {
                continue;
            }
            // direction from a root t0: the form u - t0 v, i.e. (a,b) = (1, -t0)
            let dir = if univar::deg(&factor) == 1 {
                let t0 = -(&factor[0] / &factor[1]);
                Direction::Exact(Rat::one(), -t0)
            } else {
                let roots = univar::isolate_real_roots(&factor);
                let t0 = roots[0].approx(&factor);
                Direction::Approx(1.0, -t0)
            };
            best = Some((mult, dir));
        }
    }
    match best {
        Some((s, dir)) => Ok(PencilS {
            s,
            direction: Some(dir),
        }),
        None => Ok(PencilS {
            s: 0,
            direction: None,
        }),
    }
}
