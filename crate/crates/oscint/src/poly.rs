//! Exact sparse arithmetic for homogeneous polynomials in split variables
//! `x ∈ ℝ^{n_x}`, `z ∈ ℝ^{n_z}`.
//!
//! Coefficients are arbitrary-precision rationals; floats appear only at
//! evaluation boundaries. Term maps are ordered by lexicographic multi-index,
//! so equality, hashing and serialization are canonical.

use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

mod json;
mod parse;

pub use json::{hompoly_from_json, hompoly_to_json, phase_from_json, phase_to_json};
pub use parse::{parse_hompoly, parse_phase, parse_rat};

/// Arbitrary-precision rational coefficient.
pub type Rat = num_rational::BigRational;

/// Formats a rational as `"p"` or `"p/q"`, the canonical report form.
pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("point has {got} coordinates, polynomial lives on {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("term {0} has total degree {1}, expected {2}")]
    NotHomogeneous(String, u32, u32),
    #[error("term {0} is a pure power of x or of z")]
    PureTerm(String),
    #[error("multi-index has wrong variable counts")]
    BadIndex,
    #[error("operation needs degree >= {needed}, polynomial has degree {got}")]
    DegreeTooLow { needed: u32, got: u32 },
    #[error("polynomial spaces do not match: ({0},{1},deg {2}) vs ({3},{4},deg {5})")]
    SpaceMismatch(usize, usize, u32, usize, usize, u32),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
}

/// Variable identifier in the split coordinates.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Var {
    /// `x_i`, zero-based.
    X(usize),
    /// `z_j`, zero-based.
    Z(usize),
}

/// Exponent vector `(α, β)` of a monomial `x^α z^β`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

impl MultiIndex {
    pub fn new(alpha: Vec<u32>, beta: Vec<u32>) -> Self {
        MultiIndex { alpha, beta }
    }

    pub fn x_degree(&self) -> u32 {
        self.alpha.iter().sum()
    }

    pub fn z_degree(&self) -> u32 {
        self.beta.iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.x_degree() + self.z_degree()
    }

    /// Concatenated exponent vector, `x` coordinates first.
    pub fn point(&self) -> Vec<u32> {
        self.alpha.iter().chain(self.beta.iter()).copied().collect()
    }

    fn exponent(&self, var: Var) -> u32 {
        match var {
            Var::X(i) => self.alpha[i],
            Var::Z(j) => self.beta[j],
        }
    }

    fn lowered(&self, var: Var) -> MultiIndex {
        let mut m = self.clone();
        match var {
            Var::X(i) => m.alpha[i] -= 1,
            Var::Z(j) => m.beta[j] -= 1,
        }
        m
    }

    /// `(α + e_i, β + ē_j)`.
    pub fn raised(&self, var: Var) -> MultiIndex {
        let mut m = self.clone();
        match var {
            Var::X(i) => m.alpha[i] += 1,
            Var::Z(j) => m.beta[j] += 1,
        }
        m
    }

    fn fmt_monomial(&self) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.alpha.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{}", i + 1, e)),
            }
        }
        for (j, &e) in self.beta.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("z{}", j + 1)),
                _ => parts.push(format!("z{}^{}", j + 1, e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Homogeneous polynomial with exact rational coefficients.
///
/// Invariants: every stored coefficient is nonzero and every key has total
/// degree equal to `degree`. The zero polynomial is an empty term map; its
/// degree is carried, not inferred.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomPoly {
    n_x: usize,
    n_z: usize,
    degree: u32,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl HomPoly {
    pub fn zero(n_x: usize, n_z: usize, degree: u32) -> Self {
        HomPoly {
            n_x,
            n_z,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(n_x: usize, n_z: usize, degree: u32, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (MultiIndex, Rat)>,
    {
        let mut map = BTreeMap::new();
        for (idx, coef) in terms {
            if idx.alpha.len() != n_x || idx.beta.len() != n_z {
                return Err(PolyError::BadIndex);
            }
            if idx.degree() != degree {
                return Err(PolyError::NotHomogeneous(
                    idx.fmt_monomial(),
                    idx.degree(),
                    degree,
                ));
            }
            if coef.is_zero() {
                continue;
            }
            let entry = map.entry(idx).or_insert_with(Rat::zero);
            *entry += coef;
        }
        map.retain(|_, c: &mut Rat| !c.is_zero());
        Ok(HomPoly {
            n_x,
            n_z,
            degree,
            terms: map,
        })
    }

    /// Single monomial `c · x^α z^β`.
    pub fn monomial(n_x: usize, n_z: usize, idx: MultiIndex, coef: Rat) -> Result<Self, PolyError> {
        let degree = idx.degree();
        Self::from_terms(n_x, n_z, degree, [(idx, coef)])
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_z(&self) -> usize {
        self.n_z
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Rat {
        self.terms.get(idx).cloned().unwrap_or_else(Rat::zero)
    }

    fn same_space(&self, other: &Self) -> Result<(), PolyError> {
        if self.n_x != other.n_x || self.n_z != other.n_z || self.degree != other.degree {
            return Err(PolyError::SpaceMismatch(
                self.n_x,
                self.n_z,
                self.degree,
                other.n_x,
                other.n_z,
                other.degree,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_space(other)?;
        let mut terms = self.terms.clone();
        for (idx, c) in &other.terms {
            let entry = terms.entry(idx.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HomPoly {
            n_x: self.n_x,
            n_z: self.n_z,
            degree: self.degree,
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(i, c)| (i.clone(), -c.clone()))
            .collect();
        HomPoly {
            n_x: self.n_x,
            n_z: self.n_z,
            degree: self.degree,
            terms,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return HomPoly::zero(self.n_x, self.n_z, self.degree);
        }
        let terms = self.terms.iter().map(|(i, k)| (i.clone(), k * c)).collect();
        HomPoly {
            n_x: self.n_x,
            n_z: self.n_z,
            degree: self.degree,
            terms,
        }
    }

    /// Product of homogeneous polynomials on the same variable split.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.n_x != other.n_x || self.n_z != other.n_z {
            return Err(PolyError::SpaceMismatch(
                self.n_x,
                self.n_z,
                self.degree,
                other.n_x,
                other.n_z,
                other.degree,
            ));
        }
        let mut terms: BTreeMap<MultiIndex, Rat> = BTreeMap::new();
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                let alpha = ia.alpha.iter().zip(&ib.alpha).map(|(a, b)| a + b).collect();
                let beta = ia.beta.iter().zip(&ib.beta).map(|(a, b)| a + b).collect();
                let idx = MultiIndex::new(alpha, beta);
                let entry = terms.entry(idx).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HomPoly {
            n_x: self.n_x,
            n_z: self.n_z,
            degree: self.degree + other.degree,
            terms,
        })
    }

    /// Evaluates at a float point `(x, z)` of length `n_x + n_z`.
    pub fn eval(&self, point: &[f64]) -> Result<f64, PolyError> {
        if point.len() != self.n_x + self.n_z {
            return Err(PolyError::DimensionMismatch {
                expected: self.n_x + self.n_z,
                got: point.len(),
            });
        }
        let mut acc = 0.0;
        for (idx, c) in &self.terms {
            let mut m = c.to_f64().unwrap_or(f64::NAN);
            for (i, &e) in idx.alpha.iter().enumerate() {
                if e > 0 {
                    m *= point[i].powi(e as i32);
                }
            }
            for (j, &e) in idx.beta.iter().enumerate() {
                if e > 0 {
                    m *= point[self.n_x + j].powi(e as i32);
                }
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, point: &[Rat]) -> Result<Rat, PolyError> {
        if point.len() != self.n_x + self.n_z {
            return Err(PolyError::DimensionMismatch {
                expected: self.n_x + self.n_z,
                got: point.len(),
            });
        }
        let mut acc = Rat::zero();
        for (idx, c) in &self.terms {
            let mut m = c.clone();
            for (i, &e) in idx.alpha.iter().enumerate() {
                for _ in 0..e {
                    m *= &point[i];
                }
            }
            for (j, &e) in idx.beta.iter().enumerate() {
                for _ in 0..e {
                    m *= &point[self.n_x + j];
                }
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Exact partial derivative; the degree drops by one (degree 0 stays 0).
    pub fn partial(&self, var: Var) -> HomPoly {
        let new_degree = self.degree.saturating_sub(1);
        let mut terms = BTreeMap::new();
        for (idx, c) in &self.terms {
            let e = idx.exponent(var);
            if e == 0 {
                continue;
            }
            let coef = c * Rat::from_integer(e.into());
            terms.insert(idx.lowered(var), coef);
        }
        HomPoly {
            n_x: self.n_x,
            n_z: self.n_z,
            degree: new_degree,
            terms,
        }
    }

    /// Substitutes `x ↦ Ax`, `z ↦ Bz` with exact rational matrices.
    ///
    /// `a` is `n_x × n_x`, `b` is `n_z × n_z`. The result stays homogeneous of
    /// the same degree with the same split of x- and z-degrees per term, so a
    /// phase polynomial stays a phase polynomial.
    pub fn compose_linear(
        &self,
        a: &crate::ratmat::RatMat,
        b: &crate::ratmat::RatMat,
    ) -> Result<HomPoly, PolyError> {
        if a.rows() != self.n_x
            || a.cols() != self.n_x
            || b.rows() != self.n_z
            || b.cols() != self.n_z
        {
            return Err(PolyError::BadIndex);
        }
        // Linear images of the coordinates: x_i -> sum_k a[i][k] x_k.
        let x_forms: Vec<HomPoly> = (0..self.n_x)
            .map(|i| {
                HomPoly::from_terms(
                    self.n_x,
                    self.n_z,
                    1,
                    (0..self.n_x).map(|k| {
                        let mut alpha = vec![0; self.n_x];
                        alpha[k] = 1;
                        (
                            MultiIndex::new(alpha, vec![0; self.n_z]),
                            a.get(i, k).clone(),
                        )
                    }),
                )
                .expect("linear form")
            })
            .collect();
        let z_forms: Vec<HomPoly> = (0..self.n_z)
            .map(|j| {
                HomPoly::from_terms(
                    self.n_x,
                    self.n_z,
                    1,
                    (0..self.n_z).map(|k| {
                        let mut beta = vec![0; self.n_z];
                        beta[k] = 1;
                        (
                            MultiIndex::new(vec![0; self.n_x], beta),
                            b.get(j, k).clone(),
                        )
                    }),
                )
                .expect("linear form")
            })
            .collect();

        let mut acc = HomPoly::zero(self.n_x, self.n_z, self.degree);
        for (idx, c) in &self.terms {
            let mut prod = HomPoly::from_terms(
                self.n_x,
                self.n_z,
                0,
                [(
                    MultiIndex::new(vec![0; self.n_x], vec![0; self.n_z]),
                    c.clone(),
                )],
            )?;
            for (i, &e) in idx.alpha.iter().enumerate() {
                for _ in 0..e {
                    prod = prod.mul(&x_forms[i])?;
                }
            }
            for (j, &e) in idx.beta.iter().enumerate() {
                for _ in 0..e {
                    prod = prod.mul(&z_forms[j])?;
                }
            }
            acc = acc.add(&prod)?;
        }
        Ok(acc)
    }

    /// Swaps the roles of x and z: returns `S~(x,z) = S(z,x)` on `ℝ^{n_z} × ℝ^{n_x}`.
    pub fn transpose_roles(&self) -> HomPoly {
        let terms = self
            .terms
            .iter()
            .map(|(idx, c)| {
                (
                    MultiIndex::new(idx.beta.clone(), idx.alpha.clone()),
                    c.clone(),
                )
            })
            .collect();
        HomPoly {
            n_x: self.n_z,
            n_z: self.n_x,
            degree: self.degree,
            terms,
        }
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.terms {
            let mono = idx.fmt_monomial();
            let cs = rat_string(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if cs == "1" && mono != "1" {
                write!(f, "{}", mono)?;
            } else if mono == "1" {
                write!(f, "{}", cs)?;
            } else {
                write!(f, "{}*{}", cs, mono)?;
            }
        }
        Ok(())
    }
}

/// Phase polynomial: homogeneous with no pure-x or pure-z monomials
/// (membership in the space `𝔖^m`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhasePoly(HomPoly);

impl PhasePoly {
    pub fn new(poly: HomPoly) -> Result<Self, PolyError> {
        for idx in poly.terms.keys() {
            if idx.x_degree() == 0 || idx.z_degree() == 0 {
                return Err(PolyError::PureTerm(idx.fmt_monomial()));
            }
        }
        Ok(PhasePoly(poly))
    }

    pub fn from_terms<I>(n_x: usize, n_z: usize, degree: u32, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (MultiIndex, Rat)>,
    {
        Self::new(HomPoly::from_terms(n_x, n_z, degree, terms)?)
    }

    pub fn poly(&self) -> &HomPoly {
        &self.0
    }

    pub fn n_x(&self) -> usize {
        self.0.n_x
    }

    pub fn n_z(&self) -> usize {
        self.0.n_z
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64, PolyError> {
        self.0.eval(point)
    }

    pub fn eval_exact(&self, point: &[Rat]) -> Result<Rat, PolyError> {
        self.0.eval_exact(point)
    }

    /// `S(Ax, Bz)`; stays in `𝔖^m` because `A` mixes only x and `B` only z.
    pub fn compose_linear(
        &self,
        a: &crate::ratmat::RatMat,
        b: &crate::ratmat::RatMat,
    ) -> Result<PhasePoly, PolyError> {
        Ok(PhasePoly(self.0.compose_linear(a, b)?))
    }

    /// Adjoint phase with the roles of x and z exchanged.
    pub fn transpose_roles(&self) -> PhasePoly {
        PhasePoly(self.0.transpose_roles())
    }

    /// Uniform random phase with coefficients `k/denom`, `k ∈ [-denom, denom]`.
    pub fn random<R: rand::Rng>(
        n_x: usize,
        n_z: usize,
        degree: u32,
        denom: i64,
        rng: &mut R,
    ) -> PhasePoly {
        let mut terms = Vec::new();
        for idx in enumerate_monomials(n_x, n_z, degree) {
            if idx.x_degree() == 0 || idx.z_degree() == 0 {
                continue;
            }
            let k: i64 = rng.gen_range(-denom..=denom);
            terms.push((idx, Rat::new(k.into(), denom.into())));
        }
        PhasePoly::from_terms(n_x, n_z, degree, terms).expect("random phase")
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All exponent vectors of total degree `m` on `n_x + n_z` variables.
pub fn enumerate_monomials(n_x: usize, n_z: usize, m: u32) -> Vec<MultiIndex> {
    let n = n_x + n_z;
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn rec(pos: usize, remaining: u32, current: &mut Vec<u32>, n: usize, out: &mut Vec<Vec<u32>>) {
        if pos == n - 1 {
            current[pos] = remaining;
            out.push(current.clone());
            return;
        }
        for e in 0..=remaining {
            current[pos] = e;
            rec(pos + 1, remaining - e, current, n, out);
        }
    }
    let mut raw = Vec::new();
    rec(0, m, &mut current, n, &mut raw);
    for v in raw {
        out.push(MultiIndex::new(v[..n_x].to_vec(), v[n_x..].to_vec()));
    }
    out
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Dimension of the phase space `𝔖^m ℝ^{n_x+n_z}`:
/// `C(m+n_x+n_z-1, m) - C(m+n_x-1, m) - C(m+n_z-1, m)`.
pub fn dim_phase_space(m: u32, n_x: usize, n_z: usize) -> u128 {
    let m = m as u64;
    let total = binomial(m + (n_x + n_z) as u64 - 1, m);
    let pure_x = binomial(m + n_x as u64 - 1, m);
    let pure_z = binomial(m + n_z as u64 - 1, m);
    total - pure_x - pure_z
}
