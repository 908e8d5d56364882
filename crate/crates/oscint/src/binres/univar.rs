//! Dense univariate polynomials over the rationals: division, gcd, Yun
//! square-free decomposition, Sturm sequences and real-root isolation.
//!
//! Coefficients are stored ascending (index = power of t).

use crate::poly::Rat;
use num_traits::{One, Signed, Zero};

pub type UPoly = Vec<Rat>;

pub fn trim(mut p: UPoly) -> UPoly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn is_zero(p: &UPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn deg(p: &UPoly) -> usize {
    let p = p.iter().rposition(|c| !c.is_zero());
    p.unwrap_or(0)
}

pub fn eval(p: &UPoly, t: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

pub fn derivative(p: &UPoly) -> UPoly {
    if p.len() <= 1 {
        return vec![Rat::zero()];
    }
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rat::from_integer((k as i64).into()))
            .collect(),
    )
}

pub fn scale(p: &UPoly, c: &Rat) -> UPoly {
    trim(p.iter().map(|k| k * c).collect())
}

pub fn sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

pub fn mul(a: &UPoly, b: &UPoly) -> UPoly {
    if is_zero(a) || is_zero(b) {
        return vec![Rat::zero()];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    trim(out)
}

/// Quotient and remainder of `a / b`; panics on zero divisor.
pub fn div_rem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    assert!(!is_zero(b), "division by the zero polynomial");
    let db = deg(b);
    let lead = b[db].clone();
    let mut rem = trim(a.clone());
    let mut quot = vec![Rat::zero(); a.len().max(1)];
    while !is_zero(&rem) && deg(&rem) >= db {
        let dr = deg(&rem);
        let factor = &rem[dr] / &lead;
        let shift = dr - db;
        quot[shift] = factor.clone();
        for (i, c) in b.iter().enumerate() {
            let v = &rem[shift + i] - &factor * c;
            rem[shift + i] = v;
        }
        rem = trim(rem);
        if dr == 0 {
            break;
        }
    }
    (trim(quot), rem)
}

pub fn monic(p: &UPoly) -> UPoly {
    let d = deg(p);
    if p[d].is_zero() {
        return vec![Rat::zero()];
    }
    let lead = p[d].clone();
    p.iter().map(|c| c / &lead).collect()
}

/// Monic gcd by Euclid's algorithm.
pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let mut f = trim(a.clone());
    let mut g = trim(b.clone());
    if is_zero(&f) {
        return if is_zero(&g) {
            vec![Rat::zero()]
        } else {
            monic(&g)
        };
    }
    while !is_zero(&g) {
        let (_, r) = div_rem(&f, &g);
        f = g;
        g = r;
    }
    monic(&f)
}

/// Exact division; panics if not divisible (callers check first).
pub fn div_exact(a: &UPoly, b: &UPoly) -> UPoly {
    let (q, r) = div_rem(a, b);
    assert!(is_zero(&r), "not exactly divisible");
    q
}

/// `p / gcd(p, p')`: same roots, all simple.
pub fn squarefree_part(p: &UPoly) -> UPoly {
    let g = gcd(p, &derivative(p));
    if deg(&g) == 0 {
        return monic(p);
    }
    monic(&div_exact(p, &g))
}

/// Yun's algorithm: returns `(g_k, k)` with `p = lc · Π g_k^k`, each `g_k`
/// square-free of degree >= 1, pairwise coprime.
pub fn squarefree_decomposition(p: &UPoly) -> Vec<(UPoly, u32)> {
    let p = monic(&trim(p.clone()));
    if deg(&p) == 0 {
        return Vec::new();
    }
    let dp = derivative(&p);
    let a0 = gcd(&p, &dp);
    let mut b = div_exact(&p, &a0);
    let c = div_exact(&dp, &a0);
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut k = 1u32;
    loop {
        let g = gcd(&b, &d);
        if deg(&g) >= 1 {
            out.push((g.clone(), k));
        }
        b = div_exact(&b, &g);
        if deg(&b) == 0 {
            break;
        }
        let c_next = div_exact(&d, &g);
        d = sub(&c_next, &derivative(&b));
        k += 1;
    }
    out
}

fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Canonical Sturm sequence `p, p', -rem(...), ...`.
pub fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![trim(p.clone())];
    let dp = derivative(p);
    if is_zero(&dp) {
        return seq;
    }
    seq.push(dp);
    loop {
        let n = seq.len();
        let (_, r) = div_rem(&seq[n - 2], &seq[n - 1]);
        if is_zero(&r) {
            break;
        }
        seq.push(scale(&r, &-Rat::one()));
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let s: Vec<i8> = signs.filter(|&v| v != 0).collect();
    s.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign_at_neg_inf(p: &UPoly) -> i8 {
    let d = deg(p);
    let s = sign(&p[d]);
    if d.is_multiple_of(2) {
        s
    } else {
        -s
    }
}

fn sign_at_pos_inf(p: &UPoly) -> i8 {
    sign(&p[deg(p)])
}

/// Number of distinct real roots of a square-free polynomial.
pub fn count_real_roots(p: &UPoly) -> usize {
    if deg(p) == 0 {
        return 0;
    }
    let seq = sturm_sequence(p);
    let at_minus = variations(seq.iter().map(sign_at_neg_inf));
    let at_plus = variations(seq.iter().map(sign_at_pos_inf));
    at_minus - at_plus
}

/// Distinct real roots in the half-open interval `(lo, hi]` (square-free input,
/// endpoints not roots of the leading member required only at `lo`).
fn count_roots_between(seq: &[UPoly], lo: &Rat, hi: &Rat) -> usize {
    let at_lo = variations(seq.iter().map(|q| sign(&eval(q, lo))));
    let at_hi = variations(seq.iter().map(|q| sign(&eval(q, hi))));
    at_lo - at_hi
}

/// Exact rational roots of a polynomial.
///
/// Degree-1 square-free factors give their roots directly; higher-degree
/// square-free factors go through integer scaling and divisor enumeration
/// (rational root theorem), skipped when the coefficient magnitudes make the
/// divisor sets impractical. Used for heuristic candidate generation, so an
/// incomplete answer on huge inputs is acceptable.
pub fn rational_roots(p: &UPoly) -> Vec<Rat> {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    let p = trim(p.clone());
    if deg(&p) == 0 {
        return Vec::new();
    }
    let mut out: Vec<Rat> = Vec::new();
    for (factor, _) in squarefree_decomposition(&p) {
        let d = deg(&factor);
        if d == 1 {
            out.push(-(&factor[0] / &factor[1]));
            continue;
        }
        // integer-scale the factor
        let mut denom_lcm = BigInt::from(1);
        for c in &factor {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = factor
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let tail_power = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if tail_power > 0 {
            out.push(Rat::zero());
        }
        let a0 = ints[tail_power].clone();
        let ad = ints[d].clone();
        let (Some(a0), Some(ad)) = (a0.abs().to_i128(), ad.abs().to_i128()) else {
            continue;
        };
        let (Some(divs0), Some(divsd)) = (small_divisors(a0), small_divisors(ad)) else {
            continue;
        };
        for n in &divs0 {
            for dq in &divsd {
                for sgn in [1i64, -1] {
                    let cand = Rat::new((sgn * *n as i64).into(), (*dq as i64).into());
                    if eval(&factor, &cand).is_zero() && !out.contains(&cand) {
                        out.push(cand);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All positive divisors, or `None` when the input is too large to enumerate.
fn small_divisors(n: i128) -> Option<Vec<i128>> {
    if n == 0 {
        return Some(vec![1]);
    }
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1i128;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
        if divs.len() > 512 {
            return None;
        }
    }
    Some(divs)
}

/// Real root of a polynomial, either exact or isolated in an open interval.
#[derive(Clone, Debug, PartialEq)]
pub enum IsolatedRoot {
    Exact(Rat),
    Interval(Rat, Rat),
}

impl IsolatedRoot {
    /// Refines to a float approximation (bisection to ~1e-14 relative).
    pub fn approx(&self, p: &UPoly) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            IsolatedRoot::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            IsolatedRoot::Interval(lo, hi) => {
                let mut lo = lo.clone();
                let mut hi = hi.clone();
                let s_lo = sign(&eval(p, &lo));
                for _ in 0..64 {
                    let mid = (&lo + &hi) / Rat::from_integer(2.into());
                    let s_mid = sign(&eval(p, &mid));
                    if s_mid == 0 {
                        return mid.to_f64().unwrap_or(f64::NAN);
                    }
                    if s_mid == s_lo {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                ((lo.to_f64().unwrap_or(f64::NAN)) + (hi.to_f64().unwrap_or(f64::NAN))) / 2.0
            }
        }
    }
}

/// Isolates all distinct real roots of a square-free polynomial.
pub fn isolate_real_roots(p: &UPoly) -> Vec<IsolatedRoot> {
    let p = trim(p.clone());
    let d = deg(&p);
    if d == 0 {
        return Vec::new();
    }
    // Cauchy bound: all roots lie in (-M, M)
    let lead = p[d].clone();
    let mut max_ratio = Rat::zero();
    for c in p.iter().take(d) {
        let r = (c / &lead).abs();
        if r > max_ratio {
            max_ratio = r;
        }
    }
    let m = max_ratio + Rat::one();
    let seq = sturm_sequence(&p);
    let mut out = Vec::new();
    let mut stack = vec![(-m.clone(), m)];
    while let Some((lo, hi)) = stack.pop() {
        // Counting on (lo, hi]: lo is never a root of p here (Cauchy bound or
        // strict sign at a previous midpoint).
        let count = count_roots_between(&seq, &lo, &hi);
        if count == 0 {
            continue;
        }
        if count == 1 {
            if eval(&p, &hi).is_zero() {
                out.push(IsolatedRoot::Exact(hi));
            } else {
                out.push(IsolatedRoot::Interval(lo, hi));
            }
            continue;
        }
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        if eval(&p, &mid).is_zero() {
            // shrink around mid until it is the only root inside
            let mut eps = (&hi - &lo) / Rat::from_integer(4.into());
            loop {
                let l = &mid - &eps;
                let r = &mid + &eps;
                if !eval(&p, &l).is_zero()
                    && !eval(&p, &r).is_zero()
                    && count_roots_between(&seq, &l, &r) == 1
                {
                    out.push(IsolatedRoot::Exact(mid.clone()));
                    stack.push((lo, l));
                    stack.push((r, hi));
                    break;
                }
                eps /= Rat::from_integer(2.into());
            }
        } else {
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
    }
    out.sort_by(|a, b| {
        let key = |r: &IsolatedRoot| match r {
            IsolatedRoot::Exact(x) => x.clone(),
            IsolatedRoot::Interval(lo, _) => lo.clone(),
        };
        key(a).cmp(&key(b))
    });
    out
}
