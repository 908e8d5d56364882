//! Minimal interval arithmetic with outward rounding, plus branch-and-bound
//! positivity certification for homogeneous polynomials off the origin.
//!
//! Directed rounding is approximated by widening every result one ulp each
//! way, which is sound (enclosures only grow).

use crate::poly::HomPoly;
use num_traits::ToPrimitive;

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn widen_down(v: f64) -> f64 {
    if v.is_finite() {
        v.next_down()
    } else {
        v
    }
}

fn widen_up(v: f64) -> f64 {
    if v.is_finite() {
        v.next_up()
    } else {
        v
    }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        Interval {
            lo: widen_down(v),
            hi: widen_up(v),
        }
    }

    pub fn exact(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    /// Enclosure of a rational coefficient.
    pub fn from_rat(r: &crate::poly::Rat) -> Self {
        Interval::point(r.to_f64().unwrap_or(f64::NAN))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: Interval) -> Interval {
        Interval {
            lo: widen_down(self.lo + o.lo),
            hi: widen_up(self.hi + o.hi),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: Interval) -> Interval {
        let cands = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for c in cands {
            lo = lo.min(c);
            hi = hi.max(c);
        }
        Interval {
            lo: widen_down(lo),
            hi: widen_up(hi),
        }
    }

    pub fn powi(self, e: u32) -> Interval {
        match e {
            0 => Interval::exact(1.0),
            _ => {
                // even powers of sign-spanning intervals clamp at zero
                let mut acc = self;
                for _ in 1..e {
                    acc = acc.mul(self);
                }
                if e.is_multiple_of(2) && self.lo < 0.0 && self.hi > 0.0 {
                    Interval {
                        lo: 0.0,
                        hi: acc.hi,
                    }
                } else if e.is_multiple_of(2) {
                    Interval {
                        lo: acc.lo.max(0.0),
                        hi: acc.hi,
                    }
                } else {
                    acc
                }
            }
        }
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }
}

/// Interval enclosure of a polynomial over a box (term-by-term monomial sum).
pub fn eval_poly(p: &HomPoly, cell: &[Interval]) -> Interval {
    let n_x = p.n_x();
    let mut acc = Interval::exact(0.0);
    for (idx, c) in p.terms() {
        let mut term = Interval::from_rat(c);
        for (i, &e) in idx.alpha.iter().enumerate() {
            if e > 0 {
                term = term.mul(cell[i].powi(e));
            }
        }
        for (j, &e) in idx.beta.iter().enumerate() {
            if e > 0 {
                term = term.mul(cell[n_x + j].powi(e));
            }
        }
        acc = acc.add(term);
    }
    acc
}

/// Outcome of the positivity certification.
#[derive(Clone, Debug)]
pub enum Certify {
    /// `p > 0` on the whole cube boundary, hence off the origin.
    Positive { lower_bound: f64 },
    /// A cell of width below the tolerance where positivity could not be
    /// established; `center` is a candidate near-zero.
    NearZero { center: Vec<f64>, upper: f64 },
    /// Cell budget exhausted before a conclusion; `candidate` is the center
    /// of the narrowest still-undecided cell, a natural refutation candidate.
    Exhausted {
        cells_used: usize,
        candidate: Option<Vec<f64>>,
    },
}

/// Shared branch-and-bound over the faces of the unit cube: `score` returns
/// a sound lower bound for the certified quantity on the cell, and the cell
/// is discarded once it is positive.
fn face_branch_and_bound(
    num_vars: usize,
    tol: f64,
    max_cells: usize,
    score: impl Fn(&[Interval]) -> (f64, f64),
) -> Certify {
    let mut stack: Vec<Vec<Interval>> = Vec::new();
    for axis in 0..num_vars {
        for sign in [-1.0, 1.0] {
            let cell: Vec<Interval> = (0..num_vars)
                .map(|k| {
                    if k == axis {
                        Interval::exact(sign)
                    } else {
                        Interval::new(-1.0, 1.0)
                    }
                })
                .collect();
            stack.push(cell);
        }
    }
    let mut cells = 0usize;
    let mut lower = f64::INFINITY;
    let mut narrowest: Option<(f64, Vec<f64>)> = None;
    while let Some(cell) = stack.pop() {
        cells += 1;
        if cells > max_cells {
            return Certify::Exhausted {
                cells_used: cells,
                candidate: narrowest.map(|(_, c)| c),
            };
        }
        let (lo, hi) = score(&cell);
        if lo > 0.0 {
            lower = lower.min(lo);
            continue;
        }
        let (axis, w) = cell
            .iter()
            .enumerate()
            .map(|(i, iv)| (i, iv.width()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if narrowest.as_ref().is_none_or(|(bw, _)| w < *bw) {
            let center: Vec<f64> = cell.iter().map(|iv| 0.5 * (iv.lo + iv.hi)).collect();
            narrowest = Some((w, center));
        }
        if w < tol {
            let center: Vec<f64> = cell.iter().map(|iv| 0.5 * (iv.lo + iv.hi)).collect();
            return Certify::NearZero { center, upper: hi };
        }
        let mid = 0.5 * (cell[axis].lo + cell[axis].hi);
        let mut left = cell.clone();
        left[axis] = Interval::new(cell[axis].lo, mid);
        let mut right = cell;
        right[axis] = Interval::new(mid, right[axis].hi);
        stack.push(left);
        stack.push(right);
    }
    Certify::Positive { lower_bound: lower }
}

/// Proof that at every boundary point some entry is nonzero: a cell is
/// certified as soon as one entry's enclosure excludes zero (no cancellation
/// between entries, unlike certifying the expanded sum of squares).
pub fn certify_some_entry_nonzero(entries: &[HomPoly], tol: f64, max_cells: usize) -> Certify {
    let num_vars = entries[0].n_x() + entries[0].n_z();
    face_branch_and_bound(num_vars, tol, max_cells, |cell| {
        let mut best_margin = f64::NEG_INFINITY;
        let mut max_abs_hi = 0.0f64;
        for e in entries {
            let iv = eval_poly(e, cell);
            // distance of the enclosure from zero; positive iff 0 is excluded
            let margin = if iv.lo > 0.0 {
                iv.lo
            } else if iv.hi < 0.0 {
                -iv.hi
            } else {
                f64::NEG_INFINITY
            };
            best_margin = best_margin.max(margin);
            max_abs_hi = max_abs_hi.max(iv.lo.abs().max(iv.hi.abs()));
        }
        (best_margin, max_abs_hi)
    })
}

/// Proof that an `n_x × n_z` matrix of polynomials has full column rank at
/// every boundary point, via an interval enclosure of the Gram determinant
/// built from per-entry enclosures (much tighter than the expanded
/// determinant polynomial).
pub fn certify_full_column_rank(
    entries: &[HomPoly],
    n_x: usize,
    n_z: usize,
    tol: f64,
    max_cells: usize,
) -> Certify {
    let num_vars = entries[0].n_x() + entries[0].n_z();
    face_branch_and_bound(num_vars, tol, max_cells, |cell| {
        let enc: Vec<Interval> = entries.iter().map(|e| eval_poly(e, cell)).collect();
        let mut gram = vec![Interval::exact(0.0); n_z * n_z];
        for a in 0..n_z {
            for b in a..n_z {
                let mut acc = Interval::exact(0.0);
                for k in 0..n_x {
                    let prod = if a == b {
                        enc[k * n_z + a].powi(2)
                    } else {
                        enc[k * n_z + a].mul(enc[k * n_z + b])
                    };
                    acc = acc.add(prod);
                }
                gram[a * n_z + b] = acc;
                gram[b * n_z + a] = acc;
            }
        }
        let det = interval_det(&gram, n_z);
        (det.lo, det.hi)
    })
}

fn interval_det(m: &[Interval], n: usize) -> Interval {
    if n == 1 {
        return m[0];
    }
    let mut acc = Interval::exact(0.0);
    for j in 0..n {
        let minor: Vec<Interval> = (1..n)
            .flat_map(|r| (0..n).filter(|&c| c != j).map(move |c| (r, c)))
            .map(|(r, c)| m[r * n + c])
            .collect();
        let mut cof = m[j].mul(interval_det(&minor, n - 1));
        if j % 2 == 1 {
            cof = Interval::new(-cof.hi, -cof.lo);
        }
        acc = acc.add(cof);
    }
    acc
}

/// Branch-and-bound proof that a homogeneous polynomial is positive off the
/// origin, by certifying positivity on all faces of the unit cube.
pub fn certify_positive_off_origin(p: &HomPoly, tol: f64, max_cells: usize) -> Certify {
    let n = p.n_x() + p.n_z();
    face_branch_and_bound(n, tol, max_cells, |cell| {
        let enc = eval_poly(p, cell);
        (enc.lo, enc.hi)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_hompoly;

    #[test]
    fn interval_mul_signs() {
        let a = Interval::new(-2.0, 3.0);
        let b = Interval::new(-1.0, 4.0);
        let c = a.mul(b);
        assert!(c.lo <= -8.0 && c.hi >= 12.0);
    }

    #[test]
    fn even_powers_nonnegative() {
        let a = Interval::new(-2.0, 1.0);
        let sq = a.powi(2);
        assert!(sq.lo >= 0.0 && sq.hi >= 4.0);
    }

    #[test]
    fn certifies_sum_of_squares() {
        // x^2 + z^2 > 0 off the origin
        let p = parse_hompoly("x1^2 + z1^2", 1, 1).unwrap();
        match certify_positive_off_origin(&p, 1e-6, 100_000) {
            Certify::Positive { lower_bound } => assert!(lower_bound > 0.9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_zero_of_indefinite_form() {
        // x^2 - z^2 vanishes on the diagonal of every face
        let p = parse_hompoly("x1^2 - z1^2", 1, 1).unwrap();
        match certify_positive_off_origin(&p, 1e-4, 100_000) {
            Certify::NearZero { center, .. } => {
                let v = center[0].abs() - center[1].abs();
                assert!(
                    v.abs() < 1e-2,
                    "near-zero cell should straddle the cone, got {center:?}"
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn certifies_quartic_gram_style_polynomial() {
        // x1^4 + z1^4 + (x2^2 + z2^2)^2 expanded
        let p = parse_hompoly("x1^4 + z1^4 + x2^4 + 2*x2^2*z2^2 + z2^4", 2, 2).unwrap();
        match certify_positive_off_origin(&p, 1e-6, 200_000) {
            Certify::Positive { .. } => {}
            other => panic!("{other:?}"),
        }
    }
}
