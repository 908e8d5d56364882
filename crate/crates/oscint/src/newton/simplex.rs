//! Small dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `min cᵗx  s.t.  Ax = b, x >= 0`. Problem sizes here are a handful of
//! rows and at most a few dozen columns, so a full-tableau method is fine.

use crate::poly::Rat;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum LpResult {
    Optimal { x: Vec<Rat>, objective: Rat },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: usize,
    cols: usize,         // structural + artificial columns
    data: Vec<Vec<Rat>>, // rows x (cols + 1), last column is rhs
    cost: Vec<Rat>,      // reduced-cost row, length cols + 1 (rhs = -objective)
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.data[row][col].clone();
        for v in self.data[row].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..self.rows {
            if r == row || self.data[r][col].is_zero() {
                continue;
            }
            let factor = self.data[r][col].clone();
            for j in 0..=self.cols {
                let v = &self.data[r][j] - &factor * &self.data[row][j];
                self.data[r][j] = v;
            }
        }
        if !self.cost[col].is_zero() {
            let factor = self.cost[col].clone();
            for j in 0..=self.cols {
                let v = &self.cost[j] - &factor * &self.data[row][j];
                self.cost[j] = v;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule: entering = smallest column with negative reduced cost;
    /// leaving = ratio test, ties broken by smallest basis variable.
    fn run(&mut self, allowed_cols: usize) -> Result<(), ()> {
        loop {
            let entering = (0..allowed_cols).find(|&j| self.cost[j].is_negative());
            let entering = match entering {
                Some(j) => j,
                None => return Ok(()),
            };
            let mut leaving: Option<(usize, Rat)> = None;
            for r in 0..self.rows {
                if !self.data[r][entering].is_positive() {
                    continue;
                }
                let ratio = &self.data[r][self.cols] / &self.data[r][entering];
                match &leaving {
                    None => leaving = Some((r, ratio)),
                    Some((lr, lratio)) => {
                        if ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        {
                            leaving = Some((r, ratio));
                        }
                    }
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, entering),
                None => return Err(()), // unbounded
            }
        }
    }
}

/// Minimizes `cᵗx` subject to `Ax = b`, `x >= 0` (rows of `a` paired with `b`).
#[allow(clippy::needless_range_loop)]
pub fn solve_min(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpResult {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    // normalize rhs >= 0
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (ai, bi) in a.iter().zip(b) {
        assert_eq!(ai.len(), n);
        let mut row: Vec<Rat> = ai.clone();
        let mut rhs = bi.clone();
        if rhs.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            rhs = -rhs;
        }
        row.push(rhs);
        rows.push(row);
    }

    // phase 1: artificial columns n..n+m
    let cols = n + m;
    let mut data: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let mut full = vec![Rat::zero(); cols + 1];
        full[..n].clone_from_slice(&row[..n]);
        full[n + i] = Rat::from_integer(1.into());
        full[cols] = row[n].clone();
        data.push(full);
    }
    // reduced costs for min sum(artificials) with artificial basis
    let mut cost = vec![Rat::zero(); cols + 1];
    for j in 0..=cols {
        let mut s = Rat::zero();
        for row in data.iter() {
            s += &row[j];
        }
        // artificial columns keep reduced cost 0 in the canonical start
        if j < n || j == cols {
            cost[j] = -s;
        }
    }
    let mut t = Tableau {
        rows: m,
        cols,
        data,
        cost,
        basis: (n..n + m).collect(),
    };
    if t.run(n).is_err() {
        // phase 1 objective is bounded below by 0, so this cannot happen
        unreachable!("phase 1 unbounded");
    }
    let phase1_obj = -t.cost[cols].clone();
    if !phase1_obj.is_zero() {
        return LpResult::Infeasible;
    }
    // drive remaining artificials out of the basis when possible
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !t.data[r][j].is_zero()) {
                t.pivot(r, j);
            }
            // an all-zero row is a redundant constraint; its artificial stays
            // basic at value zero, which is harmless for the optimum
        }
    }

    // phase 2: rebuild reduced costs from the true objective
    let mut cost = vec![Rat::zero(); cols + 1];
    cost[..n].clone_from_slice(c);
    for r in 0..m {
        let bj = t.basis[r];
        let cb = if bj < n { c[bj].clone() } else { Rat::zero() };
        if cb.is_zero() {
            continue;
        }
        for j in 0..=cols {
            let v = &cost[j] - &cb * &t.data[r][j];
            cost[j] = v;
        }
    }
    t.cost = cost;
    if t.run(n).is_err() {
        return LpResult::Unbounded;
    }

    let mut x = vec![Rat::zero(); n];
    for r in 0..m {
        if t.basis[r] < n {
            x[t.basis[r]] = t.data[r][cols].clone();
        }
    }
    let objective = c
        .iter()
        .zip(&x)
        .fold(Rat::zero(), |acc, (ci, xi)| acc + ci * xi);
    LpResult::Optimal { x, objective }
}

/// Feasibility of `Ax = b, x >= 0` (phase 1 only).
pub fn feasible(a: &[Vec<Rat>], b: &[Rat]) -> bool {
    let n = a.first().map_or(0, |r| r.len());
    let c = vec![Rat::zero(); n];
    !matches!(solve_min(&c, a, b), LpResult::Infeasible)
}
