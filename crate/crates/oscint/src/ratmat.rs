//! Small dense matrices over exact rationals.
//!
//! Used for quadratic-form blocks, linear changes of variables and exact rank
//! computations; sizes never exceed a handful, so everything is plain Gaussian
//! elimination.

use crate::poly::Rat;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: ({0},{1}) vs ({2},{3})")]
    Shape(usize, usize, usize, usize),
}

/// Dense rational matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows_in: Vec<Vec<Rat>>) -> Self {
        let rows = rows_in.len();
        let cols = if rows == 0 { 0 } else { rows_in[0].len() };
        let mut data = Vec::with_capacity(rows * cols);
        for r in rows_in {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        RatMat { rows, cols, data }
    }

    /// Convenience constructor from integer entries.
    pub fn from_i64(rows_in: &[&[i64]]) -> Self {
        Self::from_rows(
            rows_in
                .iter()
                .map(|r| r.iter().map(|&v| Rat::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &RatMat) -> Result<RatMat, MatError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatError::Shape(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RatMat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &RatMat) -> Result<RatMat, MatError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatError::Shape(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(RatMat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &RatMat) -> Result<RatMat, MatError> {
        if self.cols != other.rows {
            return Err(MatError::Shape(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    /// Exact determinant by Gaussian elimination with column pivoting.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.data.clone();
        let at = |m: &Vec<Rat>, i: usize, j: usize| m[i * n + j].clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !at(&m, r, col).is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return Rat::zero(),
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = at(&m, col, col);
            det *= &p;
            for r in (col + 1)..n {
                let factor = at(&m, r, col) / &p;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = at(&m, r, j) - &factor * at(&m, col, j);
                    m[r * n + j] = v;
                }
            }
        }
        det
    }

    /// Exact inverse; errors on singular input.
    pub fn inverse(&self) -> Result<RatMat, MatError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RatMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !aug.get(r, col).is_zero())
                .ok_or(MatError::Singular)?;
            if pivot != col {
                for j in 0..2 * n {
                    let tmp = aug.get(col, j).clone();
                    aug.set(col, j, aug.get(pivot, j).clone());
                    aug.set(pivot, j, tmp);
                }
            }
            let p = aug.get(col, col).clone();
            for j in 0..2 * n {
                aug.set(col, j, aug.get(col, j) / &p);
            }
            for r in 0..n {
                if r == col || aug.get(r, col).is_zero() {
                    continue;
                }
                let factor = aug.get(r, col).clone();
                for j in 0..2 * n {
                    let v = aug.get(r, j) - &factor * aug.get(col, j);
                    aug.set(r, j, v);
                }
            }
        }
        let mut inv = RatMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Exact rank by row reduction.
    #[allow(clippy::needless_range_loop)]
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let pivot = (rank..self.rows).find(|&r| !m[r][col].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            m.swap(rank, pivot);
            let p = m[rank][col].clone();
            for r in (rank + 1)..self.rows {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] / &p;
                for j in col..self.cols {
                    let v = &m[r][j] - &factor * &m[rank][j];
                    m[r][j] = v;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// A nonzero rational kernel vector, if the matrix has nontrivial kernel.
    #[allow(clippy::needless_range_loop)]
    pub fn kernel_vector(&self) -> Option<Vec<Rat>> {
        let mut m: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let n = self.cols;
        let mut pivot_col_of_row = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let pivot = (row..self.rows).find(|&r| !m[r][col].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            m.swap(row, pivot);
            let p = m[row][col].clone();
            for j in col..n {
                m[row][j] = &m[row][j] / &p;
            }
            for r in 0..self.rows {
                if r == row || m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].clone();
                for j in col..n {
                    let v = &m[r][j] - &factor * &m[row][j];
                    m[r][j] = v;
                }
            }
            pivot_col_of_row.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        let pivot_cols: std::collections::BTreeSet<usize> =
            pivot_col_of_row.iter().copied().collect();
        let free_col = (0..n).find(|c| !pivot_cols.contains(c))?;
        let mut v = vec![Rat::zero(); n];
        v[free_col] = Rat::one();
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = -m[r][free_col].clone();
        }
        Some(v)
    }

    /// Sign pattern of a symmetric matrix: (#positive, #negative, #zero eigenvalues),
    /// computed exactly from Descartes sign changes of the characteristic polynomial
    /// (valid because all roots are real).
    pub fn symmetric_signature(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric());
        let n = self.rows;
        let charpoly = self.char_poly();
        // charpoly[k] is the coefficient of t^k, k = 0..=n
        let zero_mult = charpoly.iter().take_while(|c| c.is_zero()).count();
        let pos = descartes_sign_changes(&charpoly);
        (pos, n - zero_mult - pos, zero_mult)
    }

    /// True when the symmetric matrix is definite (positive or negative).
    pub fn is_definite(&self) -> bool {
        let (pos, neg, zero) = self.symmetric_signature();
        zero == 0 && (pos == 0 || neg == 0)
    }

    /// Characteristic polynomial coefficients `[c0, ..., cn]` of `det(tI - M)`
    /// via the Faddeev-LeVerrier recurrence, exact over the rationals.
    pub fn char_poly(&self) -> Vec<Rat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = RatMat::zeros(n, n);
        for k in 1..=n {
            // M_k = A*(M_{k-1} + c_{n-k+1} I); c_{n-k} = -tr(M_k)/k
            let mut shifted = m;
            let ck = coeffs[n - k + 1].clone();
            for i in 0..n {
                let v = shifted.get(i, i) + &ck;
                shifted.set(i, i, v);
            }
            m = self.mul(&shifted).unwrap();
            let trace: Rat = (0..n)
                .map(|i| m.get(i, i).clone())
                .fold(Rat::zero(), |a, b| a + b);
            coeffs[n - k] = -trace / Rat::from_integer((k as i64).into());
        }
        coeffs
    }
}

/// Descartes sign changes in `c0..=cn`, skipping zeros. For a polynomial with
/// all real roots this equals the number of positive roots with multiplicity.
fn descartes_sign_changes(coeffs: &[Rat]) -> usize {
    let signs: Vec<i8> = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| if c.is_positive() { 1 } else { -1 })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Random invertible rational matrix with entries `k/scale`, `k ∈ [-scale, scale]`,
/// regenerated until `|det| > min_det`.
pub fn random_invertible<R: rand::Rng>(n: usize, scale: i64, min_det: f64, rng: &mut R) -> RatMat {
    use num_traits::ToPrimitive;
    loop {
        let m = RatMat::from_rows(
            (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| Rat::new(rng.gen_range(-scale..=scale).into(), scale.into()))
                        .collect()
                })
                .collect(),
        );
        let d = m.det();
        if d.abs().to_f64().unwrap_or(0.0) > min_det {
            return m;
        }
    }
}

/// All permutation matrices of size `n` (n! of them; callers keep n small).
pub fn permutation_matrices(n: usize) -> Vec<RatMat> {
    fn perms(items: Vec<usize>) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.clone();
            let head = rest.remove(i);
            for mut tail in perms(rest) {
                tail.insert(0, head);
                out.push(tail);
            }
        }
        out
    }
    perms((0..n).collect())
        .into_iter()
        .map(|p| {
            let mut m = RatMat::zeros(n, n);
            for (i, &pi) in p.iter().enumerate() {
                m.set(i, pi, Rat::one());
            }
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = RatMat::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det(), Rat::one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMat::identity(2));
    }

    #[test]
    fn singular_inverse_fails() {
        let m = RatMat::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.det(), Rat::zero());
        assert_eq!(m.inverse(), Err(MatError::Singular));
        assert_eq!(m.rank(), 1);
        let k = m.kernel_vector().unwrap();
        // m k = 0
        for i in 0..2 {
            let dot = m.get(i, 0) * &k[0] + m.get(i, 1) * &k[1];
            assert!(num_traits::Zero::is_zero(&dot));
        }
    }

    #[test]
    fn char_poly_of_diag() {
        let m = RatMat::from_i64(&[&[2, 0], &[0, -3]]);
        // det(tI - M) = (t-2)(t+3) = t^2 + t - 6
        let cp = m.char_poly();
        assert_eq!(
            cp,
            vec![Rat::from_integer((-6).into()), Rat::one(), Rat::one()]
        );
        assert_eq!(m.symmetric_signature(), (1, 1, 0));
    }

    #[test]
    fn signature_of_definite_and_indefinite() {
        assert!(RatMat::from_i64(&[&[2, 1], &[1, 2]]).is_definite());
        assert!(RatMat::from_i64(&[&[-2, 1], &[1, -2]]).is_definite());
        assert!(!RatMat::from_i64(&[&[0, 1], &[1, 0]]).is_definite());
        let m = RatMat::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.symmetric_signature(), (1, 0, 1));
        assert!(!m.is_definite());
    }

    #[test]
    fn permutations_count() {
        assert_eq!(permutation_matrices(3).len(), 6);
    }
}
