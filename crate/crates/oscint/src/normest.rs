//! Numerical estimation of `‖T_λ‖`: midpoint-rule discretization of the
//! oscillatory kernel, matrix-free power iteration on `T*T` for the largest
//! singular value, λ-sweeps with log–log slope fits, and the scaled-bump
//! lower-bound witness.
//!
//! The discrete matrix is `K[i,j] = e^{iλS(x_i,z_j)} a(x_i,z_j) √(w_x w_z)`
//! over tensor-product midpoint grids, so its singular values approximate the
//! continuum `L² → L²` ones. Kernel entries are cached in complex f64 for
//! small grids and complex f32 for large ones (accumulation always in f64),
//! and generated on the fly beyond that. Applications parallelize over output
//! rows with sequential inner sums, so results are reproducible regardless of
//! the thread schedule.

use crate::poly::PhasePoly;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NormError {
    #[error("grid must have at least {min} points per axis, got {got}")]
    GridTooSmall { min: usize, got: usize },
    #[error("amplitude has {got} axes, phase needs {expected}")]
    AmplitudeMismatch { expected: usize, got: usize },
    #[error("sweep needs at least 4 increasing lambda values")]
    BadLambdaList,
    #[error("lambda must be nonnegative and finite")]
    BadLambda,
    #[error("witness base point must lie inside the amplitude support")]
    WitnessOutsideSupport,
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}

/// Bump profile per axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BumpKind {
    /// `exp(1 - 1/(1-t²))` rescaled to the box; vanishes on the boundary.
    SmoothCompact,
    /// Indicator of the box.
    ConstantOnBox,
}

/// Product amplitude over all `n_x + n_z` axes.
#[derive(Clone, Debug)]
pub struct AmplitudeSpec {
    boxes: Vec<(f64, f64)>,
    kind: BumpKind,
}

impl AmplitudeSpec {
    pub fn new(boxes: Vec<(f64, f64)>, kind: BumpKind) -> Self {
        for &(lo, hi) in &boxes {
            assert!(lo < hi, "box must be nonempty");
        }
        AmplitudeSpec { boxes, kind }
    }

    /// Smooth bump on `[-1,1]` per axis.
    pub fn standard(num_axes: usize) -> Self {
        AmplitudeSpec::new(vec![(-1.0, 1.0); num_axes], BumpKind::SmoothCompact)
    }

    pub fn num_axes(&self) -> usize {
        self.boxes.len()
    }

    pub fn boxes(&self) -> &[(f64, f64)] {
        &self.boxes
    }

    /// Per-axis factor; in `[0, 1]`, zero outside the open box.
    pub fn axis_value(&self, axis: usize, t: f64) -> f64 {
        let (lo, hi) = self.boxes[axis];
        let s = (2.0 * t - lo - hi) / (hi - lo);
        if s.abs() >= 1.0 {
            return 0.0;
        }
        match self.kind {
            BumpKind::ConstantOnBox => 1.0,
            BumpKind::SmoothCompact => (1.0 - 1.0 / (1.0 - s * s)).exp(),
        }
    }

    pub fn value(&self, point: &[f64]) -> f64 {
        point
            .iter()
            .enumerate()
            .map(|(i, &t)| self.axis_value(i, t))
            .product()
    }
}

/// Coefficient-norm bound on `|∂S/∂(axis)|` over the amplitude box:
/// `Σ |c| · e_axis · Π bound_a^{e_a - [a = axis]}`.
fn gradient_bound(s: &PhasePoly, amp: &AmplitudeSpec, axis: usize) -> f64 {
    let n_x = s.n_x();
    let mut total = 0.0;
    for (idx, c) in s.poly().terms() {
        let exps = idx.point();
        let e_axis = exps[axis];
        if e_axis == 0 {
            continue;
        }
        let mut m = c.abs().to_f64().unwrap_or(f64::NAN) * e_axis as f64;
        for (a, &e) in exps.iter().enumerate() {
            let bound = {
                let (lo, hi) = amp.boxes[a];
                lo.abs().max(hi.abs())
            };
            let e_eff = if a == axis { e - 1 } else { e };
            m *= bound.powi(e_eff as i32);
        }
        total += m;
    }
    let _ = n_x;
    total
}

/// Per-axis grid sizes demanded by the oscillation rule
/// `n >= (10/2π) · λ · L · G` (ten points per phase wavelength).
pub fn oscillation_required_n(s: &PhasePoly, amp: &AmplitudeSpec, lambda: f64) -> Vec<usize> {
    (0..amp.num_axes())
        .map(|axis| {
            let (lo, hi) = amp.boxes[axis];
            let g = gradient_bound(s, amp, axis);
            let n = (10.0 / (2.0 * std::f64::consts::PI)) * lambda * (hi - lo) * g;
            n.ceil().max(1.0) as usize
        })
        .collect()
}

/// Grid-resolution policy for sweeps.
#[derive(Clone, Copy, Debug)]
pub enum GridPolicy {
    Fixed(usize),
    /// Oscillation rule, clamped to `[8, cap]`; rows needing more than `cap`
    /// are flagged unresolved.
    Auto {
        cap: usize,
    },
}

impl GridPolicy {
    /// Chosen points-per-axis and whether the rule is met.
    pub fn choose(&self, s: &PhasePoly, amp: &AmplitudeSpec, lambda: f64) -> (usize, bool) {
        let required = oscillation_required_n(s, amp, lambda);
        let need = required.iter().copied().max().unwrap_or(1).max(8);
        match *self {
            GridPolicy::Fixed(n) => (n, n >= need),
            GridPolicy::Auto { cap } => (need.min(cap), need <= cap),
        }
    }
}

const F64_CACHE_MAX_ENTRIES: usize = 4_000_000;
const F32_CACHE_MAX_ENTRIES: usize = 220_000_000;

enum KernelCache {
    F64(Vec<Complex64>),
    F32(Vec<[f32; 2]>),
    OnTheFly,
}

/// Midpoint-rule discretization of `T_λ` with matrix-free applies.
pub struct DiscretizedOperator {
    lambda: f64,
    n_per_axis: usize,
    x_size: usize,
    z_size: usize,
    /// amplitude times sqrt-weight factors, per flattened grid point
    ax: Vec<f64>,
    az: Vec<f64>,
    sqrt_weight: f64,
    /// monomial tables: phase(x, z) = Σ coef · xa[a][ix] · zb[b][iz]
    xa: Vec<Vec<f64>>,
    zb: Vec<Vec<f64>>,
    coef_by_beta: Vec<Vec<(usize, f64)>>, // per beta pattern: (alpha idx, c)
    coef_by_alpha: Vec<Vec<(usize, f64)>>, // per alpha pattern: (beta idx, c)
    cache: KernelCache,
}

fn axis_midpoints(amp: &AmplitudeSpec, axis: usize, n: usize) -> Vec<f64> {
    let (lo, hi) = amp.boxes[axis];
    let h = (hi - lo) / n as f64;
    (0..n).map(|k| lo + (k as f64 + 0.5) * h).collect()
}

/// Flattened tensor grid over the given axes: returns per-point coordinates.
fn tensor_points(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for base in &out {
            for &t in axis {
                let mut p = base.clone();
                p.push(t);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

impl DiscretizedOperator {
    pub fn new(
        s: &PhasePoly,
        lambda: f64,
        amp: &AmplitudeSpec,
        n_per_axis: usize,
    ) -> Result<Self, NormError> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(NormError::BadLambda);
        }
        if n_per_axis < 8 {
            return Err(NormError::GridTooSmall {
                min: 8,
                got: n_per_axis,
            });
        }
        let x_axes = s.n_x();
        let z_axes = s.n_z();
        if amp.num_axes() != x_axes + z_axes {
            return Err(NormError::AmplitudeMismatch {
                expected: x_axes + z_axes,
                got: amp.num_axes(),
            });
        }
        let x_grid: Vec<Vec<f64>> = (0..x_axes)
            .map(|a| axis_midpoints(amp, a, n_per_axis))
            .collect();
        let z_grid: Vec<Vec<f64>> = (0..z_axes)
            .map(|a| axis_midpoints(amp, x_axes + a, n_per_axis))
            .collect();
        let x_points = tensor_points(&x_grid);
        let z_points = tensor_points(&z_grid);
        let x_size = x_points.len();
        let z_size = z_points.len();

        let cell = |axis: usize| {
            let (lo, hi) = amp.boxes[axis];
            (hi - lo) / n_per_axis as f64
        };
        let wx: f64 = (0..x_axes).map(cell).product();
        let wz: f64 = (x_axes..x_axes + z_axes).map(cell).product();
        let sqrt_weight = (wx * wz).sqrt();

        let ax: Vec<f64> = x_points
            .iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .map(|(a, &t)| amp.axis_value(a, t))
                    .product()
            })
            .collect();
        let az: Vec<f64> = z_points
            .iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .map(|(a, &t)| amp.axis_value(x_axes + a, t))
                    .product()
            })
            .collect();

        // distinct monomial patterns and their value tables
        let mut alpha_patterns: Vec<Vec<u32>> = Vec::new();
        let mut beta_patterns: Vec<Vec<u32>> = Vec::new();
        let mut coef = Vec::new();
        for (idx, c) in s.poly().terms() {
            let a_pos = match alpha_patterns.iter().position(|p| *p == idx.alpha) {
                Some(p) => p,
                None => {
                    alpha_patterns.push(idx.alpha.clone());
                    alpha_patterns.len() - 1
                }
            };
            let b_pos = match beta_patterns.iter().position(|p| *p == idx.beta) {
                Some(p) => p,
                None => {
                    beta_patterns.push(idx.beta.clone());
                    beta_patterns.len() - 1
                }
            };
            coef.push((a_pos, b_pos, c.to_f64().unwrap_or(f64::NAN)));
        }
        let monomial = |pattern: &[u32], point: &[f64]| -> f64 {
            pattern
                .iter()
                .zip(point)
                .map(|(&e, &t)| if e == 0 { 1.0 } else { t.powi(e as i32) })
                .product()
        };
        let xa: Vec<Vec<f64>> = alpha_patterns
            .iter()
            .map(|p| x_points.iter().map(|pt| monomial(p, pt)).collect())
            .collect();
        let zb: Vec<Vec<f64>> = beta_patterns
            .iter()
            .map(|p| z_points.iter().map(|pt| monomial(p, pt)).collect())
            .collect();
        let mut coef_by_beta = vec![Vec::new(); beta_patterns.len()];
        let mut coef_by_alpha = vec![Vec::new(); alpha_patterns.len()];
        for &(a, b, c) in &coef {
            coef_by_beta[b].push((a, c));
            coef_by_alpha[a].push((b, c));
        }

        let mut op = DiscretizedOperator {
            lambda,
            n_per_axis,
            x_size,
            z_size,
            ax,
            az,
            sqrt_weight,
            xa,
            zb,
            coef_by_beta,
            coef_by_alpha,
            cache: KernelCache::OnTheFly,
        };
        let entries = x_size.saturating_mul(z_size);
        op.cache = if entries <= F64_CACHE_MAX_ENTRIES {
            KernelCache::F64(op.build_cache_f64())
        } else if entries <= F32_CACHE_MAX_ENTRIES {
            KernelCache::F32(op.build_cache_f32())
        } else {
            KernelCache::OnTheFly
        };
        Ok(op)
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn z_size(&self) -> usize {
        self.z_size
    }

    pub fn n_per_axis(&self) -> usize {
        self.n_per_axis
    }

    /// Phase values `S(x_ix, z_j)` for all `j`, into `buf`.
    fn row_phases(&self, ix: usize, buf: &mut [f64]) {
        let mut g = vec![0.0f64; self.zb.len()];
        for (b, list) in self.coef_by_beta.iter().enumerate() {
            let mut acc = 0.0;
            for &(a, c) in list {
                acc += c * self.xa[a][ix];
            }
            g[b] = acc;
        }
        buf.fill(0.0);
        for (b, &gb) in g.iter().enumerate() {
            if gb != 0.0 {
                for (dst, zv) in buf.iter_mut().zip(&self.zb[b]) {
                    *dst += gb * zv;
                }
            }
        }
    }

    /// Phase values `S(x_i, z_iz)` for all `i`, into `buf`.
    fn col_phases(&self, iz: usize, buf: &mut [f64]) {
        let mut f = vec![0.0f64; self.xa.len()];
        for (a, list) in self.coef_by_alpha.iter().enumerate() {
            let mut acc = 0.0;
            for &(b, c) in list {
                acc += c * self.zb[b][iz];
            }
            f[a] = acc;
        }
        buf.fill(0.0);
        for (a, &fa) in f.iter().enumerate() {
            if fa != 0.0 {
                for (dst, xv) in buf.iter_mut().zip(&self.xa[a]) {
                    *dst += fa * xv;
                }
            }
        }
    }

    fn build_cache_f64(&self) -> Vec<Complex64> {
        let nz = self.z_size;
        let mut out = vec![Complex64::zero(); self.x_size * nz];
        out.par_chunks_mut(nz).enumerate().for_each(|(ix, row)| {
            let mut phases = vec![0.0f64; nz];
            self.row_phases(ix, &mut phases);
            let axw = self.ax[ix] * self.sqrt_weight;
            for j in 0..nz {
                let (s, c) = (self.lambda * phases[j]).sin_cos();
                let amp = axw * self.az[j];
                row[j] = Complex64::new(amp * c, amp * s);
            }
        });
        out
    }

    fn build_cache_f32(&self) -> Vec<[f32; 2]> {
        let nz = self.z_size;
        let mut out = vec![[0.0f32; 2]; self.x_size * nz];
        out.par_chunks_mut(nz).enumerate().for_each(|(ix, row)| {
            let mut phases = vec![0.0f64; nz];
            self.row_phases(ix, &mut phases);
            let axw = self.ax[ix] * self.sqrt_weight;
            for j in 0..nz {
                let (s, c) = (self.lambda * phases[j]).sin_cos();
                let amp = axw * self.az[j];
                row[j] = [(amp * c) as f32, (amp * s) as f32];
            }
        });
        out
    }

    /// `w = K v` (x-indexed output); deterministic row-parallel evaluation.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.z_size);
        match &self.cache {
            KernelCache::F64(k) => (0..self.x_size)
                .into_par_iter()
                .map(|ix| {
                    let row = &k[ix * self.z_size..(ix + 1) * self.z_size];
                    dot_f64(row, v)
                })
                .collect(),
            KernelCache::F32(k) => (0..self.x_size)
                .into_par_iter()
                .map(|ix| {
                    let row = &k[ix * self.z_size..(ix + 1) * self.z_size];
                    dot_f32(row, v, false)
                })
                .collect(),
            KernelCache::OnTheFly => (0..self.x_size)
                .into_par_iter()
                .map_init(
                    || vec![0.0f64; self.z_size],
                    |phases, ix| {
                        self.row_phases(ix, phases);
                        let axw = self.ax[ix] * self.sqrt_weight;
                        let mut acc = Complex64::zero();
                        for j in 0..self.z_size {
                            let (s, c) = (self.lambda * phases[j]).sin_cos();
                            let amp = axw * self.az[j];
                            acc += Complex64::new(amp * c, amp * s) * v[j];
                        }
                        acc
                    },
                )
                .collect(),
        }
    }

    /// `u = K* w` (z-indexed output).
    pub fn apply_adjoint(&self, w: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(w.len(), self.x_size);
        match &self.cache {
            // adjoint via one strided pass per output; the column stride is the
            // z-size, so gather four rows per step for instruction parallelism
            KernelCache::F64(k) => (0..self.z_size)
                .into_par_iter()
                .map(|iz| {
                    let mut acc = [Complex64::zero(); 4];
                    let chunks = w.chunks_exact(4);
                    let tail = chunks.remainder();
                    for (ci, chunk) in chunks.enumerate() {
                        for (lane, wi) in chunk.iter().enumerate() {
                            let ix = ci * 4 + lane;
                            acc[lane] += k[ix * self.z_size + iz].conj() * wi;
                        }
                    }
                    let base = w.len() - tail.len();
                    for (t, wi) in tail.iter().enumerate() {
                        acc[t] += k[(base + t) * self.z_size + iz].conj() * wi;
                    }
                    (acc[0] + acc[1]) + (acc[2] + acc[3])
                })
                .collect(),
            KernelCache::F32(k) => (0..self.z_size)
                .into_par_iter()
                .map(|iz| {
                    let mut re = [0.0f64; 4];
                    let mut im = [0.0f64; 4];
                    let chunks = w.chunks_exact(4);
                    let tail = chunks.remainder();
                    for (ci, chunk) in chunks.enumerate() {
                        for (lane, wi) in chunk.iter().enumerate() {
                            let e = &k[(ci * 4 + lane) * self.z_size + iz];
                            let (kr, ki) = (e[0] as f64, -(e[1] as f64));
                            re[lane] += kr * wi.re - ki * wi.im;
                            im[lane] += kr * wi.im + ki * wi.re;
                        }
                    }
                    let base = w.len() - tail.len();
                    for (t, wi) in tail.iter().enumerate() {
                        let e = &k[(base + t) * self.z_size + iz];
                        let (kr, ki) = (e[0] as f64, -(e[1] as f64));
                        re[t] += kr * wi.re - ki * wi.im;
                        im[t] += kr * wi.im + ki * wi.re;
                    }
                    Complex64::new(
                        (re[0] + re[1]) + (re[2] + re[3]),
                        (im[0] + im[1]) + (im[2] + im[3]),
                    )
                })
                .collect(),
            KernelCache::OnTheFly => (0..self.z_size)
                .into_par_iter()
                .map_init(
                    || vec![0.0f64; self.x_size],
                    |phases, iz| {
                        self.col_phases(iz, phases);
                        let azw = self.az[iz] * self.sqrt_weight;
                        let mut acc = Complex64::zero();
                        for i in 0..self.x_size {
                            let (s, c) = (self.lambda * phases[i]).sin_cos();
                            let amp = azw * self.ax[i];
                            acc += Complex64::new(amp * c, -amp * s) * w[i];
                        }
                        acc
                    },
                )
                .collect(),
        }
    }
}

/// Four-lane complex dot product with a fixed summation tree, so results are
/// bitwise reproducible while still allowing instruction-level parallelism.
fn dot_f64(row: &[Complex64], v: &[Complex64]) -> Complex64 {
    let mut acc = [Complex64::zero(); 4];
    let chunks = row.chunks_exact(4).zip(v.chunks_exact(4));
    for (rc, vc) in chunks {
        for lane in 0..4 {
            acc[lane] += rc[lane] * vc[lane];
        }
    }
    let done = row.len() - row.len() % 4;
    for (t, (kij, vj)) in row[done..].iter().zip(&v[done..]).enumerate() {
        acc[t] += kij * vj;
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3])
}

fn dot_f32(row: &[[f32; 2]], v: &[Complex64], conj: bool) -> Complex64 {
    let sign = if conj { -1.0 } else { 1.0 };
    let mut re = [0.0f64; 4];
    let mut im = [0.0f64; 4];
    for (rc, vc) in row.chunks_exact(4).zip(v.chunks_exact(4)) {
        for lane in 0..4 {
            let (kr, ki) = (rc[lane][0] as f64, sign * rc[lane][1] as f64);
            let vj = vc[lane];
            re[lane] += kr * vj.re - ki * vj.im;
            im[lane] += kr * vj.im + ki * vj.re;
        }
    }
    let done = row.len() - row.len() % 4;
    for (t, (kij, vj)) in row[done..].iter().zip(&v[done..]).enumerate() {
        let (kr, ki) = (kij[0] as f64, sign * kij[1] as f64);
        re[t] += kr * vj.re - ki * vj.im;
        im[t] += kr * vj.im + ki * vj.re;
    }
    Complex64::new(
        (re[0] + re[1]) + (re[2] + re[3]),
        (im[0] + im[1]) + (im[2] + im[3]),
    )
}

fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Starting vector for the power iteration.
pub enum StartVector {
    Seeded(u64),
    Warm(Vec<Complex64>),
}

/// Result of one norm estimation.
#[derive(Clone, Debug)]
pub struct NormEstimate {
    /// Largest singular value of the discretized kernel.
    pub norm: f64,
    /// Power-iteration steps taken (each is one `K`/`K*` pair).
    pub iterations: usize,
    /// Final relative change of the estimate.
    pub residual: f64,
    pub converged: bool,
    pub grid_n: usize,
    /// Oscillation-rule demand per axis.
    pub required_n: Vec<usize>,
    pub resolved: bool,
}

/// Power iteration on `K*K` from the given start; the returned value is the
/// Rayleigh quotient `‖Kv‖/‖v‖` of the final iterate, which is non-decreasing
/// across iterations.
pub fn power_iteration(
    op: &DiscretizedOperator,
    tol: f64,
    max_iter: usize,
    start: StartVector,
) -> (f64, usize, f64, bool) {
    let mut v: Vec<Complex64> = match start {
        StartVector::Warm(v0) if l2_norm(&v0) > 0.0 => v0,
        StartVector::Warm(_) | StartVector::Seeded(_) => {
            let seed = match start {
                StartVector::Seeded(s) => s,
                _ => 0,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let normal = StandardNormal;
            (0..op.z_size())
                .map(|_| Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng)))
                .collect()
        }
    };
    let n0 = l2_norm(&v);
    if n0 == 0.0 {
        return (0.0, 0, 0.0, true);
    }
    for c in v.iter_mut() {
        *c /= n0;
    }
    let mut sigma_prev = -1.0f64;
    let mut sigma = 0.0f64;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    for it in 1..=max_iter {
        iterations = it;
        let w = op.apply(&v);
        sigma = l2_norm(&w); // ||v|| = 1, so this is the Rayleigh quotient
        if sigma == 0.0 {
            return (0.0, it, 0.0, true);
        }
        let u = op.apply_adjoint(&w);
        let un = l2_norm(&u);
        if un == 0.0 {
            return (sigma, it, 0.0, true);
        }
        v = u;
        for c in v.iter_mut() {
            *c /= un;
        }
        if sigma_prev > 0.0 {
            residual = (sigma - sigma_prev).abs() / sigma.max(f64::MIN_POSITIVE);
            if residual < tol {
                return (sigma, it, residual, true);
            }
        }
        sigma_prev = sigma;
    }
    (sigma, iterations, residual, false)
}

/// Estimates `‖T_λ‖` on an `n`-per-axis midpoint grid.
pub fn estimate_norm(
    s: &PhasePoly,
    lambda: f64,
    amp: &AmplitudeSpec,
    n: usize,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> Result<NormEstimate, NormError> {
    estimate_norm_with_start(s, lambda, amp, n, tol, max_iter, StartVector::Seeded(seed))
}

/// As `estimate_norm`, but with an arbitrary starting vector; warm starts make
/// the returned value provably at least the start's Rayleigh quotient.
pub fn estimate_norm_with_start(
    s: &PhasePoly,
    lambda: f64,
    amp: &AmplitudeSpec,
    n: usize,
    tol: f64,
    max_iter: usize,
    start: StartVector,
) -> Result<NormEstimate, NormError> {
    let op = DiscretizedOperator::new(s, lambda, amp, n)?;
    let (norm, iterations, residual, converged) = power_iteration(&op, tol, max_iter, start);
    let required_n = oscillation_required_n(s, amp, lambda);
    let resolved = required_n.iter().all(|&r| r <= n);
    Ok(NormEstimate {
        norm,
        iterations,
        residual,
        converged,
        grid_n: n,
        required_n,
        resolved,
    })
}

/// One row of a λ-sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub lambda: f64,
    pub norm: f64,
    pub grid_n: usize,
    pub iterations: usize,
    pub residual: f64,
    pub resolved: bool,
}

/// Least-squares fit of `log norm` against `log λ`.
#[derive(Clone, Debug)]
pub struct FitResult {
    pub slope: f64,
    pub stderr: f64,
    /// λ window actually used.
    pub window: (f64, f64),
    pub points_used: usize,
}

/// Sweep outcome: per-λ rows plus the fitted slope.
#[derive(Clone, Debug)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub fit: FitResult,
    /// Rows excluded from the fit as unresolved (strict mode only).
    pub excluded_unresolved: usize,
}

/// Geometric λ grid with `points` values from `lo` to `hi` inclusive.
pub fn geometric_lambdas(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2 && lo > 0.0 && hi > lo);
    let ratio = (hi / lo).powf(1.0 / (points - 1) as f64);
    (0..points).map(|k| lo * ratio.powi(k as i32)).collect()
}

/// OLS slope of `ln y` on `ln x` after dropping the smallest `drop_frac` of
/// the x-values (the pre-asymptotic head of the sweep).
pub fn fit_loglog(points: &[(f64, f64)], drop_frac: f64) -> Option<FitResult> {
    let mut pts: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(x, y)| x > 0.0 && y > 0.0)
        .collect();
    if pts.len() < 2 {
        return None;
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let drop = ((pts.len() as f64) * drop_frac).floor() as usize;
    let drop = drop.min(pts.len() - 2);
    let used = &pts[drop..];
    let k = used.len() as f64;
    let xs: Vec<f64> = used.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = used.iter().map(|p| p.1.ln()).collect();
    let xbar = xs.iter().sum::<f64>() / k;
    let ybar = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let stderr = if used.len() > 2 {
        let sse: f64 = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| {
                let resid = (y - ybar) - slope * (x - xbar);
                resid * resid
            })
            .sum();
        (sse / (k - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    Some(FitResult {
        slope,
        stderr,
        window: (used[0].0, used[used.len() - 1].0),
        points_used: used.len(),
    })
}

/// Runs a λ-sweep and fits the log–log slope.
///
/// With `strict` set, under-resolved rows are excluded from the fit (they are
/// always reported in `rows`), falling back to all rows when fewer than two
/// survive; otherwise all rows enter the fit, which is the only option when
/// the grid cap is below the oscillation rule across the whole window.
#[allow(clippy::too_many_arguments)]
pub fn sweep_and_fit(
    s: &PhasePoly,
    lambdas: &[f64],
    amp: &AmplitudeSpec,
    policy: GridPolicy,
    tol: f64,
    max_iter: usize,
    seed: u64,
    drop_frac: f64,
    strict: bool,
) -> Result<SweepResult, NormError> {
    if lambdas.len() < 4 || lambdas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(NormError::BadLambdaList);
    }
    let mut rows = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let (n, resolved) = policy.choose(s, amp, lambda);
        let est = estimate_norm(s, lambda, amp, n, tol, max_iter, seed)?;
        rows.push(SweepRow {
            lambda,
            norm: est.norm,
            grid_n: n,
            iterations: est.iterations,
            residual: est.residual,
            resolved,
        });
    }
    let mut fit_input: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| !strict || r.resolved)
        .map(|r| (r.lambda, r.norm))
        .collect();
    let mut excluded = rows.len() - fit_input.len();
    if fit_input.len() < 2 {
        // nothing left to fit after exclusion; fall back to every row (the
        // resolved flags still tell the caller what happened)
        fit_input = rows.iter().map(|r| (r.lambda, r.norm)).collect();
        excluded = 0;
    }
    let fit = fit_loglog(&fit_input, drop_frac).ok_or(NormError::BadLambdaList)?;
    Ok(SweepResult {
        rows,
        fit,
        excluded_unresolved: excluded,
    })
}

/// Lower-bound witness outcome.
#[derive(Clone, Debug)]
pub struct WitnessResult {
    /// `‖K f_λ‖ / ‖f_λ‖`; on a shared grid this is a Rayleigh quotient of the
    /// discretized operator, hence at most its largest singular value.
    pub ratio: f64,
    /// Whether a locally refined quadrature replaced the shared grid.
    pub refined: bool,
    /// Grid points per axis across the witness support.
    pub points_across: usize,
}

/// Builds the scaled-bump witness vector `f_λ(z) = bump((λ^{1/m} z - z₀)/ε) ·
/// e^{-i S(x₀, λ^{1/m} z)}` on the shared z-grid of `op`.
fn witness_vector_on_grid(
    s: &PhasePoly,
    lambda: f64,
    amp: &AmplitudeSpec,
    op: &DiscretizedOperator,
    x0: &[f64],
    z0: &[f64],
    eps: f64,
) -> Result<(Vec<Complex64>, usize), NormError> {
    let m = s.degree() as f64;
    let scale = lambda.max(1.0).powf(1.0 / m);
    let x_axes = s.n_x();
    let z_axes = s.n_z();
    let z_grids: Vec<Vec<f64>> = (0..z_axes)
        .map(|a| axis_midpoints(amp, x_axes + a, op.n_per_axis()))
        .collect();
    // points per axis inside the shrunken support
    let mut points_across = usize::MAX;
    for (a, grid) in z_grids.iter().enumerate() {
        let count = grid
            .iter()
            .filter(|&&t| ((t * scale) - z0[a]).abs() < eps)
            .count();
        points_across = points_across.min(count);
    }
    let mut point = vec![0.0f64; x_axes + z_axes];
    point[..x_axes].copy_from_slice(x0);
    let mut v = vec![Complex64::zero(); op.z_size()];
    let mut idx = vec![0usize; z_axes];
    for (flat, val) in v.iter_mut().enumerate() {
        // decode flat index into per-axis grid positions (row-major)
        let mut rem = flat;
        for a in (0..z_axes).rev() {
            idx[a] = rem % op.n_per_axis();
            rem /= op.n_per_axis();
        }
        let mut bump = 1.0f64;
        for a in 0..z_axes {
            let zp = z_grids[a][idx[a]] * scale;
            let t = (zp - z0[a]) / eps;
            if t.abs() >= 1.0 {
                bump = 0.0;
                break;
            }
            bump *= (1.0 - 1.0 / (1.0 - t * t)).exp();
            point[x_axes + a] = zp;
        }
        if bump == 0.0 {
            continue;
        }
        let phase = s.eval(&point)?;
        let (si, co) = (-phase).sin_cos();
        *val = Complex64::new(bump * co, bump * si);
    }
    Ok((v, points_across))
}

/// The witness vector on the shared z-grid, for warm-starting a norm estimate
/// that provably dominates the witness ratio.
pub fn witness_vector(
    s: &PhasePoly,
    lambda: f64,
    amp: &AmplitudeSpec,
    n: usize,
    x0: &[f64],
    z0: &[f64],
    eps: f64,
) -> Result<Vec<Complex64>, NormError> {
    let op = DiscretizedOperator::new(s, lambda.max(1.0), amp, n)?;
    Ok(witness_vector_on_grid(s, lambda, amp, &op, x0, z0, eps)?.0)
}

/// Rayleigh-type lower bound for the discretized norm from the scaled bump
/// `f_λ(z) = λ^{n_z/2m} f(λ^{1/m} z)` concentrated near `λ^{-1/m} z₀`.
///
/// On the shared grid the ratio is exactly a Rayleigh quotient of the
/// discretized operator. When the shrinking support is covered by fewer than
/// 6 grid points per axis the witness auto-refines: `f` is sampled on a local
/// z-subgrid and `T f` is integrated directly (the `refined` flag is set, and
/// the exact-inequality comparison no longer applies).
pub fn lower_bound_witness(
    s: &PhasePoly,
    lambda: f64,
    amp: &AmplitudeSpec,
    n: usize,
    x0: &[f64],
    z0: &[f64],
    eps: f64,
) -> Result<WitnessResult, NormError> {
    if amp.value(&[x0, z0].concat()) <= 0.0 {
        return Err(NormError::WitnessOutsideSupport);
    }
    let op = DiscretizedOperator::new(s, lambda.max(1.0), amp, n)?;
    let (v, points_across) = witness_vector_on_grid(s, lambda, amp, &op, x0, z0, eps)?;
    let vnorm = l2_norm(&v);
    if points_across >= 6 && vnorm > 0.0 {
        let w = op.apply(&v);
        return Ok(WitnessResult {
            ratio: l2_norm(&w) / vnorm,
            refined: false,
            points_across,
        });
    }

    // refined path: local z-subgrid over the witness support
    let m = s.degree() as f64;
    let scale = lambda.max(1.0).powf(1.0 / m);
    let x_axes = s.n_x();
    let z_axes = s.n_z();
    let n_loc = 48usize;
    let loc_axes: Vec<Vec<f64>> = (0..z_axes)
        .map(|a| {
            let lo = (z0[a] - eps) / scale;
            let hi = (z0[a] + eps) / scale;
            let h = (hi - lo) / n_loc as f64;
            (0..n_loc).map(|k| lo + (k as f64 + 0.5) * h).collect()
        })
        .collect();
    let z_cells: f64 = (0..z_axes)
        .map(|a| {
            let lo = (z0[a] - eps) / scale;
            let hi = (z0[a] + eps) / scale;
            (hi - lo) / n_loc as f64
        })
        .product();
    let z_points = tensor_points(&loc_axes);
    // witness samples
    let mut f_vals = Vec::with_capacity(z_points.len());
    let mut point = vec![0.0f64; x_axes + z_axes];
    point[..x_axes].copy_from_slice(x0);
    for zp in &z_points {
        let mut bump = 1.0f64;
        for a in 0..z_axes {
            let t = (zp[a] * scale - z0[a]) / eps;
            if t.abs() >= 1.0 {
                bump = 0.0;
                break;
            }
            bump *= (1.0 - 1.0 / (1.0 - t * t)).exp();
            point[x_axes + a] = zp[a] * scale;
        }
        if bump == 0.0 {
            f_vals.push(Complex64::zero());
            continue;
        }
        let phase = s.eval(&point)?;
        let (si, co) = (-phase).sin_cos();
        f_vals.push(Complex64::new(bump * co, bump * si));
    }
    let f_norm_sq: f64 = f_vals.iter().map(|c| c.norm_sqr()).sum::<f64>() * z_cells;
    if f_norm_sq == 0.0 {
        return Ok(WitnessResult {
            ratio: 0.0,
            refined: true,
            points_across,
        });
    }
    // T f on the shared x-grid by direct quadrature
    let x_grids: Vec<Vec<f64>> = (0..x_axes).map(|a| axis_midpoints(amp, a, n)).collect();
    let x_points = tensor_points(&x_grids);
    let wx: f64 = (0..x_axes)
        .map(|a| {
            let (lo, hi) = amp.boxes()[a];
            (hi - lo) / n as f64
        })
        .product();
    let tf_norm_sq: f64 = x_points
        .par_iter()
        .map(|xp| {
            let mut acc = Complex64::zero();
            let mut pt = vec![0.0f64; x_axes + z_axes];
            pt[..x_axes].copy_from_slice(xp);
            for (zp, fv) in z_points.iter().zip(&f_vals) {
                if fv.is_zero() {
                    continue;
                }
                pt[x_axes..].copy_from_slice(zp);
                let a_val = amp.value(&pt);
                if a_val == 0.0 {
                    continue;
                }
                let phase = lambda * s.eval(&pt).unwrap();
                let (si, co) = phase.sin_cos();
                acc += Complex64::new(a_val * co, a_val * si) * fv * z_cells;
            }
            acc.norm_sqr()
        })
        .sum::<f64>()
        * wx;
    Ok(WitnessResult {
        ratio: (tf_norm_sq / f_norm_sq).sqrt(),
        refined: true,
        points_across,
    })
}

/// Default witness base point: all coordinates 0.4 (scaled into the box).
pub fn default_witness_base(s: &PhasePoly, amp: &AmplitudeSpec) -> (Vec<f64>, Vec<f64>, f64) {
    let pick = |axis: usize| {
        let (lo, hi) = amp.boxes()[axis];
        lo + 0.7 * (hi - lo)
    };
    let x0: Vec<f64> = (0..s.n_x()).map(pick).collect();
    let z0: Vec<f64> = (s.n_x()..s.n_x() + s.n_z()).map(pick).collect();
    (x0, z0, 0.35)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use approx::assert_relative_eq;

    fn xz() -> PhasePoly {
        corpus::bilinear_phase()
    }

    #[test]
    fn lambda_zero_norm_is_phase_independent() {
        let amp = AmplitudeSpec::standard(2);
        let a = estimate_norm(&xz(), 0.0, &amp, 32, 1e-8, 500, 1).unwrap();
        let b = estimate_norm(&corpus::cubic_1d_phase(), 0.0, &amp, 32, 1e-8, 500, 1).unwrap();
        assert_relative_eq!(a.norm, b.norm, max_relative = 1e-9);
        assert!(a.norm > 0.0);
    }

    #[test]
    fn lambda_zero_matches_dense_svd() {
        // sigma_max of the amplitude-only kernel vs nalgebra dense SVD
        let amp = AmplitudeSpec::standard(2);
        let n = 20;
        let est = estimate_norm(&xz(), 0.0, &amp, n, 1e-10, 2000, 3).unwrap();
        let op = DiscretizedOperator::new(&xz(), 0.0, &amp, n).unwrap();
        let mut dense = nalgebra::DMatrix::<f64>::zeros(n, n);
        let xs = axis_midpoints(&amp, 0, n);
        let zs = axis_midpoints(&amp, 1, n);
        let h = 2.0 / n as f64;
        for (i, &x) in xs.iter().enumerate() {
            for (j, &z) in zs.iter().enumerate() {
                dense[(i, j)] = amp.value(&[x, z]) * h;
            }
        }
        let sv = dense.svd(false, false).singular_values[0];
        assert_relative_eq!(est.norm, sv, max_relative = 1e-8);
        let _ = op;
    }

    #[test]
    fn rank_one_separable_kernel() {
        // S with lambda = 0 and product amplitude: K = g(x) h(z)^t sqrt(w),
        // so sigma_max = ||g||_2 ||h||_2 in the discrete norms
        let amp = AmplitudeSpec::standard(2);
        let n = 24;
        let est = estimate_norm(&xz(), 0.0, &amp, n, 1e-10, 1000, 5).unwrap();
        let xs = axis_midpoints(&amp, 0, n);
        let h = 2.0 / n as f64;
        let g_norm: f64 = xs
            .iter()
            .map(|&t| amp.axis_value(0, t).powi(2) * h)
            .sum::<f64>()
            .sqrt();
        let z_norm: f64 = xs
            .iter()
            .map(|&t| amp.axis_value(1, t).powi(2) * h)
            .sum::<f64>()
            .sqrt();
        assert_relative_eq!(est.norm, g_norm * z_norm, max_relative = 1e-8);
    }

    #[test]
    fn adjoint_symmetry() {
        // norm of the adjoint equals the norm of the operator
        let amp = AmplitudeSpec::standard(2);
        let s = corpus::cubic_1d_phase();
        let a = estimate_norm(&s, 40.0, &amp, 64, 1e-8, 1000, 1).unwrap();
        let b = estimate_norm(&s.transpose_roles(), 40.0, &amp, 64, 1e-8, 1000, 1).unwrap();
        assert_relative_eq!(a.norm, b.norm, max_relative = 1e-6);
    }

    #[test]
    fn power_iteration_deterministic() {
        let amp = AmplitudeSpec::standard(2);
        let s = corpus::cubic_1d_phase();
        let a = estimate_norm(&s, 25.0, &amp, 48, 1e-8, 500, 42).unwrap();
        let b = estimate_norm(&s, 25.0, &amp, 48, 1e-8, 500, 42).unwrap();
        assert_eq!(a.iterations, b.iterations);
        assert!((a.norm - b.norm).abs() <= 1e-12 * a.norm);
    }

    #[test]
    fn grid_convergence_in_resolved_regime() {
        let amp = AmplitudeSpec::standard(2);
        let s = xz();
        let lambda = 30.0;
        let need = oscillation_required_n(&s, &amp, lambda);
        let n = need.iter().copied().max().unwrap().max(8);
        let a = estimate_norm(&s, lambda, &amp, n, 1e-8, 800, 1).unwrap();
        let b = estimate_norm(&s, lambda, &amp, 2 * n, 1e-8, 800, 1).unwrap();
        assert!(
            (a.norm - b.norm).abs() / b.norm < 0.01,
            "doubling the grid moved the norm by {:.3}%",
            100.0 * (a.norm - b.norm).abs() / b.norm
        );
    }

    #[test]
    fn oscillation_rule_flags_underresolved() {
        let amp = AmplitudeSpec::standard(2);
        let s = xz();
        // G = 1 per axis, L = 2: n_req = ceil(1.59 * lambda * 2)
        let req = oscillation_required_n(&s, &amp, 100.0);
        assert_eq!(req, vec![319, 319]);
        let est = estimate_norm(&s, 100.0, &amp, 64, 1e-6, 300, 1).unwrap();
        assert!(!est.resolved);
        let est2 = estimate_norm(&s, 100.0, &amp, 320, 1e-6, 300, 1).unwrap();
        assert!(est2.resolved);
    }

    #[test]
    fn fit_recovers_synthetic_slope() {
        let pts: Vec<(f64, f64)> = (1..=12)
            .map(|k| {
                let x = 10.0 * 1.5f64.powi(k);
                (x, 3.0 * x.powf(-0.5))
            })
            .collect();
        let fit = fit_loglog(&pts, 0.25).unwrap();
        assert_relative_eq!(fit.slope, -0.5, epsilon = 1e-9);
        assert!(fit.stderr < 1e-9);
    }

    #[test]
    fn sweep_bilinear_phase_gives_half_slope() {
        let amp = AmplitudeSpec::standard(2);
        let lambdas = geometric_lambdas(50.0, 400.0, 5);
        let sweep = sweep_and_fit(
            &xz(),
            &lambdas,
            &amp,
            GridPolicy::Auto { cap: 2048 },
            1e-6,
            500,
            7,
            0.25,
            true,
        )
        .unwrap();
        assert!(
            (sweep.fit.slope + 0.5).abs() < 0.05,
            "slope {} vs -0.5 (seed 7, grids {:?}, tol 1e-6)",
            sweep.fit.slope,
            sweep.rows.iter().map(|r| r.grid_n).collect::<Vec<_>>()
        );
        for row in &sweep.rows {
            assert!(row.norm > 0.0);
            assert!(row.residual < 1e-6 || !row.resolved);
        }
    }

    #[test]
    fn witness_is_rayleigh_quotient_below_norm() {
        let amp = AmplitudeSpec::standard(2);
        let s = corpus::cubic_1d_phase();
        let (x0, z0, eps) = default_witness_base(&s, &amp);
        for &lambda in &[50.0, 200.0] {
            let n = 512;
            let w = lower_bound_witness(&s, lambda, &amp, n, &x0, &z0, eps).unwrap();
            assert!(!w.refined);
            assert!(w.ratio > 0.0);
            // warm-started estimate dominates the witness quotient
            let op = DiscretizedOperator::new(&s, lambda, &amp, n).unwrap();
            let (v, _) = witness_vector_on_grid(&s, lambda, &amp, &op, &x0, &z0, eps).unwrap();
            let est =
                estimate_norm_with_start(&s, lambda, &amp, n, 1e-6, 500, StartVector::Warm(v))
                    .unwrap();
            assert!(
                w.ratio <= est.norm * (1.0 + 1e-12),
                "lambda {lambda}: witness {} > estimate {}",
                w.ratio,
                est.norm
            );
        }
    }

    #[test]
    fn witness_refines_when_support_shrinks_below_grid() {
        let amp = AmplitudeSpec::standard(2);
        let s = corpus::cubic_1d_phase();
        let (x0, z0, eps) = default_witness_base(&s, &amp);
        // huge lambda on a small shared grid: support covers < 6 points/axis
        let w = lower_bound_witness(&s, 1.0e7, &amp, 32, &x0, &z0, eps).unwrap();
        assert!(w.refined, "points across: {}", w.points_across);
        assert!(w.ratio > 0.0);
    }

    #[test]
    fn bad_inputs_rejected() {
        let amp = AmplitudeSpec::standard(2);
        assert!(matches!(
            estimate_norm(&xz(), -1.0, &amp, 32, 1e-6, 100, 0),
            Err(NormError::BadLambda)
        ));
        assert!(matches!(
            estimate_norm(&xz(), 1.0, &amp, 4, 1e-6, 100, 0),
            Err(NormError::GridTooSmall { .. })
        ));
        let amp3 = AmplitudeSpec::standard(3);
        assert!(matches!(
            estimate_norm(&xz(), 1.0, &amp3, 32, 1e-6, 100, 0),
            Err(NormError::AmplitudeMismatch { .. })
        ));
        let lambdas = vec![10.0, 5.0, 20.0, 40.0];
        assert!(matches!(
            sweep_and_fit(
                &xz(),
                &lambdas,
                &amp,
                GridPolicy::Fixed(16),
                1e-6,
                100,
                0,
                0.25,
                false
            ),
            Err(NormError::BadLambdaList)
        ));
    }
}
