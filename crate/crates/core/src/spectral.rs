//! Spectral norm of symmetric integer matrices.
//!
//! For a symmetric matrix the operator 2-norm is the largest eigenvalue
//! magnitude. [`spectral_norm_power`] is the production path;
//! [`spectral_norm_dense`] runs cyclic Jacobi to completion and serves as
//! the oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Integer, Real};

/// Largest matrix accepted by the dense oracle.
pub const DENSE_ORACLE_MAX_DIM: usize = 2048;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;
pub const DEFAULT_SEED: u64 = 42;

/// Iterations between checks for a stalled ±λ pair.
const STALL_WINDOW: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Power,
    #[value(name = "dense")]
    #[serde(rename = "dense")]
    DenseOracle,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Power => "power",
            Method::DenseOracle => "dense",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralEstimate<F> {
    /// Largest eigenvalue magnitude.
    pub norm: F,
    /// Matrix-vector products (power) or sweeps (dense).
    pub iterations: usize,
    pub method: Method,
    pub converged: bool,
    /// `||A v - λ v|| / ||v||` at exit; zero for the dense oracle.
    pub residual: F,
    /// Whether the shifted restart for a ±λ pair was taken.
    pub shifted: bool,
}

/// Settings for [`spectral_norm_power`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSettings<F> {
    pub tol: F,
    pub max_iter: usize,
    pub seed: u64,
}

impl<F: Real> Default for PowerSettings<F> {
    fn default() -> Self {
        Self { tol: F::lit(DEFAULT_TOL), max_iter: DEFAULT_MAX_ITER, seed: DEFAULT_SEED }
    }
}

/// Dense symmetric matrix in floating point. Each row remembers where its
/// trailing zeros begin so products skip them; the matrices built here
/// vanish below the anti-diagonal.
#[derive(Debug, Clone)]
pub struct SymmetricDense<F> {
    dim: usize,
    data: Vec<F>,
    row_len: Vec<usize>,
    max_abs: F,
}

impl<F: Real> SymmetricDense<F> {
    /// Converts exactly, rejecting asymmetric input and entries that do not
    /// fit the mantissa.
    pub fn from_integer<T: Integer>(m: &Matrix<T>) -> Result<Self> {
        if let Some((row, col)) = m.first_asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        let dim = m.dim();
        let mut data = Vec::with_capacity(dim * dim);
        let mut row_len = Vec::with_capacity(dim);
        let mut max_abs = F::zero();
        for row in m.rows() {
            let mut len = 0;
            for (j, &v) in row.iter().enumerate() {
                let x = F::exact_from(v)?;
                if !v.is_zero() {
                    len = j + 1;
                }
                max_abs = max_abs.max(x.abs());
                data.push(x);
            }
            row_len.push(len);
        }
        Ok(Self { dim, data, row_len, max_abs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_abs(&self) -> F {
        self.max_abs
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> F {
        self.data[i * self.dim + j]
    }

    /// `out = (A + shift I) v`.
    fn apply(&self, v: &[F], shift: F, out: &mut [F]) {
        for (i, o) in out.iter_mut().enumerate() {
            let len = self.row_len[i];
            let row = &self.data[i * self.dim..i * self.dim + len];
            *o = dot(row, &v[..len]) + shift * v[i];
        }
    }
}

/// Dot product with four independent accumulators.
#[inline]
fn dot<F: Real>(a: &[F], b: &[F]) -> F {
    let mut acc = [F::zero(); 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        let k = 4 * c;
        acc[0] = acc[0] + a[k] * b[k];
        acc[1] = acc[1] + a[k + 1] * b[k + 1];
        acc[2] = acc[2] + a[k + 2] * b[k + 2];
        acc[3] = acc[3] + a[k + 3] * b[k + 3];
    }
    let mut tail = F::zero();
    for k in 4 * chunks..a.len() {
        tail = tail + a[k] * b[k];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

fn norm2<F: Real>(v: &[F]) -> F {
    dot(v, v).sqrt()
}

/// Outcome of one power-iteration run on `A + shift I`.
struct PowerRun<F> {
    rayleigh: F,
    /// `||(A + shift I) v||` for the last unit iterate; a lower bound on the
    /// norm that also converges when the top eigenvalue is a ±λ pair.
    growth: F,
    residual: F,
    iterations: usize,
    converged: bool,
    stalled: bool,
}

fn power_run<F: Real>(a: &SymmetricDense<F>, shift: F, settings: &PowerSettings<F>, detect_stall: bool) -> PowerRun<F> {
    let n = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut v: Vec<F> = (0..n).map(|_| F::lit(rng.gen_range(-1.0..1.0))).collect();
    let nv = norm2(&v);
    if nv == F::zero() {
        v[0] = F::one();
    } else {
        v.iter_mut().for_each(|x| *x = *x / nv);
    }
    let mut w = vec![F::zero(); n];
    let tol = settings.tol;

    let mut prev_rayleigh: Option<F> = None;
    let mut residual_history: Vec<F> = Vec::new();
    let mut growth_history: Vec<F> = Vec::new();
    let mut run = PowerRun {
        rayleigh: F::zero(),
        growth: F::zero(),
        residual: F::infinity(),
        iterations: 0,
        converged: false,
        stalled: false,
    };

    for it in 1..=settings.max_iter {
        a.apply(&v, shift, &mut w);
        let lambda = dot(&v, &w);
        let growth = norm2(&w);
        // ||w - λv||² = ||w||² - λ² for unit v
        let residual = {
            let r2 = growth * growth - lambda * lambda;
            if r2 > F::lit(1e-3) * growth * growth {
                r2.sqrt()
            } else {
                // cancellation: form the difference explicitly
                let mut acc = F::zero();
                for (wi, vi) in w.iter().zip(&v) {
                    let d = *wi - lambda * *vi;
                    acc = acc + d * d;
                }
                acc.sqrt()
            }
        };
        run.rayleigh = lambda;
        run.growth = growth;
        run.residual = residual;
        run.iterations = it;

        if growth == F::zero() {
            // v is in the kernel; for the zero matrix that is exact
            run.converged = a.max_abs() == F::zero() && shift == F::zero();
            return run;
        }

        // judge convergence on the eigenvalue of A itself, not of A + shift I
        let scale = (lambda - shift).abs();
        let settled = prev_rayleigh.is_some_and(|p| ((lambda - shift).abs() - (p - shift).abs()).abs() <= tol * scale);
        if settled && residual <= tol * scale {
            run.converged = true;
            return run;
        }
        prev_rayleigh = Some(lambda);

        if detect_stall {
            residual_history.push(residual);
            growth_history.push(growth);
            if it > STALL_WINDOW {
                let r_old = residual_history[it - 1 - STALL_WINDOW];
                let g_old = growth_history[it - 1 - STALL_WINDOW];
                let growth_settled = (growth - g_old).abs() <= tol * growth;
                let residual_flat = residual >= F::lit(0.9) * r_old;
                if growth_settled && residual_flat && residual > tol * growth {
                    run.stalled = true;
                    return run;
                }
            }
        }

        v.iter_mut().zip(&w).for_each(|(x, y)| *x = *y / growth);
    }
    run
}

/// Power iteration from a seeded random start.
///
/// Converged when successive Rayleigh quotient magnitudes agree to
/// `tol * |λ|` and `||A v - λ v|| <= tol * |λ| * ||v||`. If the residual
/// stops decaying while `||A v||` has settled, the top of the spectrum is a
/// `±λ` pair; the run restarts on `A + c I` with `c = 1 + max |a_ij|`,
/// which separates the pair, and subtracts `c` afterwards.
pub fn spectral_norm_power<F: Real, T: Integer>(
    m: &Matrix<T>,
    tol: F,
    max_iter: usize,
    seed: u64,
) -> Result<SpectralEstimate<F>> {
    let a = SymmetricDense::from_integer(m)?;
    spectral_norm_power_dense(&a, &PowerSettings { tol, max_iter, seed })
}

pub fn spectral_norm_power_dense<F: Real>(a: &SymmetricDense<F>, settings: &PowerSettings<F>) -> Result<SpectralEstimate<F>> {
    if !(settings.tol > F::zero() && settings.tol < F::one()) {
        return Err(Error::InvalidParameter(format!("tol must lie in (0, 1), got {}", settings.tol)));
    }
    if settings.max_iter == 0 {
        return Err(Error::InvalidParameter("max_iter must be positive".into()));
    }
    if a.dim() == 0 {
        return Ok(SpectralEstimate {
            norm: F::zero(),
            iterations: 0,
            method: Method::Power,
            converged: true,
            residual: F::zero(),
            shifted: false,
        });
    }

    let first = power_run(a, F::zero(), settings, true);
    if !first.stalled {
        return Ok(SpectralEstimate {
            norm: first.rayleigh.abs(),
            iterations: first.iterations,
            method: Method::Power,
            converged: first.converged,
            residual: first.residual,
            shifted: false,
        });
    }

    let c = F::one() + a.max_abs();
    let remaining = PowerSettings { max_iter: settings.max_iter.saturating_sub(first.iterations).max(1), ..*settings };
    let second = power_run(a, c, &remaining, false);
    let lambda = second.rayleigh - c;
    // both are lower bounds on the norm; the growth of the first run is the
    // tighter one when the pair is only nearly tied
    let norm = lambda.abs().max(first.growth);
    Ok(SpectralEstimate {
        norm,
        iterations: first.iterations + second.iterations,
        method: Method::Power,
        converged: second.converged,
        residual: second.residual,
        shifted: true,
    })
}

/// All eigenvalues by cyclic Jacobi rotations, unsorted.
pub fn jacobi_eigenvalues<F: Real>(a: &SymmetricDense<F>) -> Result<(Vec<F>, usize)> {
    let n = a.dim();
    if n > DENSE_ORACLE_MAX_DIM {
        return Err(Error::TooLargeForOracle { size: n, max: DENSE_ORACLE_MAX_DIM });
    }
    let mut m: Vec<F> = (0..n * n).map(|k| a.get(k / n, k % n)).collect();
    let frob = m.iter().fold(F::zero(), |acc, &x| acc + x * x).sqrt();
    let target = F::lit(1e-12) * frob;
    let off = |m: &[F]| {
        let mut acc = F::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc = acc + m[i * n + j] * m[i * n + j];
                }
            }
        }
        acc.sqrt()
    };

    let mut sweeps = 0;
    while off(&m) > target {
        if sweeps == 100 {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == F::zero() {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (F::lit(2.0) * apq);
                let t = if theta.abs() > F::lit(1e150).min(F::max_value().sqrt()) {
                    F::one() / (F::lit(2.0) * theta)
                } else {
                    let t = F::one() / (theta.abs() + (theta * theta + F::one()).sqrt());
                    if theta < F::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                let tau = s / (F::one() + c);
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = F::zero();
                m[q * n + p] = F::zero();
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = m[r * n + p];
                    let h = m[r * n + q];
                    let rp = g - s * (h + g * tau);
                    let rq = h + s * (g - h * tau);
                    m[r * n + p] = rp;
                    m[p * n + r] = rp;
                    m[r * n + q] = rq;
                    m[q * n + r] = rq;
                }
            }
        }
    }
    let converged = off(&m) <= target;
    if !converged {
        return Err(Error::InvalidParameter(format!("Jacobi did not converge in {sweeps} sweeps")));
    }
    Ok(((0..n).map(|i| m[i * n + i]).collect(), sweeps))
}

/// Largest eigenvalue magnitude from a full cyclic Jacobi decomposition.
pub fn spectral_norm_dense<F: Real, T: Integer>(m: &Matrix<T>) -> Result<SpectralEstimate<F>> {
    if m.dim() > DENSE_ORACLE_MAX_DIM {
        return Err(Error::TooLargeForOracle { size: m.dim(), max: DENSE_ORACLE_MAX_DIM });
    }
    let a = SymmetricDense::<F>::from_integer(m)?;
    let (eigs, _) = jacobi_eigenvalues(&a)?;
    Ok(SpectralEstimate {
        norm: eigs.iter().fold(F::zero(), |acc, e| acc.max(e.abs())),
        iterations: 0,
        method: Method::DenseOracle,
        converged: true,
        residual: F::zero(),
        shifted: false,
    })
}

/// Dispatches on [`Method`] with the given power settings.
pub fn spectral_norm<F: Real, T: Integer>(
    m: &Matrix<T>,
    method: Method,
    settings: &PowerSettings<F>,
) -> Result<SpectralEstimate<F>> {
    match method {
        Method::Power => spectral_norm_power(m, settings.tol, settings.max_iter, settings.seed),
        Method::DenseOracle => spectral_norm_dense(m),
    }
}
