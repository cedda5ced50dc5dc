//! Correlated uniform sampling through a Gaussian copula.
//!
//! A target correlation matrix with unit diagonal and constant off-diagonal
//! `rho` is first mapped to the Gaussian domain with the Pearson correction
//! `r = 2 sin(pi rho / 6)`, so that pushing a correlated Gaussian vector
//! through the standard normal CDF yields uniform marginals on `[0, 1)`
//! whose pairwise Pearson correlation is exactly `rho`. The adjusted matrix
//! is factorized by Cholesky, falling back to a symmetric eigendecomposition
//! with clipping when the matrix is only semidefinite (the lower boundary of
//! the admissible `rho` range).

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Eigenvalues below this threshold make the adjusted matrix inadmissible;
/// values in `[-PSD_TOLERANCE, 0)` are treated as rounding noise and clipped.
const PSD_TOLERANCE: f64 = 1e-9;

/// Lower bound of the admissible correlation for `m` objectives.
pub fn rho_lower_bound(m: usize) -> f64 {
    -1.0 / (m as f64 - 1.0)
}

/// Checks that `rho` is an admissible pairwise correlation for `m` objectives.
///
/// The closed interval `[-1/(m-1), 1]` is accepted; the lower endpoint yields
/// a singular matrix that the sampler handles by eigenvalue clipping.
pub fn validate_rho<F: Real>(m: usize, rho: F) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidM { m });
    }
    let r = rho.to_f64_lossy();
    let min = rho_lower_bound(m);
    if r >= min && r <= 1.0 {
        Ok(())
    } else {
        Err(Error::RhoOutOfRange {
            m,
            rho: r,
            min,
            max: 1.0,
        })
    }
}

/// Uniform-correlation target matrix: unit diagonal, `rho` everywhere else.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix<F> {
    m: usize,
    rho: F,
}

impl<F: Real> CorrelationMatrix<F> {
    pub fn new(m: usize, rho: F) -> Result<Self> {
        validate_rho(m, rho)?;
        Ok(Self { m, rho })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rho(&self) -> F {
        self.rho
    }

    /// Entry `(i, j)` of the target matrix.
    pub fn entry(&self, i: usize, j: usize) -> F {
        if i == j {
            F::one()
        } else {
            self.rho
        }
    }

    /// Gaussian-domain matrix, row-major `m x m`: unit diagonal and
    /// `2 sin(pi rho / 6)` off the diagonal.
    pub fn adjusted_for_copula(&self) -> Vec<F> {
        let adjusted = pearson_to_gaussian(self.rho);
        let mut out = vec![adjusted; self.m * self.m];
        for i in 0..self.m {
            out[i * self.m + i] = F::one();
        }
        out
    }
}

/// Maps a target Pearson correlation of uniforms to the Gaussian correlation
/// that induces it under the copula.
///
/// The endpoints map to exactly +/-1 (the floating evaluation of
/// `2 sin(pi/6)` misses by one ulp, which would turn the rank-deficient
/// boundary matrices into nearly-singular ones).
pub fn pearson_to_gaussian<F: Real>(rho: F) -> F {
    if rho == F::one() {
        return F::one();
    }
    if rho == -F::one() {
        return -F::one();
    }
    let two = F::one() + F::one();
    let six = F::from_u8(6).unwrap();
    two * (F::PI() * rho / six).sin()
}

/// Standard normal CDF, absolute error below 1e-15.
pub(crate) fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x / std::f64::consts::SQRT_2)
}

/// Draws vectors with uniform marginals on `[0, 1)` and the pairwise
/// correlation fixed by a [`CorrelationMatrix`].
///
/// Immutable after construction; share freely across threads and give every
/// consumer its own random stream.
#[derive(Debug, Clone, PartialEq)]
pub struct CopulaSampler<F> {
    m: usize,
    /// Row-major `m x m` factor with `factor * factor^T` equal to the
    /// adjusted matrix (lower-triangular when Cholesky succeeds).
    factor: Vec<F>,
}

impl<F: Real> CopulaSampler<F> {
    pub fn new(correlation: &CorrelationMatrix<F>) -> Result<Self> {
        let adjusted = correlation.adjusted_for_copula();
        let m = correlation.m();
        let factor = match cholesky(m, &adjusted) {
            Some(lower) => lower,
            None => semidefinite_factor(m, &adjusted)?,
        };
        Ok(Self { m, factor })
    }

    pub fn dimension(&self) -> usize {
        self.m
    }

    /// Row-major `m x m` factor matrix.
    pub fn factor(&self) -> &[F] {
        &self.factor
    }

    /// One correlated uniform vector of length `m`.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<F> {
        let mut z = vec![0.0; self.m];
        let mut out = vec![F::zero(); self.m];
        self.draw_into(rng, &mut z, &mut out);
        out
    }

    /// Allocation-free variant of [`draw`](Self::draw); `z` and `out` must
    /// have length `m`.
    pub fn draw_into<R: Rng + ?Sized>(&self, rng: &mut R, z: &mut [f64], out: &mut [F]) {
        debug_assert_eq!(z.len(), self.m);
        debug_assert_eq!(out.len(), self.m);
        for zi in z.iter_mut() {
            *zi = StandardNormal.sample(rng);
        }
        for i in 0..self.m {
            let row = &self.factor[i * self.m..(i + 1) * self.m];
            let mut acc = 0.0;
            for (f, zj) in row.iter().zip(z.iter()) {
                acc += f.to_f64_lossy() * zj;
            }
            let u = F::from_f64_lossy(standard_normal_cdf(acc));
            out[i] = if u >= F::one() {
                F::below_one()
            } else if u < F::zero() {
                F::zero()
            } else {
                u
            };
        }
    }
}

/// Cholesky factor of a symmetric positive definite matrix, or `None` when a
/// pivot degenerates (semidefinite or indefinite input).
fn cholesky<F: Real>(dim: usize, matrix: &[F]) -> Option<Vec<F>> {
    let mut lower = vec![F::zero(); dim * dim];
    let pivot_floor = F::from_f64_lossy(1e-12).max(F::epsilon() * F::from_u8(16).unwrap());
    for i in 0..dim {
        for j in 0..=i {
            let mut sum = matrix[i * dim + j];
            for t in 0..j {
                sum -= lower[i * dim + t] * lower[j * dim + t];
            }
            if i == j {
                if sum <= pivot_floor {
                    return None;
                }
                lower[i * dim + i] = sum.sqrt();
            } else {
                lower[i * dim + j] = sum / lower[j * dim + j];
            }
        }
    }
    Some(lower)
}

/// Factor for a semidefinite matrix via eigendecomposition, clipping
/// eigenvalues in `[-PSD_TOLERANCE, 0)` to zero.
fn semidefinite_factor<F: Real>(dim: usize, matrix: &[F]) -> Result<Vec<F>> {
    let (values, vectors) = jacobi_symmetric_eigen(dim, matrix);
    let tolerance = F::from_f64_lossy(PSD_TOLERANCE)
        .max(F::epsilon() * F::from_usize(8 * dim).unwrap());
    if let Some(bad) = values.iter().find(|v| **v < -tolerance) {
        return Err(Error::NotPositiveSemidefinite {
            eigenvalue: bad.to_f64_lossy(),
        });
    }
    let mut factor = vec![F::zero(); dim * dim];
    for c in 0..dim {
        let scale = values[c].max(F::zero()).sqrt();
        for r in 0..dim {
            factor[r * dim + c] = vectors[r * dim + c] * scale;
        }
    }
    Ok(factor)
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Returns eigenvalues in descending order and the matching eigenvectors as
/// columns of a row-major matrix, each sign-normalized so its largest-
/// magnitude component is positive.
fn jacobi_symmetric_eigen<F: Real>(dim: usize, matrix: &[F]) -> (Vec<F>, Vec<F>) {
    let mut a = matrix.to_vec();
    let mut v = vec![F::zero(); dim * dim];
    for i in 0..dim {
        v[i * dim + i] = F::one();
    }
    let tol = F::epsilon() * F::from_usize(dim * dim).unwrap();
    for _sweep in 0..64 {
        let mut off = F::zero();
        for p in 0..dim {
            for q in (p + 1)..dim {
                off += a[p * dim + q] * a[p * dim + q];
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                let apq = a[p * dim + q];
                if apq.abs() <= tol * F::from_f64_lossy(1e-3) {
                    continue;
                }
                let app = a[p * dim + p];
                let aqq = a[q * dim + q];
                let theta = (aqq - app) / ((F::one() + F::one()) * apq);
                let t = {
                    let root = (F::one() + theta * theta).sqrt();
                    if theta >= F::zero() {
                        F::one() / (theta + root)
                    } else {
                        F::one() / (theta - root)
                    }
                };
                let c = F::one() / (F::one() + t * t).sqrt();
                let s = t * c;
                for k in 0..dim {
                    let akp = a[k * dim + p];
                    let akq = a[k * dim + q];
                    a[k * dim + p] = c * akp - s * akq;
                    a[k * dim + q] = s * akp + c * akq;
                }
                for k in 0..dim {
                    let apk = a[p * dim + k];
                    let aqk = a[q * dim + k];
                    a[p * dim + k] = c * apk - s * aqk;
                    a[q * dim + k] = s * apk + c * aqk;
                }
                for k in 0..dim {
                    let vkp = v[k * dim + p];
                    let vkq = v[k * dim + q];
                    v[k * dim + p] = c * vkp - s * vkq;
                    v[k * dim + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&x, &y| {
        a[y * dim + y]
            .partial_cmp(&a[x * dim + x])
            .expect("finite eigenvalues")
            .then(x.cmp(&y))
    });
    let mut values = Vec::with_capacity(dim);
    let mut vectors = vec![F::zero(); dim * dim];
    for (c, &src) in order.iter().enumerate() {
        values.push(a[src * dim + src]);
        let mut pivot = 0;
        for r in 1..dim {
            if v[r * dim + src].abs() > v[pivot * dim + src].abs() {
                pivot = r;
            }
        }
        let flip = v[pivot * dim + src] < F::zero();
        for r in 0..dim {
            let val = v[r * dim + src];
            vectors[r * dim + c] = if flip { -val } else { val };
        }
    }
    (values, vectors)
}
