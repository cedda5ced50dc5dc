//! Pearson/Spearman correlation and least-squares fits in plain, log-log
//! and lin-log space.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Variable transform applied before the least-squares fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegressionModel {
    /// `y = a x + b`
    Linear,
    /// `ln y = a ln x + b`
    LogLog,
    /// `ln y = a x + b`
    LinLog,
}

/// Least-squares fit in the (possibly transformed) variable space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionFit<F> {
    pub slope: F,
    pub intercept: F,
    /// Pearson correlation of the transformed pairs.
    pub r: F,
    pub model: RegressionModel,
}

impl<F: Real> RegressionFit<F> {
    /// Coefficient of determination of the fit in transformed space.
    pub fn r_squared(&self) -> F {
        self.r * self.r
    }

    /// Predicted transformed response at `x` (already transformed for
    /// log-log fits).
    pub fn predict(&self, x: F) -> F {
        self.slope * x + self.intercept
    }
}

fn check_lengths<F>(xs: &[F], ys: &[F], needed: usize) -> Result<()> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            expected: xs.len(),
            actual: ys.len(),
        });
    }
    if xs.len() < needed {
        return Err(Error::InsufficientData {
            needed,
            got: xs.len(),
        });
    }
    Ok(())
}

fn mean<F: Real>(values: &[F]) -> F {
    let sum: F = values.iter().copied().sum();
    sum / F::from_usize(values.len()).unwrap()
}

/// Pearson correlation coefficient of two equal-length samples.
pub fn pearson<F: Real>(xs: &[F], ys: &[F]) -> Result<F> {
    check_lengths(xs, ys, 2)?;
    let mx = mean(xs);
    let my = mean(ys);
    let mut sxy = F::zero();
    let mut sxx = F::zero();
    let mut syy = F::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx.is_zero() || syy.is_zero() {
        return Err(Error::ZeroVariance);
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Spearman rank correlation (Pearson on average-tie ranks).
pub fn spearman<F: Real>(xs: &[F], ys: &[F]) -> Result<F> {
    check_lengths(xs, ys, 2)?;
    let rx = ranks(xs);
    let ry = ranks(ys);
    pearson(&rx, &ry)
}

fn ranks<F: Real>(values: &[F]) -> Vec<F> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite values"));
    let mut ranks = vec![F::zero(); values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // average rank for ties, 1-based
        let avg = F::from_usize(i + j + 2).unwrap() / F::from_f64_lossy(2.0);
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

fn least_squares<F: Real>(xs: &[F], ys: &[F], model: RegressionModel) -> Result<RegressionFit<F>> {
    check_lengths(xs, ys, 2)?;
    let mx = mean(xs);
    let my = mean(ys);
    let mut sxy = F::zero();
    let mut sxx = F::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx.is_zero() {
        return Err(Error::ZeroVariance);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r = pearson(xs, ys)?;
    Ok(RegressionFit {
        slope,
        intercept,
        r,
        model,
    })
}

/// Ordinary least squares of `y` on `x`.
pub fn fit_linear<F: Real>(xs: &[F], ys: &[F]) -> Result<RegressionFit<F>> {
    least_squares(xs, ys, RegressionModel::Linear)
}

/// Fits `ln y = slope * ln x + intercept`; all inputs must be positive.
pub fn fit_loglog<F: Real>(xs: &[F], ys: &[F]) -> Result<RegressionFit<F>> {
    check_lengths(xs, ys, 2)?;
    if xs.iter().chain(ys).any(|v| *v <= F::zero()) {
        return Err(Error::NonPositiveData);
    }
    let lx: Vec<F> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<F> = ys.iter().map(|v| v.ln()).collect();
    least_squares(&lx, &ly, RegressionModel::LogLog)
}

/// Fits `ln y = slope * x + intercept`; the responses must be positive.
pub fn fit_linlog<F: Real>(xs: &[F], ys: &[F]) -> Result<RegressionFit<F>> {
    check_lengths(xs, ys, 2)?;
    if ys.iter().any(|v| *v <= F::zero()) {
        return Err(Error::NonPositiveData);
    }
    let ly: Vec<F> = ys.iter().map(|v| v.ln()).collect();
    least_squares(xs, &ly, RegressionModel::LinLog)
}
