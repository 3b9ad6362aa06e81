use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::EvalError;

/// Ranks starting at 1, tied values sharing the mean of their positions.
pub fn average_ranks<F: Float>(values: &[F]) -> Vec<F> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| {
        values[i]
            .partial_cmp(&values[j])
            .expect("ranked values are not NaN")
    });
    let mut ranks = vec![F::zero(); values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // Positions start..end hold equal values; ranks are 1-based.
        let mean = F::from(start + end + 1).expect("small integer") / F::from(2).expect("two");
        for &i in &order[start..end] {
            ranks[i] = mean;
        }
        start = end;
    }
    ranks
}

fn pearson<F: Float>(x: &[F], y: &[F]) -> Option<F> {
    let n = F::from(x.len())?;
    let mx = x.iter().fold(F::zero(), |s, v| s + *v) / n;
    let my = y.iter().fold(F::zero(), |s, v| s + *v) / n;
    let (mut sxy, mut sxx, mut syy) = (F::zero(), F::zero(), F::zero());
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (*a - mx, *b - my);
        sxy = sxy + dx * dy;
        sxx = sxx + dx * dx;
        syy = syy + dy * dy;
    }
    if sxx == F::zero() || syy == F::zero() {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// Spearman's rank correlation: Pearson's coefficient of the average ranks.
pub fn spearman<F: Float>(x: &[F], y: &[F]) -> Result<F, EvalError> {
    if x.len() != y.len() {
        return Err(EvalError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 3 {
        return Err(EvalError::InsufficientData(x.len()));
    }
    if x.iter().chain(y).any(|v| v.is_nan()) {
        return Err(EvalError::NotANumber);
    }
    let rho = pearson(&average_ranks(x), &average_ranks(y)).ok_or(EvalError::ConstantInput)?;
    // Guard against rounding just outside [-1, 1].
    Ok(rho.max(-F::one()).min(F::one()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub p_value: f64,
}

/// Survival function of the chi-square distribution with one degree of freedom.
pub fn chi2_sf_1dof(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    statrs::function::erf::erfc((x / 2.0).sqrt())
}

/// Pearson's chi-square test with Yates' continuity correction on the 2x2
/// table `[[a, b], [c, d]]`. The correction never pushes `|ad - bc|` below
/// zero, so tables with identical row proportions give a statistic of 0.
/// Returns `None` when a row or column total is zero.
pub fn chi2_yates(table: [[u64; 2]; 2]) -> Option<ChiSquare> {
    let [[a, b], [c, d]] = table.map(|r| r.map(|v| v as f64));
    let n = a + b + c + d;
    let margins = (a + b) * (c + d) * (a + c) * (b + d);
    if margins == 0.0 {
        return None;
    }
    let diff = ((a * d - b * c).abs() - n / 2.0).max(0.0);
    let statistic = n * diff * diff / margins;
    Some(ChiSquare {
        statistic,
        p_value: chi2_sf_1dof(statistic),
    })
}
