//! Correlation and simple linear regression.

use serde::{Deserialize, Serialize};

use crate::error::{check_same_len, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub pearson_r: f64,
    pub n: usize,
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Centered sums `(Sxx, Syy, Sxy)`.
fn centered_sums(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let (mx, my) = (mean(x), mean(y));
    x.iter()
        .zip(y)
        .fold((0.0, 0.0, 0.0), |(sxx, syy, sxy), (&a, &b)| {
            let (dx, dy) = (a - mx, b - my);
            (sxx + dx * dx, syy + dy * dy, sxy + dx * dy)
        })
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<()> {
    check_same_len(x.len(), y.len())?;
    if x.len() < 2 {
        return Err(Error::InsufficientSamples {
            needed: 2,
            found: x.len(),
        });
    }
    Ok(())
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    let (sxx, syy, sxy) = centered_sums(x, y);
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// 1-based ranks; tied values share the average of the ranks they span.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && x[order[end]] == x[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    ranks
}

pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    pearson(&average_ranks(x), &average_ranks(y))
}

/// Ordinary least squares `y = slope * x + intercept`.
pub fn ols_fit(x: &[f64], y: &[f64]) -> Result<RegressionFit> {
    check_pair(x, y)?;
    let (sxx, syy, sxy) = centered_sums(x, y);
    if sxx == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let slope = sxy / sxx;
    let intercept = mean(y) - slope * mean(x);
    // a constant y is a perfect horizontal fit with no defined correlation
    let pearson_r = if syy == 0.0 {
        0.0
    } else {
        (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0)
    };
    Ok(RegressionFit {
        slope,
        intercept,
        pearson_r,
        n: x.len(),
    })
}
