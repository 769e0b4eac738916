//! Mutual information between a dimension's word values and the values of
//! the sentences those words occur in.

use serde::{Deserialize, Serialize};

use crate::error::{check_same_len, Error, Result};
use crate::raam::{dimension_stats, kernel_weights};

pub const DEFAULT_BINS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MiMode {
    /// Plug-in estimate over an equal-width 2-D histogram.
    Histogram,
    /// Product-of-Gaussian-kernels joint with the entropy-scaled
    /// denominator. Not a proper mutual information; diagnostic only.
    PaperLiteral,
}

/// Mutual information in nats between occurrence-aligned samples.
///
/// `sent_entropy` is only used by [`MiMode::PaperLiteral`].
pub fn mutual_information(
    word_vals: &[f64],
    sent_vals: &[f64],
    mode: MiMode,
    sent_entropy: f64,
    bins: usize,
) -> Result<f64> {
    check_same_len(word_vals.len(), sent_vals.len())?;
    if bins < 2 {
        return Err(Error::InvalidConfig(format!("bins must be at least 2, got {bins}")));
    }
    if word_vals.len() < bins {
        return Err(Error::InsufficientSamples {
            needed: bins,
            found: word_vals.len(),
        });
    }
    match mode {
        MiMode::Histogram => Ok(histogram_mi(word_vals, sent_vals, bins)),
        MiMode::PaperLiteral => paper_literal_mi(word_vals, sent_entropy),
    }
}

fn bin_indices(values: &[f64], bins: usize) -> Vec<usize> {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let width = hi - lo;
    if width.is_nan() || width <= 0.0 {
        return vec![0; values.len()];
    }
    values
        .iter()
        .map(|&v| (((v - lo) / width * bins as f64) as usize).min(bins - 1))
        .collect()
}

fn histogram_mi(x: &[f64], y: &[f64], bins: usize) -> f64 {
    let bx = bin_indices(x, bins);
    let by = bin_indices(y, bins);
    let mut joint = vec![0u64; bins * bins];
    let mut mx = vec![0u64; bins];
    let mut my = vec![0u64; bins];
    for (&i, &j) in bx.iter().zip(&by) {
        joint[i * bins + j] += 1;
        mx[i] += 1;
        my[j] += 1;
    }
    let n = x.len() as f64;
    let mut mi = 0.0;
    for i in 0..bins {
        for j in 0..bins {
            let c = joint[i * bins + j];
            if c == 0 {
                continue;
            }
            let c = c as f64;
            mi += c / n * (c * n / (mx[i] as f64 * my[j] as f64)).ln();
        }
    }
    mi.max(0.0)
}

// The joint is p_a * q_b over every (word sample a, sentence sample b) and
// the denominator's P_j is q_b, so the double sum collapses to
// sum_a p_a ln p_a - ln|E|, independent of the sentence values.
fn paper_literal_mi(x: &[f64], sent_entropy: f64) -> Result<f64> {
    let p = kernel_weights(x, &dimension_stats(x)?);
    let plogp: f64 = p
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.ln())
        .sum();
    Ok(plogp - sent_entropy.abs().ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn uniform_samples(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.random::<f64>()).collect()
    }

    /// Entropy of the marginal histogram, counted independently of the MI code.
    fn marginal_histogram_entropy(x: &[f64], bins: usize) -> f64 {
        let lo = x.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut counts = vec![0usize; bins];
        for &v in x {
            let mut b = ((v - lo) / (hi - lo) * bins as f64).floor() as usize;
            if b == bins {
                b -= 1;
            }
            counts[b] += 1;
        }
        let n = x.len() as f64;
        counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| -(c as f64 / n) * (c as f64 / n).ln())
            .sum()
    }

    #[test]
    fn identical_samples_give_marginal_entropy() {
        let x = uniform_samples(1000, 7);
        let mi = mutual_information(&x, &x, MiMode::Histogram, 0.0, 10).unwrap();
        let h = marginal_histogram_entropy(&x, 10);
        assert!((mi - h).abs() < 1e-12, "mi {mi} vs H {h}");
        let ln10 = 10f64.ln();
        assert!((mi - ln10).abs() / ln10 < 0.05, "mi {mi}");
    }

    #[test]
    fn shuffled_pairing_is_near_zero() {
        let x = uniform_samples(1000, 7);
        let mut y = x.clone();
        y.shuffle(&mut ChaCha8Rng::seed_from_u64(11));
        let mi = mutual_information(&x, &y, MiMode::Histogram, 0.0, 10).unwrap();
        // plug-in bias under independence is about (bins-1)^2 / (2n) = 0.0405
        assert!(mi < 0.05, "mi {mi}");
    }

    #[test]
    fn constant_marginal_is_zero() {
        let x = vec![3.5; 200];
        let y = uniform_samples(200, 3);
        assert_eq!(mutual_information(&x, &y, MiMode::Histogram, 0.0, 16).unwrap(), 0.0);
        assert_eq!(mutual_information(&y, &x, MiMode::Histogram, 0.0, 16).unwrap(), 0.0);
    }

    #[test]
    fn errors() {
        let x = uniform_samples(20, 1);
        assert!(matches!(
            mutual_information(&x, &x[..10], MiMode::Histogram, 0.0, 4),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            mutual_information(&x[..3], &x[..3], MiMode::Histogram, 0.0, 4),
            Err(Error::InsufficientSamples { needed: 4, found: 3 })
        ));
        assert!(matches!(
            mutual_information(&x, &x, MiMode::Histogram, 0.0, 1),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn paper_literal_matches_double_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x: Vec<f64> = (0..12).map(|_| rng.random_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..12).map(|_| rng.random_range(-2.0..3.0)).collect();
        let ent = 1.7;

        // literal grid evaluation of the product-of-Gaussians joint
        let gauss = |v: &[f64]| -> Vec<f64> {
            let m = v.iter().sum::<f64>() / v.len() as f64;
            let s2 = v.iter().map(|a| (a - m).powi(2)).sum::<f64>() / v.len() as f64;
            v.iter().map(|a| (-(a - m).powi(2) / (2.0 * s2)).exp()).collect()
        };
        let (gx, gy) = (gauss(&x), gauss(&y));
        let z: f64 = gx.iter().sum::<f64>() * gy.iter().sum::<f64>();
        let qsum: f64 = gy.iter().sum();
        let mut expected = 0.0;
        for a in &gx {
            for b in &gy {
                let pxy = a * b / z;
                let pj = b / qsum;
                expected += pxy * (pxy / (pj * ent)).ln();
            }
        }
        let got = mutual_information(&x, &y, MiMode::PaperLiteral, ent, 4).unwrap();
        assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
    }
}
