//! Small statistics toolbox shared by the batch aggregator, the validation
//! suite and the CLI: sample summaries with normal-approximation confidence
//! intervals, an exact binomial acceptance interval, Kolmogorov-Smirnov
//! machinery for exponential fits, and quantile binning.

use statrs::distribution::{Binomial, ChiSquared, ContinuousCDF, DiscreteCDF};

/// Mean / variance / 95% CI of one metric. Degenerate (n = 1) samples carry a
/// zero-width interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub n: usize,
    pub mean: f64,
    /// Unbiased sample variance; 0 for n < 2.
    pub variance: f64,
    /// Half-width of the 95% normal-approximation interval around the mean.
    pub ci95_half_width: f64,
}

impl SampleStats {
    pub fn from_samples(xs: &[f64]) -> Option<Self> {
        if xs.is_empty() {
            return None;
        }
        let n = xs.len();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let variance = if n > 1 {
            xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        let ci95_half_width = 1.959964 * (variance / n as f64).sqrt();
        Some(Self {
            n,
            mean,
            variance,
            ci95_half_width,
        })
    }
}

/// 95% normal-approximation half-width for a binomial proportion.
pub fn proportion_ci95_half_width(successes: usize, trials: usize) -> f64 {
    if trials == 0 {
        return 0.0;
    }
    let p = successes as f64 / trials as f64;
    1.959964 * (p * (1.0 - p) / trials as f64).sqrt()
}

/// Central exact binomial acceptance interval: the pair `(k_lo, k_hi)` with
/// `P(K < k_lo) <= alpha/2` and `P(K > k_hi) <= alpha/2` under
/// `K ~ Binomial(n, p)`, so `P(k_lo <= K <= k_hi) >= 1 - alpha`.
pub fn binomial_central_interval(n: u64, p: f64, alpha: f64) -> (u64, u64) {
    let dist = Binomial::new(p, n).expect("valid binomial parameters");
    let lo_target = alpha / 2.0;
    let hi_target = 1.0 - alpha / 2.0;
    let mut k_lo = 0;
    while k_lo < n && dist.cdf(k_lo) <= lo_target {
        k_lo += 1;
    }
    let mut k_hi = k_lo;
    while k_hi < n && dist.cdf(k_hi) < hi_target {
        k_hi += 1;
    }
    (k_lo, k_hi)
}

/// Two-sided Kolmogorov-Smirnov distance between a sample and a CDF.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs: Vec<f64> = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (k, x) in xs.iter().enumerate() {
        let f = cdf(*x);
        d = d.max((f - k as f64 / n).abs());
        d = d.max((f - (k as f64 + 1.0) / n).abs());
    }
    d
}

/// Asymptotic two-sided KS critical value at level 5%: `1.358 / sqrt(n)`.
pub fn ks_critical_5pct(n: usize) -> f64 {
    1.358 / (n as f64).sqrt()
}

/// Maximum-likelihood rate of an exponential sample, `1 / mean`.
pub fn exponential_rate_mle(samples: &[f64]) -> f64 {
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    1.0 / mean
}

/// KS distance of a sample against `Exponential(rate)`.
pub fn ks_exponential(samples: &[f64], rate: f64) -> f64 {
    ks_statistic(samples, |x| -(-rate * x).exp_m1())
}

/// Quantile of the chi-squared distribution with `dof` degrees of freedom.
pub fn chi_squared_quantile(p: f64, dof: f64) -> f64 {
    ChiSquared::new(dof)
        .expect("positive degrees of freedom")
        .inverse_cdf(p)
}

/// Equal-count bin edges between the `lo_q` and `hi_q` quantiles of a sample.
/// Returns `nbins + 1` ascending edges.
pub fn quantile_bin_edges(samples: &[f64], lo_q: f64, hi_q: f64, nbins: usize) -> Vec<f64> {
    assert!(!samples.is_empty() && nbins >= 1 && lo_q < hi_q);
    let mut xs: Vec<f64> = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q = |p: f64| {
        let idx = (p * (xs.len() - 1) as f64).round() as usize;
        xs[idx.min(xs.len() - 1)]
    };
    (0..=nbins)
        .map(|k| q(lo_q + (hi_q - lo_q) * k as f64 / nbins as f64))
        .collect()
}
