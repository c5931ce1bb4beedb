//! Least-squares fit of the quasihyperbolic boundary condition
//! `k(x0, x) ≤ (1/β) log(δ(x0)/δ(x)) + C0`.

use serde::Serialize;

use super::cone::ClassVerdict;
use super::growth::depth_samples;
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::graph::GridGraph;

/// Strata with fewer samples are ignored.
pub const MIN_STRATUM: usize = 10;
pub const MIN_STRATA: usize = 3;
/// Largest admissible positive residual in the deepest decile.
pub const RESIDUAL_LIMIT: f64 = 1.0;
/// Per-stratum residual growth that signals failure.
pub const RESIDUAL_STEP: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stratum {
    /// Depth bin `[lo, lo + 1)` of `log(δ(x0)/δ(x))`.
    pub lo: f64,
    pub count: usize,
    pub max_k: f64,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QhbcFit {
    pub x0: Point2,
    /// `(k(x0, x), log(δ(x0)/δ(x)))`.
    #[serde(skip)]
    pub samples: Vec<(f64, f64)>,
    /// Estimate of `1/β`.
    pub slope: f64,
    /// Estimate of `C0`.
    pub intercept: f64,
    /// Largest positive residual among the deepest tenth of the samples.
    pub max_residual: f64,
    pub strata: Vec<Stratum>,
    pub verdict: ClassVerdict,
}

fn least_squares(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (slope, my - slope * mx)
}

/// Fits the line through the per-stratum maxima of `k` and judges residuals.
pub fn qhbc_from_samples(x0: Point2, samples: Vec<(f64, f64)>) -> Result<QhbcFit> {
    let mut bins: std::collections::BTreeMap<i64, Vec<(f64, f64)>> = Default::default();
    for &(k, s) in &samples {
        bins.entry(s.floor() as i64).or_default().push((s, k));
    }
    let usable: Vec<(i64, Vec<(f64, f64)>)> = bins.into_iter().filter(|(_, v)| v.len() >= MIN_STRATUM).collect();
    if usable.len() < MIN_STRATA {
        return Err(Error::Sample(format!(
            "only {} depth strata hold at least {MIN_STRATUM} samples; increase n_samples",
            usable.len()
        )));
    }
    let tops: Vec<(f64, f64)> = usable
        .iter()
        .map(|(_, v)| *v.iter().max_by(|a, b| a.1.total_cmp(&b.1)).expect("non-empty"))
        .collect();
    let (slope, intercept) = least_squares(&tops);
    let residual = |s: f64, k: f64| k - (slope * s + intercept);
    let strata: Vec<Stratum> = usable
        .iter()
        .zip(&tops)
        .map(|((lo, v), top)| Stratum {
            lo: *lo as f64,
            count: v.len(),
            max_k: top.1,
            max_residual: v.iter().map(|&(s, k)| residual(s, k)).fold(f64::NEG_INFINITY, f64::max),
        })
        .collect();
    let mut depths: Vec<f64> = samples.iter().map(|p| p.1).collect();
    depths.sort_by(f64::total_cmp);
    let cut = depths[((depths.len() as f64) * 0.9).floor() as usize % depths.len()];
    let max_residual = samples
        .iter()
        .filter(|p| p.1 >= cut)
        .map(|&(k, s)| residual(s, k))
        .fold(0.0, f64::max);
    let rising = strata.windows(3).any(|w| {
        w[1].max_residual - w[0].max_residual >= RESIDUAL_STEP && w[2].max_residual - w[1].max_residual >= RESIDUAL_STEP
    });
    let verdict = if rising {
        ClassVerdict::Fails
    } else if max_residual < RESIDUAL_LIMIT {
        ClassVerdict::Holds
    } else {
        ClassVerdict::Inconclusive
    };
    Ok(QhbcFit {
        x0,
        samples,
        slope,
        intercept,
        max_residual,
        strata,
        verdict,
    })
}

pub fn qhbc_fit(g: &GridGraph, x0: Point2, n_samples: usize, seed: u64) -> Result<QhbcFit> {
    let samples = depth_samples(g, x0, n_samples, seed)?
        .into_iter()
        .map(|(_, t, k)| (k, t.ln()))
        .collect();
    qhbc_from_samples(x0, samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_logarithmic_growth_holds() {
        let samples: Vec<(f64, f64)> = (0..600).map(|i| i as f64 / 100.0).map(|s| (s + 0.1, s)).collect();
        let fit = qhbc_from_samples(Point2::ORIGIN, samples).unwrap();
        assert!((fit.slope - 1.0).abs() < 1e-9);
        assert!((fit.intercept - 0.1).abs() < 0.02);
        assert_eq!(fit.verdict, ClassVerdict::Holds);
    }

    #[test]
    fn power_growth_fails() {
        let samples: Vec<(f64, f64)> = (0..800).map(|i| i as f64 / 100.0).map(|s| (s.exp().powf(0.6), s)).collect();
        let fit = qhbc_from_samples(Point2::ORIGIN, samples).unwrap();
        assert_eq!(fit.verdict, ClassVerdict::Fails);
    }

    #[test]
    fn sparse_strata_rejected() {
        let samples = vec![(1.0, 0.5); 25];
        assert!(matches!(qhbc_from_samples(Point2::ORIGIN, samples), Err(Error::Sample(_))));
    }
}
