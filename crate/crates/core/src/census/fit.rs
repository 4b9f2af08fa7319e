use serde::{Deserialize, Serialize};

use crate::analytic::{d4_constant, AnalyticValue};
use crate::error::{Error, Result};

use super::{census_records, tally_at};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitPoint {
    pub x: u64,
    pub count: u64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitSummary {
    pub points: Vec<FitPoint>,
    /// Least-squares slope of count against X through the origin.
    pub c_hat: f64,
    /// Log-log slope of |count - c_hat X| against X; None when the residuals vanish.
    pub residual_exponent: Option<f64>,
}

/// Least-squares slope of log y against log x.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}

/// Fit count ~ c X through the origin.
pub fn fit_counts(points: &[(u64, u64)]) -> Result<FitSummary> {
    if points.len() < 2 {
        return Err(Error::domain(format!("fit needs at least two bounds, got {}", points.len())));
    }
    if points.iter().all(|p| p.0 == points[0].0) {
        return Err(Error::domain("fit bounds are all equal"));
    }
    if points.iter().any(|p| p.0 == 0) {
        return Err(Error::domain("fit bound 0"));
    }
    let sxy: f64 = points.iter().map(|&(x, n)| x as f64 * n as f64).sum();
    let sxx: f64 = points.iter().map(|&(x, _)| (x as f64).powi(2)).sum();
    let c_hat = sxy / sxx;
    let resid: Vec<(f64, f64)> =
        points.iter().map(|&(x, n)| (x as f64, (n as f64 - c_hat * x as f64).abs())).collect();
    let scale = points.iter().map(|&(_, n)| n as f64).fold(1.0, f64::max);
    let degenerate = resid.iter().all(|r| r.1 <= 1e-9 * scale);
    let residual_exponent = if degenerate { None } else { loglog_slope(&resid) };
    Ok(FitSummary {
        points: points
            .iter()
            .map(|&(x, count)| FitPoint { x, count, ratio: count as f64 / x as f64 })
            .collect(),
        c_hat,
        residual_exponent,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FitReport {
    pub d4: FitSummary,
    /// Log-log growth exponent of N_C4.
    pub c4_exponent: Option<f64>,
    pub c4_counts: Vec<(u64, u64)>,
    pub v4_counts: Vec<(u64, u64)>,
    pub constant: AnalyticValue,
    pub truncation: u64,
    pub tail_estimate: f64,
    /// |c_hat - constant| / constant, against the truncated sum.
    pub relative_gap: f64,
}

/// Census at every bound (one enumeration at the largest), fit, and compare to the constant.
pub fn fit_and_report(bounds: &[u64], truncation: u64, jobs: usize) -> Result<FitReport> {
    if bounds.len() < 4 {
        return Err(Error::domain(format!("fit needs at least four bounds, got {}", bounds.len())));
    }
    let max = *bounds.iter().max().expect("nonempty");
    let records = census_records(max, jobs)?;
    let mut d4 = Vec::new();
    let mut c4 = Vec::new();
    let mut v4 = Vec::new();
    for &x in bounds {
        let r = tally_at(&records, x)?;
        d4.push((x, r.n_d4));
        c4.push((x, r.n_c4));
        v4.push((x, r.n_v4));
    }
    let summary = fit_counts(&d4)?;
    let c4_exponent = loglog_slope(&c4.iter().map(|&(x, n)| (x as f64, n as f64)).collect::<Vec<_>>());
    let constant = d4_constant(truncation)?;
    let mid = constant.value.midpoint;
    Ok(FitReport {
        relative_gap: (summary.c_hat - mid).abs() / mid,
        d4: summary,
        c4_exponent,
        c4_counts: c4,
        v4_counts: v4,
        constant: constant.value,
        truncation,
        tail_estimate: constant.tail_estimate,
    })
}
