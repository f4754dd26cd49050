use serde::{Deserialize, Serialize};

use crate::analysis::sequences::SequenceSet;
use crate::bounds;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub n: u32,
    pub log3_e: f64,
    pub fitted: f64,
    pub residual: f64,
}

/// Least-squares line `log₃ e(n) ≈ slope·n + intercept`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub residuals: Vec<Residual>,
    pub range: (u32, u32),
}

/// Ordinary least squares through `(x, y)` points.
pub fn fit_line(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 {
        return Err(Error::Capability("a line fit needs at least two points".into()));
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Capability("a line fit needs two distinct x values".into()));
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Fit `(n, e(n))` pairs directly.
pub fn fit_values(values: &[(u32, u64)]) -> Result<FitResult> {
    let pts: Vec<(f64, f64)> = values.iter().map(|&(n, e)| (n as f64, bounds::log3(e))).collect();
    let (slope, intercept) = fit_line(&pts)?;
    let residuals = values
        .iter()
        .zip(&pts)
        .map(|(&(n, _), &(x, y))| {
            let fitted = slope * x + intercept;
            Residual { n, log3_e: y, fitted, residual: y - fitted }
        })
        .collect();
    let lo = values.iter().map(|v| v.0).min().unwrap();
    let hi = values.iter().map(|v| v.0).max().unwrap();
    Ok(FitResult { slope, intercept, residuals, range: (lo, hi) })
}

/// Fit over the reliable `e` entries with `n` in `range` (all if `None`).
/// At least ten points are required.
pub fn fit_e_asymptote(s: &SequenceSet, range: Option<(u32, u32)>) -> Result<FitResult> {
    let (lo, hi) = range.unwrap_or((1, u32::MAX));
    let values: Vec<(u32, u64)> = s
        .reliable_e()
        .filter(|x| x.index >= lo && x.index <= hi)
        .map(|x| (x.index, x.value))
        .collect();
    if values.len() < 10 {
        return Err(Error::Capability(format!(
            "fit needs at least 10 reliable e(n) values, have {}",
            values.len()
        )));
    }
    fit_values(&values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let (s, i) = fit_line(&[(1.0, 2.0), (3.0, 6.0)]).unwrap();
        assert!((s - 2.0).abs() < 1e-12 && i.abs() < 1e-12);
        let f = fit_values(&[(1, 3), (2, 9)]).unwrap();
        assert!(f.residuals.iter().all(|r| r.residual.abs() < 1e-12));
        assert!(fit_line(&[(1.0, 1.0)]).is_err());
        assert!(fit_line(&[(1.0, 1.0), (1.0, 2.0)]).is_err());
    }

    #[test]
    fn residuals_are_orthogonal() {
        let v: Vec<(u32, u64)> = (1..30).map(|n| (n, 1 + (n as u64 * 7919) % 1000)).collect();
        let f = fit_values(&v).unwrap();
        let s0: f64 = f.residuals.iter().map(|r| r.residual).sum();
        let s1: f64 = f.residuals.iter().map(|r| r.residual * r.n as f64).sum();
        assert!(s0.abs() < 1e-9 && s1.abs() < 1e-9);
    }
}
