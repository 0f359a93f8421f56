//! Least-squares line through `(n, log₁₀ v)`.

use sealab::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SemilogFit {
    pub slope: f64,
    pub intercept: f64,
    /// `log₁₀ v_i − (slope·n_i + intercept)` in input order.
    pub residuals: Vec<f64>,
}

impl SemilogFit {
    /// Value of the fitted line at `n`, in log₁₀ units.
    pub fn predict_log10(&self, n: f64) -> f64 {
        self.slope * n + self.intercept
    }

    /// `n` at which the fitted line reaches `value`.
    pub fn crossing(&self, value: f64) -> Option<f64> {
        if self.slope == 0.0 || value <= 0.0 {
            return None;
        }
        Some((value.log10() - self.intercept) / self.slope)
    }
}

/// Ordinary least squares on `(n, log₁₀ variance)`; needs at least three
/// points and strictly positive variances.
pub fn fit_semilog_slope(points: &[(f64, f64)]) -> Result<SemilogFit> {
    if points.len() < 3 {
        return Err(Error::Argument(format!(
            "need at least 3 points for a fit, got {}",
            points.len()
        )));
    }
    if let Some(&(n, v)) = points.iter().find(|(_, v)| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::Argument(format!("variance at n={n} is {v}, must be positive")));
    }
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.log10()).collect();
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Argument("all points share the same n".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = xs.iter().zip(&ys).map(|(x, y)| y - (slope * x + intercept)).collect();
    Ok(SemilogFit {
        slope,
        intercept,
        residuals,
    })
}
