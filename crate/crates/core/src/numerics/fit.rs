//! Least-squares slope fits.

use crate::error::{Error, Result};

/// Least-squares slope of `y` against `x`.
pub fn linear_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "slope fit needs two or more paired points, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("slope fit over a single abscissa".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    Ok(sxy / sxx)
}

/// Slope of `log |y|` against `log x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.iter().any(|&v| !(v > 0.0)) || y.iter().any(|&v| v == 0.0 || !v.is_finite()) {
        return Err(Error::Domain(
            "log-log fit needs positive abscissae and nonzero ordinates".into(),
        ));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.abs().ln()).collect();
    linear_slope(&lx, &ly)
}
