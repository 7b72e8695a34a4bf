//! Sturm-sequence bisection for symmetric tridiagonal matrices.

use crate::error::{Error, Result};

/// A symmetric tridiagonal matrix given by its diagonal and the squares of its
/// off-diagonal entries. Storing squares lets diagonally-similar
/// nonsymmetric tridiagonals (b_i c_i > 0) be handled without explicit
/// symmetrization.
#[derive(Debug, Clone)]
pub struct SymmetricTridiagonal {
    diag: Vec<f64>,
    off_sq: Vec<f64>,
}

impl SymmetricTridiagonal {
    pub fn new(diag: Vec<f64>, off_sq: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off_sq.len() + 1 != diag.len() {
            return Err(Error::InvalidArgument(format!(
                "tridiagonal with {} diagonal and {} off-diagonal entries",
                diag.len(),
                off_sq.len()
            )));
        }
        if off_sq.iter().any(|&b| b < 0.0) {
            return Err(Error::InvalidArgument("off-diagonal products must be nonnegative".into()));
        }
        Ok(Self { diag, off_sq })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let denom = if q == 0.0 {
                f64::EPSILON * (self.off_sq[i - 1].sqrt() + 1.0)
            } else {
                q
            };
            q = self.diag[i] - x - self.off_sq[i - 1] / denom;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off_sq[i - 1].sqrt() } else { 0.0 };
            let right = if i + 1 < n { self.off_sq[i].sqrt() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `index`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, index: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        let span = (hi - lo).abs().max(1.0);
        lo -= 1e-12 * span;
        hi += 1e-12 * span;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 4.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// The `count` smallest eigenvalues in increasing order.
    pub fn lowest(&self, count: usize) -> Vec<f64> {
        (0..count.min(self.len())).map(|k| self.eigenvalue(k)).collect()
    }
}
