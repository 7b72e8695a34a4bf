//! Analytic soft walls `U(r)` and the effective potential
//! `V(r) = ℓ(ℓ+1)/r² + U(r)`.

use crate::error::{Error, Result};
use crate::numerics::brent_root;

#[derive(Debug, Clone, PartialEq)]
pub enum SoftWall {
    /// `U(r) = ω² r^K`.
    PowerLaw { omega: f64, k: f64 },
    /// `U(r) = offset + A x + B x² + Σ_i c_i x^{i+3}` with `x = r − T`.
    Osculating {
        t: f64,
        a: f64,
        b: f64,
        offset: f64,
        cubic: Vec<f64>,
    },
}

impl SoftWall {
    pub fn power_law(omega: f64, k: f64) -> Result<Self> {
        let w = SoftWall::PowerLaw { omega, k };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SoftWall::PowerLaw { omega, k } => {
                if !(*omega > 0.0 && omega.is_finite() && *k >= 1.0 && k.is_finite()) {
                    return Err(Error::InvalidArgument(format!(
                        "power-law wall needs ω > 0 and K ≥ 1, got ω = {omega}, K = {k}"
                    )));
                }
            }
            SoftWall::Osculating { t, a, b, offset, cubic } => {
                let finite = [*t, *a, *b, *offset].iter().chain(cubic).all(|v| v.is_finite());
                if !(finite && *t > 0.0) {
                    return Err(Error::InvalidArgument(format!(
                        "osculating wall needs finite coefficients and T > 0, got {self:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `d^m U / dr^m` at `r`, from the closed forms (no differencing).
    pub fn derivative(&self, order: u32, r: f64) -> f64 {
        match self {
            SoftWall::PowerLaw { omega, k } => {
                let falling: f64 = (0..order).map(|i| k - i as f64).product();
                omega * omega * falling * r.powf(k - order as f64)
            }
            SoftWall::Osculating { t, a, b, offset, cubic } => {
                let mut coeffs = vec![*offset, *a, *b];
                coeffs.extend(cubic);
                polynomial_derivative(&coeffs, order, r - t)
            }
        }
    }

    pub fn value(&self, r: f64) -> f64 {
        self.derivative(0, r)
    }
}

/// `d^m/dx^m Σ c_i x^i`.
pub fn polynomial_derivative(coeffs: &[f64], order: u32, x: f64) -> f64 {
    let m = order as usize;
    coeffs.iter().enumerate().skip(m).rev().fold(0.0, |acc, (i, &c)| {
        let falling: f64 = ((i - m + 1)..=i).map(|j| j as f64).product();
        acc * x + c * falling
    })
}

/// `d^m/dr^m [c / r²] = c (−1)^m (m+1)! r^{−2−m}`.
pub fn centrifugal_derivative(centrifugal: f64, order: u32, r: f64) -> f64 {
    let fact: f64 = (1..=order + 1).map(|j| j as f64).product();
    let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
    centrifugal * sign * fact * r.powi(-2 - order as i32)
}

/// `d^m V / dr^m` of the effective potential with centrifugal strength
/// `ℓ(ℓ+1)`.
pub fn effective_derivative(wall: &SoftWall, centrifugal: f64, order: u32, r: f64) -> f64 {
    centrifugal_derivative(centrifugal, order, r) + wall.derivative(order, r)
}

pub fn centrifugal_strength(ell: u32) -> f64 {
    let l = ell as f64;
    l * (l + 1.0)
}

/// Location `T` of the minimum of `V`; closed form for power laws,
/// `T^{K+2} = 2ℓ(ℓ+1)/(Kω²)`, numeric otherwise.
pub fn minimum_t(wall: &SoftWall, ell: u32) -> Result<f64> {
    wall.validate()?;
    if ell == 0 {
        return Err(Error::InvalidArgument("the expansion needs ℓ ≥ 1".into()));
    }
    match wall {
        SoftWall::PowerLaw { omega, k } => Ok((2.0 * centrifugal_strength(ell) / (k * omega * omega)).powf(1.0 / (k + 2.0))),
        SoftWall::Osculating { .. } => locate_minimum(wall, centrifugal_strength(ell)),
    }
}

/// Numeric root of `V'(r) = 0`: the first sign change from negative to
/// positive on a geometric scan of `(0, ∞)`, refined by Brent's method.
pub fn locate_minimum(wall: &SoftWall, centrifugal: f64) -> Result<f64> {
    wall.validate()?;
    if !(centrifugal > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "centrifugal strength {centrifugal} must be positive"
        )));
    }
    let dv = |r: f64| effective_derivative(wall, centrifugal, 1, r);
    let (lo, hi, steps) = (1e-4_f64, 1e6_f64, 4000);
    let ratio = (hi / lo).powf(1.0 / steps as f64);
    let mut a = lo;
    let mut fa = dv(a);
    for _ in 0..steps {
        let b = a * ratio;
        let fb = dv(b);
        if fa < 0.0 && fb >= 0.0 {
            return brent_root(dv, a, b, 1e-15 * b);
        }
        a = b;
        fa = fb;
    }
    Err(Error::Confinement(format!("V'(r) never turns positive on [{lo}, {hi}]")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_law_closed_form_minimum() {
        let w = SoftWall::power_law(1.0, 2.0).unwrap();
        let t = minimum_t(&w, 9).unwrap();
        assert!((t - 90f64.powf(0.25)).abs() < 1e-14);
        assert!((t - 3.0800702882).abs() < 1e-9);
        for ell in [1u32, 5, 20] {
            assert!((minimum_t(&w, ell).unwrap().powi(4) - centrifugal_strength(ell)).abs() < 1e-9 * centrifugal_strength(ell));
        }
    }

    #[test]
    fn numeric_minimum_agrees_with_closed_form() {
        for (omega, k) in [(1.0, 2.0), (0.5, 4.0), (2.0, 1.0), (1.3, 3.5)] {
            let w = SoftWall::power_law(omega, k).unwrap();
            for ell in [1u32, 7, 40] {
                let closed = minimum_t(&w, ell).unwrap();
                let numeric = locate_minimum(&w, centrifugal_strength(ell)).unwrap();
                assert!((closed - numeric).abs() < 1e-10 * closed);
            }
        }
    }

    #[test]
    fn power_law_derivatives() {
        let w = SoftWall::power_law(2.0, 3.0).unwrap();
        let r = 1.7;
        assert!((w.derivative(0, r) - 4.0 * r.powi(3)).abs() < 1e-12);
        assert!((w.derivative(2, r) - 24.0 * r).abs() < 1e-12);
        assert!(w.derivative(4, r).abs() < 1e-12);
    }

    #[test]
    fn polynomial_and_centrifugal_derivatives() {
        let c = [1.0, -2.0, 0.5, 3.0];
        assert!((polynomial_derivative(&c, 0, 2.0) - (1.0 - 4.0 + 2.0 + 24.0)).abs() < 1e-12);
        assert!((polynomial_derivative(&c, 1, 2.0) - (-2.0 + 2.0 + 36.0)).abs() < 1e-12);
        assert!((polynomial_derivative(&c, 3, 2.0) - 18.0).abs() < 1e-12);
        assert_eq!(polynomial_derivative(&c, 4, 2.0), 0.0);
        assert!((centrifugal_derivative(6.0, 3, 2.0) - 6.0 * -24.0 / 32.0).abs() < 1e-12);
    }

    #[test]
    fn non_confining_wall_is_rejected() {
        let w = SoftWall::Osculating {
            t: 1.0,
            a: -1.0,
            b: 0.0,
            offset: 0.0,
            cubic: vec![],
        };
        assert!(matches!(locate_minimum(&w, 2.0), Err(Error::Confinement(_))));
        assert!(SoftWall::power_law(0.0, 2.0).is_err());
        assert!(SoftWall::power_law(1.0, 0.5).is_err());
    }
}
