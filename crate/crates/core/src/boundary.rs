//! Replacing the Robin condition by a Dirichlet condition at a shifted
//! endpoint: the shift equation, its large-ℓ limit, and square wells.

use std::f64::consts::FRAC_PI_2;

use crate::basis::{Basis, BasisSpec};
use crate::error::{Error, Result};
use crate::numerics::brent_root;
use crate::specialfn::CharacteristicKind;

/// Infinitely deep square well `(0, Y)` holding the centrifugal potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareWellSpec {
    pub endpoint: f64,
}

impl SquareWellSpec {
    pub fn new(endpoint: f64) -> Result<Self> {
        if !(endpoint > 0.0 && endpoint.is_finite()) {
            return Err(Error::InvalidArgument(format!("well endpoint {endpoint} must be positive")));
        }
        Ok(Self { endpoint })
    }

    /// Eigenbasis of `−∂² + ℓ(ℓ+1)/r²` with Dirichlet walls at 0 and `Y`.
    pub fn basis(&self, ell: u32, count: usize) -> Result<Basis> {
        Basis::build(BasisSpec::new(
            ell,
            CharacteristicKind::ShiftedDirichlet(self.endpoint),
            count,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftResult {
    pub s: f64,
    pub ell: u32,
    pub mu: f64,
}

/// `(μ² + κ² + λ)² − α(R)² (μ² + κ²)` with `κ² = ℓ(ℓ+1)` at `R = 1`.
pub fn edge_characteristic_residual(mu: f64, lambda: f64, ell: u32, alpha_r: f64) -> f64 {
    let kappa_sq = (ell as f64) * (ell as f64 + 1.0);
    let q = mu * mu + kappa_sq;
    (q + lambda).powi(2) - alpha_r * alpha_r * q
}

/// Positive roots `μ < mu_max` of the edge characteristic relation.
pub fn edge_frequencies(lambda: f64, ell: u32, alpha_r: f64, mu_max: f64) -> Result<Vec<f64>> {
    if !(mu_max > 0.0) {
        return Err(Error::InvalidArgument(format!("frequency window {mu_max} must be positive")));
    }
    let f = |mu: f64| edge_characteristic_residual(mu, lambda, ell, alpha_r);
    let steps = 4000;
    let mut roots = Vec::new();
    let mut a = 0.0;
    let mut fa = f(a);
    for i in 1..=steps {
        let b = mu_max * i as f64 / steps as f64;
        let fb = f(b);
        if fa.signum() * fb.signum() < 0.0 {
            roots.push(brent_root(f, a, b, 1e-14 * b.max(1.0))?);
        }
        a = b;
        fa = fb;
    }
    Ok(roots)
}

/// Root `S > R` nearest `R` of `μ cos μ(R−S) + (ℓ/R) sin μ(R−S) = 0`.
pub fn solve_shift(mu: f64, ell: u32, radius: f64) -> Result<ShiftResult> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::InvalidArgument(format!("edge frequency μ = {mu} must be positive")));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!("radius {radius} must be positive")));
    }
    if ell == 0 {
        return Err(Error::Domain("the shift equation has no finite root at ℓ = 0".into()));
    }
    let l = ell as f64 / radius;
    let g = |s: f64| {
        let x = mu * (radius - s);
        mu * x.cos() + l * x.sin()
    };
    // g(R) = μ > 0 and g(R + π/(2μ)) = −ℓ/R < 0 on the first branch
    let hi = radius + FRAC_PI_2 / mu;
    let s = brent_root(g, radius, hi, 1e-15 * hi).map_err(|e| Error::Branch(e.to_string()))?;
    if !(s > radius && s < hi) {
        return Err(Error::Branch(format!("μ(S−R) = {} outside (0, π/2)", mu * (s - radius))));
    }
    Ok(ShiftResult { s, ell, mu })
}

/// `S(ℓ) = 1 + 1/ℓ`.
pub fn effective_shift(ell: u32) -> Result<f64> {
    if ell == 0 {
        return Err(Error::Domain("effective shift is undefined at ℓ = 0".into()));
    }
    Ok(1.0 + 1.0 / ell as f64)
}

/// Dirichlet basis on `(0, 1 + 1/ℓ)` standing in for the Robin basis.
pub fn shifted_dirichlet_basis(ell: u32, count: usize) -> Result<Basis> {
    SquareWellSpec::new(effective_shift(ell)?)?.basis(ell, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::log_log_slope;
    use crate::specialfn::characteristic_roots;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn closed_shift(mu: f64, ell: u32) -> f64 {
        1.0 + (mu / ell as f64).atan() / mu
    }

    #[test]
    fn edge_residual_examples() {
        let k2 = 12.0;
        assert_eq!(edge_characteristic_residual(1.0, -k2 - 1.0, 3, 0.0), 0.0);
        assert_eq!(edge_characteristic_residual(2.0, -k2 - 4.0, 3, 0.0), 0.0);
        let roots = edge_frequencies(-k2 - 5.0, 3, 1.0, 20.0).unwrap();
        assert!(!roots.is_empty());
        for mu in roots {
            assert!(edge_characteristic_residual(mu, -k2 - 5.0, 3, 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn shift_matches_arctan_form() {
        let r = solve_shift(PI, 100, 1.0).unwrap();
        assert!((r.s - closed_shift(PI, 100)).abs() < 1e-13);
        assert!((r.s - 1.0099967121).abs() < 1e-10);
        let ten = solve_shift(PI, 10, 1.0).unwrap();
        assert!((10.0 * (ten.s - 1.0) - 10.0 * (PI / 10.0).atan() / PI).abs() < 1e-12);
        assert!(solve_shift(PI, 100_000, 1.0).unwrap().s - 1.0 < 1e-4);
    }

    #[test]
    fn shift_decays_like_inverse_ell() {
        let ells = [10.0, 20.0, 40.0, 80.0, 160.0];
        for mu in [1.0, PI, 10.0] {
            let excess: Vec<f64> = ells
                .iter()
                .map(|&l| solve_shift(mu, l as u32, 1.0).unwrap().s - 1.0)
                .collect();
            let slope = log_log_slope(&ells, &excess).unwrap();
            assert!((slope + 1.0).abs() < 0.1, "mu={mu}: slope {slope}");
            let scaled = 1000.0 * (solve_shift(mu, 1000, 1.0).unwrap().s - 1.0);
            assert!((scaled - 1.0).abs() < 1e-3 * mu * mu);
        }
    }

    #[test]
    fn effective_shift_values() {
        assert_eq!(effective_shift(5).unwrap(), 1.2);
        assert_eq!(effective_shift(1).unwrap(), 2.0);
        assert!((effective_shift(1_000_000).unwrap() - 1.0).abs() < 1e-5);
        assert!(matches!(effective_shift(0), Err(Error::Domain(_))));
        assert!(matches!(solve_shift(1.0, 0, 1.0), Err(Error::Domain(_))));
        assert!(solve_shift(0.0, 3, 1.0).is_err());
    }

    #[test]
    fn shifted_basis_first_eigenvalue() {
        let b = shifted_dirichlet_basis(1, 3).unwrap();
        // first zero of J_{3/2}: tan x = x
        let z = brent_root(|x: f64| x.tan() - x, 4.4, 4.6, 1e-14).unwrap();
        assert!((b.modes[0].eigenvalue - (z / 2.0).powi(2)).abs() < 1e-10);
        assert!((b.modes[0].eigenvalue - 5.0477).abs() < 1e-4);
    }

    #[test]
    fn unit_well_recovers_dirichlet() {
        let well = SquareWellSpec::new(1.0).unwrap().basis(4, 5).unwrap();
        let d = characteristic_roots(CharacteristicKind::Dirichlet, 4, 5).unwrap();
        for (m, k) in well.modes.iter().zip(&d) {
            assert!((m.wavenumber - k).abs() < 1e-12);
        }
        assert!(SquareWellSpec::new(0.0).is_err());
    }

    #[test]
    fn shifted_spectrum_approaches_robin() {
        let ells = [5u32, 10, 20, 40];
        let gaps: Vec<f64> = ells
            .iter()
            .map(|&ell| {
                let shifted = shifted_dirichlet_basis(ell, 5).unwrap();
                let robin = characteristic_roots(CharacteristicKind::Robin, ell, 5).unwrap();
                shifted
                    .modes
                    .iter()
                    .zip(&robin)
                    .map(|(m, k)| (m.eigenvalue - k * k).abs() / (k * k))
                    .fold(0.0, f64::max)
            })
            .collect();
        let x: Vec<f64> = ells.iter().map(|&l| l as f64).collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]));
        assert!(log_log_slope(&x, &gaps).unwrap() <= -0.9);
    }

    proptest! {
        #[test]
        fn shift_exceeds_radius(mu in 0.01f64..50.0, ell in 1u32..500) {
            let r = solve_shift(mu, ell, 1.0).unwrap();
            prop_assert!(r.s > 1.0);
            prop_assert!((r.s - closed_shift(mu, ell)).abs() < 1e-12);
        }
    }
}
