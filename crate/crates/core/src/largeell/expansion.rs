//! Expansion of a single soft-wall channel about the minimum of its
//! effective potential, and Rayleigh–Schrödinger corrections of the
//! resulting perturbed oscillator `−∂² + ξ² + κ₃ξ³ + κ₄ξ⁴`.

use super::oscillator::power_matrix;
use super::wells::{centrifugal_strength, effective_derivative, locate_minimum, minimum_t, SoftWall};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionPoint {
    pub ell: u32,
    /// Minimum of `V`.
    pub t: f64,
    /// Length scale with `σ⁻⁴ = V''(T)/2`.
    pub sigma: f64,
    /// `σ² V(T)`.
    pub v: f64,
    pub kappa3: f64,
    pub kappa4: f64,
}

impl ExpansionPoint {
    /// `V(T) = v / σ²`.
    pub fn potential_min(&self) -> f64 {
        self.v / (self.sigma * self.sigma)
    }
}

/// Builds the expansion point from analytic derivatives of `V` at `T`.
pub fn expansion_point(wall: &SoftWall, ell: u32) -> Result<ExpansionPoint> {
    let t = minimum_t(wall, ell)?;
    point_at(wall, centrifugal_strength(ell), t, ell)
}

/// As [`expansion_point`] for a possibly non-integer centrifugal strength,
/// with `T` always located numerically.
pub fn expansion_point_for_strength(wall: &SoftWall, centrifugal: f64) -> Result<ExpansionPoint> {
    let t = locate_minimum(wall, centrifugal)?;
    let ell = ((0.25 + centrifugal).sqrt() - 0.5).round().max(0.0) as u32;
    point_at(wall, centrifugal, t, ell)
}

fn point_at(wall: &SoftWall, centrifugal: f64, t: f64, ell: u32) -> Result<ExpansionPoint> {
    let d = |m: u32| effective_derivative(wall, centrifugal, m, t);
    let curvature = d(2);
    if !(curvature > 0.0) {
        return Err(Error::Saddle { curvature });
    }
    let sigma = (2.0 / curvature).powf(0.25);
    Ok(ExpansionPoint {
        ell,
        t,
        sigma,
        v: sigma * sigma * d(0),
        kappa3: sigma.powi(5) * d(3) / 6.0,
        kappa4: sigma.powi(6) * d(4) / 24.0,
    })
}

/// Perturbed-oscillator levels `[ε₀, ...]` for level `n`.
///
/// * order 0: `[2n+1]`
/// * order 1: adds the first-order term `κ₄⟨n|ξ⁴|n⟩` (the cubic term has no
///   diagonal element)
/// * order 2: adds the second-order cubic term
///   `κ₃² Σ_{m≠n} |⟨n|ξ³|m⟩|² / (2n − 2m)`, of the same size in `1/T` as the
///   quartic term; together the last two entries form ε₁.
pub fn rs_corrections(kappa3: f64, kappa4: f64, n: usize, order: u32) -> Result<Vec<f64>> {
    if order > 2 {
        return Err(Error::Unsupported(format!(
            "perturbation order {order}; at most 2 is available"
        )));
    }
    let mut terms = vec![(2 * n + 1) as f64];
    if order == 0 {
        return Ok(terms);
    }
    let size = n + 4;
    let x3 = power_matrix(3, size);
    let x4 = power_matrix(4, size);
    terms.push(kappa4 * x4[(n, n)] + kappa3 * x3[(n, n)]);
    if order == 2 {
        let second: f64 = (0..size)
            .filter(|&m| m != n)
            .map(|m| x3[(n, m)].powi(2) / (2.0 * n as f64 - 2.0 * m as f64))
            .sum();
        terms.push(kappa3 * kappa3 * second);
    }
    Ok(terms)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionResult {
    pub level: usize,
    pub point: ExpansionPoint,
    /// `V(T)`, then `σ⁻² ε_j` for each available correction.
    pub terms: Vec<f64>,
    pub total: f64,
}

/// `ϱ_n ≈ V(T) + σ⁻² (ε₀ + ε₁ + ...)`.
pub fn expansion_eigenvalue(wall: &SoftWall, ell: u32, n: usize, order: u32) -> Result<ExpansionResult> {
    let point = expansion_point(wall, ell)?;
    let eps = rs_corrections(point.kappa3, point.kappa4, n, order)?;
    let inv = 1.0 / (point.sigma * point.sigma);
    let mut terms = vec![point.potential_min()];
    terms.extend(eps.iter().map(|e| inv * e));
    let total = terms.iter().sum();
    Ok(ExpansionResult {
        level: n,
        point,
        terms,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::largeell::oscillator::anharmonic_levels;
    use crate::numerics::log_log_slope;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn oscillator() -> SoftWall {
        SoftWall::power_law(1.0, 2.0).unwrap()
    }

    #[test]
    fn quadratic_wall_expansion_point() {
        let p = expansion_point(&oscillator(), 9).unwrap();
        assert!((p.sigma - FRAC_1_SQRT_2).abs() < 1e-14);
        // V'''(T) = Kω²T^{K−3}(K²−3K−10) = −24/T for K = 2
        let v3 = -24.0 / p.t;
        assert!((p.kappa3 - p.sigma.powi(5) * v3 / 6.0).abs() < 1e-14);
        assert!((p.kappa3 + 1.0 / (2f64.sqrt() * p.t)).abs() < 1e-14);
        // V''''(T) = Kω²T^{K−4}(60 + (K−1)(K−2)(K−3)) = 120/T² for K = 2
        assert!((p.kappa4 - p.sigma.powi(6) * 120.0 / (p.t * p.t) / 24.0).abs() < 1e-14);
    }

    #[test]
    fn general_power_law_derivative_formulas() {
        for (omega, k) in [(1.0, 2.0), (0.7, 4.0), (1.5, 3.0)] {
            let w = SoftWall::power_law(omega, k).unwrap();
            let p = expansion_point(&w, 15).unwrap();
            let t = p.t;
            let w2 = omega * omega;
            let sigma4 = 2.0 / (k * (k + 2.0) * w2 * t.powf(k - 2.0));
            assert!((p.sigma.powi(4) / sigma4 - 1.0).abs() < 1e-12);
            let v3 = k * w2 * t.powf(k - 3.0) * (k * k - 3.0 * k - 10.0);
            let v4 = k * w2 * t.powf(k - 4.0) * (60.0 + (k - 1.0) * (k - 2.0) * (k - 3.0));
            assert!((p.kappa3 / (p.sigma.powi(5) * v3 / 6.0) - 1.0).abs() < 1e-12);
            assert!((p.kappa4 / (p.sigma.powi(6) * v4 / 24.0) - 1.0).abs() < 1e-12);
            // V'(T) vanishes
            let c = centrifugal_strength(15);
            let dv = effective_derivative(&w, c, 1, t);
            assert!(dv.abs() < 1e-8 * effective_derivative(&w, c, 2, t) * t);
        }
    }

    #[test]
    fn kappa_scaling_with_t() {
        for k in [2.0, 4.0] {
            let w = SoftWall::power_law(1.0, k).unwrap();
            let pts: Vec<ExpansionPoint> = [10u32, 20, 40, 80, 160]
                .iter()
                .map(|&l| expansion_point(&w, l).unwrap())
                .collect();
            let t: Vec<f64> = pts.iter().map(|p| p.t).collect();
            let k3: Vec<f64> = pts.iter().map(|p| p.kappa3).collect();
            let k4: Vec<f64> = pts.iter().map(|p| p.kappa4).collect();
            assert!((log_log_slope(&t, &k3).unwrap() + 0.5 + k / 4.0).abs() < 0.05);
            assert!((log_log_slope(&t, &k4).unwrap() + 1.0 + k / 2.0).abs() < 0.05);
        }
    }

    #[test]
    fn rs_terms() {
        assert_eq!(rs_corrections(0.3, 0.2, 2, 0).unwrap(), vec![5.0]);
        let cubic = rs_corrections(0.1, 0.0, 0, 2).unwrap();
        assert_eq!(cubic[1], 0.0);
        assert!(cubic[2] < 0.0);
        assert!((cubic[2] + 0.01 * 11.0 / 16.0).abs() < 1e-15);
        let quartic = rs_corrections(0.0, 0.1, 0, 1).unwrap();
        assert!((quartic[1] - 0.075).abs() < 1e-15);
        assert!(matches!(rs_corrections(0.1, 0.1, 0, 3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rs_tracks_dense_diagonalization_for_small_couplings() {
        for (k3, k4) in [(0.05, 0.0), (0.0, 0.05), (0.03, 0.02), (-0.04, 0.01)] {
            // the bound is for the ground state; higher levels carry larger
            // second-order coefficients
            let dense = anharmonic_levels(k3, k4, 60, 1).unwrap();
            let rs: f64 = rs_corrections(k3, k4, 0, 2).unwrap().iter().sum();
            let bound = 5.0 * f64::max(k3.abs().powi(3), k4 * k4);
            assert!((dense[0] - rs).abs() <= bound, "({k3},{k4}): {} vs {rs}", dense[0]);
        }
    }

    #[test]
    fn quadratic_wall_matches_radial_oscillator() {
        for ell in [20u32, 40, 80] {
            for n in 0..=2usize {
                let r = expansion_eigenvalue(&oscillator(), ell, n, 0).unwrap();
                let exact = (4 * n + 2 * ell as usize + 3) as f64;
                assert!((r.total - exact).abs() <= 3.0 / (8.0 * ell as f64));
                let lead = 2.0 * centrifugal_strength(ell).sqrt() + 2.0 * (2 * n + 1) as f64;
                assert!((r.total - lead).abs() < 1e-10 * lead);
            }
        }
        let r = expansion_eigenvalue(&oscillator(), 20, 0, 0).unwrap();
        assert!((r.total - 42.988).abs() < 1e-3);
    }

    #[test]
    fn leading_terms_match_power_law_series() {
        let (omega, k): (f64, f64) = (1.2, 4.0);
        let w = SoftWall::power_law(omega, k).unwrap();
        let r = expansion_eigenvalue(&w, 30, 1, 0).unwrap();
        let t = r.point.t;
        let v0 = omega * omega * (1.0 + k / 2.0) * t.powf(k);
        let v1 = omega * 3.0 * (k * (1.0 + k / 2.0)).sqrt() * t.powf(k / 2.0 - 1.0);
        assert!((r.terms[0] - v0).abs() < 1e-9 * v0);
        assert!((r.terms[1] - v1).abs() < 1e-9 * v1);
    }

    #[test]
    fn saddle_detected() {
        let w = SoftWall::Osculating {
            t: 1.0,
            a: 2.0,
            b: -10.0,
            offset: 0.0,
            cubic: vec![],
        };
        assert!(matches!(point_at(&w, 1.0, 1.0, 1), Err(Error::Saddle { .. })));
    }
}
