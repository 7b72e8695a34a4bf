//! Orthonormal radial channel bases `f(r) = c · r^{1/2} J_{ℓ+1/2}(k r)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::GaussLegendre;
use crate::specialfn::{bessel_half, characteristic_roots, CharacteristicKind};

/// Gauss–Legendre nodes per quadrature panel.
pub const PANEL_NODES: usize = 64;

/// Composite panel count giving one panel per half-oscillation of a mode with
/// wavenumber `k` on an interval of length `length`.
pub fn panels_for(k: f64, length: f64) -> usize {
    (k * length / PI).ceil() as usize + 1
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSpec {
    pub ell: u32,
    pub kind: CharacteristicKind,
    /// Physical outer radius; Dirichlet and Robin conditions are imposed here.
    pub radius: f64,
    pub count: usize,
}

impl BasisSpec {
    pub fn new(ell: u32, kind: CharacteristicKind, count: usize) -> Self {
        Self {
            ell,
            kind,
            radius: 1.0,
            count,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.kind.validate()?;
        if self.count == 0 {
            return Err(Error::InvalidArgument("basis needs at least one mode".into()));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius {} must be positive", self.radius)));
        }
        Ok(())
    }

    /// Right end of the interval on which the modes satisfy their boundary
    /// condition: `S` for the shifted kind, `R` otherwise.
    pub fn endpoint(&self) -> f64 {
        match self.kind {
            CharacteristicKind::ShiftedDirichlet(s) => s,
            _ => self.radius,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisMode {
    pub index: usize,
    pub wavenumber: f64,
    /// `k²`, i.e. τ for the poloidal channel or ϱ for the toroidal one.
    pub eigenvalue: f64,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    pub spec: BasisSpec,
    pub modes: Vec<BasisMode>,
}

/// Builds the first `spec.count` modes, normalised on `[0, endpoint]` by
/// composite Gauss–Legendre quadrature.
pub fn build_basis(spec: BasisSpec) -> Result<Basis> {
    Basis::build(spec)
}

impl Basis {
    pub fn build(spec: BasisSpec) -> Result<Self> {
        spec.validate()?;
        let roots = characteristic_roots(spec.kind, spec.ell, spec.count)?;
        // unit-radius roots scale as 1/R; the shifted kind already carries its endpoint
        let scale = match spec.kind {
            CharacteristicKind::ShiftedDirichlet(_) => 1.0,
            _ => 1.0 / spec.radius,
        };
        let rule = GaussLegendre::new(PANEL_NODES)?;
        let end = spec.endpoint();
        let modes = roots
            .into_iter()
            .enumerate()
            .map(|(index, z)| {
                let k = z * scale;
                let (nodes, weights) = rule.composite(0.0, end, panels_for(k, end));
                let mut sq = 0.0;
                for (&r, &w) in nodes.iter().zip(&weights) {
                    let v = raw_value(spec.ell, k, r)?;
                    sq += w * v * v;
                }
                Ok(BasisMode {
                    index,
                    wavenumber: k,
                    eigenvalue: k * k,
                    norm: 1.0 / sq.sqrt(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { spec, modes })
    }

    pub fn ell(&self) -> u32 {
        self.spec.ell
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.eigenvalue).collect()
    }

    pub fn max_wavenumber(&self) -> f64 {
        self.modes.last().map_or(0.0, |m| m.wavenumber)
    }

    pub fn value(&self, index: usize, r: f64) -> Result<f64> {
        eval_mode(&self.modes[index], self.spec.ell, r)
    }

    pub fn derivative(&self, index: usize, r: f64) -> Result<f64> {
        eval_mode_deriv(&self.modes[index], self.spec.ell, r)
    }
}

fn raw_value(ell: u32, k: f64, r: f64) -> Result<f64> {
    Ok(r.sqrt() * bessel_half(ell as i32, k * r)?)
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("mode evaluated at r = {r}; need r > 0")))
    }
}

/// `norm · r^{1/2} J_{ℓ+1/2}(k r)`.
pub fn eval_mode(mode: &BasisMode, ell: u32, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(mode.norm * raw_value(ell, mode.wavenumber, r)?)
}

/// `d/dr [norm · r^{1/2} J_{ℓ+1/2}(k r)] = norm [r^{1/2} k J_{ℓ-1/2}(kr) - ℓ r^{-1/2} J_{ℓ+1/2}(kr)]`.
pub fn eval_mode_deriv(mode: &BasisMode, ell: u32, r: f64) -> Result<f64> {
    check_radius(r)?;
    let k = mode.wavenumber;
    let sr = r.sqrt();
    let lower = bessel_half(ell as i32 - 1, k * r)?;
    let upper = bessel_half(ell as i32, k * r)?;
    Ok(mode.norm * (sr * k * lower - ell as f64 / sr * upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn basis(ell: u32, kind: CharacteristicKind, n: usize) -> Basis {
        Basis::build(BasisSpec::new(ell, kind, n)).unwrap()
    }

    #[test]
    fn sine_modes_at_ell_zero() {
        let d = basis(0, CharacteristicKind::Dirichlet, 4);
        assert!((d.value(0, 0.5).unwrap() - SQRT_2).abs() < 1e-12);
        for (n, _) in d.modes.iter().enumerate() {
            for &r in &[0.1, 0.37, 0.8] {
                let exact = SQRT_2 * ((n + 1) as f64 * PI * r).sin();
                assert!((d.value(n, r).unwrap() - exact).abs() < 1e-12);
            }
        }
        let rb = basis(0, CharacteristicKind::Robin, 2);
        for &r in &[0.2, 0.5, 1.0] {
            assert!((rb.value(0, r).unwrap() - SQRT_2 * (PI * r / 2.0).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn gram_matrix_is_identity() {
        for kind in [
            CharacteristicKind::Dirichlet,
            CharacteristicKind::Robin,
            CharacteristicKind::ShiftedDirichlet(1.2),
        ] {
            for ell in [0u32, 3, 12] {
                let b = basis(ell, kind, 8);
                let end = b.spec.endpoint();
                let rule = GaussLegendre::new(PANEL_NODES).unwrap();
                let (x, w) = rule.composite(0.0, end, panels_for(b.max_wavenumber(), end));
                for i in 0..8 {
                    for j in 0..8 {
                        let g: f64 = x
                            .iter()
                            .zip(&w)
                            .map(|(&r, &wt)| wt * b.value(i, r).unwrap() * b.value(j, r).unwrap())
                            .sum();
                        let expected = if i == j { 1.0 } else { 0.0 };
                        assert!((g - expected).abs() < 1e-9, "{kind:?} ell={ell} ({i},{j}) = {g}");
                    }
                }
            }
        }
    }

    #[test]
    fn dirichlet_norm_matches_closed_form() {
        for ell in [0u32, 1, 4, 15, 30] {
            let b = basis(ell, CharacteristicKind::Dirichlet, 6);
            for m in &b.modes {
                let j = bessel_half(ell as i32 + 1, m.wavenumber).unwrap();
                let closed = 2.0 / (j * j);
                assert!((m.norm * m.norm / closed - 1.0).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn boundary_conditions_hold() {
        for ell in 0..10u32 {
            let d = basis(ell, CharacteristicKind::Dirichlet, 5);
            let r = basis(ell, CharacteristicKind::Robin, 5);
            let s = basis(ell, CharacteristicKind::ShiftedDirichlet(1.0 + 1.0 / (ell + 1) as f64), 5);
            let end = s.spec.endpoint();
            for i in 0..5 {
                assert!(d.value(i, 1.0).unwrap().abs() < 1e-9);
                let robin = r.derivative(i, 1.0).unwrap() + ell as f64 * r.value(i, 1.0).unwrap();
                assert!(robin.abs() < 1e-9, "ell={ell} mode {i}: {robin}");
                assert!(s.value(i, end).unwrap().abs() < 1e-9);
            }
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let b = basis(7, CharacteristicKind::Robin, 4);
        for i in 0..4 {
            for &r in &[0.2, 0.55, 0.9] {
                let h = 1e-6;
                let fd = (b.value(i, r + h).unwrap() - b.value(i, r - h).unwrap()) / (2.0 * h);
                assert!((b.derivative(i, r).unwrap() - fd).abs() < 1e-6 * b.modes[i].wavenumber * b.modes[i].norm);
            }
        }
    }

    #[test]
    fn small_r_power_law() {
        for ell in [1u32, 3, 6] {
            let b = basis(ell, CharacteristicKind::Dirichlet, 1);
            let (r1, r2) = (1e-4, 2e-4);
            let slope = (b.value(0, r2).unwrap() / b.value(0, r1).unwrap()).ln() / 2f64.ln();
            assert!((slope - (ell + 1) as f64).abs() < 1e-6);
        }
    }

    #[test]
    fn nonpositive_radius_is_domain_error() {
        let b = basis(2, CharacteristicKind::Dirichlet, 1);
        assert!(matches!(b.value(0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(b.derivative(0, -0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn eigenvalues_increase_and_scale_with_radius() {
        let b = basis(4, CharacteristicKind::Robin, 6);
        assert!(b.eigenvalues().windows(2).all(|w| w[0] < w[1]));
        let mut spec = BasisSpec::new(4, CharacteristicKind::Robin, 6);
        spec.radius = 2.0;
        let wide = Basis::build(spec).unwrap();
        for (a, c) in b.modes.iter().zip(&wide.modes) {
            assert!((a.eigenvalue / 4.0 - c.eigenvalue).abs() < 1e-10);
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(Basis::build(BasisSpec::new(1, CharacteristicKind::Dirichlet, 0)).is_err());
        let mut s = BasisSpec::new(1, CharacteristicKind::Dirichlet, 1);
        s.radius = 0.0;
        assert!(Basis::build(s).is_err());
        assert!(Basis::build(BasisSpec::new(1, CharacteristicKind::ShiftedDirichlet(-1.0), 1)).is_err());
    }
}
