//! The acceptance suite: eleven numerical criteria with pinned tolerances,
//! shared by the `validate` subcommand and the integration tests.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use crate::basis::{Basis, BasisSpec};
use crate::boundary::{effective_shift, solve_shift};
use crate::coupling::{overlap_matrix, AlphaProfile};
use crate::dynamo::{assemble_standard, block_eigensolve, feshbach_roots, secular_roots, ScanOptions, REAL_EIGENVALUE_TOL};
use crate::error::Result;
use crate::largeell::{
    anharmonic_levels, assemble_smeared_system, build_osculating_pair, coupled_zeroth_spectrum, expansion_eigenvalue,
    expansion_point, expansion_point_for_strength, implied_centrifugal, osculation_slope, rs_corrections, SoftWall,
};
use crate::numerics::{log_log_slope, sort_by_real_desc, RealMatrix};
use crate::oracle::{fd_coupled_leading, MeshSpec, DEFAULT_SEED_INTERIOR};
use crate::specialfn::{characteristic_roots, spherical_j, CharacteristicKind};

pub const ROBIN_IDENTITY_TOL: f64 = 1e-9;
pub const CLOSED_FORM_ROOT_TOL: f64 = 1e-10;
pub const CONFLUENCE_SLOPE: f64 = -1.0;
pub const CONFLUENCE_SLOPE_TOL: f64 = 0.15;
pub const METHOD_AGREEMENT_TOL: f64 = 1e-7;
pub const QUADRATIC_TOL: f64 = 1e-12;
pub const HIGH_CONDUCTIVITY_SLOPE_TOL: f64 = 0.2;
pub const OSCILLATOR_ANCHOR_SLACK: f64 = 1e-6;
pub const KAPPA_SLOPE_TOL: f64 = 0.05;
pub const RS_ORACLE_TOL: f64 = 2e-3;
pub const OSCULATION_TOL: f64 = 1e-10;
pub const SMEARED_SPECTRUM_TOL: f64 = 1e-9;
pub const CROSS_SOLVER_TOL: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionReport {
    /// One line: `[PASS] C3 title: detail (0.12 s)`.
    pub fn line(&self) -> String {
        format!(
            "[{}] C{} {}: {} ({:.2} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

type Check = fn() -> Result<(bool, String)>;

const CRITERIA: [(u32, &str, Check); 11] = [
    (
        1,
        "Robin roots are zeros of the order ℓ−1 spherical Bessel function",
        robin_identity,
    ),
    (2, "closed-form ℓ=0 spectra and τ/ϱ interlacing", closed_form_spectra),
    (3, "basis overlap confluence rate", basis_confluence),
    (4, "Feshbach scan agrees with block eigensolve", method_agreement),
    (
        5,
        "high-conductivity limit of the leading eigenvalue",
        high_conductivity_limit,
    ),
    (6, "boundary shift S(ℓ)", boundary_shift),
    (7, "quadratic soft wall reproduces the radial oscillator", oscillator_anchor),
    (8, "anharmonic coupling scaling with T", kappa_scaling),
    (9, "perturbative correction against dense diagonalization", rs_oracle),
    (10, "osculating pairs share T and σ and decouple", osculation),
    (11, "finite-difference and Galerkin leading eigenvalues agree", cross_solver),
];

pub fn criterion_ids() -> Vec<u32> {
    CRITERIA.iter().map(|c| c.0).collect()
}

/// Runs one criterion; numerical errors count as a failure.
pub fn run_criterion(id: u32) -> Option<CriterionReport> {
    let &(id, title, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (passed, detail) = match check() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Some(CriterionReport {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    criterion_ids().into_iter().filter_map(run_criterion).collect()
}

/// Positive zeros of `j_order` by plain bisection on a 0.05-spaced scan;
/// deliberately shares nothing with the Brent-based enumerator.
pub fn bisection_zeros(order: i32, count: usize) -> Result<Vec<f64>> {
    let mut zeros = Vec::with_capacity(count);
    let step = 0.05;
    let mut a: f64 = (order as f64 - 0.5).max(step);
    let mut fa = spherical_j(order, a)?;
    while zeros.len() < count {
        let b = a + step;
        let fb = spherical_j(order, b)?;
        if fa.signum() * fb.signum() < 0.0 {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = spherical_j(order, mid)?;
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            zeros.push(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    Ok(zeros)
}

fn robin_identity() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for ell in 1..=10u32 {
        let tau = characteristic_roots(CharacteristicKind::Robin, ell, 10)?;
        let zeros = bisection_zeros(ell as i32 - 1, 10)?;
        for (k, z) in tau.iter().zip(&zeros) {
            worst = worst.max(((k * k) - z * z).abs() / (z * z));
        }
    }
    Ok((
        worst < ROBIN_IDENTITY_TOL,
        format!("max relative deviation {worst:.3e} (tol {ROBIN_IDENTITY_TOL:e})"),
    ))
}

fn closed_form_spectra() -> Result<(bool, String)> {
    let rho = characteristic_roots(CharacteristicKind::Dirichlet, 0, 10)?;
    let tau = characteristic_roots(CharacteristicKind::Robin, 0, 10)?;
    let mut worst: f64 = 0.0;
    for n in 0..10 {
        worst = worst.max((rho[n] * rho[n] - ((n + 1) as f64 * PI).powi(2)).abs());
        worst = worst.max((tau[n] * tau[n] - ((n as f64 + 0.5) * PI).powi(2)).abs());
    }
    let mut interlaced = true;
    for ell in 0..=20u32 {
        let t = characteristic_roots(CharacteristicKind::Robin, ell, 10)?;
        let r = characteristic_roots(CharacteristicKind::Dirichlet, ell, 10)?;
        for k in 0..10 {
            interlaced &= t[k] < r[k] && (k + 1 == 10 || r[k] < t[k + 1]);
        }
    }
    Ok((
        worst < CLOSED_FORM_ROOT_TOL && interlaced,
        format!("max |error| {worst:.3e} (tol {CLOSED_FORM_ROOT_TOL:e}); interlacing for ℓ ≤ 20: {interlaced}"),
    ))
}

/// `max |O − I|` over the leading 6×6 block of the Robin/Dirichlet overlaps.
pub fn overlap_defect(ell: u32) -> Result<f64> {
    let u = Basis::build(BasisSpec::new(ell, CharacteristicKind::Robin, 6))?;
    let d = Basis::build(BasisSpec::new(ell, CharacteristicKind::Dirichlet, 6))?;
    Ok(overlap_matrix(&u, &d)?.max_abs_diff(&RealMatrix::identity(6)))
}

fn basis_confluence() -> Result<(bool, String)> {
    let ells = [10.0, 20.0, 40.0, 80.0];
    let defects = ells.iter().map(|&l| overlap_defect(l as u32)).collect::<Result<Vec<_>>>()?;
    let slope = log_log_slope(&ells, &defects)?;
    Ok((
        (slope - CONFLUENCE_SLOPE).abs() <= CONFLUENCE_SLOPE_TOL,
        format!(
            "max|O−I| = {} → slope {slope:.3} (target {CONFLUENCE_SLOPE} ± {CONFLUENCE_SLOPE_TOL})",
            fmt_list(&defects)
        ),
    ))
}

fn method_agreement() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    let mut matched = 0usize;
    for alpha0 in [0.5, 1.0, 2.0] {
        for ell in [0u32, 5, 20] {
            let sys = assemble_standard(ell, 8, &AlphaProfile::Constant(alpha0))?;
            let opts = ScanOptions::for_system(&sys, alpha0);
            let roots = feshbach_roots(&sys, &opts)?;
            let block = block_eigensolve(&sys)?.real_eigenvalues();
            // every root is a block eigenvalue, and every block eigenvalue in the window is found
            for r in &roots {
                worst = worst.max(nearest(&block, *r));
            }
            for b in block.iter().filter(|&&b| b > opts.lower && b < opts.upper) {
                worst = worst.max(nearest(&roots, *b));
                matched += 1;
            }
        }
    }
    let mut quad: f64 = 0.0;
    for alpha0 in [0.5, 1.0, 2.0] {
        for ell in [0u32, 5, 20] {
            let sys = assemble_standard(ell, 1, &AlphaProfile::Constant(alpha0))?;
            let closed = secular_roots(sys.tau[0], sys.rho[0], sys.alpha[(0, 0)], sys.omega[(0, 0)]);
            let spec = block_eigensolve(&sys)?;
            for (z, c) in spec.eigenvalues.iter().zip(&closed) {
                quad = quad.max((z - c).norm() / c.norm().max(1.0));
            }
        }
    }
    Ok((
        worst < METHOD_AGREEMENT_TOL && quad < QUADRATIC_TOL,
        format!(
            "{matched} real eigenvalues, max mismatch {worst:.3e} (tol {METHOD_AGREEMENT_TOL:e}); N=1 quadratic deviation {quad:.3e} (tol {QUADRATIC_TOL:e})"
        ),
    ))
}

fn nearest(set: &[f64], x: f64) -> f64 {
    set.iter().map(|s| (s - x).abs()).fold(f64::INFINITY, f64::min)
}

/// Relative distance `|λ₀ − (−ϱ₀ + α₀√ϱ₀)| / ϱ₀` of the leading block
/// eigenvalue from the high-conductivity value.
pub fn high_conductivity_gap(ell: u32, alpha0: f64, n: usize) -> Result<f64> {
    let sys = assemble_standard(ell, n, &AlphaProfile::Constant(alpha0))?;
    let lead = block_eigensolve(&sys)?.leading();
    let rho = sys.rho[0];
    let target = -rho + alpha0 * rho.sqrt();
    Ok((lead - target).norm() / rho)
}

fn high_conductivity_limit() -> Result<(bool, String)> {
    let ells = [10.0, 20.0, 40.0, 80.0];
    let gaps = ells
        .iter()
        .map(|&l| high_conductivity_gap(l as u32, 1.0, 8))
        .collect::<Result<Vec<_>>>()?;
    let slope = log_log_slope(&ells, &gaps)?;
    Ok((
        (slope + 1.0).abs() <= HIGH_CONDUCTIVITY_SLOPE_TOL,
        format!(
            "relative gaps {} → slope {slope:.3} (target −1 ± {HIGH_CONDUCTIVITY_SLOPE_TOL})",
            fmt_list(&gaps)
        ),
    ))
}

fn boundary_shift() -> Result<(bool, String)> {
    let mut ok = true;
    let mut worst_margin = f64::INFINITY;
    for ell in 10..=1000u32 {
        let s = solve_shift(PI, ell, 1.0)?.s;
        let scaled = ell as f64 * (s - 1.0);
        let lower = 1.0 - 4.0 / ell as f64;
        ok &= scaled >= lower && scaled <= 1.0;
        worst_margin = worst_margin.min((scaled - lower).min(1.0 - scaled));
    }
    let eff = effective_shift(5)?;
    Ok((
        ok && eff == 1.2,
        format!("ℓ(S−1) inside [1 − 4/ℓ, 1] for 10 ≤ ℓ ≤ 1000: {ok} (min margin {worst_margin:.3e}); S_eff(5) = {eff}"),
    ))
}

fn oscillator_anchor() -> Result<(bool, String)> {
    let wall = SoftWall::power_law(1.0, 2.0)?;
    let mut ok = true;
    let mut worst_ratio: f64 = 0.0;
    for ell in [20u32, 40, 80] {
        let bound = 3.0 / (8.0 * ell as f64) * (1.0 + OSCILLATOR_ANCHOR_SLACK);
        for n in 0..=2usize {
            let r = expansion_eigenvalue(&wall, ell, n, 0)?;
            let exact = (4 * n + 2 * ell as usize + 3) as f64;
            let err = (r.total - exact).abs();
            ok &= err <= bound;
            worst_ratio = worst_ratio.max(err / bound);
        }
    }
    Ok((ok, format!("max error / (3/(8ℓ)) = {worst_ratio:.4}")))
}

fn kappa_scaling() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for k in [2.0, 4.0] {
        let wall = SoftWall::power_law(1.0, k)?;
        let pts = [10u32, 20, 40, 80, 160]
            .iter()
            .map(|&l| expansion_point(&wall, l))
            .collect::<Result<Vec<_>>>()?;
        let t: Vec<f64> = pts.iter().map(|p| p.t).collect();
        let k3: Vec<f64> = pts.iter().map(|p| p.kappa3).collect();
        let k4: Vec<f64> = pts.iter().map(|p| p.kappa4).collect();
        let s3 = log_log_slope(&t, &k3)?;
        let s4 = log_log_slope(&t, &k4)?;
        let (e3, e4) = (-(0.5 + k / 4.0), -(1.0 + k / 2.0));
        ok &= (s3 - e3).abs() <= KAPPA_SLOPE_TOL && (s4 - e4).abs() <= KAPPA_SLOPE_TOL;
        parts.push(format!("K={k}: κ₃ slope {s3:.4} (want {e3}), κ₄ slope {s4:.4} (want {e4})"));
    }
    Ok((ok, parts.join("; ")))
}

fn rs_oracle() -> Result<(bool, String)> {
    let eps: f64 = rs_corrections(0.0, 0.1, 0, 2)?.iter().sum();
    let dense = anharmonic_levels(0.0, 0.1, 60, 1)?[0];
    let diff = (eps - dense).abs();
    Ok((
        diff <= RS_ORACLE_TOL,
        format!("ε₀+ε₁ = {eps:.6}, 60-mode ground state = {dense:.7}, |diff| = {diff:.3e} (tol {RS_ORACLE_TOL:e})"),
    ))
}

fn osculation() -> Result<(bool, String)> {
    let cases = [
        (3.0, 7u32, 0.8, (0.0, 0.4), (vec![0.2], vec![-0.3, 0.05]), 1.0),
        (5.0, 20, 2.0, (1.0, -1.0), (vec![0.0], vec![0.5]), 0.5),
        (8.0, 40, 0.3, (0.2, 0.2), (vec![-0.05, 0.01], vec![0.1]), 2.0),
    ];
    let mut geometry: f64 = 0.0;
    let mut spectra: f64 = 0.0;
    for (t, ell, b, offsets, cubics, alpha0) in cases {
        let a = osculation_slope(t, ell);
        let (u, d) = build_osculating_pair(t, a, b, offsets, cubics)?;
        let c = implied_centrifugal(t, a);
        let pu = expansion_point_for_strength(&u, c)?;
        let pd = expansion_point_for_strength(&d, c)?;
        geometry = geometry.max((pu.t - pd.t).abs()).max((pu.sigma - pd.sigma).abs());
        let n = 8;
        let sys = assemble_smeared_system((&u, &d), ell, alpha0, n)?;
        let mut expected = Vec::new();
        for k in 0..n {
            expected.extend(coupled_zeroth_spectrum(k, pu.v, pd.v, pu.sigma, pd.sigma, alpha0)?);
        }
        sort_by_real_desc(&mut expected);
        for (x, y) in sys.eigenvalues.iter().zip(&expected) {
            spectra = spectra.max((x - y).norm() / y.norm().max(1.0));
        }
    }
    Ok((
        geometry <= OSCULATION_TOL && spectra <= SMEARED_SPECTRUM_TOL,
        format!(
            "max |ΔT|, |Δσ| = {geometry:.3e} (tol {OSCULATION_TOL:e}); max spectrum deviation {spectra:.3e} (tol {SMEARED_SPECTRUM_TOL:e})"
        ),
    ))
}

/// Leading eigenvalue of the Galerkin truncation at `n` modes.
pub fn galerkin_leading(ell: u32, alpha: &AlphaProfile, n: usize) -> Result<f64> {
    let spec = block_eigensolve(&assemble_standard(ell, n, alpha)?)?;
    let lead = spec.leading();
    if lead.im.abs() > REAL_EIGENVALUE_TOL * lead.norm().max(1.0) {
        return Err(crate::error::Error::Unsupported(format!(
            "leading eigenvalue {lead} is not real"
        )));
    }
    Ok(lead.re)
}

fn cross_solver() -> Result<(bool, String)> {
    let alpha = AlphaProfile::Constant(1.0);
    let ladder = [(375usize, 4usize), (750, 8), (1500, 12)];
    let mut diffs = Vec::new();
    for (mesh, n) in ladder {
        let fd = fd_coupled_leading(&alpha, 5, &MeshSpec::new(mesh, 1.0)?, DEFAULT_SEED_INTERIOR)?;
        let gal = galerkin_leading(5, &alpha, n)?;
        diffs.push((fd - gal).abs());
    }
    let last = diffs[diffs.len() - 1];
    let monotone = diffs.windows(2).all(|w| w[1] < w[0]);
    Ok((
        last < CROSS_SOLVER_TOL && monotone,
        format!(
            "|λ_FD − λ_Galerkin| along (mesh, N) = (375, 4), (750, 8), (1500, 12): {}; monotone: {monotone} (tol {CROSS_SOLVER_TOL:e})",
            fmt_list(&diffs)
        ),
    ))
}

fn fmt_list(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:.4e}")).collect();
    format!("[{}]", items.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_zeros_of_sine() {
        let z = bisection_zeros(0, 3).unwrap();
        for (n, x) in z.iter().enumerate() {
            assert!((x - (n + 1) as f64 * PI).abs() < 1e-12);
        }
    }

    #[test]
    fn unknown_criterion() {
        assert!(run_criterion(42).is_none());
        assert_eq!(criterion_ids(), (1..=11).collect::<Vec<_>>());
    }

    #[test]
    fn report_line_format() {
        let r = CriterionReport {
            id: 2,
            title: "t",
            passed: true,
            detail: "d".into(),
            elapsed: Duration::from_millis(1500),
        };
        assert_eq!(r.line(), "[PASS] C2 t: d (1.50 s)");
    }
}
