//! Osculating soft-wall pairs and the coupled system built on their
//! oscillator bases.

use super::expansion::{expansion_point_for_strength, ExpansionPoint};
use super::oscillator::hermite_functions;
use super::wells::SoftWall;
use crate::error::{Error, Result};
use crate::numerics::{schur_eigenvalues, sort_by_real_desc, ComplexScalar, GaussLegendre, LuDecomposition, RealMatrix};

/// Gauss nodes for overlaps between oscillator bases.
pub const OVERLAP_NODES: usize = 200;
/// Half-width of the overlap window in units of σ.
pub const OVERLAP_HALF_WIDTH: f64 = 12.0;

/// Slope `A = 2ℓ(ℓ+1)/T³` that puts the minimum of `V` at `T` for mode
/// number `ℓ`.
pub fn osculation_slope(t: f64, ell: u32) -> f64 {
    let l = ell as f64;
    2.0 * l * (l + 1.0) / t.powi(3)
}

/// Centrifugal strength `ℓ(ℓ+1) = T³A/2` implied by a pair's slope.
pub fn implied_centrifugal(t: f64, a: f64) -> f64 {
    0.5 * t.powi(3) * a
}

/// Two walls sharing `U'(T) = A` and `U''(T) = 2B`, differing in offset and
/// higher-order terms.
pub fn build_osculating_pair(
    t: f64,
    a: f64,
    b: f64,
    offsets: (f64, f64),
    cubics: (Vec<f64>, Vec<f64>),
) -> Result<(SoftWall, SoftWall)> {
    let make = |offset: f64, cubic: Vec<f64>| SoftWall::Osculating { t, a, b, offset, cubic };
    let pair = (make(offsets.0, cubics.0), make(offsets.1, cubics.1));
    pair.0.validate()?;
    pair.1.validate()?;
    if !(a > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "slope A = {a} must be positive to balance the centrifugal term"
        )));
    }
    // V''(T) = 6ℓ(ℓ+1)/T⁴ + 2B = 3A/T + 2B
    let curvature = 3.0 * a / t + 2.0 * b;
    if !(curvature > 0.0) {
        return Err(Error::Saddle { curvature });
    }
    Ok(pair)
}

/// `λ = ½[−a−b ± √((a−b)² + 4aα₀²)]` with `a = (2k+1+v_u)/σ_u²` and
/// `b = (2k+1+v_d)/σ_d²`, larger real part first.
pub fn coupled_zeroth_spectrum(
    k: usize,
    v_u: f64,
    v_d: f64,
    sigma_u: f64,
    sigma_d: f64,
    alpha0: f64,
) -> Result<[ComplexScalar; 2]> {
    if !(sigma_u > 0.0 && sigma_d > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "σ_u = {sigma_u}, σ_d = {sigma_d} must be positive"
        )));
    }
    let level = (2 * k + 1) as f64;
    let a = (level + v_u) / (sigma_u * sigma_u);
    let b = (level + v_d) / (sigma_d * sigma_d);
    let disc = ComplexScalar::new((a - b).powi(2) + 4.0 * a * alpha0 * alpha0, 0.0).sqrt();
    let mid = ComplexScalar::new(-0.5 * (a + b), 0.0);
    Ok([mid + 0.5 * disc, mid - 0.5 * disc])
}

/// The smeared-boundary system truncated at `N` oscillator states per channel,
/// written as the pencil `(M₀ + λ M₁) x = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmearedSystem {
    pub poloidal: ExpansionPoint,
    pub toroidal: ExpansionPoint,
    /// `(2k+1+v_u)/σ_u²`.
    pub a: Vec<f64>,
    /// `(2k+1+v_d)/σ_d²`.
    pub b: Vec<f64>,
    /// Overlaps of the two oscillator bases.
    pub overlap: RealMatrix,
    pub m0: RealMatrix,
    pub m1: RealMatrix,
    /// Sorted by decreasing real part.
    pub eigenvalues: Vec<ComplexScalar>,
}

/// Overlaps `∫ h_k((r−T_u)/σ_u) h_j((r−T_d)/σ_d) dr / √(σ_u σ_d)`.
pub fn oscillator_overlaps(u: &ExpansionPoint, d: &ExpansionPoint, n: usize) -> Result<RealMatrix> {
    let lo = (u.t - OVERLAP_HALF_WIDTH * u.sigma).min(d.t - OVERLAP_HALF_WIDTH * d.sigma);
    let hi = (u.t + OVERLAP_HALF_WIDTH * u.sigma).max(d.t + OVERLAP_HALF_WIDTH * d.sigma);
    let (x, w) = GaussLegendre::new(OVERLAP_NODES)?.on_interval(lo, hi);
    let norm = 1.0 / (u.sigma * d.sigma).sqrt();
    let hu: Vec<Vec<f64>> = x.iter().map(|&r| hermite_functions(n, (r - u.t) / u.sigma)).collect();
    let hd: Vec<Vec<f64>> = x.iter().map(|&r| hermite_functions(n, (r - d.t) / d.sigma)).collect();
    Ok(RealMatrix::from_fn(n, n, |k, j| {
        norm * w.iter().enumerate().map(|(i, wi)| wi * hu[i][k] * hd[i][j]).sum::<f64>()
    }))
}

/// Builds and solves the smeared system for a pair of walls.
///
/// `M₀ = [[diag a, −α₀O], [0, diag(b − α₀²)]]` and
/// `M₁ = [[I, 0], [α₀Oᵀ, I]]`; the eigenvalues are those of `−M₁⁻¹M₀`.
/// For an osculating pair `O = I` and the system splits into the 2×2
/// blocks solved by [`coupled_zeroth_spectrum`].
pub fn assemble_smeared_system(pair: (&SoftWall, &SoftWall), ell: u32, alpha0: f64, n: usize) -> Result<SmearedSystem> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one oscillator state".into()));
    }
    if ell == 0 {
        return Err(Error::InvalidArgument("the expansion needs ℓ ≥ 1".into()));
    }
    let c = (ell as f64) * (ell as f64 + 1.0);
    let pu = expansion_point_for_strength(pair.0, c)?;
    let pd = expansion_point_for_strength(pair.1, c)?;
    let a: Vec<f64> = (0..n).map(|k| ((2 * k + 1) as f64 + pu.v) / (pu.sigma * pu.sigma)).collect();
    let b: Vec<f64> = (0..n).map(|k| ((2 * k + 1) as f64 + pd.v) / (pd.sigma * pd.sigma)).collect();
    let overlap = oscillator_overlaps(&pu, &pd, n)?;

    let a2 = alpha0 * alpha0;
    let mut m0 = RealMatrix::zeros(2 * n, 2 * n);
    let mut m1 = RealMatrix::identity(2 * n);
    for k in 0..n {
        m0[(k, k)] = a[k];
        m0[(n + k, n + k)] = b[k] - a2;
        for j in 0..n {
            m0[(k, n + j)] = -alpha0 * overlap[(k, j)];
            m1[(n + k, j)] = alpha0 * overlap[(j, k)];
        }
    }
    let lu = LuDecomposition::factor(&m1)?;
    lu.check_nonsingular()
        .map_err(|e| Error::Pencil(format!("λ-coefficient matrix is singular: {e}")))?;
    let reduced = lu.solve_matrix(&m0)?.scaled(-1.0);
    let mut eigenvalues = schur_eigenvalues(&reduced)?;
    sort_by_real_desc(&mut eigenvalues);
    Ok(SmearedSystem {
        poloidal: pu,
        toroidal: pd,
        a,
        b,
        overlap,
        m0,
        m1,
        eigenvalues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(b_u: f64, b_d: f64) -> (SoftWall, SoftWall) {
        let t = 4.0;
        let a = osculation_slope(t, 10);
        (
            SoftWall::Osculating {
                t,
                a,
                b: b_u,
                offset: 0.5,
                cubic: vec![0.3, 0.05],
            },
            SoftWall::Osculating {
                t,
                a,
                b: b_d,
                offset: -0.2,
                cubic: vec![-0.4],
            },
        )
    }

    #[test]
    fn osculating_pair_shares_expansion_scale() {
        let (u, d) =
            build_osculating_pair(4.0, osculation_slope(4.0, 10), 1.5, (0.5, -0.2), (vec![0.3], vec![-0.4, 0.1])).unwrap();
        let c = implied_centrifugal(4.0, osculation_slope(4.0, 10));
        assert!((c - 110.0).abs() < 1e-12);
        let pu = expansion_point_for_strength(&u, c).unwrap();
        let pd = expansion_point_for_strength(&d, c).unwrap();
        assert!((pu.t - pd.t).abs() < 1e-10 && (pu.t - 4.0).abs() < 1e-10);
        assert!((pu.sigma - pd.sigma).abs() < 1e-10);
        let (_, d2) = pair(1.5, 2.5);
        let pd2 = expansion_point_for_strength(&d2, c).unwrap();
        assert!((pu.sigma - pd2.sigma).abs() > 1e-3);
    }

    #[test]
    fn identical_walls_when_free_terms_match() {
        let (u, d) = build_osculating_pair(2.0, 1.0, 0.5, (0.1, 0.1), (vec![0.2], vec![0.2])).unwrap();
        assert_eq!(u, d);
        assert!(build_osculating_pair(2.0, 1.0, -10.0, (0.0, 0.0), (vec![], vec![])).is_err());
    }

    #[test]
    fn osculating_system_splits_into_pairs() {
        let (u, d) = pair(1.5, 1.5);
        let alpha0 = 0.8;
        let s = assemble_smeared_system((&u, &d), 10, alpha0, 6).unwrap();
        assert!(s.overlap.max_abs_diff(&RealMatrix::identity(6)) < 1e-12);
        let mut expected = Vec::new();
        for k in 0..6 {
            expected.extend(
                coupled_zeroth_spectrum(k, s.poloidal.v, s.toroidal.v, s.poloidal.sigma, s.toroidal.sigma, alpha0).unwrap(),
            );
        }
        sort_by_real_desc(&mut expected);
        for (x, y) in s.eigenvalues.iter().zip(&expected) {
            assert!((x - y).norm() < 1e-9 * y.norm().max(1.0), "{x} vs {y}");
        }
    }

    #[test]
    fn zero_coupling_spectrum() {
        let (u, d) = pair(1.5, 1.5);
        let s = assemble_smeared_system((&u, &d), 10, 0.0, 4).unwrap();
        let mut expected: Vec<f64> = s.a.iter().chain(&s.b).map(|x| -x).collect();
        expected.sort_by(|a, b| b.total_cmp(a));
        for (x, y) in s.eigenvalues.iter().zip(&expected) {
            assert!((x.re - y).abs() < 1e-10 * y.abs() && x.im == 0.0);
        }
    }

    #[test]
    fn zeroth_spectrum_special_cases() {
        let [p, m] = coupled_zeroth_spectrum(2, 1.0, 3.0, 0.5, 0.5, 0.0).unwrap();
        assert!((p.re + 24.0).abs() < 1e-12 && (m.re + 32.0).abs() < 1e-12);
        let [p, m] = coupled_zeroth_spectrum(1, 2.0, 2.0, 0.7, 0.7, 1.3).unwrap();
        let a: f64 = 5.0 / 0.49;
        assert!((p.re - (-a + 1.3 * a.sqrt())).abs() < 1e-12);
        assert!((m.re - (-a - 1.3 * a.sqrt())).abs() < 1e-12);
        assert!(coupled_zeroth_spectrum(0, 0.0, 0.0, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn zeroth_spectrum_matches_pencil_determinant() {
        // det[[a+λ, −α₀], [α₀λ, b−α₀²+λ]] = 0
        let (k, vu, vd, s, alpha0) = (3usize, 0.7, -0.4, 0.6, 1.1);
        let a = ((2 * k + 1) as f64 + vu) / (s * s);
        let b = ((2 * k + 1) as f64 + vd) / (s * s);
        let m = RealMatrix::from_rows(&[vec![-a, alpha0], vec![alpha0 * a, -(b - alpha0 * alpha0) - alpha0 * alpha0]]).unwrap();
        let mut ev = schur_eigenvalues(&m).unwrap();
        sort_by_real_desc(&mut ev);
        let closed = coupled_zeroth_spectrum(k, vu, vd, s, s, alpha0).unwrap();
        for (x, y) in ev.iter().zip(&closed) {
            assert!((x - y).norm() < 1e-10 * y.norm());
        }
    }

    #[test]
    fn spectrum_varies_continuously_with_curvature() {
        let base = {
            let (u, d) = pair(1.5, 1.5);
            assemble_smeared_system((&u, &d), 10, 0.8, 5).unwrap().eigenvalues
        };
        let mut last = f64::INFINITY;
        for eps in [1e-1, 1e-2, 1e-3, 1e-4] {
            let (u, d) = pair(1.5 + eps, 1.5);
            let s = assemble_smeared_system((&u, &d), 10, 0.8, 5).unwrap();
            let dev = s
                .eigenvalues
                .iter()
                .zip(&base)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            assert!(dev < last);
            last = dev;
        }
        assert!(last < 1e-2);
    }
}
