//! Truncated Galerkin form of the coupled poloidal/toroidal eigenproblem,
//!
//! ```text
//! (τ_p + λ) φ_p = Σ_j A_pj χ_j
//! (ϱ_q + λ) χ_q = Σ_j Ω_qj φ_j
//! ```
//!
//! with its block and Feshbach-reduced solvers and the closed forms available
//! for a constant α.

use crate::basis::{Basis, BasisSpec};
use crate::coupling::{coupling_matrices, AlphaProfile};
use crate::error::{Error, Result};
use crate::numerics::{brent_root, schur_eigenvalues, sort_by_real_desc, ComplexScalar, LuDecomposition, RealMatrix};
use crate::specialfn::CharacteristicKind;

/// Imaginary parts below this multiple of the spectral scale count as zero.
pub const REAL_EIGENVALUE_TOL: f64 = 1e-9;

/// Relative distance from a pole `−ϱ_j` (or `−τ_j`) inside which the
/// reduced determinant is not evaluated.
pub const POLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSystem {
    pub ell: u32,
    /// Poloidal eigenvalues τ.
    pub tau: Vec<f64>,
    /// Toroidal eigenvalues ϱ.
    pub rho: Vec<f64>,
    pub alpha: RealMatrix,
    pub omega: RealMatrix,
    pub overlap: RealMatrix,
}

impl TruncatedSystem {
    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.tau.len();
        let increasing = |v: &[f64]| v.iter().all(|&x| x > 0.0) && v.windows(2).all(|w| w[0] < w[1]);
        if n == 0 || self.rho.len() != n {
            return Err(Error::InvalidArgument(format!(
                "channel sizes {} and {} must match and be nonzero",
                n,
                self.rho.len()
            )));
        }
        if !increasing(&self.tau) || !increasing(&self.rho) {
            return Err(Error::InvalidArgument(
                "τ and ϱ must be positive and strictly increasing".into(),
            ));
        }
        for m in [&self.alpha, &self.omega, &self.overlap] {
            if m.rows() != n || m.cols() != n || !m.is_finite() {
                return Err(Error::InvalidArgument(format!("coupling matrix must be finite {n}x{n}")));
            }
        }
        Ok(())
    }

    /// `[[−diag τ, A], [Ω, −diag ϱ]]`, so that `λ x = M x` with `x = (φ, χ)`.
    pub fn block_matrix(&self) -> RealMatrix {
        let n = self.len();
        let mut m = RealMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            m[(i, i)] = -self.tau[i];
            m[(n + i, n + i)] = -self.rho[i];
        }
        m.set_block(0, n, &self.alpha);
        m.set_block(n, 0, &self.omega);
        m
    }

    /// The system restricted to the first `n` modes of each channel.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(Error::InvalidArgument(format!("cannot truncate {} modes to {n}", self.len())));
        }
        Ok(Self {
            ell: self.ell,
            tau: self.tau[..n].to_vec(),
            rho: self.rho[..n].to_vec(),
            alpha: self.alpha.leading_block(n, n),
            omega: self.omega.leading_block(n, n),
            overlap: self.overlap.leading_block(n, n),
        })
    }
}

pub fn assemble(u: &Basis, d: &Basis, alpha: &AlphaProfile) -> Result<TruncatedSystem> {
    if u.len() != d.len() {
        return Err(Error::InvalidArgument(format!(
            "channel bases truncated at {} and {} modes",
            u.len(),
            d.len()
        )));
    }
    let c = coupling_matrices(u, d, alpha)?;
    let sys = TruncatedSystem {
        ell: u.ell(),
        tau: u.eigenvalues(),
        rho: d.eigenvalues(),
        alpha: c.alpha,
        omega: c.omega,
        overlap: c.overlap,
    };
    sys.validate()?;
    Ok(sys)
}

/// Robin poloidal and Dirichlet toroidal bases on the unit interval, both
/// truncated at `n` modes.
pub fn assemble_standard(ell: u32, n: usize, alpha: &AlphaProfile) -> Result<TruncatedSystem> {
    let u = Basis::build(BasisSpec::new(ell, CharacteristicKind::Robin, n))?;
    let d = Basis::build(BasisSpec::new(ell, CharacteristicKind::Dirichlet, n))?;
    assemble(&u, &d, alpha)
}

/// Eigenvector coefficients of one real eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    pub lambda: f64,
    pub phi: Vec<f64>,
    pub chi: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Sorted by decreasing real part; conjugate pairs with `+im` first.
    pub eigenvalues: Vec<ComplexScalar>,
    /// Coefficients for the real eigenvalues, in the same order, when requested.
    pub coefficients: Option<Vec<Coefficients>>,
}

impl Spectrum {
    pub fn leading(&self) -> ComplexScalar {
        self.eigenvalues[0]
    }

    /// Real members of the spectrum, decreasing.
    pub fn real_eigenvalues(&self) -> Vec<f64> {
        let scale = self.eigenvalues.iter().fold(1.0_f64, |m, z| m.max(z.norm()));
        self.eigenvalues
            .iter()
            .filter(|z| z.im.abs() <= REAL_EIGENVALUE_TOL * scale)
            .map(|z| z.re)
            .collect()
    }
}

pub fn block_eigensolve(sys: &TruncatedSystem) -> Result<Spectrum> {
    sys.validate()?;
    let mut eigenvalues = schur_eigenvalues(&sys.block_matrix())?;
    sort_by_real_desc(&mut eigenvalues);
    Ok(Spectrum {
        eigenvalues,
        coefficients: None,
    })
}

/// Block solve plus coefficient vectors of every real eigenvalue.
pub fn block_eigensolve_with_vectors(sys: &TruncatedSystem) -> Result<Spectrum> {
    let mut spectrum = block_eigensolve(sys)?;
    let vectors = spectrum
        .real_eigenvalues()
        .into_iter()
        .map(|lambda| eigenvector(sys, lambda))
        .collect::<Result<Vec<_>>>()?;
    spectrum.coefficients = Some(vectors);
    Ok(spectrum)
}

/// Coefficients for a converged real eigenvalue by inverse iteration on the
/// block matrix, normalised to unit length with a nonnegative largest entry.
pub fn eigenvector(sys: &TruncatedSystem, lambda: f64) -> Result<Coefficients> {
    let m = sys.block_matrix();
    let n2 = m.rows();
    let shift = lambda + 1e-10 * lambda.abs().max(1.0);
    let mut shifted = m.clone();
    for i in 0..n2 {
        shifted[(i, i)] -= shift;
    }
    let lu = LuDecomposition::factor(&shifted)?;
    let mut x: Vec<f64> = (0..n2).map(|i| 1.0 / (1.0 + i as f64)).collect();
    for _ in 0..4 {
        let y = match lu.solve(&x) {
            Ok(y) => y,
            Err(Error::SingularMatrix { .. }) => break,
            Err(e) => return Err(e),
        };
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        x = y.into_iter().map(|v| v / norm).collect();
    }
    let big = x.iter().copied().fold(0.0_f64, |b, v| if v.abs() > b.abs() { v } else { b });
    if big < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    let n = sys.len();
    Ok(Coefficients {
        lambda,
        phi: x[..n].to_vec(),
        chi: x[n..].to_vec(),
    })
}

fn check_poles(poles: &[f64], lambda: f64) -> Result<()> {
    for &p in poles {
        if (lambda + p).abs() < POLE_TOL * p.abs().max(1.0) {
            return Err(Error::Pole { lambda, pole: -p });
        }
    }
    Ok(())
}

fn reduced_determinant(diag: &[f64], inner: &[f64], left: &RealMatrix, right: &RealMatrix, lambda: f64) -> Result<f64> {
    check_poles(inner, lambda)?;
    let n = diag.len();
    let mut m = RealMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let s: f64 = (0..n).map(|k| left[(i, k)] * right[(k, j)] / (inner[k] + lambda)).sum();
            m[(i, j)] = -s;
        }
        m[(i, i)] += diag[i] + lambda;
    }
    Ok(LuDecomposition::factor(&m)?.determinant())
}

/// `det[(diag τ + λ) − A (diag ϱ + λ)⁻¹ Ω]`, the toroidal channel eliminated.
pub fn feshbach_determinant(sys: &TruncatedSystem, lambda: f64) -> Result<f64> {
    reduced_determinant(&sys.tau, &sys.rho, &sys.alpha, &sys.omega, lambda)
}

/// `det[(diag ϱ + λ) − Ω (diag τ + λ)⁻¹ A]`, the poloidal channel eliminated.
pub fn feshbach_determinant_dual(sys: &TruncatedSystem, lambda: f64) -> Result<f64> {
    reduced_determinant(&sys.rho, &sys.tau, &sys.omega, &sys.alpha, lambda)
}

/// Which channel the reduced determinant eliminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elimination {
    Toroidal,
    Poloidal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub lower: f64,
    pub upper: f64,
    pub points: usize,
    pub elimination: Elimination,
}

impl ScanOptions {
    /// 2000 points over `[−1.2 ϱ_{N−1}, α₀² + 1]`.
    pub fn for_system(sys: &TruncatedSystem, alpha0: f64) -> Self {
        Self {
            lower: -1.2 * sys.rho[sys.len() - 1],
            upper: alpha0 * alpha0 + 1.0,
            points: 2000,
            elimination: Elimination::Toroidal,
        }
    }
}

/// Real roots of the reduced determinant inside the scan window, decreasing.
///
/// The window is split at the poles; each pole-free segment is sampled
/// uniformly plus geometrically towards its pole ends, where roots of the
/// nearly decoupled branches accumulate.
pub fn feshbach_roots(sys: &TruncatedSystem, opts: &ScanOptions) -> Result<Vec<f64>> {
    sys.validate()?;
    if !(opts.lower < opts.upper) || opts.points < 2 {
        return Err(Error::InvalidArgument(format!(
            "scan window [{}, {}] with {} points",
            opts.lower, opts.upper, opts.points
        )));
    }
    let poles_src = match opts.elimination {
        Elimination::Toroidal => &sys.rho,
        Elimination::Poloidal => &sys.tau,
    };
    let det = |x: f64| match opts.elimination {
        Elimination::Toroidal => feshbach_determinant(sys, x),
        Elimination::Poloidal => feshbach_determinant_dual(sys, x),
    };
    let mut cuts: Vec<f64> = poles_src
        .iter()
        .map(|p| -p)
        .filter(|&x| x > opts.lower && x < opts.upper)
        .collect();
    cuts.sort_by(f64::total_cmp);
    let mut edges = vec![opts.lower];
    edges.extend(&cuts);
    edges.push(opts.upper);

    let width = opts.upper - opts.lower;
    let mut roots = Vec::new();
    for (s, seg) in edges.windows(2).enumerate() {
        let (a, b) = (seg[0], seg[1]);
        let len = b - a;
        let gap = |x: f64| POLE_TOL * 10.0 * x.abs().max(1.0);
        let lo_pole = s > 0;
        let hi_pole = s + 1 < edges.len() - 1;
        let lo = if lo_pole { a + gap(a) } else { a };
        let hi = if hi_pole { b - gap(b) } else { b };
        if !(lo < hi) {
            continue;
        }
        let count = ((opts.points as f64 * len / width).ceil() as usize).max(8);
        let mut grid: Vec<f64> = (0..=count).map(|i| lo + (hi - lo) * i as f64 / count as f64).collect();
        for k in 1..=12 {
            let off = len * 0.5 * 10f64.powi(-k);
            if lo_pole && a + off > lo {
                grid.push(a + off);
            }
            if hi_pole && b - off < hi {
                grid.push(b - off);
            }
        }
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        let values = grid.iter().map(|&x| det(x)).collect::<Result<Vec<_>>>()?;
        for i in 0..grid.len() - 1 {
            let (fa, fb) = (values[i], values[i + 1]);
            if fa == 0.0 {
                roots.push(grid[i]);
            } else if fa.signum() * fb.signum() < 0.0 {
                let f = |x: f64| det(x).unwrap_or(f64::NAN);
                let tol = 1e-13 * grid[i].abs().max(1.0);
                roots.push(brent_root(f, grid[i], grid[i + 1], tol)?);
            }
        }
        if let Some(&last) = values.last() {
            if last == 0.0 {
                roots.push(grid[grid.len() - 1]);
            }
        }
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(1.0));
    Ok(roots)
}

/// Both branches of the closed constant-α solution for one mode pair,
/// `λ = ½[−τ−ϱ ± √((τ−ϱ)² + 4ϱα₀²)]`, with `χ = τ + λ` in the
/// normalisation `φ = α₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantPair {
    pub lambda: [f64; 2],
    pub chi: [f64; 2],
}

pub fn closed_constant_spectrum(tau: f64, rho: f64, alpha0: f64) -> Result<ConstantPair> {
    if !(tau > 0.0 && rho > 0.0) {
        return Err(Error::InvalidArgument(format!("need τ, ϱ > 0, got {tau}, {rho}")));
    }
    let disc = ((tau - rho).powi(2) + 4.0 * rho * alpha0 * alpha0).sqrt();
    let l1 = 0.5 * (-tau - rho + disc);
    let l2 = 0.5 * (-tau - rho - disc);
    Ok(ConstantPair {
        lambda: [l1, l2],
        chi: [tau + l1, tau + l2],
    })
}

/// Roots of `det[[p + λ, −a], [−w, q + λ]] = 0`, larger real part first.
pub fn secular_roots(p: f64, q: f64, a: f64, w: f64) -> [ComplexScalar; 2] {
    let disc = ComplexScalar::new((p - q).powi(2) + 4.0 * a * w, 0.0).sqrt();
    let mid = ComplexScalar::new(-0.5 * (p + q), 0.0);
    [mid + 0.5 * disc, mid - 0.5 * disc]
}

/// `λ± = −ϱ ± α₀ √ϱ`.
pub fn high_conductivity_spectrum(rho: f64, alpha0: f64) -> Result<(f64, f64)> {
    if !(rho > 0.0) {
        return Err(Error::InvalidArgument(format!("need ϱ > 0, got {rho}")));
    }
    let s = alpha0 * rho.sqrt();
    Ok((-rho + s, -rho - s))
}
