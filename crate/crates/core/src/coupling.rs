//! α-profiles and the Galerkin coupling matrices between the poloidal and
//! toroidal channel bases.

use std::path::Path;

use crate::basis::{panels_for, Basis, PANEL_NODES};
use crate::error::{Error, Result};
use crate::numerics::{GaussLegendre, RealMatrix};

/// Tabulated α(r), linearly interpolated and clamped at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaTable {
    r: Vec<f64>,
    alpha: Vec<f64>,
}

impl AlphaTable {
    /// The grid must be strictly increasing and cover `[0, 1]`.
    pub fn new(r: Vec<f64>, alpha: Vec<f64>) -> Result<Self> {
        if r.len() != alpha.len() || r.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "alpha table needs matching columns with at least two rows, got {} and {}",
                r.len(),
                alpha.len()
            )));
        }
        if r.iter().chain(&alpha).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("alpha table contains non-finite values".into()));
        }
        if r.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("alpha table grid must be strictly increasing".into()));
        }
        if r[0] > 0.0 || r[r.len() - 1] < 1.0 {
            return Err(Error::InvalidArgument(format!(
                "alpha table grid [{}, {}] does not cover [0, 1]",
                r[0],
                r[r.len() - 1]
            )));
        }
        Ok(Self { r, alpha })
    }

    /// Reads two whitespace-separated columns `r α`; blank lines and `#`
    /// comments are skipped.
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read alpha table {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut r = Vec::new();
        let mut alpha = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::Config(format!("alpha table line {}: bad number {s:?}", lineno + 1)))
            };
            if cols.len() != 2 {
                return Err(Error::Config(format!(
                    "alpha table line {}: expected 2 columns, found {}",
                    lineno + 1,
                    cols.len()
                )));
            }
            r.push(parse(cols[0])?);
            alpha.push(parse(cols[1])?);
        }
        Self::new(r, alpha)
    }

    pub fn grid(&self) -> &[f64] {
        &self.r
    }

    pub fn values(&self) -> &[f64] {
        &self.alpha
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.r.len();
        if x <= self.r[0] {
            return self.alpha[0];
        }
        if x >= self.r[n - 1] {
            return self.alpha[n - 1];
        }
        let i = self.r.partition_point(|&g| g <= x) - 1;
        let t = (x - self.r[i]) / (self.r[i + 1] - self.r[i]);
        self.alpha[i] + t * (self.alpha[i + 1] - self.alpha[i])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlphaProfile {
    Constant(f64),
    /// Coefficients of `c0 + c1 r + c2 r² + ...`.
    Polynomial(Vec<f64>),
    Tabulated(AlphaTable),
}

impl AlphaProfile {
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            AlphaProfile::Constant(a) => *a,
            AlphaProfile::Polynomial(c) => c.iter().rev().fold(0.0, |acc, &ci| acc * r + ci),
            AlphaProfile::Tabulated(t) => t.eval(r),
        }
    }

    /// `Some(α₀)` when the profile is a constant (including a degree-0 polynomial).
    pub fn as_constant(&self) -> Option<f64> {
        match self {
            AlphaProfile::Constant(a) => Some(*a),
            AlphaProfile::Polynomial(c) if c.iter().skip(1).all(|&x| x == 0.0) => Some(c.first().copied().unwrap_or(0.0)),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AlphaProfile::Constant(a) => *a == 0.0,
            AlphaProfile::Polynomial(c) => c.iter().all(|&x| x == 0.0),
            AlphaProfile::Tabulated(t) => t.values().iter().all(|&x| x == 0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            AlphaProfile::Constant(a) => a.is_finite(),
            AlphaProfile::Polynomial(c) => !c.is_empty() && c.iter().all(|x| x.is_finite()),
            AlphaProfile::Tabulated(_) => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("invalid alpha profile {self:?}")))
        }
    }
}

/// Overlaps `O`, α-matrix `A` and ω-matrix `Ω` for one pair of bases.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrices {
    /// `O[k][j] = ∫ φ_k χ_j`.
    pub overlap: RealMatrix,
    /// `A[k][j] = ∫ φ_k α χ_j`.
    pub alpha: RealMatrix,
    /// `Ω[q][j] = ∫ α χ'_q φ'_j + ∫ α ℓ(ℓ+1)/r² χ_q φ_j`.
    pub omega: RealMatrix,
}

/// Mode values and derivatives tabulated on a shared composite grid.
struct Tables {
    weights: Vec<f64>,
    nodes: Vec<f64>,
    u: Vec<Vec<f64>>,
    du: Vec<Vec<f64>>,
    d: Vec<Vec<f64>>,
    dd: Vec<Vec<f64>>,
}

fn check_pair(u: &Basis, d: &Basis) -> Result<()> {
    if u.ell() != d.ell() {
        return Err(Error::InvalidArgument(format!(
            "bases have different mode numbers: {} and {}",
            u.ell(),
            d.ell()
        )));
    }
    Ok(())
}

/// Integration interval `[0, L]` shared by both channels: the common domain
/// of the two bases, which is the physical interval when one of them lives
/// on a shifted domain.
fn common_length(u: &Basis, d: &Basis) -> f64 {
    u.spec.endpoint().min(d.spec.endpoint())
}

fn tabulate(u: &Basis, d: &Basis, refine: usize) -> Result<Tables> {
    check_pair(u, d)?;
    if refine == 0 {
        return Err(Error::InvalidArgument("panel refinement factor must be positive".into()));
    }
    let length = common_length(u, d);
    let kmax = u.max_wavenumber().max(d.max_wavenumber());
    let rule = GaussLegendre::new(PANEL_NODES)?;
    let (nodes, weights) = rule.composite(0.0, length, panels_for(kmax, length) * refine);
    let table = |b: &Basis, deriv: bool| -> Result<Vec<Vec<f64>>> {
        (0..b.len())
            .map(|i| {
                nodes
                    .iter()
                    .map(|&r| if deriv { b.derivative(i, r) } else { b.value(i, r) })
                    .collect()
            })
            .collect()
    };
    Ok(Tables {
        u: table(u, false)?,
        du: table(u, true)?,
        d: table(d, false)?,
        dd: table(d, true)?,
        nodes,
        weights,
    })
}

fn weighted(rows: &[Vec<f64>], cols: &[Vec<f64>], w: &[f64]) -> RealMatrix {
    RealMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        rows[i].iter().zip(&cols[j]).zip(w).map(|((a, b), c)| a * b * c).sum()
    })
}

/// `O[k][j] = ∫₀¹ φ_k χ_j dr` with `u` supplying φ and `d` supplying χ.
pub fn overlap_matrix(u: &Basis, d: &Basis) -> Result<RealMatrix> {
    let t = tabulate(u, d, 1)?;
    Ok(weighted(&t.u, &t.d, &t.weights))
}

/// `A[k][j] = ∫₀¹ φ_k α χ_j dr`.
pub fn alpha_matrix(u: &Basis, d: &Basis, alpha: &AlphaProfile) -> Result<RealMatrix> {
    Ok(coupling_matrices(u, d, alpha)?.alpha)
}

/// `Ω[q][j]` in integration-by-parts form, rows indexed by the toroidal
/// basis `d` and columns by the poloidal basis `u`. The mode number is
/// taken from the bases.
pub fn omega_matrix(d: &Basis, u: &Basis, alpha: &AlphaProfile) -> Result<RealMatrix> {
    Ok(coupling_matrices(u, d, alpha)?.omega)
}

pub fn coupling_matrices(u: &Basis, d: &Basis, alpha: &AlphaProfile) -> Result<CouplingMatrices> {
    coupling_matrices_refined(u, d, alpha, 1)
}

/// As [`coupling_matrices`] with `refine` times the default panel count.
pub fn coupling_matrices_refined(u: &Basis, d: &Basis, alpha: &AlphaProfile, refine: usize) -> Result<CouplingMatrices> {
    alpha.validate()?;
    let t = tabulate(u, d, refine)?;
    let ell = u.ell() as f64;
    let centrifugal = ell * (ell + 1.0);
    let a: Vec<f64> = t.nodes.iter().map(|&r| alpha.eval(r)).collect();
    let wa: Vec<f64> = t.weights.iter().zip(&a).map(|(w, a)| w * a).collect();
    let wv: Vec<f64> = t.nodes.iter().zip(&wa).map(|(&r, wa)| wa * centrifugal / (r * r)).collect();
    let overlap = weighted(&t.u, &t.d, &t.weights);
    let alpha_m = weighted(&t.u, &t.d, &wa);
    let grad = weighted(&t.dd, &t.du, &wa);
    let pot = weighted(&t.d, &t.u, &wv);
    let omega = RealMatrix::from_fn(d.len(), u.len(), |q, j| grad[(q, j)] + pot[(q, j)]);
    Ok(CouplingMatrices {
        overlap,
        alpha: alpha_m,
        omega,
    })
}
