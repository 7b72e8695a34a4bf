//! Finite-difference reference solvers on a uniform mesh `r_i = i h`,
//! independent of the Bessel bases.

use crate::coupling::AlphaProfile;
use crate::error::{Error, Result};
use crate::largeell::{centrifugal_strength, expansion_point, SoftWall};
use crate::numerics::{
    inverse_iteration, schur_eigenvalues, sort_by_real_desc, BandedMatrix, ComplexScalar, RealMatrix, SymmetricTridiagonal,
};
use crate::specialfn::CharacteristicKind;

/// Interior point count below which a mesh is rejected.
pub const MIN_INTERIOR: usize = 16;

/// Interior points used to seed [`fd_coupled_leading`].
pub const DEFAULT_SEED_INTERIOR: usize = 200;

/// Discretization of the Robin condition `φ'(R) + (ℓ/R) φ(R) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RobinClosure {
    /// `φ(R)` is an unknown; a centred ghost point eliminates `φ(R + h)`.
    /// Second-order accurate.
    #[default]
    Centered,
    /// One-sided `(φ_{N+1} − φ_N)/h + (ℓ/R) φ_N = 0`, eliminating the
    /// boundary value. First-order accurate.
    OneSided,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshSpec {
    pub interior: usize,
    /// Right end `L` of the domain `(0, L]`.
    pub length: f64,
    pub robin: RobinClosure,
}

impl MeshSpec {
    pub fn new(interior: usize, length: f64) -> Result<Self> {
        let m = Self {
            interior,
            length,
            robin: RobinClosure::default(),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn with_closure(mut self, robin: RobinClosure) -> Self {
        self.robin = robin;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.interior < MIN_INTERIOR {
            return Err(Error::InvalidArgument(format!(
                "mesh needs at least {MIN_INTERIOR} interior points, got {}",
                self.interior
            )));
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "mesh length {} must be positive",
                self.length
            )));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        self.length / (self.interior + 1) as f64
    }
}

/// Lowest `count` eigenvalues of `−∂² + V` on `(0, L]` with `f(0) = 0` and
/// the given outer condition, by Sturm bisection on the three-point stencil.
///
/// Dirichlet kinds put the wall at `L` (`S` for the shifted kind); the
/// Robin kind uses `ℓ` and `R = L`.
pub fn fd_single_channel(
    potential: &dyn Fn(f64) -> f64,
    kind: CharacteristicKind,
    ell: u32,
    mesh: &MeshSpec,
    count: usize,
) -> Result<Vec<f64>> {
    mesh.validate()?;
    kind.validate()?;
    let mesh = match kind {
        CharacteristicKind::ShiftedDirichlet(s) => MeshSpec { length: s, ..*mesh },
        _ => *mesh,
    };
    let n = mesh.interior;
    let h = mesh.spacing();
    let ih2 = 1.0 / (h * h);
    let mut diag: Vec<f64> = (1..=n).map(|i| 2.0 * ih2 + potential(i as f64 * h)).collect();
    let mut off_sq = vec![ih2 * ih2; n - 1];
    if kind == CharacteristicKind::Robin {
        let beta = h * ell as f64 / mesh.length;
        match mesh.robin {
            RobinClosure::Centered => {
                // boundary row: (−2φ_N + (2 + 2hℓ/R) φ_{N+1}) / h², coupling product 2/h⁴
                diag.push((2.0 + 2.0 * beta) * ih2 + potential(mesh.length));
                off_sq.push(2.0 * ih2 * ih2);
            }
            RobinClosure::OneSided => {
                diag[n - 1] -= (1.0 - beta) * ih2;
            }
        }
    }
    let t = SymmetricTridiagonal::new(diag, off_sq)?;
    Ok(t.lowest(count))
}

/// Coupled finite-difference operator `L` with `L x = −λ x`, stored in
/// interleaved order `(φ_1, χ_1, φ_2, χ_2, ...)` so that it is banded.
#[derive(Debug, Clone)]
pub struct CoupledOperator {
    pub matrix: BandedMatrix,
    pub mesh: MeshSpec,
    /// φ unknowns, including the boundary value for the centred closure.
    pub phi_count: usize,
    pub chi_count: usize,
}

impl CoupledOperator {
    pub fn len(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    pub fn phi_index(i: usize) -> usize {
        2 * (i - 1)
    }

    pub fn chi_index(i: usize) -> usize {
        2 * (i - 1) + 1
    }

    pub fn to_dense(&self) -> RealMatrix {
        let n = self.len();
        RealMatrix::from_fn(n, n, |i, j| self.matrix.get(i, j))
    }
}

/// Discretizes
///
/// ```text
/// [ −∂² + V          −α       ] [φ]        [φ]
/// [ ∂α∂ − V_m        −∂² + V  ] [χ]  = −λ [χ]
/// ```
///
/// with `V = ℓ(ℓ+1)/r²`, `V_m = α V`, `φ(0) = χ(0) = χ(R) = 0` and the Robin
/// condition on φ at `R = L`. The `∂α∂` term uses α at half points.
pub fn coupled_operator(alpha: &AlphaProfile, ell: u32, mesh: &MeshSpec) -> Result<CoupledOperator> {
    mesh.validate()?;
    alpha.validate()?;
    let n = mesh.interior;
    let h = mesh.spacing();
    let ih2 = 1.0 / (h * h);
    let c = (ell as f64) * (ell as f64 + 1.0);
    let beta = h * ell as f64 / mesh.length;
    let centered = mesh.robin == RobinClosure::Centered;
    let phi_count = if centered { n + 1 } else { n };
    let size = phi_count + n;
    let mut m = BandedMatrix::zeros(size, 3, 2);
    let p = CoupledOperator::phi_index;
    let q = CoupledOperator::chi_index;

    for i in 1..=n {
        let r = i as f64 * h;
        let v = c / (r * r);
        let a = alpha.eval(r);
        // poloidal row
        m.set(p(i), p(i), 2.0 * ih2 + v)?;
        if i > 1 {
            m.set(p(i), p(i - 1), -ih2)?;
        }
        if i < n || centered {
            m.set(p(i), p(i + 1), -ih2)?;
        } else {
            // φ_{N+1} = (1 − hℓ/R) φ_N
            let d = m.get(p(i), p(i));
            m.set(p(i), p(i), d - (1.0 - beta) * ih2)?;
        }
        m.set(p(i), q(i), -a)?;

        // toroidal row
        m.set(q(i), q(i), 2.0 * ih2 + v)?;
        if i > 1 {
            m.set(q(i), q(i - 1), -ih2)?;
        }
        if i < n {
            m.set(q(i), q(i + 1), -ih2)?;
        }
        let am = alpha.eval(r - 0.5 * h);
        let ap = alpha.eval(r + 0.5 * h);
        let mut own = -(am + ap) * ih2 - a * v;
        if i > 1 {
            m.set(q(i), p(i - 1), am * ih2)?;
        }
        if i < n || centered {
            m.set(q(i), p(i + 1), ap * ih2)?;
        } else {
            own += ap * ih2 * (1.0 - beta);
        }
        m.set(q(i), p(i), own)?;
    }
    if centered {
        let b = p(n + 1);
        m.set(b, p(n), -2.0 * ih2)?;
        m.set(b, b, (2.0 + 2.0 * beta) * ih2 + c / (mesh.length * mesh.length))?;
    }
    Ok(CoupledOperator {
        matrix: m,
        mesh: *mesh,
        phi_count,
        chi_count: n,
    })
}

/// Eigenvalues λ of the coupled operator by dense Schur iteration, sorted by
/// decreasing real part and cut to `count`. Cost grows as the cube of the
/// mesh size; see [`fd_coupled_leading`] for fine meshes.
pub fn fd_coupled(alpha: &AlphaProfile, ell: u32, mesh: &MeshSpec, count: usize) -> Result<Vec<ComplexScalar>> {
    let op = coupled_operator(alpha, ell, mesh)?;
    let mut ev: Vec<ComplexScalar> = schur_eigenvalues(&op.to_dense())?.into_iter().map(|z| -z).collect();
    sort_by_real_desc(&mut ev);
    ev.truncate(count);
    Ok(ev)
}

/// Leading (largest) real eigenvalue λ on a fine mesh: a dense solve on a
/// coarse mesh supplies the shift for banded inverse iteration.
pub fn fd_coupled_leading(alpha: &AlphaProfile, ell: u32, mesh: &MeshSpec, seed_interior: usize) -> Result<f64> {
    let coarse = MeshSpec {
        interior: seed_interior.min(mesh.interior),
        ..*mesh
    };
    let seed = fd_coupled(alpha, ell, &coarse, 1)?[0];
    if seed.im.abs() > 1e-9 * seed.norm().max(1.0) {
        return Err(Error::Unsupported(format!("leading eigenvalue {seed} is not real")));
    }
    if coarse.interior == mesh.interior {
        return Ok(seed.re);
    }
    let op = coupled_operator(alpha, ell, mesh)?;
    let (mu, _) = inverse_iteration(&op.matrix, -seed.re, 1e-13, 60)?;
    Ok(-mu)
}

/// Tail length, in units of `σ`, kept beyond the minimum `T` by
/// [`fd_soft_wall_levels`].
pub const SOFT_WALL_TAIL: f64 = 14.0;

/// Lowest `count` levels of `−∂² + ℓ(ℓ+1)/r² + U(r)` for a soft wall `U`,
/// with a Dirichlet wall at `T + (SOFT_WALL_TAIL + 2√count) σ` where the
/// bound states have decayed.
pub fn fd_soft_wall_levels(wall: &SoftWall, ell: u32, interior: usize, count: usize) -> Result<Vec<f64>> {
    let p = expansion_point(wall, ell)?;
    let length = p.t + (SOFT_WALL_TAIL + 2.0 * (count as f64).sqrt()) * p.sigma;
    let c = centrifugal_strength(ell);
    let v = |r: f64| c / (r * r) + wall.value(r);
    fd_single_channel(
        &v,
        CharacteristicKind::Dirichlet,
        ell,
        &MeshSpec::new(interior, length)?,
        count,
    )
}
