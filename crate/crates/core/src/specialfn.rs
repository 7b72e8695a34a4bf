//! Half-integer-order Bessel functions through spherical Bessel functions,
//! characteristic equations of the channel boundary conditions, and their
//! positive roots.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::brent_root;

/// Absolute tolerance on wavenumber roots.
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// Boundary condition at the outer end of a radial channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CharacteristicKind {
    /// `f(R) = 0` with `R = 1`.
    Dirichlet,
    /// `f'(R) + (ℓ/R) f(R) = 0` with `R = 1`.
    Robin,
    /// `f(S) = 0` at a shifted endpoint `S > 0`.
    ShiftedDirichlet(f64),
}

impl CharacteristicKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CharacteristicKind::ShiftedDirichlet(s) if !(s > 0.0 && s.is_finite()) => {
                Err(Error::InvalidArgument(format!("shifted endpoint S = {s} must be positive")))
            }
            _ => Ok(()),
        }
    }

    /// Outer endpoint of the channel for a unit physical radius.
    pub fn endpoint(&self) -> f64 {
        match *self {
            CharacteristicKind::ShiftedDirichlet(s) => s,
            _ => 1.0,
        }
    }
}

/// Spherical Bessel function `j_order(x)` for `order >= -1`, `x > 0`.
///
/// `j_{-1}(x) = cos x / x` is included so that `J_{ℓ-1/2}` is available at
/// `ℓ = 0`. Upward recurrence is used while `order <= x`; otherwise a
/// downward Miller recurrence normalised against the closed forms of
/// `j_0` and `j_{-1}`.
pub fn spherical_j(order: i32, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("spherical_j needs x > 0, got {x}")));
    }
    if order < -1 {
        return Err(Error::Unsupported(format!("spherical_j of order {order}")));
    }
    let (s, c) = x.sin_cos();
    let jm1 = c / x;
    let j0 = s / x;
    match order {
        -1 => return Ok(jm1),
        0 => return Ok(j0),
        _ => {}
    }
    if order as f64 <= x {
        let (mut prev, mut cur) = (jm1, j0);
        for n in 0..order {
            let next = (2 * n + 1) as f64 / x * cur - prev;
            prev = cur;
            cur = next;
        }
        return Ok(cur);
    }
    Ok(miller(order, x, j0, jm1))
}

fn miller(order: i32, x: f64, j0: f64, jm1: f64) -> f64 {
    const RESCALE: f64 = 1e250;
    let start = order + 50 + (x / 2.0).ceil() as i32;
    let mut upper = 0.0; // f_{n+1}
    let mut cur = 1e-30; // f_n
    let mut at_order = 0.0;
    let mut n = start;
    // walk down to n = 0, remembering f_order, then one more step to f_{-1}
    while n > 0 {
        let lower = (2 * n + 1) as f64 / x * cur - upper;
        upper = cur;
        cur = lower;
        n -= 1;
        if n == order {
            at_order = cur;
        }
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            upper /= RESCALE;
            at_order /= RESCALE;
        }
    }
    let f0 = cur;
    let fm1 = f0 / x - upper;
    if f0.abs() >= fm1.abs() {
        at_order * (j0 / f0)
    } else {
        at_order * (jm1 / fm1)
    }
}

/// `J_{ℓ+1/2}(x) = sqrt(2x/π) j_ℓ(x)`; `ell = -1` gives `J_{-1/2}`.
pub fn bessel_half(ell: i32, x: f64) -> Result<f64> {
    Ok((2.0 * x / PI).sqrt() * spherical_j(ell, x)?)
}

/// Derivative `J'_{ℓ+1/2}(x) = J_{ℓ-1/2}(x) - ((ℓ+1/2)/x) J_{ℓ+1/2}(x)`.
pub fn bessel_half_deriv(ell: u32, x: f64) -> Result<f64> {
    let l = ell as i32;
    let nu = ell as f64 + 0.5;
    Ok(bessel_half(l - 1, x)? - nu / x * bessel_half(l, x)?)
}

/// Characteristic function whose positive zeros are the channel wavenumbers.
pub fn characteristic(kind: CharacteristicKind, ell: u32, k: f64) -> Result<f64> {
    kind.validate()?;
    if !(k > 0.0) {
        return Err(Error::Domain(format!("wavenumber k = {k} must be positive")));
    }
    match kind {
        CharacteristicKind::Dirichlet => bessel_half(ell as i32, k),
        CharacteristicKind::ShiftedDirichlet(s) => bessel_half(ell as i32, k * s),
        CharacteristicKind::Robin => {
            let nu = ell as f64 + 0.5;
            Ok(nu * bessel_half(ell as i32, k)? + k * bessel_half_deriv(ell, k)?)
        }
    }
}

/// The first `count` positive roots `k_0 < k_1 < ...` of the characteristic
/// function.
///
/// Zeros of `J_ν` with `|ν| >= 1/2` are at least `π` apart, so scanning in
/// steps of a quarter of that spacing brackets each root exactly once.
pub fn characteristic_roots(kind: CharacteristicKind, ell: u32, count: usize) -> Result<Vec<f64>> {
    kind.validate()?;
    if count == 0 {
        return Err(Error::InvalidArgument("need at least one root".into()));
    }
    let scale = kind.endpoint();
    // every zero of J_{ℓ+1/2} (and of J_{ℓ-1/2}) exceeds ℓ - 1/2
    let first_arg = (ell as f64 - 1.0).max(1e-3);
    let step = 0.25 * PI / scale;
    let limit = (first_arg + (count + ell as usize + 10) as f64 * 2.0 * PI) / scale;
    let f = |k: f64| characteristic(kind, ell, k).unwrap_or(f64::NAN);

    let mut roots = Vec::with_capacity(count);
    let mut a = first_arg / scale;
    let mut fa = f(a);
    while roots.len() < count {
        if a > limit {
            return Err(Error::Enumeration {
                found: roots.len(),
                wanted: count,
                limit,
            });
        }
        let b = a + step;
        let fb = f(b);
        if fa.signum() * fb.signum() < 0.0 {
            roots.push(brent_root(f, a, b, ROOT_TOLERANCE)?);
        } else if fb == 0.0 {
            roots.push(b);
        }
        a = b;
        fa = fb;
    }
    Ok(roots)
}
