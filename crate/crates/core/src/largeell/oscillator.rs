//! Harmonic-oscillator basis of `−∂² + ξ²`: Hermite functions and matrix
//! elements of powers of ξ.

use crate::error::Result;
use crate::numerics::{schur_eigenvalues, RealMatrix};

/// Orthonormal Hermite functions `h_0(ξ) … h_max(ξ)`.
pub fn hermite_functions(max: usize, xi: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(max + 1);
    h.push(std::f64::consts::PI.powf(-0.25) * (-0.5 * xi * xi).exp());
    if max >= 1 {
        h.push(std::f64::consts::SQRT_2 * xi * h[0]);
    }
    for k in 1..max {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * xi * h[k] - (kf / (kf + 1.0)).sqrt() * h[k - 1];
        h.push(next);
    }
    h
}

/// Position operator `ξ = (a + a†)/√2` in the first `n` states.
pub fn position_matrix(n: usize) -> RealMatrix {
    RealMatrix::from_fn(n, n, |i, j| {
        if j == i + 1 {
            (j as f64 / 2.0).sqrt()
        } else if i == j + 1 {
            (i as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    })
}

/// Exact matrix elements `⟨i|ξ^p|j⟩` for `i, j < n`, computed in an
/// enlarged basis so truncation never touches the kept block.
pub fn power_matrix(p: u32, n: usize) -> RealMatrix {
    let big = n + p as usize;
    let x = position_matrix(big);
    let mut acc = RealMatrix::identity(big);
    for _ in 0..p {
        acc = acc.matmul(&x).expect("square factors");
    }
    acc.leading_block(n, n)
}

pub fn matrix_element(p: u32, n: usize, m: usize) -> f64 {
    power_matrix(p, n.max(m) + 1)[(n, m)]
}

/// Lowest `count` levels of `−∂² + ξ² + κ₃ξ³ + κ₄ξ⁴` in the first `modes`
/// oscillator states, by dense diagonalization.
pub fn anharmonic_levels(kappa3: f64, kappa4: f64, modes: usize, count: usize) -> Result<Vec<f64>> {
    let x3 = power_matrix(3, modes);
    let x4 = power_matrix(4, modes);
    let h = RealMatrix::from_fn(modes, modes, |i, j| {
        let diag = if i == j { (2 * i + 1) as f64 } else { 0.0 };
        diag + kappa3 * x3[(i, j)] + kappa4 * x4[(i, j)]
    });
    let mut levels: Vec<f64> = schur_eigenvalues(&h)?.into_iter().map(|z| z.re).collect();
    levels.sort_by(f64::total_cmp);
    levels.truncate(count);
    Ok(levels)
}
