//! Replacing the Robin condition at r = 1 by a Dirichlet wall at r = S:
//! the solved shift, its 1/ℓ limit, and the resulting square-well spectra.
//!
//! Run with `cargo run --example boundary_shift`.

use std::f64::consts::PI;

use dynamo_lab::boundary::{effective_shift, shifted_dirichlet_basis, solve_shift};
use dynamo_lab::specialfn::{characteristic_roots, CharacteristicKind};

fn main() -> dynamo_lab::Result<()> {
    println!("{:>6} {:>14} {:>14} {:>12}", "ℓ", "S(μ=π)", "1 + 1/ℓ", "ℓ(S−1)");
    for ell in [1u32, 2, 5, 10, 50, 100, 1000] {
        let s = solve_shift(PI, ell, 1.0)?.s;
        println!(
            "{ell:>6} {s:>14.10} {:>14.10} {:>12.8}",
            effective_shift(ell)?,
            ell as f64 * (s - 1.0)
        );
    }

    println!("\nlowest Robin eigenvalue vs shifted-Dirichlet stand-in");
    for ell in [5u32, 10, 20, 40] {
        let tau = characteristic_roots(CharacteristicKind::Robin, ell, 1)?[0].powi(2);
        let well = shifted_dirichlet_basis(ell, 1)?.modes[0].eigenvalue;
        println!(
            "  ℓ = {ell:>3}: τ₀ = {tau:>12.6}, shifted = {well:>12.6}, rel. gap {:.3e}",
            (well - tau).abs() / tau
        );
    }
    Ok(())
}
