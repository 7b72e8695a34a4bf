//! Robin and Dirichlet channel bases: eigenvalues, interlacing, and the
//! identity between Robin roots and zeros of the order ℓ−1 function.
//!
//! Run with `cargo run --example basis_tables`.

use dynamo_lab::basis::{Basis, BasisSpec};
use dynamo_lab::specialfn::{characteristic_roots, CharacteristicKind};

fn main() -> dynamo_lab::Result<()> {
    for ell in [0u32, 1, 5, 20] {
        let u = Basis::build(BasisSpec::new(ell, CharacteristicKind::Robin, 5))?;
        let d = Basis::build(BasisSpec::new(ell, CharacteristicKind::Dirichlet, 5))?;
        println!("ℓ = {ell}");
        println!("  {:>3} {:>16} {:>16}", "k", "tau", "rho");
        for (k, (t, r)) in u.eigenvalues().iter().zip(d.eigenvalues()).enumerate() {
            println!("  {k:>3} {t:>16.10} {r:>16.10}");
        }
        if ell > 0 {
            let z = characteristic_roots(CharacteristicKind::Dirichlet, ell - 1, 1)?[0];
            println!("  first zero of j_(ℓ−1), squared: {:.10}", z * z);
        }
        // mode values near the edge: φ'(1) + ℓ φ(1) = 0 and χ(1) = 0
        let phi = &u.modes[0];
        println!(
            "  φ₀'(1) + ℓ φ₀(1) = {:.2e}, χ₀(1) = {:.2e}",
            u.derivative(0, 1.0)? + ell as f64 * u.value(0, 1.0)?,
            d.value(0, 1.0)?
        );
        println!("  φ₀ wavenumber {:.10}, norm {:.6}", phi.wavenumber, phi.norm);
    }
    Ok(())
}
