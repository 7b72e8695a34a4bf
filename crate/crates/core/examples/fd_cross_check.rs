//! Independent finite-difference solve of the coupled radial equations,
//! compared with the Galerkin leading eigenvalue for several α profiles.
//!
//! Run with `cargo run --example fd_cross_check`.

use dynamo_lab::coupling::{AlphaProfile, AlphaTable};
use dynamo_lab::oracle::{fd_coupled_leading, MeshSpec, RobinClosure, DEFAULT_SEED_INTERIOR};
use dynamo_lab::validation::galerkin_leading;

fn main() -> dynamo_lab::Result<()> {
    let r: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let a: Vec<f64> = r.iter().map(|x| 1.0 + (3.0 * x).sin()).collect();
    let profiles = [
        ("constant 1", AlphaProfile::Constant(1.0)),
        ("0.5 + r", AlphaProfile::Polynomial(vec![0.5, 1.0])),
        ("table 1 + sin 3r", AlphaProfile::Tabulated(AlphaTable::new(r, a)?)),
    ];
    let mesh = MeshSpec::new(1500, 1.0)?;
    for (name, alpha) in &profiles {
        for ell in [1u32, 5] {
            let fd = fd_coupled_leading(alpha, ell, &mesh, DEFAULT_SEED_INTERIOR)?;
            let g = galerkin_leading(ell, alpha, 16)?;
            println!(
                "{name:<18} ℓ = {ell}: FD {fd:>14.8}  Galerkin {g:>14.8}  |Δ| {:.2e}",
                (fd - g).abs()
            );
        }
    }
    // the first-order one-sided closure converges much more slowly
    let one_sided = mesh.with_closure(RobinClosure::OneSided);
    let fd = fd_coupled_leading(&AlphaProfile::Constant(1.0), 5, &one_sided, DEFAULT_SEED_INTERIOR)?;
    println!("one-sided closure, ℓ = 5: {fd:.8}");
    Ok(())
}
