//! Large-ℓ expansion of a soft-wall channel U = ω² r^K about the minimum of
//! the effective potential, order by order, against finite differences.
//!
//! Run with `cargo run --example large_ell_expansion`.

use dynamo_lab::largeell::{anharmonic_levels, expansion_eigenvalue, expansion_point, rs_corrections, SoftWall};
use dynamo_lab::oracle::fd_soft_wall_levels;

fn main() -> dynamo_lab::Result<()> {
    for k in [2.0, 4.0] {
        let wall = SoftWall::power_law(1.0, k)?;
        println!("K = {k}");
        for ell in [10u32, 20, 40] {
            let p = expansion_point(&wall, ell)?;
            let fd = fd_soft_wall_levels(&wall, ell, 4000, 2)?;
            println!(
                "  ℓ = {ell}: T = {:.6}, σ = {:.6}, κ₃ = {:.4e}, κ₄ = {:.4e}",
                p.t, p.sigma, p.kappa3, p.kappa4
            );
            for (n, reference) in fd.iter().enumerate() {
                let orders: Vec<String> = (0..=2)
                    .map(|o| expansion_eigenvalue(&wall, ell, n, o).map(|r| format!("{:>12.6}", r.total)))
                    .collect::<dynamo_lab::Result<_>>()?;
                println!("    n = {n}: orders 0..2 {}  FD {reference:>12.6}", orders.join(" "));
            }
        }
    }

    // the pure quartic perturbation, where first order is visibly rough
    let eps: f64 = rs_corrections(0.0, 0.1, 0, 2)?.iter().sum();
    let dense = anharmonic_levels(0.0, 0.1, 60, 1)?[0];
    println!("−∂² + ξ² + 0.1ξ⁴ ground state: perturbative {eps:.6}, dense {dense:.7}");
    Ok(())
}
