//! Leading eigenvalue under Galerkin truncation and mesh refinement, run in
//! parallel with results kept in parameter order.
//!
//! Run with `cargo run --example convergence_sweep`.

use rayon::prelude::*;

use dynamo_lab::coupling::AlphaProfile;
use dynamo_lab::oracle::{fd_coupled_leading, MeshSpec, DEFAULT_SEED_INTERIOR};
use dynamo_lab::validation::galerkin_leading;

fn main() -> dynamo_lab::Result<()> {
    let alpha = AlphaProfile::Constant(1.0);
    let ns = [2usize, 4, 8, 12, 16, 24];
    let meshes = [375usize, 750, 1500, 3000];
    let galerkin = ns
        .par_iter()
        .map(|&n| galerkin_leading(5, &alpha, n))
        .collect::<dynamo_lab::Result<Vec<_>>>()?;
    let fd = meshes
        .par_iter()
        .map(|&m| fd_coupled_leading(&alpha, 5, &MeshSpec::new(m, 1.0)?, DEFAULT_SEED_INTERIOR))
        .collect::<dynamo_lab::Result<Vec<_>>>()?;
    let reference = fd[fd.len() - 1];
    println!("Galerkin, ℓ = 5, α₀ = 1");
    for (n, v) in ns.iter().zip(&galerkin) {
        println!("  N = {n:>3}: {v:>16.10}  |Δ FD finest| {:.2e}", (v - reference).abs());
    }
    println!("finite differences");
    for (m, v) in meshes.iter().zip(&fd) {
        println!("  mesh {m:>5}: {v:>16.10}");
    }
    Ok(())
}
