//! Constant-α spectrum: block eigensolve of the truncated system, the
//! eigenvector of the leading mode, and the closed forms it approaches.
//!
//! Run with `cargo run --example constant_alpha_spectrum`.

use dynamo_lab::coupling::AlphaProfile;
use dynamo_lab::dynamo::{
    assemble_standard, block_eigensolve, closed_constant_spectrum, eigenvector, high_conductivity_spectrum,
};

fn main() -> dynamo_lab::Result<()> {
    let alpha0 = 1.0;
    let profile = AlphaProfile::Constant(alpha0);
    let sys = assemble_standard(5, 12, &profile)?;
    let spec = block_eigensolve(&sys)?;
    println!("ℓ = 5, α₀ = {alpha0}, N = 12: {} eigenvalues", spec.eigenvalues.len());
    for z in spec.eigenvalues.iter().take(6) {
        println!("  {:>18.10} {:+.3e}i", z.re, z.im);
    }

    let lead = spec.leading().re;
    let c = eigenvector(&sys, lead)?;
    println!("leading mode coefficients (φ, χ), first three:");
    for k in 0..3 {
        println!("  {k}: {:>12.6} {:>12.6}", c.phi[k], c.chi[k]);
    }

    // without the basis mismatch each (τ_k, ϱ_k) pair would decouple
    let pair = closed_constant_spectrum(sys.tau[0], sys.rho[0], alpha0)?;
    println!("decoupled first pair: {:.6}, {:.6}", pair.lambda[0], pair.lambda[1]);

    println!("{:>5} {:>16} {:>16} {:>12}", "ℓ", "leading", "−ϱ₀ + α₀√ϱ₀", "rel. gap");
    for ell in [10u32, 20, 40, 80] {
        let sys = assemble_standard(ell, 8, &profile)?;
        let lead = block_eigensolve(&sys)?.leading().re;
        let (hc, _) = high_conductivity_spectrum(sys.rho[0], alpha0)?;
        println!("{ell:>5} {lead:>16.6} {hc:>16.6} {:>12.4e}", (lead - hc).abs() / sys.rho[0]);
    }
    Ok(())
}
