//! Two smeared walls osculating at the same point share T and σ, so the
//! coupled zeroth-order problem splits into 2×2 blocks with closed roots.
//!
//! Run with `cargo run --example osculating_pair`.

use dynamo_lab::largeell::{
    assemble_smeared_system, build_osculating_pair, coupled_zeroth_spectrum, expansion_point_for_strength, implied_centrifugal,
    osculation_slope,
};

fn main() -> dynamo_lab::Result<()> {
    let (t, ell, b, alpha0) = (5.0, 20u32, 1.0, 1.0);
    let a = osculation_slope(t, ell);
    let (u, d) = build_osculating_pair(t, a, b, (0.0, 0.4), (vec![0.2], vec![-0.3, 0.05]))?;
    let c = implied_centrifugal(t, a);
    let pu = expansion_point_for_strength(&u, c)?;
    let pd = expansion_point_for_strength(&d, c)?;
    println!("poloidal: T = {:.12}, σ = {:.12}", pu.t, pu.sigma);
    println!("toroidal: T = {:.12}, σ = {:.12}", pd.t, pd.sigma);

    let sys = assemble_smeared_system((&u, &d), ell, alpha0, 6)?;
    let off_diag = (0..6)
        .flat_map(|i| (0..6).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| sys.overlap[(i, j)].abs())
        .fold(0.0, f64::max);
    println!("largest off-diagonal oscillator overlap: {off_diag:.2e}");
    for k in 0..3 {
        let [hi, lo] = coupled_zeroth_spectrum(k, pu.v, pd.v, pu.sigma, pd.sigma, alpha0)?;
        println!("  k = {k}: closed {:>12.6} {:>12.6}", hi.re, lo.re);
    }
    println!("pencil eigenvalues (leading six):");
    for z in sys.eigenvalues.iter().take(6) {
        println!("  {:>12.6} {:+.1e}i", z.re, z.im);
    }
    Ok(())
}
