//! Galerkin, expansion and finite-difference solvers checked against each
//! other on cases outside the acceptance suite.

use dynamo_lab::coupling::AlphaProfile;
use dynamo_lab::dynamo::{assemble_standard, block_eigensolve};
use dynamo_lab::largeell::{expansion_eigenvalue, SoftWall};
use dynamo_lab::oracle::{fd_coupled_leading, fd_soft_wall_levels, MeshSpec, DEFAULT_SEED_INTERIOR};
use dynamo_lab::validation::galerkin_leading;

#[test]
fn expansion_matches_fd_levels() {
    for k in [2.0, 4.0] {
        let wall = SoftWall::power_law(1.0, k).unwrap();
        for ell in [20u32, 40] {
            let fd = fd_soft_wall_levels(&wall, ell, 4000, 2).unwrap();
            for (n, reference) in fd.iter().enumerate() {
                for order in 0..=2 {
                    let e = expansion_eigenvalue(&wall, ell, n, order).unwrap().total;
                    let rel = (e - *reference).abs() / *reference;
                    assert!(rel < 1e-2, "K={k} ℓ={ell} n={n} order={order}: {e} vs {}", *reference);
                }
                // second order is much sharper than the 1% contract
                let e2 = expansion_eigenvalue(&wall, ell, n, 2).unwrap().total;
                assert!((e2 - *reference).abs() / *reference < 1e-4);
            }
        }
    }
}

#[test]
fn non_constant_alpha_agrees_with_fd() {
    let mesh = MeshSpec::new(1500, 1.0).unwrap();
    for alpha in [
        AlphaProfile::Polynomial(vec![0.5, 1.0]),
        AlphaProfile::Polynomial(vec![2.0, 0.0, -1.5]),
    ] {
        for ell in [1u32, 5] {
            let fd = fd_coupled_leading(&alpha, ell, &mesh, DEFAULT_SEED_INTERIOR).unwrap();
            let g = galerkin_leading(ell, &alpha, 16).unwrap();
            assert!((fd - g).abs() / fd.abs() < 1e-4, "{alpha:?} ℓ={ell}: {g} vs {fd}");
        }
    }
}

#[test]
fn truncation_changes_shrink() {
    let alpha = AlphaProfile::Constant(1.0);
    let lead: Vec<f64> = [4, 8, 12, 16]
        .iter()
        .map(|&n| galerkin_leading(5, &alpha, n).unwrap())
        .collect();
    let steps: Vec<f64> = lead.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    assert!(steps.windows(2).all(|s| s[1] < s[0]), "{steps:?}");
    assert!(steps[2] / lead[3].abs() < 1e-4);
}

#[test]
fn zero_alpha_decouples_into_basis_spectra() {
    let sys = assemble_standard(3, 6, &AlphaProfile::Constant(0.0)).unwrap();
    let mut expected: Vec<f64> = sys.tau.iter().chain(&sys.rho).map(|x| -x).collect();
    expected.sort_by(|a, b| b.total_cmp(a));
    let got = block_eigensolve(&sys).unwrap().eigenvalues;
    for (g, e) in got.iter().zip(&expected) {
        assert!((g.re - e).abs() < 1e-9 * e.abs() && g.im.abs() < 1e-9);
    }
}
