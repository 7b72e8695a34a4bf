//! Self-contained numerical kernel: quadrature, root refinement, dense and
//! banded linear algebra, and a nonsymmetric eigensolver.

mod banded;
mod eigen;
mod fit;
mod lu;
mod matrix;
mod quadrature;
mod roots;
mod tridiagonal;

pub use banded::{inverse_iteration, BandedLu, BandedMatrix};
pub use eigen::{balance, hessenberg_qr, reduce_to_hessenberg, schur_eigenvalues, sort_by_real_desc, SWEEPS_PER_ROW};
pub use fit::{linear_slope, log_log_slope};
pub use lu::{determinant, solve_dense, LuDecomposition, PIVOT_THRESHOLD};
pub use matrix::RealMatrix;
pub use num_complex::Complex64 as ComplexScalar;
pub use quadrature::{gauss_legendre, GaussLegendre};
pub use roots::{bracketed_roots, brent_root};
pub use tridiagonal::SymmetricTridiagonal;
