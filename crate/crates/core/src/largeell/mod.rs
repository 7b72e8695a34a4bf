//! Large-ℓ machinery: soft-wall channel potentials, their expansion about
//! the minimum of the effective potential, perturbed-oscillator corrections,
//! and the osculating-pair construction for the coupled problem.

pub mod expansion;
pub mod oscillator;
pub mod smeared;
pub mod wells;

pub use expansion::{
    expansion_eigenvalue, expansion_point, expansion_point_for_strength, rs_corrections, ExpansionPoint, ExpansionResult,
};
pub use oscillator::{anharmonic_levels, hermite_functions, matrix_element, power_matrix};
pub use smeared::{
    assemble_smeared_system, build_osculating_pair, coupled_zeroth_spectrum, implied_centrifugal, oscillator_overlaps,
    osculation_slope, SmearedSystem,
};
pub use wells::{centrifugal_strength, locate_minimum, minimum_t, SoftWall};
