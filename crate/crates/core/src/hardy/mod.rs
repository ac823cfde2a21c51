//! H¹ atoms on the positive orthant, the Hardy coefficient sums, and the
//! r-integral that bounds them.

mod atom;
mod integral;
mod sums;

pub use atom::{
    atom_family, family_alpha, make_atom, radius_for_measure, Atom, AtomRecord, FamilyMember, DISK_RESOLUTION,
};
pub use integral::{atom_r_integral, atom_r_integral_report, beta_identity_check, AtomNorm, RIntegralReport, SPECTRAL_R_MAX};
pub use sums::{
    coefficient_decay_constant, hardy_sum, hardy_sum_from_table, dyadic_points, linear_fit, uniform_phi_sum_scan, HardySumReport,
    UniformSumReport, UNIFORM_SCAN_CAP,
};
