//! The smoothing kernel `R_r^α(x, y) = Σ_n r^{|n|} φ_n^α(x) φ_n^α(y)`, its
//! Bessel closed form, derivatives, L² norms and the operator it defines.

mod closed;
mod norms;
mod operator;

pub use closed::{
    kernel_closed, kernel_dx, kernel_dxj_multi, kernel_multi, kernel_series, ln_kernel_closed, series_terms, Branch,
    KernelQuery, SmoothingParam, PHI_SUP_BOUND, SERIES_MAX_R, SMALL_ARGUMENT_Z,
};
pub use norms::{
    claimed_exponent, l2_norm_kernel, l2_norm_kernel_dx, norm_scan, sup_grid, sup_l2_norm_kernel,
    sup_l2_norm_kernel_dx, NormKind, NormScanReport, SupNorm,
};
pub use operator::{
    apply_operator, apply_operator_spectral, cell_norm_sq_kernel, kernel_gram_1d, spectral_norm_sq,
};
