//! Special functions: Laguerre polynomials, standard Laguerre functions,
//! Laguerre functions of Hermite type, envelopes and modified Bessel
//! functions of the first kind.

mod bessel;
mod envelope;
mod gamma;
mod index;
mod laguerre;

pub use bessel::{bessel_i_scaled, bessel_ratio, ln_bessel_i_scaled, BESSEL_SERIES_CROSSOVER};
pub use envelope::{envelope, envelope_with_gamma, fit_envelope_constant, nu, Envelope, Regime, DEFAULT_TAIL_GAMMA};
pub use gamma::log_gamma;
pub use index::{is_hermite_class, AlphaIndex, EvalPoint, MultiIndex};
pub use laguerre::{
    asymptotic_phi, hermite_laguerre_at_zero, hermite_laguerre_dx, hermite_laguerre_dx_sweep,
    hermite_laguerre_fn, hermite_laguerre_fn_multi, hermite_laguerre_sweep, laguerre_poly_seq,
    standard_laguerre_fn, standard_laguerre_sweep, BOUNDARY_EPS, FD_STEP,
};

pub(crate) use laguerre::{hermite_sweep_unchecked, validate_alpha};
