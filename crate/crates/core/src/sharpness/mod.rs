//! Oscillatory series behind the sharpness of the critical exponent.

mod divergence;
mod harmonic;
mod inner;
mod oscillatory;
mod trig;

pub use divergence::{
    cos_squared_decomposition_check, cos_squared_remainder_limit, cos_squared_termwise_defect, divergence_demo,
    DivergenceReport, DIVERGENCE_MAX_1D, DIVERGENCE_MAX_2D, FIT_FROM, SURROGATE_FROM_2D,
};
pub use harmonic::{harmonic_number, harmonic_remainder, EULER_GAMMA, HARMONIC_EXACT_MAX};
pub use inner::{
    inner_series, inner_series_limit, inner_series_scan, inner_series_tail_bound, InnerSeriesLimit, InnerSeriesScan,
    INNER_DIRECT_TERMS, INNER_MAX_K,
};
pub use trig::{
    trig_series_accelerated, trig_series_limit, trig_series_naive, trig_series_state, TrigKind, TrigSeriesState,
    ACCELERATED_MAX_K, NAIVE_MAX_K,
};
