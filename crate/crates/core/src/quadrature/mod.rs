//! Gauss-Legendre quadrature, half-line integration and expansion
//! coefficients `<f, φ_n^α>`.

mod coefficients;
mod gauss;

pub use coefficients::{
    coefficient, coefficients_up_to, coefficients_up_to_with_cap, default_cap, gram_defect, interval_integrals,
    CellFunction, CoefficientTable, Factor1d, IntervalIntegrals, Target,
};
pub use gauss::{gauss_legendre, integrate_halfline, CompositeRule, QuadratureRule};


