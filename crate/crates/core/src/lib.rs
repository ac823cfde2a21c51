//! Laguerre functions of Hermite type on the positive half-space, the
//! Bessel-form smoothing kernel `R_r`, expansion coefficients, and the
//! numerical machinery used to probe Hardy-type inequalities for these
//! expansions.
//!
//! The crate is organised bottom-up:
//!
//! * [`special_fn`] evaluates Laguerre polynomials and functions, their
//!   derivatives, pointwise envelopes and modified Bessel functions.
//! * [`quadrature`] provides Gauss-Legendre rules, half-line integration and
//!   expansion coefficients `<f, phi_n>`.
//! * [`kernel`] evaluates `R_r(x, y)` (closed form and spectral series), its
//!   derivatives and the L2-norm scans.
//! * [`hardy`] builds H1 atoms and evaluates the coefficient sums and the
//!   r-integral that controls them.
//! * [`sharpness`] holds the oscillatory series used to show that the critical
//!   exponent cannot be lowered for L1 data.
//! * [`verify`] bundles named verification suites; [`report`] serialises their
//!   results.
//!
//! Scans run on rayon when the `parallel` feature is enabled (the default) and
//! fall back to plain iterators otherwise; every reduction is performed in a
//! fixed order so results do not depend on the thread count.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exec;
pub mod hardy;
pub mod kernel;
pub mod quadrature;
pub mod report;
pub mod sharpness;
pub mod special_fn;
pub mod sum;
pub mod verify;

pub use error::{Error, Result};
pub use special_fn::{AlphaIndex, EvalPoint, MultiIndex};
