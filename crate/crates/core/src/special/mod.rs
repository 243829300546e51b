//! Special-function kernels: gamma and Mittag-Leffler functions on the real
//! line. Everything here is a pure function of its arguments.

mod gamma;
mod mittag_leffler;
mod trig;

pub use gamma::{gamma, ln_gamma, recip_gamma, GAMMA_MAX_ARG};
pub use mittag_leffler::{
    mittag_leffler, ml, ml_asymptotic, ml_series_oracle, EvalReport, MlParams, Strategy,
    ASYMPTOTIC_THRESHOLD, SERIES_RADIUS, TARGET_TOLERANCE,
};
pub use trig::{cos_pi, sin_pi, sincos_pi};
