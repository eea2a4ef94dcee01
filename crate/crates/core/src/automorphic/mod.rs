//! Special functions and Eisenstein-series diagnostics on the modular
//! surface: ζ near the 1-line, `K_{it}`, the series `E(z, ½+it)`, its
//! horocycle Fourier coefficients, and twisted Hecke sums.

mod bessel;
mod coefficients;
mod eisenstein;
mod special;
mod sums;

pub use bessel::{
    bessel_k_imag, bessel_k_scaled, bessel_k_scaled_with_step, default_step, KTable, KValue,
    UNDERFLOW_ARG,
};
pub use coefficients::{
    horocycle_fourier_coeff, horocycle_fourier_coeffs, spectral_gap_fit, sup_nonzero_coeff,
    symmetric_coefficient,
};
pub use eisenstein::{
    constant_term, divisor_tau, eisenstein_value, hecke_eis, EisensteinObservable,
    EisensteinParams, DEFAULT_TERMS, MAX_T,
};
pub use special::{completed_zeta, gamma, ln_gamma, zeta};
pub use sums::{
    truncation_tail_mass, twisted_hecke_sum, twisted_sum_decay, TwistRegime, TwistedSumSpec,
};
