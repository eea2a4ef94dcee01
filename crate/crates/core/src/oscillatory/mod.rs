//! Fourier transforms of pushforward measures `∫ h(f(x)) w(x) dx` for
//! polynomial phases `f` and smooth windows `w`, with certified stationary
//! points and the leading stationary-phase term.

mod exact;
mod integral;
mod phase;

pub use integral::{
    exponent_fit_oscillatory, frequency_sweep, oscillatory_integral, stationary_phase_leading, SweepRow,
    Transform, MAX_FREQUENCY, SUPERPOLYNOMIAL_EXPONENT, SWEEP_TOL,
};
pub use phase::{
    find_stationary_points, PhasePolynomial, StationaryData, StationaryPoint, Window, WindowKind, BOUNDARY_TOL,
};
