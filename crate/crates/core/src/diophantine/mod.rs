//! Khintchine-type counting on fractal measures: continued fractions,
//! Dirichlet approximation, and Monte-Carlo profiles of the sets
//! `{x : ‖qx‖ < ψ(q)}`.

mod continued;
mod counting;
mod psi;

pub use continued::{
    convergents, convergents_of_rational, dirichlet_approx, is_reduced, satisfies_dirichlet,
    RationalApprox, RATIONAL_TOL,
};
pub use counting::{
    dist_to_integer, khintchine_profile, measure_of_aq, KhintchineProfile, SeriesRegime,
};
pub use psi::{khintchine_sum, ApproximationFunction};
