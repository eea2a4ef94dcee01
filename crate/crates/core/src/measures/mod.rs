//! Fractal probability measures on ℝ: self-similar measures of
//! homogeneous IFSs, their Fourier transforms, sampling, and Fourier
//! ℓ¹-dimension estimates.

mod dimension;
mod expr;
mod fractal;
mod parse;

pub use dimension::{
    b_conditions, b_of_s, cutoff_grid, cvy_lower_bound, cvy_lower_bound_for, estimate_dim_l1,
    l1_partial_sum, partial_sums, DimensionEstimate, SumMode, DEFAULT_THETA_GRID,
    DIMENSION_THRESHOLD,
};
pub use expr::MeasureExpr;
pub use fractal::{symbol_g, FractalMeasure, DEFAULT_TAIL_TOL};
pub use parse::parse_measure;
