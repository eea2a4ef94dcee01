//! Numerical laboratory for horocycle equidistribution against fractal
//! measures on the modular surface.

pub mod automorphic;
pub mod diophantine;
pub mod error;
pub mod experiments;
pub mod measures;
pub mod modular;
pub mod numeric;
pub mod oscillatory;
pub mod report;

pub use error::{Error, Result};
pub use measures::{FractalMeasure, MeasureExpr};
