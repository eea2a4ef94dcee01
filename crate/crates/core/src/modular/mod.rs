//! Geometry of the modular surface `SL₂(ℤ)\H`: reduction to the
//! fundamental domain, horocycle segments, and integration against the
//! hyperbolic probability measure and horocycle pushforwards.

mod horocycle;
mod integrate;
mod observable;
mod point;

pub use horocycle::{horocycle_point, HorocycleConfig};
pub use integrate::{
    mu_y_value, mx_integral, observe_on_horocycle, Estimate, Method, DEFAULT_SAMPLE_DEPTH,
};
pub use observable::{Constant, HeightBump, HeightIndicator, Observable};
pub use point::{
    mobius, reduce, reduce_with_word, word_matrix, ModularPoint, Step, BOUNDARY_TOL,
};
