//! Fixtures shared by the kernel benchmarks in `benches/`.

use horolab_core::automorphic::EisensteinParams;
use horolab_core::oscillatory::{PhasePolynomial, Window};
use horolab_core::MeasureExpr;

/// The headline fractal: base 450 with digits `0..=446`.
pub fn headline_measure() -> MeasureExpr {
    "cantor:450:0..446".parse().expect("valid literal")
}

pub fn middle_thirds() -> MeasureExpr {
    "cantor:3:0,2".parse().expect("valid literal")
}

pub fn eisenstein() -> EisensteinParams {
    EisensteinParams::new(1.0).expect("t = 1 is admissible")
}

/// `x³` under a raised-cosine window on `[−1, 1]`.
pub fn cubic_phase() -> (PhasePolynomial, Window) {
    (
        "poly:0,0,0,1".parse().expect("valid literal"),
        Window::raised_cosine(0.0, 1.0).expect("positive radius"),
    )
}
