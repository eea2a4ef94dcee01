//! End-to-end experiment drivers: configuration, equidistribution decay
//! runs, the Fourier-basis identity check, and CSV/JSON emission.

mod basis;
mod config;
mod equidist;
mod output;

pub use basis::{basis_series, run_basis_identity_check, BasisReport, BasisRow};
pub use config::{ExperimentConfig, MethodChoice, TestFunction, YGrid, DEFAULT_BUDGET, DEFAULT_SIGMA};
pub use equidist::{measure_at, reference_mean, run_equidistribution, EquidistributionReport};
pub use output::{write_csv, Summary};
