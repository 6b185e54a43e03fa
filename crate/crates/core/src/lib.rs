//! Reflected entropy, Markov gap and related measures for small
//! finite-dimensional quantum states, with the fermionic Unruh channel
//! models and a Renyi monotonicity counterexample.

pub mod counterexample;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod random;
pub mod register;
pub mod rindler;
pub mod state;
pub mod sweep;
pub mod tolerance;
pub mod verify;

pub use entropy::{
    bounds_report, canonical_purification, conditional_mutual_information, fidelity, markov_gap,
    mutual_information, reflected_density, reflected_entropy, renyi_entropy, renyi_reflected_entropy,
    von_neumann_entropy, Bipartition, MeasureReport,
};
pub use error::{Error, Result};
pub use linalg::{tensor, ComplexMatrix};
pub use num_complex::Complex64;
pub use register::{Factor, Label, QRegister};
pub use state::{partial_trace, psd_sqrt, DensityMatrix, PureState};
pub use tolerance::Tolerances;
pub use rindler::{
    accelerate_bob, acceleration_parameter, build_inertial, measure_sweep, polygamy_gap, reduced_state,
    sigma_function, unruh_occupancy, AccelerationParams, FamilyKind, PairSelector, StateFamily,
};
pub use counterexample::{
    build_counterexample, monotonicity_gap, scan_xi, CounterexampleParams, Reading, ScanRecord,
};
pub use sweep::{sweep, GridSpec, SweepAxis, SweepRecord};
