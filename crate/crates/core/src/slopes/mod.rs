//! Representation families, their slope images and the certified slope sets.

pub mod family;
pub mod intervals;
pub mod solvers;
pub mod sweep;
pub mod witness;

pub use family::{family_sample, Branch, Family, SlopeSample};
pub use intervals::{
    deep_endpoint, mirror_intervals, theorem_intervals, theorem_intervals_with, Interval, IntervalOptions, IntervalSet,
};
pub use solvers::{omega, s0_equation, s0_equation_squared, solve_s0, solve_te};
pub use sweep::{sweep, GridSpec, SweepResult};
pub use witness::{find_witness, Reduction, Witness, WitnessKind, WITNESS_GRID};
