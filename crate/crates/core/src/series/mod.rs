//! Exact truncated power series.

pub mod classical;
mod frac;
mod lattice;
mod vector;

pub use classical::{delta_series, eisenstein, inverse_delta, j_series};
pub use frac::FracQSeries;
pub use lattice::{grading_unit, lattice_binomial, Coefficient, LatticeQSeries};
pub use vector::{divide_by_24delta, VectorQSeries};
