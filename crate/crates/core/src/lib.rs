//! Exact computations around Borcherds products on orthogonal Shimura
//! varieties: lattices and discriminant forms, q-series, the Weil
//! representation, product expansions and formal divisor relations.

pub mod arith;
pub mod borcherds;
pub mod database;
pub mod divisor;
pub mod error;
pub mod io;
pub mod lattice;
pub mod series;
pub mod weil;

pub use arith::Rational;
pub use error::{Error, Result};
pub use lattice::{Coset, CuspData, DiscriminantForm, GramLattice};
pub use series::{FracQSeries, LatticeQSeries, VectorQSeries};
