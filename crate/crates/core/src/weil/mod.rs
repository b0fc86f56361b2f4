//! Weil representation with exact cyclotomic entries.

mod cyclotomic;
mod rep;

pub use cyclotomic::CycScalar;
pub use rep::{build_weil_rep, conjugate_rep, gauss_sum, mat_mul, milgram_sqrt, CycMatrix, WeilRepData};

use crate::borcherds::WHForm;

/// True when every nonzero `c(m, μ)` has `m ≡ Q(μ) mod 1`.
pub fn check_form_support(f: &WHForm) -> bool {
    f.check_support()
}

/// True when every stored coefficient is an integer.
pub fn is_integral(f: &WHForm) -> bool {
    f.is_integral()
}
