//! Borcherds products at a cusp: the reduced form `f₀`, walls and Weyl
//! chambers, the constants `A` and `ζ_μ`, and the truncated product.

mod chamber;
mod form;
mod product;

pub use chamber::{chamber_of, chamber_with_radius, enumerate_walls, Wall, WeylChamber, CHAMBER_RADIUS};
pub use form::WHForm;
pub use product::{check_weyl_integrality, constant_a, product_expand, reduce_f0, zeta_mu, Factor, ProductExpansion};
