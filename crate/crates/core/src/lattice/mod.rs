//! Integral quadratic lattices and their discriminant forms.

pub mod cusp;
pub mod discriminant;
pub mod enumerate;
pub mod glue;
pub mod gram;
pub mod theta;

pub use cusp::{cusp_data, isotropic_line, CuspData, IsotropicSearch};
pub use discriminant::{is_maximal, overlattice_witness, Coset, DiscriminantForm, OverlatticeWitness};
pub use glue::{cyclic_words, glue_lattice, glue_lattice_from_words, GlueData, GlueWord};
pub use gram::GramLattice;
pub use theta::{coset_theta, representation_numbers, short_vectors, theta_series, theta_series_direct};
