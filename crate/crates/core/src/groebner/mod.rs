//! Gröbner bases and the ideal and module operations built on them.

mod engine;
mod ideal;
mod module;
mod saturation;
mod zint;

pub use ideal::{is_groebner_basis, is_reduced_basis, GroebnerBasis, Ideal};
pub use module::{kernel_mod, Submodule, VectorPolynomial};
