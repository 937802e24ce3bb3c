//! Characteristic cycles of localizations and local cohomology modules over
//! the rationals, computed with commutative Gröbner bases.

pub mod cech;
pub mod cli;
pub mod conormal;
pub mod cycles;
pub mod decompose;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod poly;

pub use error::{Error, Result};
pub use groebner::{kernel_mod, Ideal, Submodule, VectorPolynomial};
pub use poly::{parse_polynomial, Coeff, Monomial, MonomialOrder, Polynomial, Ring};
