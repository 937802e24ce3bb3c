//! Exact multivariate polynomials over the rationals.

mod monomial;
mod order;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{Monomial, MAX_VARS};
pub use order::{Block, BlockKind, MonomialOrder};
pub use parse::{parse_polynomial, parse_polynomial_at, parse_rational};
pub use polynomial::{Polynomial, Term};
pub use ring::Ring;

pub(crate) use ring::same_ring;

/// Coefficient field.
pub type Coeff = num_rational::BigRational;
