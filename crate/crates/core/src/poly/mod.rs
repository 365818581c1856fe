//! Exact sparse multivariate polynomials over the rationals and prime fields,
//! plus the weighted-degree combinatorics of graded polynomial rings.

mod field;
mod modular;
mod monomial;
mod polynomial;

pub use field::{is_prime, Field};
pub use modular::{inv_mod, mul_mod, pow_mod, ModPoly};
pub use monomial::{count_monomials, enumerate_monomials, weighted_degree, Monomial, Weights};
pub use polynomial::{Polynomial, SerializedTerm};
