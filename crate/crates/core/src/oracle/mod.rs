//! Independent check of ideal identities by graded linear algebra.

mod graded;
mod poly;

pub use graded::{
    first_difference, graded_contained, graded_equal, graded_intersect, graded_power, hilbert, linear_ideal_power,
    monomial_count, GradedIdeal, OracleError,
};
pub use poly::{monomials_of_degree, parse_polynomial, Monomial, PolyParseError, Polynomial};
