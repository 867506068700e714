//! Sparse multivariate polynomials under the graded reverse lexicographic
//! order, together with monomial classes and the text format for input
//! systems.

mod coeff;
mod exponent;
mod order;
mod parse;
mod polynomial;

pub use coeff::{rational_to_f64, Coeff, Rational};
pub use exponent::{grevlex_compare, Exponent};
pub use order::VariableOrder;
pub use parse::{parse_polynomial, parse_system, ParseError, ParsedSystem};
pub use polynomial::Polynomial;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("exponent dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
}

/// Class of a monomial (1-based); the constant monomial gets class `n`.
pub fn class_of(e: &Exponent) -> usize {
    e.class()
}

/// Class of the leading exponent of `p`.
pub fn class_of_poly<C: Coeff>(p: &Polynomial<C>) -> Result<usize, PolyError> {
    p.leading_exponent().map(Exponent::class).ok_or(PolyError::ZeroPolynomial)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_of_polynomials() {
        let order = VariableOrder::identity(3);
        let p: Polynomial<Rational> = parse_polynomial("x1*x3 + x2", &order).unwrap();
        assert_eq!(class_of_poly(&p).unwrap(), 1);
        let q: Polynomial<Rational> = parse_polynomial("x2^2 - x1*x3", &order).unwrap();
        assert_eq!(q.leading_exponent().unwrap().entries(), &[0, 2, 0]);
        assert_eq!(class_of_poly(&q).unwrap(), 2);
        let one = Polynomial::<Rational>::constant(3, Rational::from_integer(1.into()));
        assert_eq!(class_of_poly(&one).unwrap(), 3);
        assert_eq!(class_of_poly(&Polynomial::<Rational>::zero(3)), Err(PolyError::ZeroPolynomial));
    }
}
