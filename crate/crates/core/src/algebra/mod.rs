//! Exact arithmetic: rationals, sparse multivariate polynomials and
//! cyclotomic fields.

mod cyclo;
mod parse;
mod poly;

pub use cyclo::{cyclotomic, euler_phi, univariate_div_rem, CycloElement};
pub use parse::{parse_polynomial, ParseError};
pub use poly::{ArithOp, Monomial, Polynomial, Ring};

use num_bigint::BigInt;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for small rational literals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
