//! Shared inputs for the benchmarks.

use genbern::{Polynomial, Rational, Scalar};

/// The cubic with `f1' = (x - 1/2)^2 + 1/8`.
pub fn cubic() -> Polynomial<Rational> {
    genbern::fixtures::positive_derivative_cubic()
}

/// `(x - 1/2)^3`, whose derivative has a double zero inside `[0, 1]`.
pub fn centered_cube() -> Polynomial<Rational> {
    Polynomial::shifted_power(Rational::ratio(1, 2), 3)
}
