//! Generalized Bernstein operators that reproduce `1` and an increasing
//! polynomial `f1`: Bernstein coordinates, node construction and existence,
//! node ordering, and approximation diagnostics.

pub mod analysis;
pub mod bernstein;
pub mod error;
pub mod fixtures;
pub mod functions;
pub mod input;
pub mod operator;
pub mod poly;
pub mod scalar;

pub use bernstein::{basis_eval, basis_values, monomial_to_bernstein, BernsteinForm};
pub use error::{Error, Result};
pub use fixtures::{run_fixtures, FixtureOutcome};
pub use functions::{Builtin, SampleTable};
pub use input::{parse_expression, parse_polynomial, polynomial_from_json, polynomial_to_json, PolynomialInput};
pub use operator::{
    build_operator, classical_operator, evaluate_operator, min_existence_n, node_ordering, operator_exists, sign_class,
    Arithmetic, Existence, GeneralizedOperator, MinimalN, NodeOrder, OrderingReport, DEFAULT_TOL,
};
pub use poly::{
    certify_monotone, invert_monotone, real_roots_in, squarefree_decomposition, Interval, MonotonicityCertificate,
    Polynomial, SquarefreeFactor, ZeroLocation,
};
pub use scalar::{parse_rational, Rational, Scalar};
