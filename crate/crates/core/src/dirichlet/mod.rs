//! Quadratic Dirichlet characters: exact values at negative integers,
//! high-precision values at positive integers, Gauss sums, and detection of
//! rational period-normalized values.

mod bernoulli;
mod character;
mod lvalues;
mod probe;
mod real;
mod reconstruct;

use thiserror::Error;

pub use bernoulli::{bernoulli_number, bernoulli_numbers, bernoulli_poly, gen_bernoulli, l_negative, MAX_BERNOULLI_INDEX};
pub use character::{fundamental_discriminants, is_fundamental, kronecker, kronecker_chi, QuadChar, MAX_ABS_DISC};
pub use lvalues::{gauss_sum, hurwitz_zeta, l_numeric};
pub use probe::{euler_zeta_residual, normalized_value, probe_algebraicity, probe_table, rank1_tensor_probe, ProbeRow, PROBE_MAX_DEN};
pub use real::{BigReal, RealContext, DEFAULT_DIGITS, MAX_DIGITS};
pub use reconstruct::{rational_reconstruct, MAX_RECONSTRUCT_DEN};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirichletError {
    #[error("{0} is not a fundamental discriminant with |D| ≤ 10000")]
    NotFundamental(i64),
    #[error("moduli of {0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("precision unreachable: {0}")]
    PrecisionUnreachable(String),
    #[error("s = {n} is not critical for a character of parity {parity}")]
    NotCriticalPoint { n: i64, parity: i8 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
