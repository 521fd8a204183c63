//! Exact arithmetic substrate: big rationals, canonical sparse multivariate
//! polynomials, dense matrices over any scalar ring and their determinants.

mod matrix;
mod monomial;
mod polynomial;
mod rational;

pub use matrix::{determinant, determinant_by_elimination, GenericMatrix, MatrixError, MAX_DET_SIDE};
pub use monomial::{Monomial, Var};
pub use polynomial::{proportionality, PolyError, SparsePolynomial};
pub use rational::{int, parse_rational, rat, rational_string, serde_rational, Rational};

/// Commutative ring operations needed by the matrix layer.
///
/// Implemented for [`Rational`] and [`SparsePolynomial`], so the same
/// determinant and tensor-matrix code runs symbolically and numerically.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    /// Determinant used by the period layer; cofactor expansion unless the
    /// ring is a field with a faster exact method.
    fn det(m: &GenericMatrix<Self>) -> Result<Self, MatrixError> {
        determinant(m)
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn det(m: &GenericMatrix<Self>) -> Result<Self, MatrixError> {
        determinant_by_elimination(m)
    }
}

impl Scalar for SparsePolynomial {
    fn zero() -> Self {
        SparsePolynomial::zero()
    }
    fn one() -> Self {
        SparsePolynomial::one()
    }
    fn is_zero(&self) -> bool {
        SparsePolynomial::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
}
