//! The ring contract shared by polynomials, conjugation operations and edge
//! labelings.
//!
//! Elements carry their own shape (a matrix knows its dimension), so zero and
//! one are produced from an existing element rather than from the type alone.

use std::fmt::Debug;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// An associative ring with unit and exact equality.
///
/// Binary operations assume both operands have the same shape
/// ([`Ring::same_shape`]); callers that accept untrusted input check it first.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Two-sided inverse, `None` when the element is not a unit.
    fn try_inverse(&self) -> Option<Self>;

    fn same_shape(&self, _other: &Self) -> bool {
        true
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, k: usize) -> Self {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = acc.times(self);
        }
        acc
    }
}

impl<T: Scalar> Ring for Matrix<T> {
    fn zero_like(&self) -> Self {
        Matrix::zeros(self.dim())
    }

    fn one_like(&self) -> Self {
        Matrix::identity(self.dim())
    }

    fn is_zero(&self) -> bool {
        Matrix::is_zero(self)
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn negated(&self) -> Self {
        -self
    }

    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }

    fn same_shape(&self, other: &Self) -> bool {
        self.dim() == other.dim()
    }
}

macro_rules! scalar_ring {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn zero_like(&self) -> Self {
                num_traits::Zero::zero()
            }
            fn one_like(&self) -> Self {
                num_traits::One::one()
            }
            fn is_zero(&self) -> bool {
                num_traits::Zero::is_zero(self)
            }
            fn plus(&self, rhs: &Self) -> Self {
                self.clone() + rhs.clone()
            }
            fn minus(&self, rhs: &Self) -> Self {
                self.clone() - rhs.clone()
            }
            fn times(&self, rhs: &Self) -> Self {
                self.clone() * rhs.clone()
            }
            fn negated(&self) -> Self {
                -self.clone()
            }
            fn try_inverse(&self) -> Option<Self> {
                if num_traits::Zero::is_zero(self) {
                    None
                } else {
                    Some(<$t as num_traits::One>::one() / self.clone())
                }
            }
        }
    )*};
}

// Commutative rings, used for the scalar specialization.
scalar_ring!(crate::scalar::Rational, num_rational::Rational64, f64);
