//! Scalar traits shared by every coefficient ring in the crate.
//!
//! All arithmetic is exact. A `Ring` here is a commutative ring with
//! identity whose elements own their context (a quadratic field element
//! knows its `d`, a finite field element knows `(p, k)`), so the traits
//! stay object-free and the polynomial code can be generic.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Image of an integer under the canonical map Z -> R.
    fn from_i64(n: i64) -> Self;
}

pub trait Field: Ring {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.clone() * other.inv()
    }
}

impl Ring for num_rational::BigRational {
    fn from_i64(n: i64) -> Self {
        num_rational::BigRational::from_integer(n.into())
    }
}

impl Field for num_rational::BigRational {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }
}
