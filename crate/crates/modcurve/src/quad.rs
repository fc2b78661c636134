//! Elements of quadratic fields Q(sqrt(d)) for squarefree d.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{is_squarefree, rational_sqrt, Rational};
use crate::ring::{Field, Ring};

/// a + b*sqrt(d). Elements with `d = 0` are plain rationals (b must be 0)
/// and coerce into any quadratic field on contact; this lets `Zero::zero()`
/// exist without a field handle.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadElem {
    pub a: Rational,
    pub b: Rational,
    pub d: i64,
}

impl QuadElem {
    pub fn new(a: Rational, b: Rational, d: i64) -> Self {
        assert!(d == 0 || (d != 1 && is_squarefree(d)), "d must be squarefree, not 0 or 1");
        if b.is_zero() {
            // keep rationals field-agnostic so equality is canonical
            QuadElem { a, b, d: 0 }
        } else {
            assert!(d != 0, "irrational part requires a field");
            QuadElem { a, b, d }
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadElem { a, b: Rational::zero(), d: 0 }
    }

    pub fn sqrt_d(d: i64) -> Self {
        QuadElem::new(Rational::zero(), Rational::one(), d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn conj(&self) -> Self {
        QuadElem { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm a^2 - d b^2, always rational.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_i64(self.d) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    /// Square root inside the same field, if one exists.
    pub fn sqrt(&self) -> Option<QuadElem> {
        if self.is_zero() {
            return Some(QuadElem::from_rational(Rational::zero()));
        }
        let d = self.d;
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(QuadElem::from_rational(r));
            }
            // a = d * square gives sqrt(a) = r * sqrt(d)
            if d != 0 {
                if let Some(r) = rational_sqrt(&(&self.a / Rational::from_i64(d))) {
                    return Some(QuadElem::new(Rational::zero(), r, d));
                }
            }
            return None;
        }
        // (u + v sqrt d)^2 = u^2 + d v^2 + 2uv sqrt d: u^2 is a root of
        // t^2 - a t + d b^2/4, so t = (a ± sqrt(norm))/2 must be a rational square.
        let n = rational_sqrt(&self.norm())?;
        let two = Rational::from_i64(2);
        for s in [n.clone(), -n] {
            let t = (&self.a + &s) / &two;
            if t.is_zero() {
                continue;
            }
            if let Some(u) = rational_sqrt(&t) {
                let v = &self.b / (&two * &u);
                let cand = QuadElem::new(u, v, d);
                if cand.clone() * cand.clone() == *self {
                    return Some(cand);
                }
            }
        }
        None
    }

    /// Square root viewed inside Q(sqrt(d0)), lifting stored rationals first.
    pub fn sqrt_in(&self, d0: i64) -> Option<QuadElem> {
        assert!(self.d == d0 || self.d == 0, "element not in Q(sqrt {d0})");
        if self.d == 0 && d0 != 0 && !self.is_zero() {
            // rational value: root is rational or a rational multiple of sqrt(d0)
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(QuadElem::from_rational(r));
            }
            return rational_sqrt(&(&self.a / Rational::from_i64(d0)))
                .map(|r| QuadElem::new(Rational::zero(), r, d0));
        }
        self.sqrt()
    }

    fn join(&self, other: &Self) -> i64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d1, d2) => {
                assert_eq!(d1, d2, "mixed quadratic fields Q(sqrt {d1}) and Q(sqrt {d2})");
                d1
            }
        }
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: Self) -> Self {
        let d = self.join(&rhs);
        QuadElem::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: Self) -> Self {
        let d = self.join(&rhs);
        let dr = Rational::from_i64(d);
        let a = &self.a * &rhs.a + &dr * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadElem::new(a, b, d)
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> Self {
        QuadElem { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Zero for QuadElem {
    fn zero() -> Self {
        QuadElem::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadElem {
    fn one() -> Self {
        QuadElem::from_rational(Rational::one())
    }
}

impl Ring for QuadElem {
    fn from_i64(n: i64) -> Self {
        QuadElem::from_rational(Rational::from_i64(n))
    }
}

impl Field for QuadElem {
    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero in Q(sqrt d)");
        let c = self.conj();
        QuadElem::new(c.a / &n, c.b / &n, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn q(a: (i64, i64), b: (i64, i64), d: i64) -> QuadElem {
        QuadElem::new(rat(a.0, a.1), rat(b.0, b.1), d)
    }

    #[test]
    fn norm_and_conj() {
        let x = q((1, 1), (1, 1), -55); // 1 + sqrt(-55)
        assert_eq!(x.norm(), rat_int(56));
        assert_eq!(x.clone() * x.conj(), QuadElem::from_i64(56));
    }

    #[test]
    fn inverse() {
        let x = q((3, 2), (-1, 3), 5);
        let y = x.inv();
        assert!((x * y).is_one());
    }

    #[test]
    fn rational_coercion() {
        let x = QuadElem::from_i64(7);
        let y = QuadElem::sqrt_d(-3);
        let z = x + y.clone();
        assert_eq!(z.d, -3);
        assert_eq!(z.clone() - y, QuadElem::from_i64(7));
    }

    #[test]
    fn sqrt_in_field() {
        // (3 + 2 sqrt(-3))^2 = 9 - 12 + 12 sqrt(-3) = -3 + 12 sqrt(-3)
        let s = q((-3, 1), (12, 1), -3).sqrt().unwrap();
        assert!(s == q((3, 1), (2, 1), -3) || s == q((-3, 1), (-2, 1), -3));
        assert!(q((2, 1), (0, 1), -1).sqrt().is_none());
    }

    proptest! {
        #[test]
        fn field_axioms(a1 in -20i64..20, b1 in -20i64..20, a2 in -20i64..20, b2 in -20i64..20) {
            let x = q((a1, 1), (b1, 1), -11);
            let y = q((a2, 1), (b2, 1), -11);
            prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
            prop_assert_eq!(
                (x.clone() + y.clone()) * x.clone(),
                x.clone() * x.clone() + y.clone() * x.clone()
            );
            // conj is multiplicative, norm too
            prop_assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
            prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
            prop_assert_eq!(x.conj().conj(), x.clone());
            if !x.is_zero() {
                prop_assert!((x.clone() * x.inv()).is_one());
            }
        }
    }
}
