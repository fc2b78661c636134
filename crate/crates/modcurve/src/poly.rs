//! Dense univariate polynomials over any scalar ring in the crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::ring::{Field, Ring};

#[derive(Clone, PartialEq)]
pub struct Poly<R: Ring> {
    /// Coefficients, low degree first; no trailing zeros.
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero_poly() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::new(vec![R::zero(), R::one()])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| R::from_i64(c)).collect())
    }

    /// c * x^n
    pub fn monomial(c: R, n: usize) -> Self {
        let mut v = vec![R::zero(); n];
        v.push(c);
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    /// Degree, with deg 0 = -infinity represented as None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree of a nonzero polynomial; panics on zero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn leading(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero_poly();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.clone() * R::from_i64((i + 1) as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Substitute x -> x^n.
    pub fn compose_xn(&self, n: usize) -> Self {
        assert!(n >= 1);
        let mut v = vec![R::zero(); self.coeffs.len().saturating_sub(1) * n + 1];
        if self.coeffs.is_empty() {
            return Poly::zero_poly();
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * n] = c.clone();
        }
        Poly::new(v)
    }

    /// Substitute another polynomial for x.
    pub fn compose(&self, g: &Poly<R>) -> Self {
        let mut acc = Poly::zero_poly();
        for c in self.coeffs.iter().rev() {
            acc = acc * g.clone() + Poly::constant(c.clone());
        }
        acc
    }

    /// Reverse coefficients: x^deg * f(1/x).
    pub fn reverse(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Poly::new(v)
    }

    /// Map coefficients into another ring.
    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }
}

impl<R: Field> Poly<R> {
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.leading().inv())
    }

    /// Euclidean division: (quotient, remainder).
    pub fn divrem(&self, d: &Poly<R>) -> (Poly<R>, Poly<R>) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let dinv = if d.leading().is_one() { R::one() } else { d.leading().inv() };
        let mut rem = self.clone();
        let mut quot = vec![R::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading() * dinv.clone();
            let shift = rd - dd;
            quot[shift] = c.clone();
            // rem -= c x^shift * d
            let mut v = rem.coeffs;
            for (i, dc) in d.coeffs.iter().enumerate() {
                v[i + shift] = v[i + shift].clone() - c.clone() * dc.clone();
            }
            rem = Poly::new(v);
        }
        (Poly::new(quot), rem)
    }

    pub fn rem(&self, d: &Poly<R>) -> Poly<R> {
        self.divrem(d).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, d: &Poly<R>) -> Poly<R> {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly<R>) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divrem(self).1.is_zero()
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly<R>) -> Poly<R> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree part f / gcd(f, f') (characteristic 0 or p > deg f).
    pub fn squarefree_part(&self) -> Poly<R> {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.monic()
        } else {
            self.exact_div(&g).monic()
        }
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// x^e mod f by repeated squaring.
    pub fn pow_x_mod(e: u64, f: &Poly<R>) -> Poly<R> {
        assert!(f.deg() >= 1);
        let mut result = Poly::constant(R::one()).rem(f);
        let mut base = Poly::x().rem(f);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = (result * base.clone()).rem(f);
            }
            base = (base.clone() * base).rem(f);
            e >>= 1;
        }
        result
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "({c:?})")?,
                1 => write!(f, "({c:?})*x")?,
                _ => write!(f, "({c:?})*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Self) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(R::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(R::zero);
            v.push(a + b);
        }
        Poly::new(v)
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Self) -> Poly<R> {
        self + (-rhs)
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Self) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero_poly();
        }
        let mut v = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<R: Ring> Zero for Poly<R> {
    fn zero() -> Self {
        Poly::zero_poly()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Poly<R> {
    fn one() -> Self {
        Poly::constant(R::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::Fq;
    use crate::rational::{rat_int, Rational};
    use proptest::prelude::*;

    type QP = Poly<Rational>;

    #[test]
    fn binomial_identity() {
        let xp1 = QP::from_ints(&[1, 1]);
        let sq = xp1.clone() * xp1;
        assert_eq!(sq, QP::from_ints(&[1, 2, 1]));
        assert_ne!(sq, QP::from_ints(&[1, 0, 1]));
    }

    #[test]
    fn division() {
        let f = QP::from_ints(&[-1, 0, 1]); // x^2 - 1
        let g = QP::from_ints(&[1, 1]);
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, QP::from_ints(&[-1, 1]));
    }

    #[test]
    fn gcd_over_fq() {
        // gcd(x^9 - x, x^3 - x) over F_3 contains every element of F_3
        let f: Poly<Fq> = Poly::new(vec![
            Fq::prime_field(3, 0),
            Fq::prime_field(3, -1),
            Fq::prime_field(3, 0),
            Fq::prime_field(3, 1),
        ]);
        let x9 = Poly::pow_x_mod(9, &f);
        let g = (x9 - Poly::x().rem(&f)).gcd(&f);
        assert_eq!(g.degree(), Some(3));
    }

    #[test]
    fn compose_xn_matches_compose() {
        let f = QP::from_ints(&[3, 0, -2, 1]);
        let xcubed = QP::monomial(Rational::one(), 3);
        assert_eq!(f.compose_xn(3), f.compose(&xcubed));
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in proptest::collection::vec(-9i64..9, 1..6),
                            b in proptest::collection::vec(-9i64..9, 1..6)) {
            let f = QP::from_ints(&a);
            let g = QP::from_ints(&b);
            if !f.is_zero() && !g.is_zero() {
                let d = f.gcd(&g);
                prop_assert!(d.divides(&f));
                prop_assert!(d.divides(&g));
                prop_assert!(d.deg() <= f.deg().min(g.deg()));
                // f = gcd * cofactor exactly
                let cof = f.exact_div(&d);
                prop_assert_eq!(cof * d, f.scale(&f.leading().inv()).scale(&f.leading()));
            }
        }

        #[test]
        fn ring_axioms(a in proptest::collection::vec(-9i64..9, 0..5),
                       b in proptest::collection::vec(-9i64..9, 0..5),
                       c in proptest::collection::vec(-9i64..9, 0..5)) {
            let f = QP::from_ints(&a);
            let g = QP::from_ints(&b);
            let h = QP::from_ints(&c);
            prop_assert_eq!(f.clone() * (g.clone() * h.clone()), (f.clone() * g.clone()) * h.clone());
            prop_assert_eq!(f.clone() * (g.clone() + h.clone()),
                            f.clone() * g.clone() + f.clone() * h.clone());
        }
    }

    #[test]
    fn eval_horner() {
        let f = QP::from_ints(&[-8, 12, 40, 0, -35, -6, 9]);
        assert_eq!(f.eval(&rat_int(2)), rat_int(0));
        assert_eq!(f.eval(&rat_int(-1)), rat_int(0));
    }
}
