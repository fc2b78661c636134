//! Elliptic curves in long Weierstrass form over any field in the crate:
//! chord-tangent group law, standard invariants, quartic Jacobians, point
//! counting over F_p, and point orders.

use num_traits::Zero;
use thiserror::Error;

use crate::fq::Fq;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::ring::{Field, Ring};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EllError {
    #[error("singular Weierstrass model (discriminant zero)")]
    Singular,
    #[error("point not on curve")]
    NotOnCurve,
    #[error("bad reduction at {0}")]
    BadPrime(u64),
    #[error("quartic must be squarefree of degree 4")]
    SingularQuartic,
}

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
#[derive(Debug, Clone, PartialEq)]
pub struct EllCurve<K: Field> {
    pub a1: K,
    pub a2: K,
    pub a3: K,
    pub a4: K,
    pub a6: K,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EllPoint<K: Field> {
    Infinity,
    Affine(K, K),
}

impl<K: Field> EllPoint<K> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, EllPoint::Infinity)
    }

    pub fn x(&self) -> Option<&K> {
        match self {
            EllPoint::Infinity => None,
            EllPoint::Affine(x, _) => Some(x),
        }
    }
}

impl<K: Field> EllCurve<K> {
    pub fn new(a1: K, a2: K, a3: K, a4: K, a6: K) -> Result<Self, EllError> {
        let e = EllCurve { a1, a2, a3, a4, a6 };
        if e.disc().is_zero() {
            return Err(EllError::Singular);
        }
        Ok(e)
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self, EllError> {
        EllCurve::new(
            K::from_i64(a[0]),
            K::from_i64(a[1]),
            K::from_i64(a[2]),
            K::from_i64(a[3]),
            K::from_i64(a[4]),
        )
    }

    /// Short form y^2 = x^3 + a x + b.
    pub fn short(a: K, b: K) -> Result<Self, EllError> {
        EllCurve::new(K::zero(), K::zero(), K::zero(), a, b)
    }

    pub fn b2(&self) -> K {
        self.a1.clone() * self.a1.clone() + K::from_i64(4) * self.a2.clone()
    }

    pub fn b4(&self) -> K {
        K::from_i64(2) * self.a4.clone() + self.a1.clone() * self.a3.clone()
    }

    pub fn b6(&self) -> K {
        self.a3.clone() * self.a3.clone() + K::from_i64(4) * self.a6.clone()
    }

    pub fn b8(&self) -> K {
        self.a1.clone() * self.a1.clone() * self.a6.clone()
            + K::from_i64(4) * self.a2.clone() * self.a6.clone()
            - self.a1.clone() * self.a3.clone() * self.a4.clone()
            + self.a2.clone() * self.a3.clone() * self.a3.clone()
            - self.a4.clone() * self.a4.clone()
    }

    pub fn c4(&self) -> K {
        let b2 = self.b2();
        b2.clone() * b2 - K::from_i64(24) * self.b4()
    }

    pub fn c6(&self) -> K {
        let b2 = self.b2();
        -(b2.clone() * b2.clone() * b2.clone()) + K::from_i64(36) * self.b2() * self.b4()
            - K::from_i64(216) * self.b6()
    }

    pub fn disc(&self) -> K {
        let b2 = self.b2();
        let b4 = self.b4();
        let b6 = self.b6();
        let b8 = self.b8();
        -(b2.clone() * b2.clone() * b8.clone()) - K::from_i64(8) * b4.clone() * b4.clone() * b4.clone()
            - K::from_i64(27) * b6.clone() * b6.clone()
            + K::from_i64(9) * b2 * b4 * b6
    }

    pub fn j(&self) -> K {
        let c4 = self.c4();
        c4.clone() * c4.clone() * c4 * self.disc().inv()
    }

    pub fn contains(&self, pt: &EllPoint<K>) -> bool {
        match pt {
            EllPoint::Infinity => true,
            EllPoint::Affine(x, y) => {
                let lhs = y.clone() * y.clone()
                    + self.a1.clone() * x.clone() * y.clone()
                    + self.a3.clone() * y.clone();
                let rhs = x.clone() * x.clone() * x.clone()
                    + self.a2.clone() * x.clone() * x.clone()
                    + self.a4.clone() * x.clone()
                    + self.a6.clone();
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, pt: &EllPoint<K>) -> EllPoint<K> {
        match pt {
            EllPoint::Infinity => EllPoint::Infinity,
            EllPoint::Affine(x, y) => EllPoint::Affine(
                x.clone(),
                -(y.clone()) - self.a1.clone() * x.clone() - self.a3.clone(),
            ),
        }
    }

    pub fn add(&self, p: &EllPoint<K>, q: &EllPoint<K>) -> Result<EllPoint<K>, EllError> {
        if !self.contains(p) || !self.contains(q) {
            return Err(EllError::NotOnCurve);
        }
        Ok(self.add_unchecked(p, q))
    }

    pub fn add_unchecked(&self, p: &EllPoint<K>, q: &EllPoint<K>) -> EllPoint<K> {
        match (p, q) {
            (EllPoint::Infinity, _) => q.clone(),
            (_, EllPoint::Infinity) => p.clone(),
            (EllPoint::Affine(x1, y1), EllPoint::Affine(x2, y2)) => {
                if x1 == x2 {
                    let neg_y1 = -(y1.clone()) - self.a1.clone() * x1.clone() - self.a3.clone();
                    if *y2 == neg_y1 {
                        return EllPoint::Infinity;
                    }
                }
                let lambda = if x1 == x2 {
                    // tangent
                    let num = K::from_i64(3) * x1.clone() * x1.clone()
                        + K::from_i64(2) * self.a2.clone() * x1.clone()
                        + self.a4.clone()
                        - self.a1.clone() * y1.clone();
                    let den = K::from_i64(2) * y1.clone() + self.a1.clone() * x1.clone() + self.a3.clone();
                    num * den.inv()
                } else {
                    (y2.clone() - y1.clone()) * (x2.clone() - x1.clone()).inv()
                };
                let nu = y1.clone() - lambda.clone() * x1.clone();
                let x3 = lambda.clone() * lambda.clone() + self.a1.clone() * lambda.clone()
                    - self.a2.clone()
                    - x1.clone()
                    - x2.clone();
                let y3 = -(lambda.clone() + self.a1.clone()) * x3.clone() - nu - self.a3.clone();
                EllPoint::Affine(x3, y3)
            }
        }
    }

    pub fn scalar_mul(&self, n: u64, p: &EllPoint<K>) -> EllPoint<K> {
        let mut acc = EllPoint::Infinity;
        let mut base = p.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Least n <= bound with nP = infinity, else None.
    pub fn point_order(&self, p: &EllPoint<K>, bound: u64) -> Option<u64> {
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = self.add_unchecked(&acc, p);
        }
        if acc.is_infinity() {
            // n = bound + 1 edge: acc after loop holds (bound+1)P
            None
        } else {
            None
        }
    }

    /// The quadratic twist by d: only for models with a1 = a3 = 0.
    pub fn twist(&self, d: i64) -> EllCurve<K> {
        assert!(self.a1.is_zero() && self.a3.is_zero(), "twist needs a1 = a3 = 0");
        let dd = K::from_i64(d);
        EllCurve {
            a1: K::zero(),
            a2: self.a2.clone() * dd.clone(),
            a3: K::zero(),
            a4: self.a4.clone() * dd.clone() * dd.clone(),
            a6: self.a6.clone() * dd.clone() * dd.clone() * dd,
        }
    }
}

impl EllCurve<Rational> {
    /// Reduce an integral model mod p (error when the reduction is singular).
    pub fn reduce_mod(&self, p: u64) -> Result<EllCurve<Fq>, EllError> {
        let lift = |x: &Rational| Fq::from_rational(p, 1, x).ok_or(EllError::BadPrime(p));
        let e = EllCurve {
            a1: lift(&self.a1)?,
            a2: lift(&self.a2)?,
            a3: lift(&self.a3)?,
            a4: lift(&self.a4)?,
            a6: lift(&self.a6)?,
        };
        if e.disc().is_zero() {
            return Err(EllError::BadPrime(p));
        }
        Ok(e)
    }

    /// Rational curves isomorphic over Q: (c4, c6) agree up to (u^4, u^6).
    pub fn isomorphic_over_q(&self, other: &EllCurve<Rational>) -> bool {
        let c4a = self.c4();
        let c6a = self.c6();
        let c4b = other.c4();
        let c6b = other.c6();
        match (c4b.is_zero(), c6b.is_zero()) {
            (true, true) => unreachable!("nonsingular curve"),
            (true, false) => {
                // j = 0: need c4a = 0 and c6a/c6b a sixth power
                c4a.is_zero() && is_nth_power(&(c6a / c6b), 6)
            }
            (false, true) => c6a.is_zero() && is_nth_power(&(c4a / c4b), 4),
            (false, false) => {
                if c4a.is_zero() || c6a.is_zero() {
                    return false;
                }
                let r4 = c4a / c4b;
                let r6 = c6a / c6b;
                // consistency: r6^2 = r4^3 and u^2 = r6/r4 is a square
                if r6.clone() * r6.clone() != r4.clone() * r4.clone() * r4.clone() {
                    return false;
                }
                crate::rational::rational_sqrt(&(r6 / r4)).is_some()
            }
        }
    }
}

fn is_nth_power(x: &Rational, n: u32) -> bool {
    if x.is_zero() {
        return true;
    }
    match n {
        4 => crate::rational::rational_sqrt(x)
            .map(|r| crate::rational::rational_sqrt(&r).is_some())
            .unwrap_or(false),
        6 => {
            // u^6: square and cube
            if crate::rational::rational_sqrt(x).is_none() {
                return false;
            }
            is_cube(x)
        }
        _ => unimplemented!(),
    }
}

fn is_cube(x: &Rational) -> bool {
    let n = x.numer();
    let d = x.denom();
    cbrt_exact(n).is_some() && cbrt_exact(d).is_some()
}

fn cbrt_exact(n: &num_bigint::BigInt) -> Option<num_bigint::BigInt> {
    let r = n.cbrt();
    if &r * &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Classical invariants of a binary quartic q = a x^4 + b x^3 + c x^2 + d x + e,
/// and the Jacobian y^2 = x^3 - 27 I x - 27 J of the genus-one curve y^2 = q(x).
pub fn quartic_invariants(q: &Poly<Rational>) -> (Rational, Rational) {
    assert!(q.deg() == 4);
    let a = q.coeff(4);
    let b = q.coeff(3);
    let c = q.coeff(2);
    let d = q.coeff(1);
    let e = q.coeff(0);
    let i = Rational::from_i64(12) * &a * &e - Rational::from_i64(3) * &b * &d + &c * &c;
    let j = Rational::from_i64(72) * &a * &c * &e + Rational::from_i64(9) * &b * &c * &d
        - Rational::from_i64(27) * &a * &d * &d
        - Rational::from_i64(27) * &e * &b * &b
        - Rational::from_i64(2) * &c * &c * &c;
    (i, j)
}

pub fn jacobian_of_quartic(q: &Poly<Rational>) -> Result<EllCurve<Rational>, EllError> {
    if q.degree() != Some(4) || !q.is_squarefree() {
        return Err(EllError::SingularQuartic);
    }
    let (i, j) = quartic_invariants(q);
    let m27 = Rational::from_i64(-27);
    EllCurve::short(m27.clone() * i, m27 * j).map_err(|_| EllError::SingularQuartic)
}

/// |E(F_q)| by quadratic-character summation over x (odd q).
pub fn count_points(e: &EllCurve<Fq>, p: u64, k: u8) -> u64 {
    assert!(p != 2);
    let lift = |c: Fq| c * Fq::from_int(p, k, 1);
    let b2 = lift(e.b2());
    let b4 = lift(e.b4());
    let b6 = lift(e.b6());
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    let four = Fq::from_int(p, k, 4);
    let two = Fq::from_int(p, k, 2);
    let mut n: u64 = 1;
    for x in Fq::all_elements(p, k) {
        let rhs = four * x * x * x + b2 * x * x + two * b4 * x + b6;
        n = (n as i64 + 1 + rhs.chi()) as u64;
    }
    n
}

/// |E(F_p)| with the Hasse bound asserted.
pub fn count_points_fp(e: &EllCurve<Rational>, p: u64) -> Result<u64, EllError> {
    let ep = e.reduce_mod(p)?;
    let n = count_points(&ep, p, 1);
    let a = p as i64 + 1 - n as i64;
    assert!(a * a <= 4 * p as i64, "Hasse bound violated");
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn legendre_x015() -> EllCurve<Rational> {
        // y^2 = x(x+16)(x+25)
        EllCurve::from_ints([0, 41, 0, 400, 0]).unwrap()
    }

    #[test]
    fn group_law_identities() {
        let e = legendre_x015();
        let p = EllPoint::Affine(rat_int(0), rat_int(0));
        assert!(e.contains(&p));
        assert_eq!(e.add(&p, &EllPoint::Infinity).unwrap(), p);
        let minus = e.neg(&p);
        assert!(e.add(&p, &minus).unwrap().is_infinity());
        // (0,0) is 2-torsion
        assert!(e.add(&p, &p).unwrap().is_infinity());
        assert_eq!(e.point_order(&p, 10), Some(2));
    }

    #[test]
    fn four_torsion_point() {
        let e = legendre_x015();
        let p = EllPoint::Affine(rat_int(20), rat_int(180));
        assert!(e.contains(&p));
        assert_eq!(e.point_order(&p, 10), Some(4));
    }

    #[test]
    fn invariants_of_cremona_models() {
        // 15A1 and the Legendre form of X_0(15) are isomorphic over Q
        let m15a1 = EllCurve::<Rational>::from_ints([1, 1, 1, -10, -10]).unwrap();
        assert_eq!(m15a1.c4(), rat_int(481));
        assert_eq!(m15a1.c6(), rat_int(4879));
        assert_eq!(m15a1.disc(), rat_int(50625));
        assert!(legendre_x015().isomorphic_over_q(&m15a1));
        // 15A3 and the Legendre form of X(s3, b5)
        let m15a3 = EllCurve::<Rational>::from_ints([1, 1, 1, -5, 2]).unwrap();
        let leg2 = EllCurve::<Rational>::from_ints([0, 17, 0, 16, 0]).unwrap();
        assert!(leg2.isomorphic_over_q(&m15a3));
        assert!(!legendre_x015().isomorphic_over_q(&m15a3));
    }

    #[test]
    fn quartic_jacobian_biquadratic() {
        // q = x^4 + 1: I = 12, J = 0, j = 1728
        let q = Poly::from_ints(&[1, 0, 0, 0, 1]);
        let (i, j) = quartic_invariants(&q);
        assert_eq!(i, rat_int(12));
        assert_eq!(j, rat_int(0));
        let e = jacobian_of_quartic(&q).unwrap();
        assert_eq!(e.a4, rat_int(-324));
        assert_eq!(e.j(), rat_int(1728));
    }

    #[test]
    fn quartic_scaling_invariance() {
        // q -> lambda^2 q leaves j unchanged
        let q = Poly::from_ints(&[25, 10, -1, 2, 1]);
        let e1 = jacobian_of_quartic(&q).unwrap();
        let e2 = jacobian_of_quartic(&q.scale(&rat_int(9))).unwrap();
        assert_eq!(e1.j(), e2.j());
    }

    #[test]
    fn counting_small_curves() {
        // y^2 = x^3 + x over F_3 has 4 points
        let e = EllCurve::<Rational>::from_ints([0, 0, 0, 1, 0]).unwrap();
        assert_eq!(count_points_fp(&e, 3).unwrap(), 4);
        // y^2 = x^3 + 1 over F_5 is supersingular: 6 points
        let e = EllCurve::<Rational>::from_ints([0, 0, 0, 0, 1]).unwrap();
        assert_eq!(count_points_fp(&e, 5).unwrap(), 6);
        // bad prime rejected
        assert_eq!(count_points_fp(&e, 3), Err(EllError::BadPrime(3)));
    }

    #[test]
    fn counts_225a1() {
        // y^2 - y = x^3 + 1
        let e = EllCurve::<Rational>::from_ints([0, 0, -1, 0, 1]).unwrap();
        assert_eq!(e.j(), rat_int(0));
        assert_eq!(e.disc(), rat_int(-675));
        assert_eq!(count_points_fp(&e, 7).unwrap(), 13);
        assert_eq!(count_points_fp(&e, 43).unwrap(), 49);
    }

    #[test]
    fn twist_matches_45a2() {
        // the -3 twist of 15A3 has the invariants of the minimal model
        // [1,-1,0,-45,-104]
        let m15a3 = EllCurve::<Rational>::from_ints([1, 1, 1, -5, 2]).unwrap();
        let short = EllCurve::short(
            rat(-27, 1) * m15a3.c4(),
            rat(-54, 1) * m15a3.c6(),
        )
        .unwrap();
        let tw = short.twist(-3);
        let m45a2 = EllCurve::<Rational>::from_ints([1, -1, 0, -45, -104]).unwrap();
        assert_eq!(m45a2.c4(), rat_int(2169));
        assert_eq!(m45a2.c6(), rat_int(99603));
        assert!(tw.isomorphic_over_q(&m45a2));
    }
}
