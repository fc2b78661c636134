//! Finite fields F_{p^k} for k <= 3, with a deterministic modulus choice.
//!
//! The modulus for degree k is the lexicographically least monic irreducible
//! of that degree over F_p (coefficients compared from x^{k-1} down to the
//! constant term), so reports are reproducible across runs and machines.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Mutex;

use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::rational::{is_prime_u64, Rational};
use crate::ring::{Field, Ring};

pub const MAX_EXT_DEGREE: u8 = 3;

/// Element of F_{p^k}: coefficient vector of length k over F_p in the power
/// basis of the chosen modulus. `p = 0` marks integer literals (the value is
/// `c[0] as i64`), which coerce into a genuine field on first contact.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fq {
    pub p: u64,
    pub k: u8,
    c: [u64; 3],
}

/// Modulus cache: (p, k) -> non-leading coefficients [c_0, ..., c_{k-1}] of
/// x^k + c_{k-1} x^{k-1} + ... + c_0.
static MODULI: Lazy<Mutex<HashMap<(u64, u8), [u64; 3]>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Non-leading coefficients (low to high) of the canonical degree-k modulus.
pub fn modulus(p: u64, k: u8) -> [u64; 3] {
    assert!(is_prime_u64(p), "{p} is not prime");
    assert!((1..=MAX_EXT_DEGREE).contains(&k), "extension degree {k} unsupported");
    if k == 1 {
        return [0, 0, 0];
    }
    if let Some(m) = MODULI.lock().unwrap().get(&(p, k)) {
        return *m;
    }
    let m = find_modulus(p, k);
    MODULI.lock().unwrap().insert((p, k), m);
    m
}

fn find_modulus(p: u64, k: u8) -> [u64; 3] {
    // lexicographic order on (c_{k-1}, ..., c_0); degree 2 or 3 is irreducible
    // over F_p exactly when it has no roots
    let kk = k as u32;
    let total = p.pow(kk);
    for code in 0..total {
        let mut cs = [0u64; 3];
        // code digits, most significant digit = c_{k-1}
        let mut rem = code;
        for i in (0..k as usize).rev() {
            cs[i] = rem / p.pow(i as u32);
            rem %= p.pow(i as u32);
        }
        let has_root = (0..p).any(|a| {
            let mut v: u64 = 1;
            for i in (0..k as usize).rev() {
                v = (v * a + cs[i]) % p;
            }
            v == 0
        });
        if !has_root {
            return cs;
        }
    }
    unreachable!("irreducible polynomials of degree {k} exist over F_{p}")
}

impl Fq {
    pub fn new(p: u64, k: u8, coeffs: &[i64]) -> Self {
        assert!(is_prime_u64(p));
        assert!((1..=MAX_EXT_DEGREE).contains(&k));
        assert!(coeffs.len() <= k as usize);
        modulus(p, k); // validate and warm the cache
        let mut c = [0u64; 3];
        for (i, &x) in coeffs.iter().enumerate() {
            c[i] = x.rem_euclid(p as i64) as u64;
        }
        Fq { p, k, c }
    }

    pub fn prime_field(p: u64, x: i64) -> Self {
        Fq::new(p, 1, &[x])
    }

    /// The generator x of F_{p^k} over F_p (for k = 1, the element 1).
    pub fn gen(p: u64, k: u8) -> Self {
        if k == 1 {
            Fq::prime_field(p, 1)
        } else {
            Fq::new(p, k, &[0, 1])
        }
    }

    pub fn from_int(p: u64, k: u8, x: i64) -> Self {
        Fq::new(p, k, &[x])
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c[i]
    }

    pub fn is_literal(&self) -> bool {
        self.p == 0
    }

    fn literal_value(&self) -> i64 {
        self.c[0] as i64
    }

    fn lift_literal(&self, p: u64, k: u8) -> Fq {
        if self.p != 0 {
            return *self;
        }
        Fq::from_int(p, k, self.literal_value())
    }

    /// Embed into a larger extension of the same p (prime-field elements only).
    fn embed(&self, k: u8) -> Fq {
        assert!(self.k <= k);
        if self.k == k {
            return *self;
        }
        assert!(
            self.c[1] == 0 && self.c[2] == 0,
            "no canonical embedding of F_{}^{} into F_{}^{}",
            self.p,
            self.k,
            self.p,
            k
        );
        Fq { p: self.p, k, c: self.c }
    }

    fn align(a: &Fq, b: &Fq) -> (Fq, Fq) {
        match (a.p, b.p) {
            (0, 0) => (*a, *b),
            (0, _) => (a.lift_literal(b.p, b.k), *b),
            (_, 0) => (*a, b.lift_literal(a.p, a.k)),
            (p1, p2) => {
                assert_eq!(p1, p2, "mixed characteristics {p1} and {p2}");
                let k = a.k.max(b.k);
                (a.embed(k), b.embed(k))
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Fq {
        let mut base = *self;
        let mut acc = if self.p == 0 { Fq { p: 0, k: 1, c: [1, 0, 0] } } else { Fq::from_int(self.p, self.k, 1) };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self) -> Fq {
        assert!(self.p != 0);
        self.pow(self.p)
    }

    /// Order of the ambient field.
    pub fn q(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    /// Is this a square in F_q? (q odd)
    pub fn is_square(&self) -> bool {
        assert!(self.p != 0 && self.p != 2);
        if self.is_zero() {
            return true;
        }
        self.pow((self.q() - 1) / 2) == Fq::from_int(self.p, self.k, 1)
    }

    /// Quadratic character: 0 on zero, 1 on squares, -1 otherwise.
    pub fn chi(&self) -> i64 {
        if self.is_zero() {
            0
        } else if self.is_square() {
            1
        } else {
            -1
        }
    }

    /// All elements of F_{p^k}, in coefficient-vector order.
    pub fn all_elements(p: u64, k: u8) -> Vec<Fq> {
        modulus(p, k);
        let q = p.pow(k as u32);
        (0..q)
            .map(|code| {
                let mut c = [0u64; 3];
                let mut rem = code;
                for item in c.iter_mut().take(k as usize) {
                    *item = rem % p;
                    rem /= p;
                }
                Fq { p, k, c }
            })
            .collect()
    }

    /// Reduce a rational with denominator prime to p.
    pub fn from_rational(p: u64, k: u8, x: &Rational) -> Option<Fq> {
        use num_integer::Integer;
        let pp = num_bigint::BigInt::from(p);
        let den = x.denom().mod_floor(&pp);
        if den.is_zero() {
            return None;
        }
        let num = x.numer().mod_floor(&pp);
        let num = u64::try_from(&num).unwrap();
        let den = u64::try_from(&den).unwrap();
        let d = Fq::from_int(p, k, den as i64);
        Some(Fq::from_int(p, k, num as i64) * d.inv())
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 0 {
            return write!(f, "{}", self.literal_value());
        }
        if self.k == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let names = ["", "t", "t^2"];
        let mut first = true;
        for i in 0..self.k as usize {
            if self.c[i] != 0 {
                if !first {
                    write!(f, " + ")?;
                }
                if i == 0 {
                    write!(f, "{}", self.c[i])?;
                } else if self.c[i] == 1 {
                    write!(f, "{}", names[i])?;
                } else {
                    write!(f, "{}{}", self.c[i], names[i])?;
                }
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for Fq {
    type Output = Fq;
    fn add(self, rhs: Self) -> Fq {
        let (a, b) = Fq::align(&self, &rhs);
        if a.p == 0 {
            return Fq { p: 0, k: 1, c: [(a.literal_value() + b.literal_value()) as u64, 0, 0] };
        }
        let mut c = [0u64; 3];
        for i in 0..3 {
            c[i] = (a.c[i] + b.c[i]) % a.p;
        }
        Fq { p: a.p, k: a.k, c }
    }
}

impl Sub for Fq {
    type Output = Fq;
    fn sub(self, rhs: Self) -> Fq {
        self + (-rhs)
    }
}

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        if self.p == 0 {
            return Fq { p: 0, k: 1, c: [(-self.literal_value()) as u64, 0, 0] };
        }
        let mut c = [0u64; 3];
        for i in 0..3 {
            c[i] = (self.p - self.c[i]) % self.p;
        }
        Fq { p: self.p, k: self.k, c }
    }
}

impl Mul for Fq {
    type Output = Fq;
    fn mul(self, rhs: Self) -> Fq {
        let (a, b) = Fq::align(&self, &rhs);
        if a.p == 0 {
            return Fq { p: 0, k: 1, c: [(a.literal_value() * b.literal_value()) as u64, 0, 0] };
        }
        let p = a.p;
        let k = a.k as usize;
        if k == 1 {
            return Fq { p, k: 1, c: [(a.c[0] * b.c[0]) % p, 0, 0] };
        }
        let mut prod = [0u64; 5];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a.c[i] * b.c[j]) % p;
            }
        }
        // reduce by x^k = -(m_{k-1} x^{k-1} + ... + m_0)
        let m = modulus(p, a.k);
        for d in (k..=2 * k - 2).rev() {
            let coef = prod[d];
            if coef != 0 {
                prod[d] = 0;
                for i in 0..k {
                    // x^d = x^{d-k} * x^k
                    let t = (coef * m[i]) % p;
                    prod[d - k + i] = (prod[d - k + i] + p - t) % p;
                }
            }
        }
        Fq { p, k: a.k, c: [prod[0], prod[1], prod[2]] }
    }
}

impl Zero for Fq {
    fn zero() -> Self {
        Fq { p: 0, k: 1, c: [0, 0, 0] }
    }
    fn is_zero(&self) -> bool {
        if self.p == 0 {
            self.literal_value() == 0
        } else {
            self.c == [0, 0, 0]
        }
    }
}

impl One for Fq {
    fn one() -> Self {
        Fq { p: 0, k: 1, c: [1, 0, 0] }
    }
    fn is_one(&self) -> bool {
        if self.p == 0 {
            self.literal_value() == 1
        } else {
            self.c[0] == 1 && self.c[1] == 0 && self.c[2] == 0
        }
    }
}

impl Ring for Fq {
    fn from_i64(n: i64) -> Self {
        Fq { p: 0, k: 1, c: [n as u64, 0, 0] }
    }
}

impl Field for Fq {
    fn inv(&self) -> Self {
        if self.p == 0 {
            // literals only invert at +-1 (monic normalization paths)
            let v = self.literal_value();
            assert!(v == 1 || v == -1, "cannot invert unbound literal {v}");
            return *self;
        }
        assert!(!self.is_zero(), "inverse of zero in F_q");
        if self.is_one() {
            return *self;
        }
        self.pow(self.q() - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        // x^2 + 1 over F_3, x^2 + 2 over F_5 and F_13, x^2 + 1 over F_7, F_11
        assert_eq!(modulus(3, 2), [1, 0, 0]);
        assert_eq!(modulus(5, 2), [2, 0, 0]);
        assert_eq!(modulus(7, 2), [1, 0, 0]);
        assert_eq!(modulus(11, 2), [1, 0, 0]);
        assert_eq!(modulus(13, 2), [2, 0, 0]);
        // x^3 + 2x + 1 over F_3, x^3 + x + 1 over F_5
        assert_eq!(modulus(3, 3), [1, 2, 0]);
        assert_eq!(modulus(5, 3), [1, 1, 0]);
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        for k in 1..=3u8 {
            for e in Fq::all_elements(5, k) {
                let fixed = e.frobenius() == e;
                let in_prime = e.c[1] == 0 && e.c[2] == 0;
                assert_eq!(fixed, in_prime, "{e:?} in F_5^{k}");
            }
        }
    }

    #[test]
    fn field_inverse_all() {
        for e in Fq::all_elements(7, 2) {
            if !e.is_zero() {
                assert!((e * e.inv()).is_one());
            }
        }
    }

    #[test]
    fn literal_coercion() {
        let x = Fq::gen(3, 2);
        let y = x * Fq::from_i64(-1) + Fq::from_i64(7);
        assert_eq!(y, Fq::new(3, 2, &[1, 2]));
    }

    #[test]
    fn squares_in_f9() {
        // -1 is a square in F_9 but not in F_3
        assert_eq!(Fq::prime_field(3, -1).chi(), -1);
        assert_eq!(Fq::from_int(3, 2, -1).chi(), 1);
    }
}
