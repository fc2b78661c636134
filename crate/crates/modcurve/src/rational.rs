//! The rational scalar type and small integer helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational numbers: reduced fraction, positive denominator.
/// `num_rational` maintains both invariants on construction.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse "a", "-a", or "a/b". Used by the catalogue loader.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(n))
        }
    }
}

/// max(|numerator|, denominator) as a crude height.
pub fn height(x: &Rational) -> BigInt {
    x.numer().abs().max(x.denom().clone())
}

/// Exact integer square root if `n` is a perfect square (n >= 0).
pub fn sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a rational, if it is a square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = sqrt_exact(x.numer())?;
    let d = sqrt_exact(x.denom())?;
    Some(Rational::new(n, d))
}

/// Strip the largest square divisor: returns (squarefree part, root of the square part),
/// so that n = sf * r^2 with sf squarefree. Sign stays on the squarefree part.
pub fn squarefree_part(n: i64) -> (i64, i64) {
    assert!(n != 0, "squarefree part of zero");
    let neg = n < 0;
    let mut m = n.unsigned_abs();
    let mut sf: i64 = 1;
    let mut root: i64 = 1;
    let mut p: u64 = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            root *= (p as i64).pow(e / 2);
            if e % 2 == 1 {
                sf *= p as i64;
            }
        }
        p += 1;
    }
    sf *= m as i64;
    (if neg { -sf } else { sf }, root)
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && squarefree_part(n).1 == 1
}

/// Rational square classes: x = d * (square) for the given squarefree d?
pub fn in_square_class(x: &Rational, d: i64) -> bool {
    if x.is_zero() {
        return false;
    }
    let y = x / rat_int(d);
    rational_sqrt(&y).is_some()
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut v = 0u32;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return (v, m);
        }
    }
}

/// Trial-division factorization. Returns prime-exponent pairs; the input
/// must factor completely over primes below 2^21 apart from one final
/// prime cofactor, which covers every integer this crate manipulates.
pub fn factor_bigint(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    let mut m = n.abs();
    if m.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    // peel small primes in BigInt until the cofactor fits u64
    for p in [2u64, 3, 5, 7, 11, 13] {
        let (v, rest) = valuation_big(&m, &BigInt::from(p));
        if v > 0 {
            out.push((BigInt::from(p), v));
            m = rest;
        }
    }
    let mut small = u64::try_from(&m).ok()?;
    let mut p: u64 = 17;
    while p.checked_mul(p).is_some_and(|sq| sq <= small) {
        if small % p == 0 {
            let mut v = 0;
            while small % p == 0 {
                small /= p;
                v += 1;
            }
            out.push((BigInt::from(p), v));
        }
        p += 2;
    }
    if small > 1 {
        out.push((BigInt::from(small), 1));
    }
    out.sort();
    Some(out)
}

fn valuation_big(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut v = 0u32;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if r.is_zero() && !m.is_zero() {
            v += 1;
            m = q;
        } else {
            return (v, m);
        }
    }
}

/// All positive divisors from a factorization (sorted).
pub fn divisors(fact: &[(BigInt, u32)]) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (p, e) in fact {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        let mut pk = BigInt::one();
        for _ in 0..=*e {
            for d in &out {
                next.push(d * &pk);
            }
            pk *= p;
        }
        out = next;
    }
    out.sort();
    out
}

/// Legendre symbol (a/p) for odd prime p, in {-1, 0, 1}.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    let pp = BigInt::from(p);
    let a = a.mod_floor(&pp);
    if a.is_zero() {
        return 0;
    }
    let e = (&pp - BigInt::one()) / BigInt::from(2);
    let r = a.modpow(&e, &pp);
    if r.is_one() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat_int(-3));
        assert_eq!(parse_rational("5/-10").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_none());
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_part(12), (3, 2));
        assert_eq!(squarefree_part(-75), (-3, 5));
        assert!(is_squarefree(-55));
        assert!(!is_squarefree(45));
    }

    #[test]
    fn square_classes() {
        assert!(in_square_class(&rat(-55, 4), -55));
        assert!(!in_square_class(&rat(55, 4), -55));
        assert!(rational_sqrt(&rat(784, 9)).is_some());
    }

    #[test]
    fn legendre_symbol() {
        assert_eq!(legendre(&BigInt::from(-1), 13), 1);
        assert_eq!(legendre(&BigInt::from(-1), 7), -1);
        assert_eq!(legendre(&BigInt::from(26), 13), 0);
    }
}
