//! Local solubility of ternary quadratic forms via Hilbert symbols, with a
//! brute-force Hensel search used as an independent oracle in the tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{legendre, valuation, Rational};
use crate::ring::Ring;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConicError {
    #[error("degenerate form: zero Gram determinant (solubility is trivial, not decided here)")]
    Degenerate,
}

/// A place of Q: a finite prime or the real place.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    Finite(u64),
    Infinite,
}

/// Ternary quadratic form with rational symmetric Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TernaryForm {
    pub m: [[Rational; 3]; 3],
}

impl TernaryForm {
    pub fn new(m: [[Rational; 3]; 3]) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m[i][j], m[j][i], "Gram matrix must be symmetric");
            }
        }
        TernaryForm { m }
    }

    /// Form a0*x^2 + a1*y^2 + a2*z^2 + b01*xy + b02*xz + b12*yz.
    pub fn from_coeffs(
        a0: Rational,
        a1: Rational,
        a2: Rational,
        b01: Rational,
        b02: Rational,
        b12: Rational,
    ) -> Self {
        let two = Rational::from_i64(2);
        let m = [
            [a0, &b01 / &two, &b02 / &two],
            [&b01 / &two, a1, &b12 / &two],
            [&b02 / &two, &b12 / &two, a2],
        ];
        TernaryForm::new(m)
    }

    /// Homogenization of an affine conic q(u, v) = A u^2 + B v^2 + C uv + D u + E v + F.
    pub fn from_affine(a: Rational, b: Rational, c: Rational, d: Rational, e: Rational, f: Rational) -> Self {
        TernaryForm::from_coeffs(a, b, f, c, d, e)
    }

    pub fn det(&self) -> Rational {
        let m = &self.m;
        let t1 = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]);
        let t2 = &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0]);
        let t3 = &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
        t1 - t2 + t3
    }

    pub fn eval(&self, x: &Rational, y: &Rational, z: &Rational) -> Rational {
        let v = [x, y, z];
        let mut acc = Rational::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc + &self.m[i][j] * v[i] * v[j];
            }
        }
        acc
    }

    /// Congruence diagonalization over Q. Returns the three diagonal entries.
    pub fn diagonalize(&self) -> Result<[Rational; 3], ConicError> {
        if self.det().is_zero() {
            return Err(ConicError::Degenerate);
        }
        let mut m: Vec<Vec<Rational>> = self.m.iter().map(|r| r.to_vec()).collect();
        let n = 3;
        for k in 0..n {
            if m[k][k].is_zero() {
                // find j > k with m[j][j] != 0 to swap, else mix a row in
                if let Some(j) = ((k + 1)..n).find(|&j| !m[j][j].is_zero()) {
                    for r in m.iter_mut() {
                        r.swap(k, j);
                    }
                    m.swap(k, j);
                } else if let Some(j) = ((k + 1)..n).find(|&j| !m[k][j].is_zero()) {
                    // x_k -> x_k + x_j makes the diagonal entry 2*m[k][j]
                    for i in 0..n {
                        m[i][k] = &m[i][k] + &m[i][j];
                    }
                    for jj in 0..n {
                        m[k][jj] = &m[k][jj] + m[j].get(jj).unwrap();
                    }
                } else {
                    return Err(ConicError::Degenerate);
                }
            }
            let pivot = m[k][k].clone();
            for i in (k + 1)..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let factor = &m[i][k] / &pivot;
                for j in 0..n {
                    m[i][j] = &m[i][j] - &factor * &m[k][j];
                }
                for irow in 0..n {
                    m[irow][i] = &m[irow][i] - &factor * &m[irow][k].clone();
                }
            }
        }
        Ok([m[0][0].clone(), m[1][1].clone(), m[2][2].clone()])
    }
}

/// Hilbert symbol (a, b)_v in {+1, -1} for nonzero rationals.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: Place) -> i32 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol needs nonzero arguments");
    // replace by square-class integer representatives
    let ai = a.numer() * a.denom();
    let bi = b.numer() * b.denom();
    match place {
        Place::Infinite => {
            if ai.is_negative() && bi.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => hilbert_2(&ai, &bi),
        Place::Finite(p) => hilbert_odd(&ai, &bi, p),
    }
}

fn hilbert_odd(a: &BigInt, b: &BigInt, p: u64) -> i32 {
    let (alpha, u) = valuation(a, p);
    let (beta, v) = valuation(b, p);
    let mut s = 1i32;
    if alpha % 2 == 1 && beta % 2 == 1 {
        // (-1)^{(p-1)/2}
        if (p - 1) / 2 % 2 == 1 {
            s = -s;
        }
    }
    if beta % 2 == 1 {
        s *= legendre(&u, p);
    }
    if alpha % 2 == 1 {
        s *= legendre(&v, p);
    }
    s
}

fn hilbert_2(a: &BigInt, b: &BigInt) -> i32 {
    let (alpha, u) = valuation(a, 2);
    let (beta, v) = valuation(b, 2);
    let eps = |x: &BigInt| -> u32 {
        // (x-1)/2 mod 2 for odd x
        let r = x.mod_floor(&BigInt::from(4));
        u32::from(r == BigInt::from(3))
    };
    let omega = |x: &BigInt| -> u32 {
        // (x^2-1)/8 mod 2 for odd x
        let r = x.mod_floor(&BigInt::from(8));
        u32::from(r == BigInt::from(3) || r == BigInt::from(5))
    };
    let e = eps(&u) * eps(&v) + (alpha % 2) * omega(&v) + (beta % 2) * omega(&u);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Does the nondegenerate ternary form have a nontrivial zero over Q_p
/// (resp. R)? Decided on the diagonalization <a, b, c>: isotropic iff
/// (-a/c, -b/c)_v = 1.
pub fn conic_local_soluble(q: &TernaryForm, place: Place) -> Result<bool, ConicError> {
    let [a, b, c] = q.diagonalize()?;
    let x = -(&a / &c);
    let y = -(&b / &c);
    Ok(hilbert_symbol(&x, &y, place) == 1)
}

/// Check solubility at the real place and every prime dividing 2*a*b*c of
/// the diagonalization; at all other places a nondegenerate ternary form is
/// automatically isotropic.
pub fn conic_soluble_everywhere(q: &TernaryForm) -> Result<bool, ConicError> {
    if !conic_local_soluble(q, Place::Infinite)? {
        return Ok(false);
    }
    let [a, b, c] = q.diagonalize()?;
    let mut prod = BigInt::from(2);
    for t in [&a, &b, &c] {
        prod *= t.numer() * t.denom();
    }
    let fact = crate::rational::factor_bigint(&prod).expect("factorable discriminant");
    for (p, _) in fact {
        let p = u64::try_from(&p).unwrap();
        if !conic_local_soluble(q, Place::Finite(p))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Independent brute-force decision of Q_p-solubility by certified search
/// modulo p^K: a candidate x (primitive mod p) with v(Q(x)) >= K and some
/// partial derivative of valuation <= (K-1)/2 lifts by Hensel's lemma, and
/// every true solution reduces to such a candidate when K = 2*v_p(2 det)+1.
/// Exposed for the oracle test suite.
pub fn conic_soluble_hensel_search(q: &TernaryForm, p: u64) -> Result<bool, ConicError> {
    let det = q.det();
    if det.is_zero() {
        return Err(ConicError::Degenerate);
    }
    // integer form: clear denominators (does not change solubility)
    let mut den = BigInt::one();
    for i in 0..3 {
        for j in 0..3 {
            den = den.lcm(q.m[i][j].denom());
        }
    }
    let mi: Vec<Vec<BigInt>> = (0..3)
        .map(|i| (0..3).map(|j| q.m[i][j].numer() * &den / q.m[i][j].denom()).collect())
        .collect();
    let deti = {
        let m = &mi;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    };
    let (vdet, _) = valuation(&deti, p);
    let v2 = if p == 2 { 1 } else { 0 };
    let bbound = vdet + v2;
    let cap = 2 * bbound + 1;
    let pk = BigInt::from(p).pow(cap);
    let pk_i: i128 = i128::try_from(&pk).expect("search modulus fits i128");
    let m: Vec<Vec<i128>> = mi
        .iter()
        .map(|r| r.iter().map(|c| i128::try_from(&c.mod_floor(&pk)).unwrap()).collect())
        .collect();
    let vp = |mut x: i128| -> u32 {
        if x == 0 {
            return cap;
        }
        let mut v = 0;
        while x % p as i128 == 0 {
            x /= p as i128;
            v += 1;
        }
        v
    };
    let half = bbound;
    // a primitive solution scales so that its first unit coordinate is 1,
    // which shrinks the sweep to 3 * p^{2K} candidates
    for unit_pos in 0..3usize {
        let mut rest = [0i128; 2];
        let total = pk_i.checked_pow(2).expect("search space fits i128");
        let mut idx: i128 = 0;
        while idx < total {
            rest[0] = idx % pk_i;
            rest[1] = idx / pk_i;
            idx += 1;
            // coordinates before unit_pos are divisible by p (canonical form)
            let mut coords = [0i128; 3];
            coords[unit_pos] = 1;
            let mut r = 0;
            let mut skip = false;
            for (i, c) in coords.iter_mut().enumerate() {
                if i == unit_pos {
                    continue;
                }
                *c = rest[r];
                if i < unit_pos && *c % p as i128 != 0 {
                    skip = true;
                }
                r += 1;
            }
            if skip {
                continue;
            }
            // Q(x) and gradient mod p^cap
            let mut qv: i128 = 0;
            let mut grad = [0i128; 3];
            for i in 0..3 {
                for j in 0..3 {
                    let t = (m[i][j] * coords[i]).rem_euclid(pk_i) * coords[j] % pk_i;
                    qv = (qv + t) % pk_i;
                    grad[i] = (grad[i] + 2 * m[i][j] % pk_i * coords[j]) % pk_i;
                }
            }
            if vp(qv.rem_euclid(pk_i)) >= cap {
                let gmin = grad.iter().map(|&g| vp(g.rem_euclid(pk_i))).min().unwrap();
                if gmin <= half {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn conic_in_two_vars(a0: i64, a1: i64, b1: i64, c: i64) -> TernaryForm {
        // a0*x^2 + a1*y^2 + b1*y*z + c*z^2 (homogenized alpha0^2+3alpha1^2+6alpha1+15 style)
        TernaryForm::from_coeffs(rat_int(a0), rat_int(a1), rat_int(c), rat_int(0), rat_int(0), rat_int(b1))
    }

    #[test]
    fn displayed_conics_at_3() {
        // alpha0^2 + 3 alpha1^2 + 6 alpha1 + 15 = 0: insoluble over Q_3
        let q15 = conic_in_two_vars(1, 3, 6, 15);
        assert!(!conic_local_soluble(&q15, Place::Finite(3)).unwrap());
        // alpha0^2 + 3 alpha1^2 + 6 alpha1 + 12 = 0: insoluble over Q_3
        let q12 = conic_in_two_vars(1, 3, 6, 12);
        assert!(!conic_local_soluble(&q12, Place::Finite(3)).unwrap());
        // alpha0^2 + 3 alpha1^2 + 6 alpha1 - 33 = 0: soluble everywhere, witness (3, 2)
        let q33 = conic_in_two_vars(1, 3, 6, -33);
        assert!(conic_soluble_everywhere(&q33).unwrap());
        assert_eq!(q33.eval(&rat_int(3), &rat_int(2), &rat_int(1)), rat_int(0));
    }

    #[test]
    fn degenerate_rejected() {
        let q = TernaryForm::from_coeffs(rat_int(1), rat_int(1), rat_int(0), rat_int(0), rat_int(0), rat_int(0));
        assert_eq!(conic_local_soluble(&q, Place::Finite(3)), Err(ConicError::Degenerate));
    }

    #[test]
    fn hilbert_symbol_small_cases() {
        // (-1,-1)_2 = -1, (-1,-1)_inf = -1, (-1,-1)_p = 1 for odd p
        let m1 = rat_int(-1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Finite(2)), -1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Infinite), -1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Finite(3)), 1);
        // (2, p) for odd p: legendre(2|p) when v_p... (2,3)_3 = (2|3) = -1
        assert_eq!(hilbert_symbol(&rat_int(2), &rat_int(3), Place::Finite(3)), -1);
        // rationals reduce to square classes
        assert_eq!(
            hilbert_symbol(&rat(-1, 4), &rat(-9, 1), Place::Infinite),
            -1
        );
    }

    #[test]
    fn hensel_oracle_agrees_on_displayed_conics() {
        for (c, expect) in [(15, false), (12, false), (-33, true)] {
            let q = conic_in_two_vars(1, 3, 6, c);
            assert_eq!(conic_soluble_hensel_search(&q, 3).unwrap(), expect, "constant {c}");
            assert_eq!(
                conic_local_soluble(&q, Place::Finite(3)).unwrap(),
                expect
            );
        }
    }

    #[test]
    fn product_formula_spot_check() {
        // Hilbert reciprocity: product over all places of (a,b)_v = 1
        for (a, b) in [(3i64, 5i64), (-2, 7), (6, -15), (10, 22)] {
            let ar = rat_int(a);
            let br = rat_int(b);
            let mut prod = hilbert_symbol(&ar, &br, Place::Infinite);
            for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
                prod *= hilbert_symbol(&ar, &br, Place::Finite(p));
            }
            assert_eq!(prod, 1, "({a},{b})");
        }
    }
}
