//! Root finding and bounded factor extraction: rational roots, monic
//! quadratic factors over Q (by Hensel lifting from a good prime), roots in
//! a fixed quadratic field, and root counting over F_{p^k}.
//!
//! Full factorization over Q is deliberately not provided; every use in the
//! crate needs only rational roots and quadratic factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fq::{Fq, MAX_EXT_DEGREE};
use crate::poly::Poly;
use crate::quad::QuadElem;
use crate::rational::{divisors, factor_bigint, is_squarefree, Rational};
use crate::ring::{Field, Ring};
use crate::{FqPoly, QPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("zero polynomial is not a valid input")]
    DegenerateInput,
    #[error("{0} is not a valid quadratic field parameter (need squarefree, not 0 or 1)")]
    InvalidField(i64),
    #[error("extension degree {0} unsupported (need 1..=3)")]
    UnsupportedExtension(u8),
    #[error("operands live in different coefficient rings")]
    RingMismatch,
    #[error("integer too large to factor by trial division")]
    FactorOverflow,
}

/// Exact equality of fully expanded canonical forms.
pub fn poly_identity<R: Ring>(lhs: &Poly<R>, rhs: &Poly<R>) -> bool {
    lhs == rhs
}

/// Same check for quadratic-field coefficients, reporting a field mismatch
/// instead of comparing elements of different fields.
pub fn poly_identity_quad(lhs: &Poly<QuadElem>, rhs: &Poly<QuadElem>) -> Result<bool, ArithError> {
    let mut d_seen = 0i64;
    for c in lhs.coeffs().iter().chain(rhs.coeffs().iter()) {
        if c.d != 0 {
            if d_seen == 0 {
                d_seen = c.d;
            } else if d_seen != c.d {
                return Err(ArithError::RingMismatch);
            }
        }
    }
    Ok(lhs == rhs)
}

/// Clear denominators and content: returns primitive integer coefficients
/// with the same roots (low degree first).
pub fn primitive_integer_form(f: &QPoly) -> Vec<BigInt> {
    assert!(!f.is_zero());
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = f.coeffs().iter().map(|c| c.numer() * &den / c.denom()).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in &mut ints {
            *c /= &content;
        }
    }
    ints
}

/// All rational roots with multiplicity, via divisor candidates on the
/// primitive integer form.
pub fn rational_roots(f: &QPoly) -> Result<Vec<Rational>, ArithError> {
    if f.is_zero() {
        return Err(ArithError::DegenerateInput);
    }
    let mut rem = f.clone();
    let mut roots = Vec::new();
    // roots at zero
    while rem.coeff(0).is_zero() && rem.deg() >= 1 {
        roots.push(Rational::zero());
        rem = rem.exact_div(&QPoly::x());
    }
    if rem.deg() == 0 {
        roots.sort();
        return Ok(roots);
    }
    let ints = primitive_integer_form(&rem);
    let a0 = ints[0].clone();
    let an = ints.last().unwrap().clone();
    let fa0 = factor_bigint(&a0).ok_or(ArithError::FactorOverflow)?;
    let fan = factor_bigint(&an).ok_or(ArithError::FactorOverflow)?;
    let mut candidates = Vec::new();
    for p in divisors(&fa0) {
        for q in divisors(&fan) {
            candidates.push(Rational::new(p.clone(), q.clone()));
            candidates.push(Rational::new(-p.clone(), q));
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        while !rem.is_zero() && rem.deg() >= 1 && rem.eval(&r).is_zero() {
            roots.push(r.clone());
            let lin = QPoly::new(vec![-r.clone(), Rational::one()]);
            rem = rem.exact_div(&lin);
        }
    }
    roots.sort();
    Ok(roots)
}

/// Cauchy bound: every complex root has |root| < 1 + max |a_i / a_n|.
fn root_bound(ints: &[BigInt]) -> BigInt {
    let an = ints.last().unwrap().abs();
    let mut m = BigInt::zero();
    for c in &ints[..ints.len() - 1] {
        let q = (c.abs() + &an - BigInt::one()) / &an; // ceil(|a_i|/|a_n|)
        m = m.max(q);
    }
    m + BigInt::from(2)
}

/// Monic irreducible quadratic factors x^2 + b x + c of f over Q, each with
/// its multiplicity. Complete: every such factor reduces mod a good prime to
/// a degree-2 product of the mod-p factorization, and all of those are
/// lifted and tested by exact division.
pub fn monic_quadratic_factors(f: &QPoly) -> Result<Vec<((Rational, Rational), usize)>, ArithError> {
    if f.is_zero() {
        return Err(ArithError::DegenerateInput);
    }
    if f.deg() < 2 {
        return Ok(vec![]);
    }
    // work with the squarefree part for candidate generation
    let sqf = f.squarefree_part();
    let ints = primitive_integer_form(&sqf);
    let lc = ints.last().unwrap().clone();
    let n = ints.len() - 1;
    if n < 2 {
        return Ok(vec![]);
    }

    // pick a good odd prime: not dividing lc, f squarefree mod p
    let mut good: Option<u64> = None;
    'outer: for &p in &[3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67] {
        let pb = BigInt::from(p);
        if lc.mod_floor(&pb).is_zero() {
            continue;
        }
        let fp: FqPoly = Poly::new(
            ints.iter().map(|c| fq_from_bigint(p, 1, c)).collect(),
        );
        if fp.deg() != n {
            continue;
        }
        if !fp.is_squarefree() {
            continue 'outer;
        }
        good = Some(p);
        break;
    }
    let p = good.expect("no good prime below 70 for quadratic factor extraction");

    let fp: FqPoly = Poly::new(ints.iter().map(|c| fq_from_bigint(p, 1, c)).collect());
    let fp_monic = fp.monic();
    let factors = factor_over_fq(&fp_monic);

    // candidate monic quadratics mod p: irreducible quadratics, and products
    // of two distinct linear factors
    let linears: Vec<&FqPoly> = factors.iter().filter(|(g, _)| g.deg() == 1).map(|(g, _)| g).collect();
    let quads: Vec<&FqPoly> = factors.iter().filter(|(g, _)| g.deg() == 2).map(|(g, _)| g).collect();
    let mut candidates: Vec<FqPoly> = quads.into_iter().cloned().collect();
    for i in 0..linears.len() {
        for j in (i + 1)..linears.len() {
            candidates.push(linears[i].clone() * linears[j].clone());
        }
    }

    // precision: recover B = lc*b and C = lc^2*c by symmetric lift
    let rb = root_bound(&ints);
    let bound: BigInt = (&lc * &rb * BigInt::from(2)).max(&lc * &lc * &rb * &rb) * BigInt::from(2) + BigInt::one();
    let mut out: Vec<((Rational, Rational), usize)> = Vec::new();
    for h0 in candidates {
        if let Some(h) = hensel_lift_quadratic(&ints, p, &h0, &bound) {
            let (b, c) = h;
            let quad = QPoly::new(vec![c.clone(), b.clone(), Rational::one()]);
            let mut mult = 0usize;
            let mut rem = f.clone();
            while quad.divides(&rem) && rem.deg() >= 2 {
                mult += 1;
                rem = rem.exact_div(&quad);
                if rem.is_zero() {
                    break;
                }
            }
            if mult > 0 {
                out.push(((b, c), mult));
            }
        }
    }
    out.sort_by(|a, b| {
        (a.0 .0.clone(), a.0 .1.clone()).partial_cmp(&(b.0 .0.clone(), b.0 .1.clone())).unwrap()
    });
    out.dedup();
    Ok(out)
}

fn fq_from_bigint(p: u64, k: u8, c: &BigInt) -> Fq {
    let m = c.mod_floor(&BigInt::from(p));
    Fq::from_int(p, k, u64::try_from(&m).unwrap() as i64)
}

/// Lift the monic quadratic h0 from a factorization of F mod p to mod p^N
/// with p^N > 2*bound, one linear Hensel step at a time. Returns the
/// candidate (b, c) over Q from symmetric representatives, or None when the
/// lift degenerates (h0 not coprime to its cofactor).
fn hensel_lift_quadratic(ints: &[BigInt], p: u64, h0: &FqPoly, bound: &BigInt) -> Option<(Rational, Rational)> {
    let lc = ints.last().unwrap().clone();
    let fp: FqPoly = Poly::new(ints.iter().map(|c| fq_from_bigint(p, 1, c)).collect());
    // non-monic cofactor: F = h0 * g0_raw mod p
    let (g0_raw, r0) = fp.divrem(h0);
    if !r0.is_zero() {
        return None;
    }
    // Bezout u*h0 + v*g0_raw = 1 mod p
    let (gcd, _u0, v0) = poly_xgcd(h0, &g0_raw);
    if gcd.deg() != 0 {
        return None;
    }
    let v0 = v0.scale(&gcd.coeff(0).inv());
    let v_int: Vec<BigInt> = (0..v0.coeffs().len().max(1)).map(|i| lift_sym(&v0.coeff(i), p)).collect();

    let pb = BigInt::from(p);
    let target: Vec<BigInt> = ints.to_vec();
    let mut h: Vec<BigInt> = (0..=2).map(|i| lift_sym(&h0.coeff(i), p)).collect();
    h[2] = BigInt::one();
    let mut modulus = pb.clone();
    let stop = bound * BigInt::from(2);
    while modulus <= stop {
        let next = &modulus * &pb;
        // remainder of F by the current monic h over Z; divisible by modulus
        let (_q, r) = int_poly_divrem_monic(&target, &h);
        // e = (r / modulus) mod p, degree <= 1
        let e: Vec<BigInt> = r
            .iter()
            .map(|c| {
                let t = c.mod_floor(&next);
                debug_assert!((&t % &modulus).is_zero(), "Hensel remainder not divisible");
                (t / &modulus).mod_floor(&pb)
            })
            .collect();
        // dh = v*e mod h0 (mod p)
        let ve = int_poly_mul(&v_int, &e);
        let dh = int_poly_rem_monic(&ve, &h, &pb);
        for (i, d) in dh.iter().enumerate() {
            if i < 2 {
                h[i] = (&h[i] + &modulus * d).mod_floor(&next);
            }
        }
        modulus = next;
    }
    let b = rational_from_sym(&(&h[1] * &lc).mod_floor(&modulus), &modulus, &lc)?;
    let c = rational_from_sym(&(&h[0] * &lc * &lc).mod_floor(&modulus), &modulus, &(&lc * &lc))?;
    Some((b, c))
}

/// Exact integer division by a monic polynomial: F = q*h + r over Z.
fn int_poly_divrem_monic(f: &[BigInt], h: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dh = h.len() - 1;
    let mut r: Vec<BigInt> = f.to_vec();
    if r.len() <= dh {
        return (vec![], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dh];
    for d in (dh..r.len()).rev() {
        let c = r[d].clone();
        if c.is_zero() {
            continue;
        }
        q[d - dh] = c.clone();
        for (i, hc) in h.iter().enumerate() {
            r[d - dh + i] -= &c * hc;
        }
    }
    r.truncate(dh);
    (q, r)
}

fn lift_sym(x: &Fq, p: u64) -> BigInt {
    let v = x.coeff(0);
    let half = p / 2;
    if v > half {
        BigInt::from(v) - BigInt::from(p)
    } else {
        BigInt::from(v)
    }
}

fn rational_from_sym(residue: &BigInt, modulus: &BigInt, den: &BigInt) -> Option<Rational> {
    let half = modulus / BigInt::from(2);
    let val = if residue > &half { residue - modulus } else { residue.clone() };
    Some(Rational::new(val, den.clone()))
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Remainder of a by monic-quadratic h, coefficients mod m.
fn int_poly_rem_monic(a: &[BigInt], h: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    while r.len() > 2 {
        let d = r.len() - 1;
        let c = r[d].clone();
        r[d] = BigInt::zero();
        for i in 0..2 {
            let idx = d - 2 + i;
            r[idx] = (&r[idx] - &c * &h[i]).mod_floor(m);
        }
        while r.last().is_some_and(|x| x.is_zero()) && r.len() > 2 {
            r.pop();
        }
    }
    r
}

/// Extended gcd for polynomials over a field: (g, u, v) with u*a + v*b = g.
pub fn poly_xgcd<R: Field>(a: &Poly<R>, b: &Poly<R>) -> (Poly<R>, Poly<R>, Poly<R>) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = Poly::constant(R::one());
    let mut s1 = Poly::zero_poly();
    let mut t0 = Poly::zero_poly();
    let mut t1 = Poly::constant(R::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let s = s0 - q.clone() * s1.clone();
        let t = t0 - q * t1.clone();
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}

/// All roots of f in Q(sqrt d), with multiplicity: the rational roots plus
/// the root pairs of monic quadratic factors with discriminant in d*(Q^x)^2.
pub fn roots_in_quad(f: &QPoly, d: i64) -> Result<Vec<QuadElem>, ArithError> {
    if f.is_zero() {
        return Err(ArithError::DegenerateInput);
    }
    if d == 0 || d == 1 || !is_squarefree(d) {
        return Err(ArithError::InvalidField(d));
    }
    let mut out: Vec<QuadElem> = rational_roots(f)?
        .into_iter()
        .map(QuadElem::from_rational)
        .collect();
    let two = Rational::from_i64(2);
    for ((b, c), mult) in monic_quadratic_factors(f)? {
        let disc = &b * &b - Rational::from_i64(4) * &c;
        if disc.is_zero() {
            continue; // double rational root, already found
        }
        let scaled = &disc / Rational::from_i64(d);
        if let Some(s) = crate::rational::rational_sqrt(&scaled) {
            // roots (-b ± s*sqrt(d)) / 2
            for sign in [1i64, -1] {
                let root = QuadElem::new(
                    -&b / &two,
                    &s * Rational::from_i64(sign) / &two,
                    d,
                );
                for _ in 0..mult {
                    out.push(root.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Number of distinct roots of f in F_{p^k}, as deg gcd(f, X^{p^k} - X).
pub fn count_roots_ext(f: &FqPoly, p: u64, k: u8) -> Result<usize, ArithError> {
    if !(1..=MAX_EXT_DEGREE).contains(&k) {
        return Err(ArithError::UnsupportedExtension(k));
    }
    if f.is_zero() {
        return Err(ArithError::DegenerateInput);
    }
    let fk = f.map_coeffs(|c| {
        if c.is_literal() {
            *c * Fq::from_int(p, k, 1)
        } else {
            assert_eq!(c.p, p);
            *c * Fq::from_int(p, k, 1)
        }
    });
    if fk.deg() == 0 {
        return Ok(0);
    }
    let q = p.pow(k as u32);
    let xq = Poly::pow_x_mod(q, &fk);
    let g = (xq - Poly::x().rem(&fk)).gcd(&fk);
    Ok(g.degree().unwrap_or(0))
}

/// Distinct roots of f over its own coefficient field F_q, found by
/// splitting gcd(f, X^q - X). Deterministic: splitting elements are tried
/// in the fixed enumeration order of the field.
pub fn roots_in_fq(f: &FqPoly, p: u64, k: u8) -> Vec<Fq> {
    let fk = f.map_coeffs(|c| *c * Fq::from_int(p, k, 1));
    if fk.is_zero() || fk.deg() == 0 {
        return vec![];
    }
    let q = p.pow(k as u32);
    let xq = Poly::pow_x_mod(q, &fk);
    let g = (xq - Poly::x().rem(&fk)).gcd(&fk);
    let mut roots = Vec::new();
    split_linear(&g, p, k, &mut roots);
    roots.sort_by_key(|r| (r.coeff(0), r.coeff(1), r.coeff(2)));
    roots
}

fn split_linear(g: &FqPoly, p: u64, k: u8, out: &mut Vec<Fq>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            // monic after gcd: root = -c0
            let r = -(g.coeff(0) * g.coeff(1).inv());
            out.push(r);
        }
        Some(_) => {
            let q = p.pow(k as u32);
            assert!(p != 2, "root splitting requires odd q");
            for a in Fq::all_elements(p, k) {
                // gcd(g, (x+a)^((q-1)/2) - 1)
                let shifted = Poly::new(vec![a, Fq::from_int(p, k, 1)]);
                let t = poly_pow_mod(&shifted, (q - 1) / 2, g);
                let h = (t - Poly::constant(Fq::from_int(p, k, 1)).rem(g)).gcd(g);
                let dh = h.degree().unwrap_or(0);
                if dh > 0 && dh < g.deg() {
                    let other = g.exact_div(&h);
                    split_linear(&h, p, k, out);
                    split_linear(&other, p, k, out);
                    return;
                }
            }
            unreachable!("splitting always succeeds over odd finite fields");
        }
    }
}

fn poly_pow_mod<R: Field>(base: &Poly<R>, mut e: u64, m: &Poly<R>) -> Poly<R> {
    let mut acc = Poly::constant(R::one()).rem(m);
    let mut b = base.rem(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc * b.clone()).rem(m);
        }
        b = (b.clone() * b).rem(m);
        e >>= 1;
    }
    acc
}

/// Roots with multiplicity over F_q.
pub fn roots_in_fq_with_multiplicity(f: &FqPoly, p: u64, k: u8) -> Vec<(Fq, usize)> {
    let mut rem = f.map_coeffs(|c| *c * Fq::from_int(p, k, 1));
    roots_in_fq(f, p, k)
        .into_iter()
        .map(|r| {
            let lin = Poly::new(vec![-r, Fq::from_int(p, k, 1)]);
            let mut mult = 0;
            while lin.divides(&rem) && !rem.is_zero() && rem.deg() >= 1 {
                mult += 1;
                rem = rem.exact_div(&lin);
            }
            (r, mult)
        })
        .collect()
}

/// Irreducible factorization of a monic squarefree polynomial over F_q
/// (q odd), by distinct-degree then equal-degree splitting.
pub fn factor_over_fq(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let lead = f.leading();
    assert!(!lead.is_literal(), "factor_over_fq needs bound coefficients");
    let p = lead.p;
    let k = lead.k;
    let q = p.pow(k as u32);
    let mut out: Vec<(FqPoly, usize)> = Vec::new();

    // multiplicity via repeated gcd with the squarefree part
    let mut rem = f.monic();
    let sqf = rem.squarefree_part();
    // distinct-degree on the squarefree part
    let mut stage = sqf.clone();
    let mut xqi = Poly::x().rem(&stage);
    let mut d = 0u32;
    let mut pieces: Vec<(FqPoly, usize)> = Vec::new(); // (product of irred of degree d, d)
    while stage.deg() >= 1 {
        d += 1;
        if (stage.deg() as u32) < 2 * d {
            pieces.push((stage.clone(), stage.deg()));
            break;
        }
        xqi = poly_pow_mod(&xqi, q, &stage);
        let g = (xqi.clone() - Poly::x().rem(&stage)).gcd(&stage);
        if g.deg() >= 1 {
            pieces.push((g.clone(), d as usize));
            stage = stage.exact_div(&g);
            xqi = xqi.rem(&stage);
        }
    }
    let mut irreducibles: Vec<FqPoly> = Vec::new();
    for (prod, deg) in pieces {
        split_equal_degree(&prod, deg, p, k, &mut irreducibles);
    }
    for g in irreducibles {
        let mut mult = 0usize;
        while g.divides(&rem) && rem.deg() >= g.deg() {
            mult += 1;
            rem = rem.exact_div(&g);
            if rem.deg() == 0 {
                break;
            }
        }
        out.push((g, mult));
    }
    out.sort_by_key(|(g, _)| (g.deg(), g.coeffs().iter().map(|c| c.coeff(0)).collect::<Vec<_>>()));
    out
}

fn split_equal_degree(g: &FqPoly, d: usize, p: u64, k: u8, out: &mut Vec<FqPoly>) {
    if g.deg() == 0 {
        return;
    }
    if g.deg() == d {
        out.push(g.monic());
        return;
    }
    let q = p.pow(k as u32);
    let e = (q.pow(d as u32) - 1) / 2;
    // deterministic sweep over monic shifts and low-degree polynomials
    for a in Fq::all_elements(p, k) {
        for extra in 0..2u8 {
            let base = if extra == 0 {
                Poly::new(vec![a, Fq::from_int(p, k, 1)])
            } else {
                Poly::new(vec![a, Fq::zero() * Fq::from_int(p, k, 1), Fq::from_int(p, k, 1)])
            };
            let t = poly_pow_mod(&base, e, g);
            let h = (t - Poly::constant(Fq::from_int(p, k, 1)).rem(g)).gcd(g);
            let dh = h.degree().unwrap_or(0);
            if dh > 0 && dh < g.deg() {
                let other = g.exact_div(&h);
                split_equal_degree(&h, d, p, k, out);
                split_equal_degree(&other, d, p, k, out);
                return;
            }
        }
    }
    unreachable!("equal-degree splitting failed");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn rational_roots_basic() {
        let f = QPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(rational_roots(&f).unwrap(), vec![rat_int(-1), rat_int(1)]);
        let g = QPoly::from_ints(&[1, 0, 1]);
        assert!(rational_roots(&g).unwrap().is_empty());
        assert_eq!(rational_roots(&QPoly::zero_poly()), Err(ArithError::DegenerateInput));
    }

    #[test]
    fn rational_roots_sextic() {
        // 9x^6 - 6x^5 - 35x^4 + 40x^2 + 12x - 8 has exactly the roots 2, -1, 1/3
        let f = QPoly::from_ints(&[-8, 12, 40, 0, -35, -6, 9]);
        let roots = rational_roots(&f).unwrap();
        assert_eq!(roots, vec![rat_int(-1), rat(1, 3), rat_int(2)]);
        // cofactor is an irreducible cubic: 3x^3 + 2x^2 - 4x - 4
        let mut rem = f.clone();
        for r in &roots {
            rem = rem.exact_div(&QPoly::new(vec![-r.clone(), Rational::one()]));
        }
        assert_eq!(rem.deg(), 3);
        assert!(rational_roots(&rem).unwrap().is_empty());
        assert!(monic_quadratic_factors(&rem).unwrap().is_empty());
    }

    #[test]
    fn roots_in_quad_basic() {
        // x^2 + 11 over Q(sqrt -11)
        let f = QPoly::from_ints(&[11, 0, 1]);
        let roots = roots_in_quad(&f, -11).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!((r.clone() * r.clone() + QuadElem::from_i64(11)).is_zero());
        }
        // x^2 + 1 has no roots in Q(sqrt -3)
        assert!(roots_in_quad(&QPoly::from_ints(&[1, 0, 1]), -3).unwrap().is_empty());
        assert_eq!(roots_in_quad(&QPoly::x(), 45), Err(ArithError::InvalidField(45)));
    }

    #[test]
    fn roots_in_quad_spec_example() {
        // 3x^2 + 26x - 9 over Q(sqrt -55): discriminant 784 = 28^2, both roots rational
        let f = QPoly::from_ints(&[-9, 26, 3]);
        let roots = roots_in_quad(&f, -55).unwrap();
        let rats: Vec<Rational> = roots.iter().filter_map(|r| r.as_rational()).collect();
        assert_eq!(rats, vec![rat_int(-9), rat(1, 3)]);
    }

    #[test]
    fn quadratic_factor_extraction() {
        // (x^2 - x/14 + 1/14)(x^2 + 3) has monic quadratic factors with
        // discriminants -55/196 and -12
        let q1 = QPoly::new(vec![rat(1, 14), rat(-1, 14), rat_int(1)]);
        let q2 = QPoly::from_ints(&[3, 0, 1]);
        let f = q1.clone() * q2.clone();
        let fs = monic_quadratic_factors(&f).unwrap();
        assert_eq!(fs.len(), 2);
        let roots = roots_in_quad(&f, -55).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].norm() * roots[1].norm(), rat(1, 196));
        for r in &roots {
            assert_eq!(r.d, -55);
        }
    }

    #[test]
    fn count_roots_ext_examples() {
        // X^2 + 1 over F_3: no roots in F_3, two in F_9
        let f: FqPoly = Poly::new(vec![Fq::prime_field(3, 1), Fq::prime_field(3, 0), Fq::prime_field(3, 1)]);
        assert_eq!(count_roots_ext(&f, 3, 1).unwrap(), 0);
        assert_eq!(count_roots_ext(&f, 3, 2).unwrap(), 2);
        // X^3 - X over F_5
        let g: FqPoly = Poly::new(vec![
            Fq::prime_field(5, 0),
            Fq::prime_field(5, -1),
            Fq::prime_field(5, 0),
            Fq::prime_field(5, 1),
        ]);
        assert_eq!(count_roots_ext(&g, 5, 1).unwrap(), 3);
        // X^4 + 1 over F_7: 0 roots in F_7, 4 in F_49
        let h: FqPoly = Poly::new(vec![
            Fq::prime_field(7, 1),
            Fq::prime_field(7, 0),
            Fq::prime_field(7, 0),
            Fq::prime_field(7, 0),
            Fq::prime_field(7, 1),
        ]);
        assert_eq!(count_roots_ext(&h, 7, 2).unwrap(), 4);
        assert_eq!(count_roots_ext(&h, 7, 4), Err(ArithError::UnsupportedExtension(4)));
    }

    #[test]
    fn factor_over_f5() {
        // x^4 + 1 = (x^2+2)(x^2+3) over F_5
        let f: FqPoly = Poly::new(vec![
            Fq::prime_field(5, 1),
            Fq::prime_field(5, 0),
            Fq::prime_field(5, 0),
            Fq::prime_field(5, 0),
            Fq::prime_field(5, 1),
        ]);
        let fs = factor_over_fq(&f);
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(g, m)| g.deg() == 2 && *m == 1));
        let prod = fs.iter().fold(Poly::constant(Fq::prime_field(5, 1)), |acc, (g, _)| acc * g.clone());
        assert_eq!(prod, f);
    }

    #[test]
    fn roots_with_multiplicity() {
        // (x-1)^2 (x-2) over F_7
        let one = Fq::prime_field(7, 1);
        let f = Poly::new(vec![-one, one]) * Poly::new(vec![-one, one]) * Poly::new(vec![Fq::prime_field(7, -2), one]);
        let rm = roots_in_fq_with_multiplicity(&f, 7, 1);
        assert_eq!(rm.len(), 2);
        let total: usize = rm.iter().map(|(_, m)| m).sum();
        assert_eq!(total, 3);
    }
}

