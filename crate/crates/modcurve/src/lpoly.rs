//! L-polynomials of curves over F_p from point counts, via Newton's
//! identities and the functional equation. The value at 1 is the order of
//! the Jacobian over F_p.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpolyError {
    #[error("need counts N_1..N_{0}")]
    MissingCounts(usize),
    #[error("count N_{k} = {n} violates the Weil bound for q = {q}, g = {g}")]
    WeilBound { k: usize, n: u64, q: u64, g: usize },
}

/// Point counts N_k = |C(F_{p^k})| for k = 1..g.
#[derive(Debug, Clone)]
pub struct PointCounts {
    pub label: String,
    pub p: u64,
    pub counts: Vec<u64>,
}

impl PointCounts {
    pub fn new(label: impl Into<String>, p: u64, counts: Vec<u64>) -> Result<Self, LpolyError> {
        let pc = PointCounts { label: label.into(), p, counts };
        let g = pc.counts.len();
        for (i, &n) in pc.counts.iter().enumerate() {
            let k = i + 1;
            let q = pc.p.pow(k as u32);
            // (N - q - 1)^2 <= 4 g^2 q
            let d = n as i128 - q as i128 - 1;
            if d * d > 4 * (g as i128) * (g as i128) * q as i128 {
                return Err(LpolyError::WeilBound { k, n, q, g });
            }
        }
        Ok(pc)
    }
}

/// L(T) = 1 + c_1 T + ... + c_{2g} T^{2g} with integer coefficients,
/// c_{2g-i} = p^{g-i} c_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPolynomial {
    pub p: u64,
    pub g: usize,
    pub coeffs: Vec<BigInt>,
}

impl LPolynomial {
    pub fn order(&self) -> BigInt {
        let v: BigInt = self.coeffs.iter().sum();
        assert!(v.is_positive(), "Jacobian order must be positive");
        v
    }

    pub fn eval_at_minus_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
            .sum()
    }

    /// Number of points of the curve over F_{p^k} recovered from the
    /// reciprocal-root power sums (consistency helper).
    pub fn functional_equation_holds(&self) -> bool {
        let g = self.g;
        let p = BigInt::from(self.p);
        (0..=g).all(|i| {
            let lhs = &self.coeffs[2 * g - i];
            let rhs = p.pow((g - i) as u32) * &self.coeffs[i];
            *lhs == rhs
        })
    }

    /// All reciprocal roots have |alpha| = sqrt(p), checked numerically to
    /// 1e-6 relative tolerance as a sanity layer on top of the exact
    /// integer identities.
    pub fn roots_on_weil_circle(&self) -> bool {
        let coeffs: Vec<(f64, f64)> = self.coeffs.iter().map(|c| (bigint_to_f64(c), 0.0)).collect();
        let roots = durand_kerner(&coeffs);
        let target = (1.0 / self.p as f64).sqrt();
        roots.iter().all(|&(re, im)| {
            let r = (re * re + im * im).sqrt();
            (r - target).abs() <= 1e-6 * target
        })
    }
}

fn bigint_to_f64(b: &BigInt) -> f64 {
    b.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

/// Build the L-polynomial of a genus-g curve from N_1..N_g.
pub fn lpoly_from_counts(counts: &PointCounts, g: usize) -> Result<LPolynomial, LpolyError> {
    if counts.counts.len() < g {
        return Err(LpolyError::MissingCounts(g));
    }
    let p = counts.p;
    // power sums of the reciprocal roots: s_k = p^k + 1 - N_k
    let s: Vec<BigInt> = (1..=g)
        .map(|k| BigInt::from(p).pow(k as u32) + BigInt::one() - BigInt::from(counts.counts[k - 1]))
        .collect();
    // Newton's identities: s_k - e_1 s_{k-1} + ... + (-1)^k k e_k = 0
    // k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} s_i
    let mut e: Vec<BigInt> = vec![BigInt::one()];
    for k in 1..=g {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let sign = if i % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            acc += sign * &e[k - i] * &s[i - 1];
        }
        e.push(acc / BigInt::from(k as i64));
    }
    // c_i = (-1)^i e_i; functional equation for the upper half
    let mut coeffs = vec![BigInt::zero(); 2 * g + 1];
    coeffs[0] = BigInt::one();
    for i in 1..=g {
        let sign = if i % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        coeffs[i] = sign * &e[i];
    }
    for i in (0..g).rev() {
        coeffs[2 * g - i] = BigInt::from(p).pow((g - i) as u32) * &coeffs[i];
    }
    let l = LPolynomial { p, g, coeffs };
    // N_1 consistency: s_1 = p + 1 - N_1 = -c_1
    assert_eq!(
        -(l.coeffs[1].clone()),
        BigInt::from(p) + BigInt::one() - BigInt::from(counts.counts[0]),
        "a_1 convention check"
    );
    assert!(l.functional_equation_holds());
    assert!(
        l.roots_on_weil_circle(),
        "reciprocal roots must sit on |z| = sqrt(p): coeffs {:?}",
        l.coeffs
    );
    Ok(l)
}

/// Durand-Kerner root finder for small complex polynomials (sanity layer).
fn durand_kerner(coeffs: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return vec![];
    }
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let csub = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0, a.1 - b.1);
    let cdiv = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    let lead = coeffs[n];
    let eval = |z: (f64, f64)| {
        let mut acc = (0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = cmul(acc, z);
            acc = (acc.0 + c.0, acc.1 + c.1);
        }
        acc
    };
    // initial guesses on a spiral
    let mut roots: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / (n as f64) + 0.4;
            (0.9 * theta.cos(), 0.9 * theta.sin())
        })
        .collect();
    for _ in 0..200 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut denom = lead;
            for j in 0..n {
                if j != i {
                    denom = cmul(denom, csub(roots[i], roots[j]));
                }
            }
            let corr = cdiv(eval(roots[i]), denom);
            roots[i] = csub(roots[i], corr);
            delta = delta.max((corr.0 * corr.0 + corr.1 * corr.1).sqrt());
        }
        if delta < 1e-12 {
            break;
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_supersingular_shape() {
        // N_1 = p + 1 gives L(T) = 1 + p T^2
        let pc = PointCounts::new("e", 7, vec![8]).unwrap();
        let l = lpoly_from_counts(&pc, 1).unwrap();
        assert_eq!(l.coeffs, vec![BigInt::from(1), BigInt::from(0), BigInt::from(7)]);
        assert_eq!(l.order(), BigInt::from(8));
    }

    #[test]
    fn weil_bound_enforced() {
        assert!(PointCounts::new("e", 7, vec![30]).is_err());
        assert!(PointCounts::new("g2", 7, vec![5, 200]).is_err());
    }

    #[test]
    fn genus_two_frozen_counts() {
        // X(b3,ns5) at p = 7: N = (5, 69), |Jac| = 40
        let pc = PointCounts::new("g2", 7, vec![5, 69]).unwrap();
        let l = lpoly_from_counts(&pc, 2).unwrap();
        assert_eq!(l.order(), BigInt::from(40));
        assert_eq!(
            l.coeffs,
            vec![BigInt::from(1), BigInt::from(-3), BigInt::from(14), BigInt::from(-21), BigInt::from(49)]
        );
    }

    #[test]
    fn genus_three_frozen_counts() {
        // C1 at p = 13: N = (18, 218, 2160), |Jac| = 3420
        let pc = PointCounts::new("C1", 13, vec![18, 218, 2160]).unwrap();
        let l = lpoly_from_counts(&pc, 3).unwrap();
        assert_eq!(l.order(), BigInt::from(3420));
    }
}

