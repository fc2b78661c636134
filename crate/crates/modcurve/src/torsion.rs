//! Torsion subgroups of elliptic curves over Q and over quadratic fields:
//! reduction bounds at degree-1 primes, realization by division-polynomial
//! roots, and 2-saturation by exact halving.

use num_traits::{One, Zero};

use crate::elliptic::{count_points_fp, EllCurve, EllError, EllPoint};
use crate::factor::{rational_roots, roots_in_quad};
use crate::poly::Poly;
use crate::quad::QuadElem;
use crate::rational::{is_prime_u64, legendre, valuation, Rational};
use crate::ring::Ring;
use crate::QPoly;

#[derive(Debug, Clone)]
pub struct TorsionGroup {
    /// (n1, n2) with n1 | n2, group Z/n1 x Z/n2.
    pub structure: (u64, u64),
    pub generators: Vec<EllPoint<QuadElem>>,
    pub points: Vec<EllPoint<QuadElem>>,
    /// gcd of |E(F_p)| over the selected degree-1 primes.
    pub bound: u64,
    pub reduction_primes: Vec<u64>,
}

#[derive(Debug, Clone)]
pub enum TorsionOutcome {
    Conclusive(TorsionGroup),
    /// The reduction bound was not realized and the gap is not accounted
    /// for by the saturation steps; `found` is a verified subgroup.
    Inconclusive { found: TorsionGroup, bound: u64 },
}

impl TorsionOutcome {
    pub fn group(&self) -> &TorsionGroup {
        match self {
            TorsionOutcome::Conclusive(g) => g,
            TorsionOutcome::Inconclusive { found, .. } => found,
        }
    }

    pub fn is_conclusive(&self) -> bool {
        matches!(self, TorsionOutcome::Conclusive(_))
    }
}

/// The completed-square cubic model y^2 = x^3 + (b2/4)x^2 + (b4/2)x + (b6/4),
/// with the change of coordinates y -> y + (a1 x + a3)/2.
fn b_model(e: &EllCurve<Rational>) -> (Rational, Rational, Rational) {
    let four = Rational::from_i64(4);
    let two = Rational::from_i64(2);
    (e.b2() / &four, e.b4() / &two, e.b6() / &four)
}

fn cubic(a: &Rational, b: &Rational, c: &Rational) -> QPoly {
    Poly::new(vec![c.clone(), b.clone(), a.clone(), Rational::one()])
}

/// Division polynomial x-parts W_n for y^2 = x^3 + A x^2 + B x + C:
/// psi_n = W_n(x) for odd n, psi_n = 2y W_n(x) for even n.
pub fn division_poly_x(n: usize, a: &Rational, b: &Rational, c: &Rational) -> QPoly {
    let g = cubic(a, b, c);
    let mut w: Vec<QPoly> = vec![QPoly::zero_poly(); n.max(5) + 3];
    w[0] = QPoly::zero_poly();
    w[1] = QPoly::one();
    w[2] = QPoly::one();
    // W3 = 3x^4 + 4A x^3 + 6B x^2 + 12C x + (4AC - B^2)
    w[3] = QPoly::new(vec![
        Rational::from_i64(4) * a * c - b * b,
        Rational::from_i64(12) * c,
        Rational::from_i64(6) * b,
        Rational::from_i64(4) * a,
        Rational::from_i64(3),
    ]);
    // W4 = 2x^6 + 4A x^5 + 10B x^4 + 40C x^3 + 10(4AC - B^2) x^2
    //      + (4A(4AC - B^2) - 8BC) x + (2B(4AC - B^2) - 16 C^2)
    let b8 = Rational::from_i64(4) * a * c - b * b;
    w[4] = QPoly::new(vec![
        Rational::from_i64(2) * b * &b8 - Rational::from_i64(16) * c * c,
        Rational::from_i64(4) * a * &b8 - Rational::from_i64(8) * b * c,
        Rational::from_i64(10) * &b8,
        Rational::from_i64(40) * c,
        Rational::from_i64(10) * b,
        Rational::from_i64(4) * a,
        Rational::from_i64(2),
    ]);
    let g2 = g.clone() * g.clone();
    let sixteen = QPoly::constant(Rational::from_i64(16));
    for m in 5..=n {
        w[m] = if m % 2 == 1 {
            let k = (m - 1) / 2;
            if k % 2 == 0 {
                // 16 g^2 W_{k+2} W_k^3 - W_{k-1} W_{k+1}^3
                sixteen.clone() * g2.clone() * w[k + 2].clone() * w[k].clone() * w[k].clone() * w[k].clone()
                    - w[k - 1].clone() * w[k + 1].clone() * w[k + 1].clone() * w[k + 1].clone()
            } else {
                w[k + 2].clone() * w[k].clone() * w[k].clone() * w[k].clone()
                    - sixteen.clone() * g2.clone() * w[k - 1].clone() * w[k + 1].clone() * w[k + 1].clone() * w[k + 1].clone()
            }
        } else {
            let k = m / 2;
            w[k].clone()
                * (w[k + 2].clone() * w[k - 1].clone() * w[k - 1].clone()
                    - w[k - 2].clone() * w[k + 1].clone() * w[k + 1].clone())
        };
    }
    w[n].clone()
}

/// x-coordinates of the n-torsion points are roots of this polynomial
/// (times the 2-torsion cubic when n is even).
pub fn torsion_x_poly(n: usize, a: &Rational, b: &Rational, c: &Rational) -> QPoly {
    let w = division_poly_x(n, a, b, c);
    if n % 2 == 0 {
        w * cubic(a, b, c)
    } else {
        w
    }
}

/// Numerator of x(2P) - t: the halving quartic D(x) - t * 4g(x) with
/// D = x^4 - 2Bx^2 - 8Cx + (B^2 - 4AC).
fn halving_quartic(a: &Rational, b: &Rational, c: &Rational, t: &QuadElem) -> Poly<QuadElem> {
    let d: Poly<QuadElem> = Poly::new(vec![
        QuadElem::from_rational(b * b - Rational::from_i64(4) * a * c),
        QuadElem::from_rational(Rational::from_i64(-8) * c),
        QuadElem::from_rational(Rational::from_i64(-2) * b),
        QuadElem::zero(),
        QuadElem::one(),
    ]);
    let g4: Poly<QuadElem> = Poly::new(vec![
        QuadElem::from_rational(Rational::from_i64(4) * c),
        QuadElem::from_rational(Rational::from_i64(4) * b),
        QuadElem::from_rational(Rational::from_i64(4) * a),
        QuadElem::from_i64(4),
    ]);
    d - g4.scale(t)
}

/// Roots in Q(sqrt d) of a polynomial with coefficients in the same field,
/// via the norm to Q (complete: the K-roots of h divide the rational
/// polynomial h * conj(h)).
fn roots_in_quad_of_quad_poly(h: &Poly<QuadElem>, d: i64) -> Vec<QuadElem> {
    if d == 0 {
        let hq = h.map_coeffs(|c| c.as_rational().expect("rational coefficients"));
        return rational_roots(&hq).unwrap_or_default().into_iter().map(QuadElem::from_rational).collect();
    }
    let all_rational = h.coeffs().iter().all(|c| c.is_rational());
    let hq = if all_rational {
        h.map_coeffs(|c| c.as_rational().unwrap())
    } else {
        let conj = h.map_coeffs(|c| c.conj());
        (h.clone() * conj).map_coeffs(|c| c.as_rational().expect("norm form is rational"))
    };
    let mut out = Vec::new();
    for r in roots_in_quad(&hq, d).unwrap_or_default() {
        if h.eval(&r).is_zero() {
            out.push(r);
        }
    }
    out.sort_by(|p, q| (p.a.clone(), p.b.clone()).partial_cmp(&(q.a.clone(), q.b.clone())).unwrap());
    out.dedup();
    out
}

/// Good degree-1 reduction primes for E over Q(sqrt d): odd primes of good
/// reduction for the integral model, prime to d, split when d != 0.
pub fn degree_one_primes(e: &EllCurve<Rational>, d: i64, count: usize, skip: usize) -> Vec<u64> {
    let disc = e.disc();
    assert!(disc.denom().is_one(), "integral model required");
    let dnum = disc.numer().clone();
    let mut out = Vec::new();
    let mut p = 3u64;
    let mut skipped = 0;
    while out.len() < count {
        if is_prime_u64(p) && (d == 0 || d.unsigned_abs() % p != 0) {
            let (v, _) = valuation(&dnum, p);
            if v == 0 {
                let split = d == 0 || legendre(&num_bigint::BigInt::from(d), p) == 1;
                if split {
                    if skipped < skip {
                        skipped += 1;
                    } else {
                        out.push(p);
                    }
                }
            }
        }
        p += 2;
    }
    out
}

fn lift_point(e: &EllCurve<Rational>, bx: &QuadElem, by: &QuadElem) -> EllPoint<QuadElem> {
    // move from the b-model back to the original: y = y_b - (a1 x + a3)/2
    let half = QuadElem::from_rational(Rational::new(1.into(), 2.into()));
    let a1 = QuadElem::from_rational(e.a1.clone());
    let a3 = QuadElem::from_rational(e.a3.clone());
    EllPoint::Affine(bx.clone(), by.clone() - half * (a1 * bx.clone() + a3))
}

fn close_under_group_law(e: &EllCurve<QuadElem>, pts: &mut Vec<EllPoint<QuadElem>>) {
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = pts.clone();
        for p in &snapshot {
            for q in &snapshot {
                let s = e.add_unchecked(p, q);
                if !pts.contains(&s) {
                    pts.push(s);
                    changed = true;
                }
            }
        }
    }
}

/// Torsion of an integral model over Q (d = 0) or Q(sqrt d).
pub fn torsion(e: &EllCurve<Rational>, d: i64) -> Result<TorsionOutcome, EllError> {
    let primes = degree_one_primes(e, d, 5, 0);
    let mut bound = 0u64;
    for &p in &primes {
        let n = count_points_fp(e, p)?;
        bound = num_integer::gcd(bound, n);
    }

    let ek: EllCurve<QuadElem> = EllCurve {
        a1: QuadElem::from_rational(e.a1.clone()),
        a2: QuadElem::from_rational(e.a2.clone()),
        a3: QuadElem::from_rational(e.a3.clone()),
        a4: QuadElem::from_rational(e.a4.clone()),
        a6: QuadElem::from_rational(e.a6.clone()),
    };
    let (a, b, c) = b_model(e);
    let g = cubic(&a, &b, &c);

    let mut pts: Vec<EllPoint<QuadElem>> = vec![EllPoint::Infinity];
    // two-torsion from the cubic
    for r in roots_in_quad_of_quad_poly(&g.map_coeffs(|q| QuadElem::from_rational(q.clone())), d) {
        pts.push(lift_point(e, &r, &QuadElem::zero()));
    }
    // odd-part candidates from division polynomials
    for ell in [3usize, 5, 7] {
        if bound % ell as u64 == 0 {
            let w = torsion_x_poly(ell, &a, &b, &c);
            let xs = if d == 0 {
                rational_roots(&w).unwrap_or_default().into_iter().map(QuadElem::from_rational).collect()
            } else {
                roots_in_quad(&w, d).unwrap_or_default()
            };
            for x in xs {
                let val = eval_cubic_quad(&g, &x);
                if let Some(y) = val.sqrt_in(if d == 0 { 0 } else { d }) {
                    pts.push(lift_point(e, &x, &y));
                    pts.push(lift_point(e, &x, &(-y)));
                }
            }
        }
    }
    close_under_group_law(&ek, &mut pts);

    // 2-saturation: halve every point until nothing new appears
    loop {
        let mut grew = false;
        let snapshot = pts.clone();
        for p in &snapshot {
            if pts.len() as u64 >= bound && bound > 0 {
                break;
            }
            // target x on the b-model
            let t = match p {
                EllPoint::Infinity => None,
                EllPoint::Affine(x, _) => Some(x.clone()),
            };
            let Some(t) = t else { continue };
            let quartic = halving_quartic(&a, &b, &c, &t);
            for x in roots_in_quad_of_quad_poly(&quartic, d) {
                let val = eval_cubic_quad(&g, &x);
                if let Some(y) = val.sqrt_in(if d == 0 { 0 } else { d }) {
                    for yy in [y.clone(), -y] {
                        let cand = lift_point(e, &x, &yy);
                        debug_assert!(ek.contains(&cand));
                        if !pts.contains(&cand) {
                            // keep only torsion candidates: order must divide bound
                            if !ek.scalar_mul(bound, &cand).is_infinity() {
                                continue;
                            }
                            pts.push(cand);
                            grew = true;
                        }
                    }
                }
            }
        }
        if grew {
            close_under_group_law(&ek, &mut pts);
        } else {
            break;
        }
    }

    let order = pts.len() as u64;
    // verify injection into five further reduction primes
    let extra = degree_one_primes(e, d, 5, primes.len());
    for &p in &extra {
        let n = count_points_fp(e, p)?;
        assert!(n % order == 0, "torsion must inject into E(F_{p})");
    }

    let (structure, generators) = group_structure(&ek, &pts);
    let group = TorsionGroup {
        structure,
        generators,
        points: pts,
        bound,
        reduction_primes: primes,
    };

    // conclusive when the bound is realized, or the gap is a power of 2
    // (the halving loop is a complete 2-saturation) possibly times odd
    // primes <= 7 (handled by the division-polynomial harvest above)
    let conclusive = if order == bound {
        true
    } else {
        let mut gap = bound / order;
        for ell in [2u64, 3, 5, 7] {
            while gap % ell == 0 {
                gap /= ell;
            }
        }
        gap == 1
    };
    if conclusive {
        Ok(TorsionOutcome::Conclusive(group))
    } else {
        let bound_val = group.bound;
        Ok(TorsionOutcome::Inconclusive { found: group, bound: bound_val })
    }
}

fn eval_cubic_quad(g: &QPoly, x: &QuadElem) -> QuadElem {
    let gq = g.map_coeffs(|c| QuadElem::from_rational(c.clone()));
    gq.eval(x)
}

/// Invariant-factor structure (n1, n2), n1 | n2, with matching generators.
fn group_structure(
    e: &EllCurve<QuadElem>,
    pts: &[EllPoint<QuadElem>],
) -> ((u64, u64), Vec<EllPoint<QuadElem>>) {
    let order = pts.len() as u64;
    if order == 1 {
        return ((1, 1), vec![]);
    }
    let ord_of = |p: &EllPoint<QuadElem>| e.point_order(p, order + 1).expect("torsion point");
    let mut max_ord = 1;
    let mut gen2 = EllPoint::Infinity;
    for p in pts {
        let o = ord_of(p);
        if o > max_ord {
            max_ord = o;
            gen2 = p.clone();
        }
    }
    let n2 = max_ord;
    let n1 = order / n2;
    if n1 == 1 {
        return ((1, n2), vec![gen2]);
    }
    // find a complement generator of order n1
    let cyclic: Vec<EllPoint<QuadElem>> =
        (0..n2).map(|k| e.scalar_mul(k, &gen2)).collect();
    for p in pts {
        if ord_of(p) == n1 {
            // independent iff the only common element of <p> and <gen2> is O
            let sub: Vec<EllPoint<QuadElem>> = (0..n1).map(|k| e.scalar_mul(k, p)).collect();
            let meet = sub.iter().filter(|q| cyclic.contains(q)).count();
            if meet == 1 {
                return ((n1, n2), vec![p.clone(), gen2]);
            }
        }
    }
    // fall back: report orders even if no clean complement was found
    ((n1, n2), vec![gen2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn x015() -> EllCurve<Rational> {
        EllCurve::from_ints([0, 41, 0, 400, 0]).unwrap()
    }

    #[test]
    fn division_poly_matches_group_law() {
        // on y^2 = x^3 + 41x^2 + 400x, psi_n(P) = 0 iff nP = 0
        let e = x015();
        let (a, b, c) = b_model(&e);
        for n in [2usize, 3, 4, 5, 8] {
            let w = torsion_x_poly(n, &a, &b, &c);
            // the known 4-torsion point (20, 180)
            let p = EllPoint::Affine(rat_int(20), rat_int(180));
            let is_root = w.eval(&rat_int(20)).is_zero();
            let kills = e.scalar_mul(n as u64, &p).is_infinity();
            assert_eq!(is_root, kills, "n = {n}");
        }
    }

    #[test]
    fn x015_torsion_over_q() {
        let out = torsion(&x015(), 0).unwrap();
        assert!(out.is_conclusive());
        let g = out.group();
        assert_eq!(g.structure, (2, 4));
        assert_eq!(g.points.len(), 8);
        assert_eq!(g.bound, 8);
    }

    #[test]
    fn x015_torsion_over_qi() {
        let out = torsion(&x015(), -1).unwrap();
        assert!(out.is_conclusive());
        let g = out.group();
        assert_eq!(g.points.len(), 16);
        assert_eq!(g.structure, (4, 4));
    }

    #[test]
    fn x015_no_growth_over_qm7() {
        let out = torsion(&x015(), -7).unwrap();
        assert!(out.is_conclusive());
        let g = out.group();
        assert_eq!(g.points.len(), 8);
        assert_eq!(g.structure, (2, 4));
        assert_eq!(g.bound, 8);
    }

    #[test]
    fn torsion_45a2() {
        let e = EllCurve::<Rational>::from_ints([1, -1, 0, -45, -104]).unwrap();
        let out = torsion(&e, 0).unwrap();
        assert!(out.is_conclusive());
        assert_eq!(out.group().structure, (2, 2));
    }

    #[test]
    fn torsion_225a1_trivial() {
        let e = EllCurve::<Rational>::from_ints([0, 0, -1, 0, 1]).unwrap();
        let out = torsion(&e, 0).unwrap();
        assert!(out.is_conclusive());
        assert_eq!(out.group().structure, (1, 1));
        assert_eq!(out.group().points.len(), 1);
    }
}
