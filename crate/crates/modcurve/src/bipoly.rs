//! Sparse bivariate polynomials and homogeneous ternary forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::Poly;
use crate::ring::{Field, Ring};

/// sum c_{ij} x^i y^j with no zero coefficients stored.
#[derive(Clone, PartialEq)]
pub struct BiPoly<R: Ring> {
    terms: BTreeMap<(u32, u32), R>,
}

impl<R: Ring> BiPoly<R> {
    pub fn new(terms: impl IntoIterator<Item = ((u32, u32), R)>) -> Self {
        let mut map = BTreeMap::new();
        for ((i, j), c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = map.entry((i, j)).or_insert_with(R::zero);
            *entry = entry.clone() + c;
            if entry.is_zero() {
                map.remove(&(i, j));
            }
        }
        BiPoly { terms: map }
    }

    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        BiPoly::new(terms.iter().map(|&(i, j, c)| ((i, j), R::from_i64(c))))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &R)> {
        self.terms.iter()
    }

    pub fn constant(c: R) -> Self {
        BiPoly::new([((0, 0), c)])
    }

    pub fn var_x() -> Self {
        BiPoly::new([((1, 0), R::one())])
    }

    pub fn var_y() -> Self {
        BiPoly::new([((0, 1), R::one())])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn eval(&self, x: &R, y: &R) -> R {
        let mut acc = R::zero();
        for (&(i, j), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..i {
                t = t * x.clone();
            }
            for _ in 0..j {
                t = t * y.clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Coefficients as a polynomial in y: entry d is the x-polynomial on y^d.
    pub fn as_poly_in_y(&self) -> Vec<Poly<R>> {
        let dy = self.degree_y().map_or(0, |d| d as usize);
        let dx = self.degree_x().map_or(0, |d| d as usize);
        let mut rows = vec![vec![R::zero(); dx + 1]; dy + 1];
        for (&(i, j), c) in &self.terms {
            rows[j as usize][i as usize] = c.clone();
        }
        rows.into_iter().map(Poly::new).collect()
    }

    /// Substitute y = g(x), producing a univariate polynomial in x.
    pub fn substitute_y(&self, g: &Poly<R>) -> Poly<R> {
        let mut acc = Poly::zero_poly();
        for (d, coeff) in self.as_poly_in_y().into_iter().enumerate() {
            let mut t = coeff;
            for _ in 0..d {
                t = t * g.clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute univariate polynomials in a new variable for both x and y.
    pub fn substitute(&self, gx: &Poly<R>, gy: &Poly<R>) -> Poly<R> {
        let mut acc = Poly::zero_poly();
        for (&(i, j), c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for _ in 0..i {
                t = t * gx.clone();
            }
            for _ in 0..j {
                t = t * gy.clone();
            }
            acc = acc + t;
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> BiPoly<S> {
        BiPoly::new(self.terms.iter().map(|(&k, c)| (k, f(c))))
    }

    pub fn partial_x(&self) -> Self {
        BiPoly::new(self.terms.iter().filter(|(&(i, _), _)| i > 0).map(|(&(i, j), c)| {
            ((i - 1, j), c.clone() * R::from_i64(i as i64))
        }))
    }

    pub fn partial_y(&self) -> Self {
        BiPoly::new(self.terms.iter().filter(|(&(_, j), _)| j > 0).map(|(&(i, j), c)| {
            ((i, j - 1), c.clone() * R::from_i64(j as i64))
        }))
    }
}

impl<R: Ring> fmt::Debug for BiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})")?;
            if i > 0 {
                write!(f, "*x^{i}")?;
            }
            if j > 0 {
                write!(f, "*y^{j}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl<R: Ring> Add for BiPoly<R> {
    type Output = BiPoly<R>;
    fn add(self, rhs: Self) -> BiPoly<R> {
        BiPoly::new(self.terms.into_iter().chain(rhs.terms))
    }
}

impl<R: Ring> Sub for BiPoly<R> {
    type Output = BiPoly<R>;
    fn sub(self, rhs: Self) -> BiPoly<R> {
        self + (-rhs)
    }
}

impl<R: Ring> Neg for BiPoly<R> {
    type Output = BiPoly<R>;
    fn neg(self) -> BiPoly<R> {
        BiPoly { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<R: Ring> Mul for BiPoly<R> {
    type Output = BiPoly<R>;
    fn mul(self, rhs: Self) -> BiPoly<R> {
        let mut out: BTreeMap<(u32, u32), R> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                let k = (i1 + i2, j1 + j2);
                let entry = out.entry(k).or_insert_with(R::zero);
                *entry = entry.clone() + c1.clone() * c2.clone();
            }
        }
        BiPoly::new(out)
    }
}

impl<R: Ring> Zero for BiPoly<R> {
    fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> One for BiPoly<R> {
    fn one() -> Self {
        BiPoly::constant(R::one())
    }
}

/// Homogeneous trivariate form of fixed degree (plane curves and their
/// linear substitutions).
#[derive(Clone, PartialEq)]
pub struct TriForm<R: Ring> {
    /// (i, j, k) -> coefficient of x^i y^j z^k, all i+j+k equal.
    terms: BTreeMap<(u32, u32, u32), R>,
    degree: u32,
}

impl<R: Ring> TriForm<R> {
    pub fn new(degree: u32, terms: impl IntoIterator<Item = ((u32, u32, u32), R)>) -> Self {
        let mut map = BTreeMap::new();
        for ((i, j, k), c) in terms {
            assert_eq!(i + j + k, degree, "non-homogeneous term");
            if c.is_zero() {
                continue;
            }
            let e = map.entry((i, j, k)).or_insert_with(R::zero);
            *e = e.clone() + c;
            if e.is_zero() {
                map.remove(&(i, j, k));
            }
        }
        TriForm { terms: map, degree }
    }

    /// Homogenize an affine bivariate polynomial to the given degree.
    pub fn homogenize(f: &BiPoly<R>, degree: u32) -> Self {
        let terms = f
            .terms()
            .map(|(&(i, j), c)| {
                assert!(i + j <= degree);
                ((i, j, degree - i - j), c.clone())
            })
            .collect::<Vec<_>>();
        TriForm::new(degree, terms)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &R)> {
        self.terms.iter()
    }

    pub fn eval(&self, x: &R, y: &R, z: &R) -> R {
        let mut acc = R::zero();
        for (&(i, j, k), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..i {
                t = t * x.clone();
            }
            for _ in 0..j {
                t = t * y.clone();
            }
            for _ in 0..k {
                t = t * z.clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Dehomogenize at z = 1.
    pub fn dehomogenize(&self) -> BiPoly<R> {
        BiPoly::new(self.terms.iter().map(|(&(i, j, _), c)| ((i, j), c.clone())))
    }

    pub fn partials(&self) -> [TriForm<R>; 3] {
        let d = self.degree - 1;
        let px = TriForm::new(
            d,
            self.terms.iter().filter(|(&(i, _, _), _)| i > 0).map(|(&(i, j, k), c)| {
                ((i - 1, j, k), c.clone() * R::from_i64(i as i64))
            }).collect::<Vec<_>>(),
        );
        let py = TriForm::new(
            d,
            self.terms.iter().filter(|(&(_, j, _), _)| j > 0).map(|(&(i, j, k), c)| {
                ((i, j - 1, k), c.clone() * R::from_i64(j as i64))
            }).collect::<Vec<_>>(),
        );
        let pz = TriForm::new(
            d,
            self.terms.iter().filter(|(&(_, _, k), _)| k > 0).map(|(&(i, j, k), c)| {
                ((i, j, k - 1), c.clone() * R::from_i64(k as i64))
            }).collect::<Vec<_>>(),
        );
        [px, py, pz]
    }

    /// Substitute the linear change of variables given by a 3x3 matrix:
    /// x -> m[0][0] x + m[0][1] y + m[0][2] z, etc.
    pub fn substitute_linear(&self, m: &[[R; 3]; 3]) -> TriForm<R> {
        // expand via products of the three linear forms
        let lin: Vec<TriForm<R>> = (0..3)
            .map(|r| {
                TriForm::new(
                    1,
                    [
                        ((1, 0, 0), m[r][0].clone()),
                        ((0, 1, 0), m[r][1].clone()),
                        ((0, 0, 1), m[r][2].clone()),
                    ],
                )
            })
            .collect();
        let mut acc = TriForm::new(self.degree, std::iter::empty());
        for (&(i, j, k), c) in &self.terms {
            let mut t = TriForm::new(0, [((0, 0, 0), c.clone())]);
            for _ in 0..i {
                t = t.mul_form(&lin[0]);
            }
            for _ in 0..j {
                t = t.mul_form(&lin[1]);
            }
            for _ in 0..k {
                t = t.mul_form(&lin[2]);
            }
            acc = acc.add_form(&t);
        }
        acc
    }

    fn mul_form(&self, other: &TriForm<R>) -> TriForm<R> {
        let mut out: BTreeMap<(u32, u32, u32), R> = BTreeMap::new();
        for (&(a, b, c), x) in &self.terms {
            for (&(d, e, f), y) in &other.terms {
                let k = (a + d, b + e, c + f);
                let entry = out.entry(k).or_insert_with(R::zero);
                *entry = entry.clone() + x.clone() * y.clone();
            }
        }
        TriForm::new(self.degree + other.degree, out)
    }

    fn add_form(&self, other: &TriForm<R>) -> TriForm<R> {
        assert_eq!(self.degree, other.degree);
        TriForm::new(
            self.degree,
            self.terms
                .iter()
                .map(|(&k, c)| (k, c.clone()))
                .chain(other.terms.iter().map(|(&k, c)| (k, c.clone())))
                .collect::<Vec<_>>(),
        )
    }

    pub fn scale(&self, c: &R) -> TriForm<R> {
        TriForm::new(
            self.degree,
            self.terms.iter().map(|(&k, t)| (k, t.clone() * c.clone())).collect::<Vec<_>>(),
        )
    }

    pub fn sub_form(&self, other: &TriForm<R>) -> TriForm<R> {
        self.add_form(&other.scale(&(-R::one())))
    }

    pub fn is_zero_form(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> TriForm<S> {
        TriForm::new(self.degree, self.terms.iter().map(|(&k, c)| (k, f(c))).collect::<Vec<_>>())
    }

    /// Is `other` a constant multiple of `self`?
    pub fn proportional_to(&self, other: &TriForm<R>) -> bool
    where
        R: Field,
    {
        if self.is_zero_form() || other.is_zero_form() {
            return self.is_zero_form() == other.is_zero_form();
        }
        let (k0, c0) = self.terms.iter().next().unwrap();
        let Some(d0) = other.terms.get(k0) else {
            return false;
        };
        let lambda = d0.clone() * c0.inv();
        self.scale(&lambda) == *other
    }
}

impl<R: Ring> fmt::Debug for TriForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j, k), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})x^{i}y^{j}z^{k}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    type QB = BiPoly<Rational>;

    #[test]
    fn substitution() {
        // f = x^2 + y^2; y = x + 1 gives 2x^2 + 2x + 1
        let f = QB::from_int_terms(&[(2, 0, 1), (0, 2, 1)]);
        let g = f.substitute_y(&Poly::from_ints(&[1, 1]));
        assert_eq!(g, Poly::from_ints(&[1, 2, 2]));
    }

    #[test]
    fn homogenize_eval() {
        let f = QB::from_int_terms(&[(1, 1, 1), (0, 0, -4)]); // xy - 4
        let h = TriForm::homogenize(&f, 2);
        use crate::rational::rat_int;
        assert_eq!(h.eval(&rat_int(2), &rat_int(2), &rat_int(1)), rat_int(0));
        assert_eq!(h.eval(&rat_int(4), &rat_int(4), &rat_int(2)), rat_int(0));
    }

    #[test]
    fn linear_substitution_involution() {
        // (x, y, z) -> (x, -y-z, z) is an involution
        let f = QB::from_int_terms(&[(2, 0, 1), (1, 1, 3), (0, 1, 1)]);
        let h = TriForm::homogenize(&f, 2);
        let m: [[Rational; 3]; 3] = [
            [Rational::from_i64(1), Rational::from_i64(0), Rational::from_i64(0)],
            [Rational::from_i64(0), Rational::from_i64(-1), Rational::from_i64(-1)],
            [Rational::from_i64(0), Rational::from_i64(0), Rational::from_i64(1)],
        ];
        let h2 = h.substitute_linear(&m).substitute_linear(&m);
        assert_eq!(h, h2);
    }
}
