//! Exact arithmetic for explicit modular-curve computations: quadratic
//! fields, finite fields, polynomial identities, GL2(F_p) subgroup theory,
//! a catalogue of curve models, and point/divisor arithmetic on curves of
//! genus 1, 2 and 3.

pub mod ring;
pub mod rational;
pub mod bipoly;
pub mod catalogue;
pub mod conic;
pub mod counting;
pub mod elliptic;
pub mod factor;
pub mod fq;
pub mod gl2;
pub mod hyper;
pub mod lpoly;
pub mod poly;
pub mod quad;
pub mod torsion;

pub use bipoly::{BiPoly, TriForm};
pub use fq::Fq;
pub use poly::Poly;
pub use quad::QuadElem;
pub use rational::Rational;
pub use ring::{Field, Ring};

/// Univariate polynomials over Q.
pub type QPoly = Poly<Rational>;
/// Univariate polynomials over a quadratic field.
pub type KPoly = Poly<QuadElem>;
/// Univariate polynomials over F_{p^k}.
pub type FqPoly = Poly<Fq>;
/// Bivariate polynomials over Q.
pub type QBiPoly = BiPoly<Rational>;
