//! The catalogue of explicit curve models: loading, eager validation, point
//! membership, involutions, fibre polynomials and fixed loci.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Deserialize;
use thiserror::Error;

use crate::bipoly::{BiPoly, TriForm};
use crate::elliptic::EllCurve;
use crate::fq::Fq;
use crate::poly::Poly;
use crate::quad::QuadElem;
use crate::rational::{parse_rational, Rational};
use crate::ring::{Field, Ring};
use crate::{QBiPoly, QPoly};

pub const CATALOGUE_TOML: &str = include_str!("../data/catalogue.toml");

#[derive(Debug, Error)]
pub enum CatalogueError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("entry {entry}: {field}: {message}")]
    Invalid { entry: String, field: String, message: String },
    #[error("no catalogue entry labelled {0}")]
    NoSuchLabel(String),
    #[error("point has wrong coordinate arity for the model kind")]
    WrongArity,
    #[error("involution map is undefined on the curve (denominator vanishes identically)")]
    InvalidMap,
    #[error("zero polynomial input")]
    Degenerate,
}

fn invalid(entry: &str, field: &str, message: impl Into<String>) -> CatalogueError {
    CatalogueError::Invalid { entry: entry.into(), field: field.into(), message: message.into() }
}

/// A j-map on a P^1 model: numerator/denominator, coprime.
#[derive(Debug, Clone)]
pub struct JMap {
    pub num: QPoly,
    pub den: QPoly,
    pub label: String,
}

impl JMap {
    /// Map degree: max of numerator and denominator degrees.
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.degree().unwrap_or(0))
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

#[derive(Debug, Clone)]
pub enum ModelKind {
    /// P^1 with a j-map, optionally the j-map of the Fricke partner.
    P1WithJ { jmap: JMap, dual_jmap: Option<JMap> },
    /// y^2 = q(x) with deg q = 2 (genus 0 double cover).
    Conic { rhs: QPoly },
    /// y^2 = q(x), deg q = 4, smooth in P(1,2,1).
    WeightedQuartic { rhs: QPoly },
    /// y^2 = f(x), deg f = 6.
    Hyperelliptic { rhs: QPoly },
    /// F(x, y) = 0 of total degree 4, smooth projectively.
    PlaneQuartic { affine: QBiPoly },
    /// Long Weierstrass model.
    Weierstrass { curve: EllCurve<Rational> },
}

#[derive(Debug, Clone)]
pub enum InvolutionKind {
    Hyperelliptic,
    /// x -> (a x + b) / (c x + d).
    Moebius { m: [[Rational; 2]; 2] },
    /// Weighted-projective substitution with weights (1, 2, 1).
    Weighted { comp_x: Vec<(Rational, u32, u32, u32)>, comp_y: Vec<(Rational, u32, u32, u32)>, comp_z: Vec<(Rational, u32, u32, u32)> },
    /// Projective-linear map of P^2.
    PlaneLinear { m: [[Rational; 3]; 3] },
}

#[derive(Debug, Clone)]
pub struct InvolutionSpec {
    pub name: String,
    pub kind: InvolutionKind,
}

#[derive(Debug, Clone)]
pub struct CuratedPoint {
    pub tag: String,
    pub x: QuadElem,
    pub y: QuadElem,
    /// None means the affine chart z = 1.
    pub z: Option<QuadElem>,
}

#[derive(Debug, Clone)]
pub struct CuratedDivisor {
    pub tag: String,
    pub cited_order: Option<u64>,
    pub terms: Vec<(i64, String)>,
}

#[derive(Debug, Clone)]
pub struct CurveEntry {
    pub label: String,
    pub genus: u32,
    pub model: ModelKind,
    pub involutions: Vec<InvolutionSpec>,
    pub points: Vec<CuratedPoint>,
    pub divisors: Vec<CuratedDivisor>,
    pub cited_rank: Option<i64>,
    pub cited_mw: Option<String>,
    pub cited_torsion: Option<String>,
    pub torsion_growth_fields: Vec<i64>,
    pub cremona: Option<String>,
    pub jacobian_label: Option<String>,
    pub covers: Option<(String, u32)>,
    pub provenance: String,
}

#[derive(Debug, Clone)]
pub struct ReferenceCurve {
    pub label: String,
    pub curve: EllCurve<Rational>,
    pub modular_label: Option<String>,
    pub cited_rank: Option<i64>,
    pub provenance: String,
}

#[derive(Debug, Clone)]
pub struct Catalogue {
    pub curves: Vec<CurveEntry>,
    pub references: Vec<ReferenceCurve>,
}

impl Catalogue {
    pub fn curve(&self, label: &str) -> Result<&CurveEntry, CatalogueError> {
        self.curves
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| CatalogueError::NoSuchLabel(label.into()))
    }

    pub fn reference(&self, label: &str) -> Result<&ReferenceCurve, CatalogueError> {
        self.references
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| CatalogueError::NoSuchLabel(label.into()))
    }
}

impl CurveEntry {
    pub fn point(&self, tag: &str) -> Result<&CuratedPoint, CatalogueError> {
        self.points
            .iter()
            .find(|p| p.tag == tag)
            .ok_or_else(|| CatalogueError::NoSuchLabel(format!("{}:{}", self.label, tag)))
    }

    pub fn divisor(&self, tag: &str) -> Result<&CuratedDivisor, CatalogueError> {
        self.divisors
            .iter()
            .find(|p| p.tag == tag)
            .ok_or_else(|| CatalogueError::NoSuchLabel(format!("{}:{}", self.label, tag)))
    }

    pub fn jmap(&self) -> Option<&JMap> {
        match &self.model {
            ModelKind::P1WithJ { jmap, .. } => Some(jmap),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// raw TOML schema

#[derive(Deserialize)]
struct RawCatalogue {
    #[allow(dead_code)]
    schema: u32,
    #[serde(default)]
    curve: Vec<RawCurve>,
    #[serde(default)]
    reference_curve: Vec<RawReference>,
}

#[derive(Deserialize)]
struct RawCurve {
    label: String,
    kind: String,
    genus: u32,
    #[serde(default)]
    jmap_num: Vec<String>,
    #[serde(default)]
    jmap_den: Vec<String>,
    #[serde(default)]
    dual_jmap_num: Vec<String>,
    #[serde(default)]
    dual_jmap_den: Vec<String>,
    #[serde(default)]
    rhs: Vec<String>,
    #[serde(default)]
    quartic: Vec<RawTerm>,
    #[serde(default)]
    ainvs: Vec<String>,
    #[serde(default)]
    involution: Vec<RawInvolution>,
    #[serde(default)]
    point: Vec<RawPoint>,
    #[serde(default)]
    divisor: Vec<RawDivisor>,
    cited_rank: Option<i64>,
    cited_mw: Option<String>,
    cited_torsion: Option<String>,
    #[serde(default)]
    cited_torsion_bound: Option<String>,
    #[serde(default)]
    torsion_growth_fields: Vec<i64>,
    cremona: Option<String>,
    jacobian_label: Option<String>,
    covers: Option<RawCovers>,
    provenance: String,
    #[serde(default)]
    #[allow(dead_code)]
    rank_provenance: Option<String>,
    #[serde(default)]
    #[allow(dead_code)]
    growth_provenance: Option<String>,
}

#[derive(Deserialize)]
struct RawCovers {
    base: String,
    coordinate_power: u32,
}

#[derive(Deserialize)]
struct RawTerm {
    c: String,
    x: u32,
    y: u32,
    #[serde(default)]
    z: u32,
}

#[derive(Deserialize)]
struct RawInvolution {
    name: String,
    kind: String,
    #[serde(default)]
    matrix: Vec<Vec<String>>,
    #[serde(default)]
    comp_x: Vec<RawTerm>,
    #[serde(default)]
    comp_y: Vec<RawTerm>,
    #[serde(default)]
    comp_z: Vec<RawTerm>,
}

#[derive(Deserialize)]
struct RawCoord {
    r: String,
    #[serde(default)]
    s: Option<String>,
    #[serde(default)]
    d: Option<i64>,
}

#[derive(Deserialize)]
struct RawPoint {
    tag: String,
    x: RawCoord,
    y: RawCoord,
    #[serde(default)]
    z: Option<RawCoord>,
}

#[derive(Deserialize)]
struct RawDivisor {
    tag: String,
    cited_order: Option<u64>,
    terms: Vec<RawDivisorTerm>,
}

#[derive(Deserialize)]
struct RawDivisorTerm {
    mult: i64,
    point: String,
}

#[derive(Deserialize)]
struct RawReference {
    label: String,
    ainvs: Vec<String>,
    modular_label: Option<String>,
    cited_rank: Option<i64>,
    #[serde(default)]
    #[allow(dead_code)]
    cited_mw: Option<String>,
    provenance: String,
}

fn parse_poly(entry: &str, field: &str, strings: &[String]) -> Result<QPoly, CatalogueError> {
    let mut coeffs = Vec::with_capacity(strings.len());
    for s in strings {
        coeffs.push(
            parse_rational(s).ok_or_else(|| invalid(entry, field, format!("bad rational {s:?}")))?,
        );
    }
    Ok(Poly::new(coeffs))
}

fn parse_coord(entry: &str, field: &str, raw: &RawCoord) -> Result<QuadElem, CatalogueError> {
    let r = parse_rational(&raw.r).ok_or_else(|| invalid(entry, field, "bad rational part"))?;
    match (&raw.s, raw.d) {
        (None, None) => Ok(QuadElem::from_rational(r)),
        (Some(s), Some(d)) => {
            let s = parse_rational(s).ok_or_else(|| invalid(entry, field, "bad surd part"))?;
            Ok(QuadElem::new(r, s, d))
        }
        _ => Err(invalid(entry, field, "surd coordinate needs both s and d")),
    }
}

fn parse_terms(entry: &str, field: &str, raw: &[RawTerm]) -> Result<Vec<(Rational, u32, u32, u32)>, CatalogueError> {
    raw.iter()
        .map(|t| {
            let c = parse_rational(&t.c).ok_or_else(|| invalid(entry, field, "bad coefficient"))?;
            Ok((c, t.x, t.y, t.z))
        })
        .collect()
}

/// Parse and eagerly validate a catalogue file.
pub fn load_catalogue_from_str(text: &str) -> Result<Catalogue, CatalogueError> {
    let raw: RawCatalogue = toml::from_str(text).map_err(|e| CatalogueError::Parse(e.to_string()))?;
    let mut curves = Vec::new();
    for rc in &raw.curve {
        curves.push(convert_curve(rc)?);
    }
    let mut references = Vec::new();
    for rr in &raw.reference_curve {
        let mut ai = [0i64; 5];
        if rr.ainvs.len() != 5 {
            return Err(invalid(&rr.label, "ainvs", "need 5 coefficients"));
        }
        for (i, s) in rr.ainvs.iter().enumerate() {
            ai[i] = s
                .parse()
                .map_err(|_| invalid(&rr.label, "ainvs", "integer coefficients required"))?;
        }
        let curve = EllCurve::from_ints(ai)
            .map_err(|e| invalid(&rr.label, "ainvs", e.to_string()))?;
        references.push(ReferenceCurve {
            label: rr.label.clone(),
            curve,
            modular_label: rr.modular_label.clone(),
            cited_rank: rr.cited_rank,
            provenance: rr.provenance.clone(),
        });
    }
    let cat = Catalogue { curves, references };
    validate(&cat)?;
    Ok(cat)
}

pub fn load_builtin_catalogue() -> Result<Catalogue, CatalogueError> {
    load_catalogue_from_str(CATALOGUE_TOML)
}

fn convert_curve(rc: &RawCurve) -> Result<CurveEntry, CatalogueError> {
    let entry = rc.label.as_str();
    let model = match rc.kind.as_str() {
        "p1j" => {
            let num = parse_poly(entry, "jmap_num", &rc.jmap_num)?;
            let den = parse_poly(entry, "jmap_den", &rc.jmap_den)?;
            let jmap = JMap { num, den, label: rc.label.clone() };
            let dual_jmap = if rc.dual_jmap_num.is_empty() {
                None
            } else {
                Some(JMap {
                    num: parse_poly(entry, "dual_jmap_num", &rc.dual_jmap_num)?,
                    den: parse_poly(entry, "dual_jmap_den", &rc.dual_jmap_den)?,
                    label: format!("{} (Fricke partner)", rc.label),
                })
            };
            ModelKind::P1WithJ { jmap, dual_jmap }
        }
        "conic" => ModelKind::Conic { rhs: parse_poly(entry, "rhs", &rc.rhs)? },
        "weighted_quartic" => ModelKind::WeightedQuartic { rhs: parse_poly(entry, "rhs", &rc.rhs)? },
        "hyperelliptic" => ModelKind::Hyperelliptic { rhs: parse_poly(entry, "rhs", &rc.rhs)? },
        "plane_quartic" => {
            let terms = parse_terms(entry, "quartic", &rc.quartic)?;
            let affine = BiPoly::new(terms.into_iter().map(|(c, i, j, _)| ((i, j), c)));
            ModelKind::PlaneQuartic { affine }
        }
        "weierstrass" => {
            let coeffs = parse_poly(entry, "ainvs", &rc.ainvs)?;
            if rc.ainvs.len() != 5 {
                return Err(invalid(entry, "ainvs", "need exactly a1, a2, a3, a4, a6"));
            }
            let curve = EllCurve::new(
                coeffs.coeff(0),
                coeffs.coeff(1),
                coeffs.coeff(2),
                coeffs.coeff(3),
                coeffs.coeff(4),
            )
            .map_err(|e| invalid(entry, "ainvs", e.to_string()))?;
            ModelKind::Weierstrass { curve }
        }
        other => return Err(invalid(entry, "kind", format!("unknown kind {other:?}"))),
    };

    let mut involutions = Vec::new();
    for ri in &rc.involution {
        let kind = match ri.kind.as_str() {
            "hyperelliptic" => InvolutionKind::Hyperelliptic,
            "moebius" => {
                let mut m = [[Rational::zero(), Rational::zero()], [Rational::zero(), Rational::zero()]];
                for i in 0..2 {
                    for j in 0..2 {
                        m[i][j] = parse_rational(&ri.matrix[i][j])
                            .ok_or_else(|| invalid(entry, "involution.matrix", "bad entry"))?;
                    }
                }
                InvolutionKind::Moebius { m }
            }
            "weighted" => InvolutionKind::Weighted {
                comp_x: parse_terms(entry, "comp_x", &ri.comp_x)?,
                comp_y: parse_terms(entry, "comp_y", &ri.comp_y)?,
                comp_z: parse_terms(entry, "comp_z", &ri.comp_z)?,
            },
            "plane_linear" => {
                let mut m: [[Rational; 3]; 3] = Default::default();
                for i in 0..3 {
                    for j in 0..3 {
                        m[i][j] = parse_rational(&ri.matrix[i][j])
                            .ok_or_else(|| invalid(entry, "involution.matrix", "bad entry"))?;
                    }
                }
                InvolutionKind::PlaneLinear { m }
            }
            other => return Err(invalid(entry, "involution.kind", format!("unknown kind {other:?}"))),
        };
        involutions.push(InvolutionSpec { name: ri.name.clone(), kind });
    }

    let mut points = Vec::new();
    for rp in &rc.point {
        let z = match &rp.z {
            None => None,
            Some(c) => Some(parse_coord(entry, "point.z", c)?),
        };
        points.push(CuratedPoint {
            tag: rp.tag.clone(),
            x: parse_coord(entry, "point.x", &rp.x)?,
            y: parse_coord(entry, "point.y", &rp.y)?,
            z,
        });
    }

    let divisors = rc
        .divisor
        .iter()
        .map(|rd| CuratedDivisor {
            tag: rd.tag.clone(),
            cited_order: rd.cited_order,
            terms: rd.terms.iter().map(|t| (t.mult, t.point.clone())).collect(),
        })
        .collect();

    Ok(CurveEntry {
        label: rc.label.clone(),
        genus: rc.genus,
        model,
        involutions,
        points,
        divisors,
        cited_rank: rc.cited_rank,
        cited_mw: rc.cited_mw.clone(),
        cited_torsion: rc.cited_torsion.clone().or(rc.cited_torsion_bound.clone()),
        torsion_growth_fields: rc.torsion_growth_fields.clone(),
        cremona: rc.cremona.clone(),
        jacobian_label: rc.jacobian_label.clone(),
        covers: rc.covers.as_ref().map(|c| (c.base.clone(), c.coordinate_power)),
        provenance: rc.provenance.clone(),
    })
}

// ---------------------------------------------------------------------------
// validation

fn validate(cat: &Catalogue) -> Result<(), CatalogueError> {
    for c in &cat.curves {
        let entry = c.label.as_str();
        match &c.model {
            ModelKind::P1WithJ { jmap, dual_jmap } => {
                if jmap.den.is_zero() {
                    return Err(invalid(entry, "jmap", "denominator identically zero"));
                }
                if jmap.num.gcd(&jmap.den).deg() != 0 {
                    return Err(invalid(entry, "jmap", "numerator and denominator share a factor"));
                }
                if let Some(d) = dual_jmap {
                    if d.num.gcd(&d.den).deg() != 0 {
                        return Err(invalid(entry, "dual_jmap", "not coprime"));
                    }
                }
            }
            ModelKind::Conic { rhs } => {
                if rhs.degree() != Some(2) || !rhs.is_squarefree() {
                    return Err(invalid(entry, "rhs", "need a squarefree quadratic"));
                }
            }
            ModelKind::WeightedQuartic { rhs } => {
                if rhs.degree() != Some(4) || !rhs.is_squarefree() {
                    return Err(invalid(entry, "rhs", "need a squarefree quartic"));
                }
            }
            ModelKind::Hyperelliptic { rhs } => {
                if rhs.degree() != Some(6) || !rhs.is_squarefree() {
                    return Err(invalid(entry, "rhs", "need a squarefree sextic"));
                }
            }
            ModelKind::PlaneQuartic { affine } => {
                if affine.total_degree() != Some(4) {
                    return Err(invalid(entry, "quartic", "total degree must be 4"));
                }
                plane_quartic_smooth(affine)
                    .map_err(|m| invalid(entry, "quartic", m))?;
                if c.genus != 3 {
                    return Err(invalid(entry, "genus", "smooth plane quartic has genus 3"));
                }
            }
            ModelKind::Weierstrass { curve } => {
                if curve.disc().is_zero() {
                    return Err(invalid(entry, "ainvs", "singular model"));
                }
            }
        }
        for inv in &c.involutions {
            if !involution_check(&c.model, inv).map_err(|e| invalid(entry, "involution", e.to_string()))? {
                return Err(invalid(entry, "involution", format!("{} fails the involution check", inv.name)));
            }
        }
        for p in &c.points {
            if !on_curve(&c.model, p).map_err(|e| invalid(entry, "point", e.to_string()))? {
                return Err(invalid(entry, "point", format!("{} does not satisfy the model", p.tag)));
            }
        }
        for d in &c.divisors {
            let mut deg = 0i64;
            for (m, tag) in &d.terms {
                c.point(tag).map_err(|_| invalid(entry, "divisor", format!("unknown point {tag}")))?;
                deg += m;
            }
            if deg != 0 {
                return Err(invalid(entry, "divisor", format!("{} has nonzero degree", d.tag)));
            }
        }
    }
    Ok(())
}

/// Smoothness of a plane quartic over Q and over F_p for p in {7, 11, 13, 43}.
/// Smoothness of one good reduction already implies smoothness of the
/// rational curve; the rational resultant cascade is kept as an extra check.
fn plane_quartic_smooth(affine: &QBiPoly) -> Result<(), String> {
    let f = TriForm::homogenize(affine, 4);
    // char-0 cascade
    if !partials_coprime(&f) {
        return Err("partial derivatives share a projective zero over Q-bar".into());
    }
    for p in [7u64, 11, 13, 43] {
        let fp = f.map_coeffs(|c| {
            Fq::from_rational(p, 1, c).expect("good prime for the quartic")
        });
        if !partials_coprime(&fp) {
            return Err(format!("singular reduction mod {p}"));
        }
        // direct check over the rational points of P^2(F_p) as well
        let [px, py, pz] = fp.partials();
        let elems = Fq::all_elements(p, 1);
        let one = Fq::from_int(p, 1, 1);
        let zero = Fq::from_int(p, 1, 0);
        let mut reps: Vec<[Fq; 3]> = Vec::new();
        for a in &elems {
            for b in &elems {
                reps.push([*a, *b, one]);
            }
        }
        for a in &elems {
            reps.push([*a, one, zero]);
        }
        reps.push([one, zero, zero]);
        for v in reps {
            if fp.eval(&v[0], &v[1], &v[2]).is_zero()
                && px.eval(&v[0], &v[1], &v[2]).is_zero()
                && py.eval(&v[0], &v[1], &v[2]).is_zero()
                && pz.eval(&v[0], &v[1], &v[2]).is_zero()
            {
                return Err(format!("singular point mod {p}"));
            }
        }
    }
    Ok(())
}

/// Smoothness of the mod-p reduction alone (used by the counting code to
/// reject bad primes).
pub fn plane_quartic_smooth_mod_p(affine: &QBiPoly, p: u64) -> bool {
    let f = TriForm::homogenize(affine, 4);
    let all_reduce = f.terms().all(|(_, c)| Fq::from_rational(p, 1, c).is_some());
    if !all_reduce {
        return false;
    }
    let fp = f.map_coeffs(|c| Fq::from_rational(p, 1, c).unwrap());
    partials_coprime(&fp)
}

/// No common projective zero of the three partials, decided by resultants:
/// in each affine chart, eliminate one variable from the pairs of partials
/// and ask for a trivial gcd.
fn partials_coprime<R: Field + 'static>(f: &TriForm<R>) -> bool {
    let [px, py, pz] = f.partials();
    // charts: z = 1 eliminating y; y = 1 eliminating x; x = 1 eliminating z
    for (chart, elim) in [(2usize, 1usize), (1, 0), (0, 2)] {
        let polys: Vec<Poly<Poly<R>>> = [&px, &py, &pz]
            .iter()
            .map(|g| nested_in_chart(g, chart, elim))
            .collect();
        let r01 = resultant(&polys[0], &polys[1]);
        let r02 = resultant(&polys[0], &polys[2]);
        let r12 = resultant(&polys[1], &polys[2]);
        let g = r01.gcd(&r02).gcd(&r12);
        if g.is_zero() || g.deg() > 0 {
            return false;
        }
    }
    true
}

/// Dehomogenize at `chart` = 1 and organize as a polynomial in variable
/// `elim` with coefficients in the remaining variable.
fn nested_in_chart<R: Field>(f: &TriForm<R>, chart: usize, elim: usize) -> Poly<Poly<R>> {
    let mut rows: BTreeMap<u32, BTreeMap<u32, R>> = BTreeMap::new();
    for (&(i, j, k), c) in f.terms() {
        let e = [i, j, k];
        let eelim = e[elim];
        let rest = e[3 - chart - elim];
        rows.entry(eelim).or_default().insert(rest, c.clone());
    }
    let max_e = rows.keys().max().copied().unwrap_or(0);
    let mut out: Vec<Poly<R>> = Vec::new();
    for e in 0..=max_e {
        let coeffs = rows.remove(&e).unwrap_or_default();
        let deg = coeffs.keys().max().copied().unwrap_or(0);
        let mut v = vec![R::zero(); deg as usize + 1];
        for (d, c) in coeffs {
            v[d as usize] = c;
        }
        out.push(Poly::new(v));
    }
    Poly::new(out)
}

// Poly<R> is itself a ring, so resultants can be taken with polynomial
// coefficients.
impl<R: Field> Ring for Poly<R> {
    fn from_i64(n: i64) -> Self {
        Poly::constant(R::from_i64(n))
    }
}

/// Sylvester resultant of two polynomials over the (polynomial) ring S,
/// by fraction-free Gaussian elimination.
pub fn resultant<R: Field>(f: &Poly<Poly<R>>, g: &Poly<Poly<R>>) -> Poly<R> {
    if f.is_zero() || g.is_zero() {
        return Poly::zero_poly();
    }
    let m = f.deg();
    let n = g.deg();
    if m == 0 {
        return pow_poly(&f.coeff(0), n);
    }
    if n == 0 {
        return pow_poly(&g.coeff(0), m);
    }
    let size = m + n;
    let mut mat: Vec<Vec<Poly<R>>> = vec![vec![Poly::zero_poly(); size]; size];
    for (row, item) in mat.iter_mut().enumerate().take(n) {
        for k in 0..=m {
            item[row + k] = f.coeff(m - k);
        }
    }
    for row in 0..m {
        for k in 0..=n {
            mat[n + row][row + k] = g.coeff(n - k);
        }
    }
    bareiss_determinant(mat)
}

fn pow_poly<R: Field>(f: &Poly<R>, e: usize) -> Poly<R> {
    let mut acc = Poly::constant(R::one());
    for _ in 0..e {
        acc = acc * f.clone();
    }
    acc
}

/// Fraction-free determinant over an integral domain with exact division.
fn bareiss_determinant<R: Field>(mut m: Vec<Vec<Poly<R>>>) -> Poly<R> {
    let n = m.len();
    if n == 0 {
        return Poly::constant(R::one());
    }
    let mut sign = false;
    let mut prev = Poly::constant(R::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = ((k + 1)..n).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero_poly();
            };
            m.swap(k, swap);
            sign = !sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let t = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = Poly::zero_poly();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

// ---------------------------------------------------------------------------
// membership, involutions, fibres, fixed loci

/// Exact membership of a curated point on a model. Projective coordinates
/// use the natural homogenization of the model kind.
pub fn on_curve(model: &ModelKind, pt: &CuratedPoint) -> Result<bool, CatalogueError> {
    let one = QuadElem::one();
    let z = pt.z.clone().unwrap_or_else(|| one.clone());
    match model {
        ModelKind::P1WithJ { .. } => Ok(true),
        ModelKind::Conic { rhs } | ModelKind::WeightedQuartic { rhs } => {
            // y^2 = rhs-form(x, z) in P(1, 2, 1), y of weight 2
            let d = rhs.deg();
            let weight = if matches!(model, ModelKind::Conic { .. }) { 2 } else { 4 };
            if d > weight {
                return Err(CatalogueError::WrongArity);
            }
            let rhs_k = rhs.map_coeffs(|c| QuadElem::from_rational(c.clone()));
            let mut acc = QuadElem::zero();
            for (i, c) in rhs_k.coeffs().iter().enumerate() {
                let mut t = c.clone();
                for _ in 0..i {
                    t = t * pt.x.clone();
                }
                for _ in 0..(weight - i) {
                    t = t * z.clone();
                }
                acc = acc + t;
            }
            Ok(pt.y.clone() * pt.y.clone() == acc)
        }
        ModelKind::Hyperelliptic { rhs } => {
            if pt.z.is_some() {
                return Err(CatalogueError::WrongArity);
            }
            let rhs_k = rhs.map_coeffs(|c| QuadElem::from_rational(c.clone()));
            Ok(pt.y.clone() * pt.y.clone() == rhs_k.eval(&pt.x))
        }
        ModelKind::PlaneQuartic { affine } => {
            let f = TriForm::homogenize(affine, 4).map_coeffs(|c| QuadElem::from_rational(c.clone()));
            Ok(f.eval(&pt.x, &pt.y, &z).is_zero())
        }
        ModelKind::Weierstrass { curve } => {
            if pt.z.is_some() {
                return Err(CatalogueError::WrongArity);
            }
            let ek = EllCurve {
                a1: QuadElem::from_rational(curve.a1.clone()),
                a2: QuadElem::from_rational(curve.a2.clone()),
                a3: QuadElem::from_rational(curve.a3.clone()),
                a4: QuadElem::from_rational(curve.a4.clone()),
                a6: QuadElem::from_rational(curve.a6.clone()),
            };
            Ok(ek.contains(&crate::elliptic::EllPoint::Affine(pt.x.clone(), pt.y.clone())))
        }
    }
}

/// inv maps the curve to itself and squares to the identity.
pub fn involution_check(model: &ModelKind, inv: &InvolutionSpec) -> Result<bool, CatalogueError> {
    match (&inv.kind, model) {
        (InvolutionKind::Hyperelliptic, ModelKind::Hyperelliptic { .. }) => Ok(true),
        (InvolutionKind::Moebius { m }, ModelKind::P1WithJ { jmap, dual_jmap }) => {
            let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
            if det.is_zero() {
                return Err(CatalogueError::InvalidMap);
            }
            // involution: M^2 must be scalar
            let sq = [
                &m[0][0] * &m[0][0] + &m[0][1] * &m[1][0],
                &m[0][0] * &m[0][1] + &m[0][1] * &m[1][1],
                &m[1][0] * &m[0][0] + &m[1][1] * &m[1][0],
                &m[1][0] * &m[0][1] + &m[1][1] * &m[1][1],
            ];
            if !(sq[1].is_zero() && sq[2].is_zero() && sq[0] == sq[3]) {
                return Ok(false);
            }
            // when the Fricke partner map is catalogued, j(w(x)) must equal it
            if let Some(dual) = dual_jmap {
                let (cn, cd) = compose_rational(&jmap.num, &jmap.den, m);
                // cn/cd == dual.num/dual.den
                if cn * dual.den.clone() != cd * dual.num.clone() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (InvolutionKind::Weighted { comp_x, comp_y, comp_z }, ModelKind::WeightedQuartic { rhs })
        | (InvolutionKind::Weighted { comp_x, comp_y, comp_z }, ModelKind::Conic { rhs }) => {
            let weight = if matches!(model, ModelKind::Conic { .. }) { 2u32 } else { 4 };
            // F = y^2 - R(x, z), weighted degree 2*weight... y has weight 2.
            // check F(inv) is a constant multiple of F modulo nothing: the
            // substitution must send y^2 - R to lambda * (y^2 - R) exactly.
            let wx = weighted_poly(comp_x);
            let wy = weighted_poly(comp_y);
            let wz = weighted_poly(comp_z);
            // y' = wy must be y-linear: c * y * monomial or similar with weight 2
            // substitute into y^2: wy^2; into R(x, z): R(wx, wz)
            let y2 = wy.clone() * wy.clone();
            let rsub = weighted_rhs_subst(rhs, &wx, &wz, weight);
            let fsub = y2 - rsub;
            // original F as weighted form: y^2 - R(x, z)
            let y_form = WeightedPoly::var_y();
            let forig = y_form.clone() * y_form - weighted_rhs_subst(rhs, &WeightedPoly::var_x(), &WeightedPoly::var_z(), weight);
            if !fsub.proportional_to(&forig) {
                return Ok(false);
            }
            // involutivity: substituting twice must give (l x, l^2 y, l z)
            let xx = wx.substitute(&wx, &wy, &wz);
            let yy = wy.substitute(&wx, &wy, &wz);
            let zz = wz.substitute(&wx, &wy, &wz);
            Ok(weighted_is_scaled_identity(&xx, &yy, &zz))
        }
        (InvolutionKind::PlaneLinear { m }, ModelKind::PlaneQuartic { affine }) => {
            // M^2 scalar and F(Mv) proportional to F(v)
            let mut sq = [[Rational::zero(), Rational::zero(), Rational::zero()],
                [Rational::zero(), Rational::zero(), Rational::zero()],
                [Rational::zero(), Rational::zero(), Rational::zero()]];
            for i in 0..3 {
                for j in 0..3 {
                    for (k, item) in m.iter().enumerate() {
                        sq[i][j] = &sq[i][j] + &m[i][k] * &item[j];
                    }
                }
            }
            let diag = sq[0][0].clone();
            for (i, row) in sq.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if i == j && *v != diag {
                        return Ok(false);
                    }
                    if i != j && !v.is_zero() {
                        return Ok(false);
                    }
                }
            }
            if diag.is_zero() {
                return Err(CatalogueError::InvalidMap);
            }
            let f = TriForm::homogenize(affine, 4);
            let sub = f.substitute_linear(m);
            Ok(sub.proportional_to(&f))
        }
        _ => Err(CatalogueError::InvalidMap),
    }
}

/// j((a x + b)/(c x + d)) as a fraction of polynomials.
fn compose_rational(num: &QPoly, den: &QPoly, m: &[[Rational; 2]; 2]) -> (QPoly, QPoly) {
    let a: QPoly = Poly::new(vec![m[0][1].clone(), m[0][0].clone()]); // a x + b as poly b + a x
    let c: QPoly = Poly::new(vec![m[1][1].clone(), m[1][0].clone()]);
    let deg = num.deg().max(den.degree().unwrap_or(0));
    let subst = |f: &QPoly| -> QPoly {
        // f(a/c) * c^deg
        let mut acc = QPoly::zero_poly();
        for (i, coeff) in f.coeffs().iter().enumerate() {
            let mut t = QPoly::constant(coeff.clone());
            for _ in 0..i {
                t = t * a.clone();
            }
            for _ in 0..(deg - i) {
                t = t * c.clone();
            }
            acc = acc + t;
        }
        acc
    };
    (subst(num), subst(den))
}

/// Weighted-homogeneous polynomial in (x, y, z) with weights (1, 2, 1),
/// used only for involution checking on double-cover models.
#[derive(Debug, Clone, PartialEq)]
struct WeightedPoly {
    terms: BTreeMap<(u32, u32, u32), Rational>,
}

impl WeightedPoly {
    fn new(terms: impl IntoIterator<Item = ((u32, u32, u32), Rational)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            let e = map.entry(k).or_insert_with(Rational::zero);
            *e = &*e + &c;
            if e.is_zero() {
                map.remove(&k);
            }
        }
        WeightedPoly { terms: map }
    }

    fn var_x() -> Self {
        WeightedPoly::new([((1, 0, 0), Rational::one())])
    }

    fn var_y() -> Self {
        WeightedPoly::new([((0, 1, 0), Rational::one())])
    }

    fn var_z() -> Self {
        WeightedPoly::new([((0, 0, 1), Rational::one())])
    }

    fn substitute(&self, wx: &WeightedPoly, wy: &WeightedPoly, wz: &WeightedPoly) -> WeightedPoly {
        let mut acc = WeightedPoly::new([]);
        for (&(i, j, k), c) in &self.terms {
            let mut t = WeightedPoly::new([((0, 0, 0), c.clone())]);
            for _ in 0..i {
                t = t * wx.clone();
            }
            for _ in 0..j {
                t = t * wy.clone();
            }
            for _ in 0..k {
                t = t * wz.clone();
            }
            acc = acc + t;
        }
        acc
    }

    fn proportional_to(&self, other: &WeightedPoly) -> bool {
        if self.terms.is_empty() || other.terms.is_empty() {
            return self.terms.is_empty() && other.terms.is_empty();
        }
        let (k0, c0) = self.terms.iter().next().unwrap();
        let Some(d0) = other.terms.get(k0) else { return false };
        let lambda = d0 / c0;
        other.terms.len() == self.terms.len()
            && self.terms.iter().all(|(k, c)| other.terms.get(k) == Some(&(&lambda * c)))
    }
}

impl std::ops::Add for WeightedPoly {
    type Output = WeightedPoly;
    fn add(self, rhs: Self) -> Self {
        WeightedPoly::new(self.terms.into_iter().chain(rhs.terms))
    }
}

impl std::ops::Sub for WeightedPoly {
    type Output = WeightedPoly;
    fn sub(self, rhs: Self) -> Self {
        WeightedPoly::new(
            self.terms
                .into_iter()
                .chain(rhs.terms.into_iter().map(|(k, c)| (k, -c))),
        )
    }
}

impl std::ops::Mul for WeightedPoly {
    type Output = WeightedPoly;
    fn mul(self, rhs: Self) -> Self {
        let mut out: Vec<((u32, u32, u32), Rational)> = Vec::new();
        for (&(a, b, c), x) in &self.terms {
            for (&(d, e, f), y) in &rhs.terms {
                out.push(((a + d, b + e, c + f), x * y));
            }
        }
        WeightedPoly::new(out)
    }
}

fn weighted_poly(terms: &[(Rational, u32, u32, u32)]) -> WeightedPoly {
    WeightedPoly::new(terms.iter().map(|(c, i, j, k)| ((*i, *j, *k), c.clone())))
}

/// R(x, z) with x -> wx, z -> wz, weighted-homogenized to the given degree.
fn weighted_rhs_subst(rhs: &QPoly, wx: &WeightedPoly, wz: &WeightedPoly, weight: u32) -> WeightedPoly {
    let mut acc = WeightedPoly::new([]);
    for (i, c) in rhs.coeffs().iter().enumerate() {
        let mut t = WeightedPoly::new([((0, 0, 0), c.clone())]);
        for _ in 0..i {
            t = t * wx.clone();
        }
        for _ in 0..(weight as usize - i) {
            t = t * wz.clone();
        }
        acc = acc + t;
    }
    acc
}

/// Base P^1 polynomial of a weighted component involving only x and z (z = 1).
fn weighted_to_base(terms: &[(Rational, u32, u32, u32)]) -> QPoly {
    let mut acc = QPoly::zero_poly();
    for (c, i, j, _k) in terms {
        assert_eq!(*j, 0, "base component must not involve y");
        acc = acc + QPoly::monomial(c.clone(), *i as usize);
    }
    acc
}

fn weighted_is_scaled_identity(xx: &WeightedPoly, yy: &WeightedPoly, zz: &WeightedPoly) -> bool {
    // (xx, yy, zz) = (l x, l^2 y, l z) for a nonzero rational l
    let get = |w: &WeightedPoly, k: (u32, u32, u32)| -> Option<Rational> {
        if w.terms.len() != 1 {
            return None;
        }
        w.terms.get(&k).cloned()
    };
    let (Some(lx), Some(ly), Some(lz)) = (get(xx, (1, 0, 0)), get(yy, (0, 1, 0)), get(zz, (0, 0, 1))) else {
        return false;
    };
    !lx.is_zero() && ly == &lx * &lx && lz == lx
}

/// numerator(jmap) - j0 * denominator(jmap).
pub fn fibre_polynomial(jmap: &JMap, j0: &Rational) -> QPoly {
    jmap.num.clone() - jmap.den.scale(j0)
}

/// Exact divisibility candidate | fibre.
pub fn ramification_divides(fibre: &QPoly, candidate: &QPoly) -> Result<bool, CatalogueError> {
    if candidate.is_zero() {
        return Err(CatalogueError::Degenerate);
    }
    Ok(candidate.divides(fibre))
}

/// Description of a fixed locus: either the whole curve (identity maps) or a
/// finite set described by minimal polynomials for the x-coordinates plus an
/// infinity analysis.
#[derive(Debug, Clone)]
pub enum FixedLocus {
    WholeCurve,
    Finite {
        /// (irreducible factor over Q of the fixed-x polynomial, multiplicity);
        /// each geometric fixed point contributes deg(factor) roots.
        x_factors: Vec<(QPoly, usize)>,
        /// number of geometric fixed points away from infinity
        affine_count: usize,
        /// number of fixed points at infinity
        infinity_count: usize,
        note: String,
    },
}

/// Fixed points of a catalogued involution.
pub fn fixed_points(model: &ModelKind, inv: &InvolutionSpec) -> Result<FixedLocus, CatalogueError> {
    match (&inv.kind, model) {
        (InvolutionKind::Hyperelliptic, ModelKind::Hyperelliptic { rhs }) => {
            // fixed points are (x, 0) for roots of the sextic; at infinity the
            // two points are swapped exactly when the leading coefficient is a
            // square (two rational branches y ~ +-sqrt(lc) x^3)
            let factors = factor_into_irreducibles(rhs);
            let affine_count = rhs.deg();
            let lc = rhs.leading();
            let lc_square = crate::rational::rational_sqrt(&lc).is_some();
            let infinity_count = 0; // two points at infinity, swapped by y -> -y
            let note = if lc_square {
                "leading coefficient 9 is a square: two points at infinity, swapped by the involution".to_string()
            } else {
                "one place of degree two at infinity".to_string()
            };
            Ok(FixedLocus::Finite { x_factors: factors, affine_count, infinity_count, note })
        }
        (InvolutionKind::PlaneLinear { m }, ModelKind::PlaneQuartic { affine }) => {
            if is_identity_matrix(m) {
                return Ok(FixedLocus::WholeCurve);
            }
            // fixed locus of the projective map = union of eigenspaces;
            // intersect each with the quartic
            let f = TriForm::homogenize(affine, 4);
            let (lines, points) = eigen_loci(m);
            let mut x_factors = Vec::new();
            let mut affine_count = 0usize;
            let mut infinity_count = 0usize;
            for line in lines {
                // parametrize the line and restrict the quartic
                let restricted = restrict_to_line(&f, &line);
                if restricted.is_zero() {
                    return Ok(FixedLocus::WholeCurve);
                }
                affine_count += restricted.deg();
                // roots at infinity of the parametrization correspond to the
                // degree drop from 4
                infinity_count += 4 - restricted.deg();
                x_factors.extend(factor_into_irreducibles(&restricted));
            }
            for pt in points {
                if f.eval(&pt[0], &pt[1], &pt[2]).is_zero() {
                    affine_count += 1;
                    x_factors.push((Poly::one(), 1));
                }
            }
            Ok(FixedLocus::Finite {
                x_factors,
                affine_count,
                infinity_count,
                note: "fixed locus of a projective-linear involution".into(),
            })
        }
        (InvolutionKind::Moebius { m }, ModelKind::P1WithJ { .. }) => {
            // fixed x: c x^2 + (d - a) x - b = 0
            let quad = QPoly::new(vec![-m[0][1].clone(), m[1][1].clone() - m[0][0].clone(), m[1][0].clone()]);
            if quad.is_zero() {
                return Ok(FixedLocus::WholeCurve);
            }
            let count = quad.deg();
            Ok(FixedLocus::Finite {
                x_factors: factor_into_irreducibles(&quad),
                affine_count: count,
                infinity_count: 2 - count,
                note: "fixed points of a Moebius involution of P^1".into(),
            })
        }
        (InvolutionKind::Weighted { comp_x, comp_z, .. }, ModelKind::WeightedQuartic { rhs }) => {
            // fixed x-coordinates on the base P^1: wx(x,1)/wz(x,1) = x
            let wx = weighted_to_base(comp_x);
            let wz = weighted_to_base(comp_z);
            let fix = wx - wz * QPoly::x();
            if fix.is_zero() {
                return Ok(FixedLocus::WholeCurve);
            }
            let mut affine = 0;
            let mut factors = Vec::new();
            for (f, mult) in factor_into_irreducibles(&fix) {
                // each base fixed point carries up to two curve points (y and -y)
                affine += f.deg() * mult;
                factors.push((f, mult));
            }
            let _ = rhs;
            Ok(FixedLocus::Finite {
                x_factors: factors,
                affine_count: affine,
                infinity_count: 0,
                note: "base fixed locus; each x gives the fibre y^2 = q(x)".into(),
            })
        }
        _ => Err(CatalogueError::InvalidMap),
    }
}

fn is_identity_matrix(m: &[[Rational; 3]; 3]) -> bool {
    let d = m[0][0].clone();
    if d.is_zero() {
        return false;
    }
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i == j && *v != d {
                return false;
            }
            if i != j && !v.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Eigenspace decomposition of a projective involution matrix (M^2 = c I):
/// eigenvalues +-sqrt(c); returns fixed lines (2-dimensional eigenspaces)
/// and isolated fixed points (1-dimensional ones). Only rational square c
/// is supported, which covers the catalogued involutions.
fn eigen_loci(m: &[[Rational; 3]; 3]) -> (Vec<[Rational; 3]>, Vec<[Rational; 3]>) {
    // c = (M^2)_{00}
    let mut c = Rational::zero();
    for k in 0..3 {
        c = &c + &m[0][k] * &m[k][0];
    }
    let s = crate::rational::rational_sqrt(&c).expect("rational eigenvalues for catalogued involutions");
    let mut lines = Vec::new();
    let mut points = Vec::new();
    for lambda in [s.clone(), -s] {
        // kernel of M - lambda
        let mut a: Vec<Vec<Rational>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        if i == j {
                            &m[i][j] - &lambda
                        } else {
                            m[i][j].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        // row-reduce
        let mut rank = 0usize;
        for col in 0..3 {
            if let Some(piv) = (rank..3).find(|&r| !a[r][col].is_zero()) {
                a.swap(rank, piv);
                let inv = a[rank][col].inv();
                for x in a[rank].iter_mut() {
                    *x = &*x * &inv;
                }
                for r in 0..3 {
                    if r != rank && !a[r][col].is_zero() {
                        let f = a[r][col].clone();
                        for cidx in 0..3 {
                            a[r][cidx] = &a[r][cidx] - &f * &a[rank][cidx];
                        }
                    }
                }
                rank += 1;
            }
        }
        match 3 - rank {
            0 => {}
            1 => {
                // a single eigenvector: solve the reduced system
                points.push(kernel_vector(&a));
            }
            2 => {
                // eigenplane: the single nontrivial row is the line's equation
                let row = a.iter().find(|r| r.iter().any(|x| !x.is_zero())).unwrap();
                lines.push([row[0].clone(), row[1].clone(), row[2].clone()]);
            }
            _ => unreachable!("involutions are not scalar here"),
        }
    }
    (lines, points)
}

fn kernel_vector(a: &[Vec<Rational>]) -> [Rational; 3] {
    // reduced row echelon with rank 2: find the free column
    let mut pivot_cols = Vec::new();
    for row in a {
        if let Some(c) = row.iter().position(|x| x.is_one()) {
            if row.iter().enumerate().all(|(j, x)| j >= c || x.is_zero()) {
                pivot_cols.push(c);
            }
        }
    }
    let free = (0..3).find(|c| !pivot_cols.contains(c)).unwrap();
    let mut v = [Rational::zero(), Rational::zero(), Rational::zero()];
    v[free] = Rational::one();
    for row in a {
        if let Some(c) = row.iter().position(|x| !x.is_zero()) {
            if c != free {
                v[c] = -row[free].clone();
            }
        }
    }
    v
}

/// Restrict a ternary form to the line a x + b y + c z = 0, parametrized
/// rationally; returns a univariate polynomial whose roots are the affine
/// intersection points.
fn restrict_to_line(f: &TriForm<Rational>, line: &[Rational; 3]) -> QPoly {
    // choose a variable with nonzero coefficient to eliminate
    let (elim, others) = if !line[1].is_zero() {
        (1usize, [0usize, 2])
    } else if !line[0].is_zero() {
        (0, [1, 2])
    } else {
        (2, [0, 1])
    };
    // param: v_others[0] = t, v_others[1] = 1, v_elim = -(a*t + c)/b
    let b = line[elim].clone();
    let at = -(line[others[0]].clone()) / &b;
    let c0 = -(line[others[1]].clone()) / &b;
    let subst_elim: QPoly = Poly::new(vec![c0, at]);
    let t: QPoly = Poly::x();
    let one = QPoly::one();
    let mut acc = QPoly::zero_poly();
    for (&(i, j, k), coeff) in f.terms() {
        let exps = [i, j, k];
        let mut term = QPoly::constant(coeff.clone());
        for (v, e) in exps.iter().enumerate() {
            let base = if v == elim {
                subst_elim.clone()
            } else if v == others[0] {
                t.clone()
            } else {
                one.clone()
            };
            for _ in 0..*e {
                term = term * base.clone();
            }
        }
        acc = acc + term;
    }
    acc
}

/// Irreducible factors over Q with multiplicity, found with the bounded
/// machinery (rational roots, quadratic factors, and whatever remains).
pub fn factor_into_irreducibles(f: &QPoly) -> Vec<(QPoly, usize)> {
    let mut out: Vec<(QPoly, usize)> = Vec::new();
    let mut rem = f.monic();
    if let Ok(roots) = crate::factor::rational_roots(f) {
        let mut uniq = roots.clone();
        uniq.dedup();
        for r in uniq {
            let lin = QPoly::new(vec![-r.clone(), Rational::one()]);
            let mut mult = 0;
            while lin.divides(&rem) && rem.deg() >= 1 {
                rem = rem.exact_div(&lin);
                mult += 1;
                if rem.deg() == 0 {
                    break;
                }
            }
            out.push((lin, mult));
        }
    }
    if rem.deg() >= 2 {
        if let Ok(quads) = crate::factor::monic_quadratic_factors(&rem) {
            for ((b, c), mult) in quads {
                let q = QPoly::new(vec![c, b, Rational::one()]);
                for _ in 0..mult {
                    rem = rem.exact_div(&q);
                }
                out.push((q, mult));
            }
        }
    }
    if rem.deg() >= 1 {
        // remaining cofactor, treated as one block (irreducible for every
        // catalogued case: a cubic or quartic with no rational roots or
        // quadratic factors)
        out.push((rem, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn builtin_catalogue_loads() {
        let cat = load_builtin_catalogue().unwrap();
        assert_eq!(cat.curves.len(), 13);
        assert_eq!(cat.references.len(), 4);
        // 6 j-map curves, the conic, 4 composite models, 2 Legendre forms
        let p1 = cat.curves.iter().filter(|c| matches!(c.model, ModelKind::P1WithJ { .. })).count();
        assert_eq!(p1, 6);
    }

    #[test]
    fn malformed_entries_rejected() {
        // non-squarefree sextic
        let text = r#"
schema = 1
[[curve]]
label = "bad"
kind = "hyperelliptic"
genus = 2
rhs = ["0", "0", "1", "2", "1", "0", "1"]
provenance = "test"
"#;
        // x^6 + x^4 + 2x^3 + x^2 = x^2 (x^2+x+... ) -- not squarefree
        assert!(load_catalogue_from_str(text).is_err());
        // singular plane quartic (x^4 = 0 union-like: x^2 y^2)
        let text2 = r#"
schema = 1
[[curve]]
label = "bad2"
kind = "plane_quartic"
genus = 3
quartic = [ { c = "1", x = 2, y = 2 }, { c = "-1", x = 0, y = 0 } ]
provenance = "test"
"#;
        assert!(load_catalogue_from_str(text2).is_err());
    }

    #[test]
    fn fibre_polynomials() {
        let cat = load_builtin_catalogue().unwrap();
        let ns3 = cat.curve("X(ns3)").unwrap().jmap().unwrap();
        let fib = fibre_polynomial(ns3, &rat_int(1728));
        assert_eq!(fib, QPoly::from_ints(&[-1728, 0, 0, 1]));
    }

    #[test]
    fn composite_jmap_is_substitution() {
        let cat = load_builtin_catalogue().unwrap();
        let b5 = cat.curve("X(b5)").unwrap().jmap().unwrap();
        let comp = cat.curve("X(ns3,b5)").unwrap().jmap().unwrap();
        assert_eq!(b5.num.compose_xn(3), comp.num);
        assert_eq!(b5.den.compose_xn(3), comp.den);
        assert_eq!(b5.degree(), 6);
        let ns5 = cat.curve("X(ns5)").unwrap().jmap().unwrap();
        assert_eq!(ns5.degree(), 10);
    }

    #[test]
    fn involutions_pass() {
        let cat = load_builtin_catalogue().unwrap();
        for label in ["X(b5)", "X(ns3,b5)", "X(ns3o,b5)", "X(b3,ns5)", "C1", "C2"] {
            let c = cat.curve(label).unwrap();
            assert!(!c.involutions.is_empty(), "{label} should have an involution");
            for inv in &c.involutions {
                assert!(involution_check(&c.model, inv).unwrap(), "{label} {}", inv.name);
            }
        }
    }

    #[test]
    fn broken_involution_detected() {
        let cat = load_builtin_catalogue().unwrap();
        let c1 = cat.curve("C1").unwrap();
        // (x, y) -> (x, -y) does not preserve C1
        let bad = InvolutionSpec {
            name: "bad".into(),
            kind: InvolutionKind::PlaneLinear {
                m: [
                    [rat_int(1), rat_int(0), rat_int(0)],
                    [rat_int(0), rat_int(-1), rat_int(0)],
                    [rat_int(0), rat_int(0), rat_int(1)],
                ],
            },
        };
        assert!(!involution_check(&c1.model, &bad).unwrap());
    }

    #[test]
    fn ramification_of_1728_fibre()  {
        let cat = load_builtin_catalogue().unwrap();
        let comp = cat.curve("X(ns3,b5)").unwrap().jmap().unwrap();
        let fib = fibre_polynomial(comp, &rat_int(1728));
        assert_eq!(fib.deg(), 18);
        let quartic = QPoly::from_ints(&[25, 10, -1, 2, 1]);
        assert!(ramification_divides(&fib, &quartic).unwrap());
        let sq = QPoly::from_ints(&[-25, -5, 1]);
        assert!(ramification_divides(&fib, &(sq.clone() * sq)).unwrap());
        assert!(!ramification_divides(&fib, &QPoly::from_ints(&[1, 0, 1])).unwrap());
        assert!(ramification_divides(&fib, &QPoly::zero_poly()).is_err());
    }

    #[test]
    fn hyperelliptic_fixed_points() {
        let cat = load_builtin_catalogue().unwrap();
        let g2 = cat.curve("X(b3,ns5)").unwrap();
        let FixedLocus::Finite { affine_count, infinity_count, x_factors, .. } =
            fixed_points(&g2.model, &g2.involutions[0]).unwrap()
        else {
            panic!("finite locus expected")
        };
        assert_eq!(affine_count, 6);
        assert_eq!(infinity_count, 0);
        // 3 linear factors and the irreducible cubic
        let linear = x_factors.iter().filter(|(f, _)| f.deg() == 1).count();
        let cubic = x_factors.iter().filter(|(f, _)| f.deg() == 3).count();
        assert_eq!((linear, cubic), (3, 1));
    }

    #[test]
    fn w1_fixed_points_on_line() {
        let cat = load_builtin_catalogue().unwrap();
        let c1 = cat.curve("C1").unwrap();
        let FixedLocus::Finite { affine_count, .. } =
            fixed_points(&c1.model, &c1.involutions[0]).unwrap()
        else {
            panic!()
        };
        assert!(affine_count <= 4);
    }

    #[test]
    fn curated_points_on_curves() {
        let cat = load_builtin_catalogue().unwrap();
        for c in &cat.curves {
            for p in &c.points {
                assert!(on_curve(&c.model, p).unwrap(), "{}:{}", c.label, p.tag);
            }
        }
        // and a trivial Weierstrass example: (-1, 0) on y^2 - y = x^3 + 1
        let e225 = cat.reference("225A1").unwrap();
        let pt = CuratedPoint {
            tag: "t".into(),
            x: QuadElem::from_i64(-1),
            y: QuadElem::from_i64(0),
            z: None,
        };
        let model = ModelKind::Weierstrass { curve: e225.curve.clone() };
        assert!(on_curve(&model, &pt).unwrap());
    }

    #[test]
    fn fricke_stabilizes_ramification_quartic() {
        // x^4 + 2x^3 - x^2 + 10x + 25 under x -> 5/x scales by 25/x^4
        let q = QPoly::from_ints(&[25, 10, -1, 2, 1]);
        let rev: QPoly = q.reverse(); // x^4 q(1/x)
        // q(5/x) * x^4 = sum q_i 5^i x^{4-i}
        let mut subst = QPoly::zero_poly();
        for (i, c) in q.coeffs().iter().enumerate() {
            subst = subst + QPoly::monomial(c * rat_int(5).pow(i as i32), 4 - i);
        }
        let _ = rev;
        assert_eq!(subst, q.scale(&rat_int(25)));
    }

    #[test]
    fn resultant_detects_common_factor() {
        // f = (t - 1)(t - x), g = (t - x)(t + 2) share t - x
        let x = QPoly::x();
        let one = QPoly::one();
        let f: Poly<QPoly> = Poly::new(vec![x.clone(), -(x.clone() + one.clone()), one.clone()]);
        let g: Poly<QPoly> =
            Poly::new(vec![x.scale(&rat_int(-2)), QPoly::from_ints(&[2]) - x.clone(), one.clone()]);
        let r = resultant(&f, &g);
        // common root t = x for every x, so the resultant vanishes identically
        assert!(r.is_zero());
        // coprime pair has a nonzero resultant
        let h: Poly<QPoly> = Poly::new(vec![one.clone(), one.clone()]);
        assert!(!resultant(&f, &h).is_zero());
    }
}
