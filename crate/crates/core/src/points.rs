//! Finite configurations of (possibly fat) points on `X` and their
//! Hilbert functions.
//!
//! A point of multiplicity `mu` imposes, in every degree `D`, the vanishing of
//! all divided-power (Hasse) derivatives of order `< mu` at an affine
//! representative. Each condition is a linear functional on `S_D`, i.e. a
//! vector in `S~_D`; for `mu = 1` it is the evaluation dual of the point.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::apolar::DualElement;
use crate::exactla::{kernel, rank, DegreewiseSubspace, Field, FieldSpec, LinAlgError, Matrix};
use crate::ring::{binomial, DegreeWindow, Exponent, MultiDegree, RingError, Space};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointsError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("block {block} of a point is the zero vector")]
    ZeroBlock { block: usize },
    #[error("point has {got} blocks of sizes {sizes:?}, the space needs {expected:?}")]
    Shape {
        expected: Vec<usize>,
        got: usize,
        sizes: Vec<usize>,
    },
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error(
        "characteristic {characteristic} is too small for multiplicity-{mult} conditions in degree {degree}"
    )]
    CharacteristicTooSmall {
        characteristic: u64,
        mult: u32,
        degree: MultiDegree,
    },
    #[error("the added point already lies in the configuration")]
    PointInSupport,
    #[error("the smaller configuration is not contained in the larger one")]
    NotNested,
    #[error("configuration file: {0}")]
    Parse(String),
}

/// A point of `X` with one homogeneous coordinate vector per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point<F: Field> {
    coords: Vec<Vec<F::Elem>>,
    mult: u32,
}

impl<F: Field> Point<F> {
    pub fn new(field: &F, space: &Space, coords: Vec<Vec<F::Elem>>, mult: u32) -> Result<Self, PointsError> {
        let expected: Vec<usize> = space.factor_dims().iter().map(|a| a + 1).collect();
        let sizes: Vec<usize> = coords.iter().map(|b| b.len()).collect();
        if sizes != expected {
            return Err(PointsError::Shape {
                expected,
                got: coords.len(),
                sizes,
            });
        }
        if let Some(block) = coords.iter().position(|b| b.iter().all(|c| field.is_zero(c))) {
            return Err(PointsError::ZeroBlock { block });
        }
        if mult == 0 {
            return Err(PointsError::ZeroMultiplicity);
        }
        Ok(Point { coords, mult })
    }

    /// Uniformly random coordinates; resampled until no block vanishes.
    pub fn random<R: rand::Rng + ?Sized>(field: &F, space: &Space, rng: &mut R, mult: u32) -> Self {
        let coords = space
            .factor_dims()
            .iter()
            .map(|&a| loop {
                let v: Vec<F::Elem> = (0..=a).map(|_| field.sample(rng)).collect();
                if v.iter().any(|c| !field.is_zero(c)) {
                    break v;
                }
            })
            .collect();
        Point {
            coords,
            mult: mult.max(1),
        }
    }

    pub fn coords(&self) -> &[Vec<F::Elem>] {
        &self.coords
    }

    pub fn mult(&self) -> u32 {
        self.mult
    }

    pub fn with_mult(&self, mult: u32) -> Self {
        Point {
            coords: self.coords.clone(),
            mult,
        }
    }

    fn flat(&self) -> Vec<F::Elem> {
        self.coords.iter().flatten().cloned().collect()
    }

    /// `a^e(p)`.
    pub fn evaluate(&self, field: &F, e: &Exponent) -> F::Elem {
        self.flat()
            .iter()
            .zip(&e.0)
            .fold(field.one(), |acc, (c, &k)| field.mul(&acc, &field.pow(c, k as u64)))
    }

    /// Same point of `X`: blockwise proportional coordinates.
    pub fn same_location(&self, field: &F, other: &Point<F>) -> bool {
        self.coords.len() == other.coords.len()
            && self.coords.iter().zip(&other.coords).all(|(a, b)| {
                a.len() == b.len()
                    && (0..a.len()).all(|i| {
                        (i + 1..a.len()).all(|j| field.mul(&a[i], &b[j]) == field.mul(&a[j], &b[i]))
                    })
            })
    }

    /// Length of the fat point: `C(n + mu - 1, n)` with `n = dim X`.
    pub fn length(&self, space: &Space) -> usize {
        let n = space.dim() as u64;
        binomial(n + self.mult as u64 - 1, n) as usize
    }
}

/// A finite set of points with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration<F: Field> {
    points: Vec<Point<F>>,
}

impl<F: Field> Default for PointConfiguration<F> {
    fn default() -> Self {
        PointConfiguration { points: Vec::new() }
    }
}

impl<F: Field> PointConfiguration<F> {
    pub fn new(points: Vec<Point<F>>) -> Self {
        PointConfiguration { points }
    }

    pub fn random_simple<R: rand::Rng + ?Sized>(field: &F, space: &Space, r: usize, rng: &mut R) -> Self {
        PointConfiguration {
            points: (0..r).map(|_| Point::random(field, space, rng, 1)).collect(),
        }
    }

    pub fn points(&self) -> &[Point<F>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Degree (length) of the subscheme.
    pub fn length(&self, space: &Space) -> usize {
        self.points.iter().map(|p| p.length(space)).sum()
    }

    pub fn with_point(&self, p: Point<F>) -> Self {
        let mut points = self.points.clone();
        points.push(p);
        PointConfiguration { points }
    }

    pub fn contains_location(&self, field: &F, p: &Point<F>) -> bool {
        self.points.iter().any(|q| q.same_location(field, p))
    }

    pub fn to_json(&self, field: &F) -> Value {
        let points: Vec<Value> = self
            .points
            .iter()
            .map(|p| {
                let coords: Vec<Vec<Value>> = p
                    .coords
                    .iter()
                    .map(|b| b.iter().map(|c| scalar_json(field, c)).collect())
                    .collect();
                json!({"coords": coords, "mult": p.mult})
            })
            .collect();
        json!({"field": field.label(), "points": points})
    }

    pub fn from_json(field: &F, space: &Space, value: &Value) -> Result<Self, PointsError> {
        if let Some(tag) = value.get("field") {
            let tag = tag
                .as_str()
                .ok_or_else(|| PointsError::Parse("field tag must be a string".into()))?;
            let spec: FieldSpec = tag.parse()?;
            if spec.to_string() != field.label() {
                return Err(PointsError::Parse(format!(
                    "file is over {spec}, computation is over {}",
                    field.label()
                )));
            }
        }
        let pts = value
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| PointsError::Parse("missing \"points\" array".into()))?;
        let mut points = Vec::with_capacity(pts.len());
        for p in pts {
            let blocks = p
                .get("coords")
                .and_then(Value::as_array)
                .ok_or_else(|| PointsError::Parse("point without \"coords\"".into()))?;
            let mut coords = Vec::with_capacity(blocks.len());
            for b in blocks {
                let entries = b
                    .as_array()
                    .ok_or_else(|| PointsError::Parse("coordinate block must be an array".into()))?;
                coords.push(
                    entries
                        .iter()
                        .map(|c| parse_scalar(field, c))
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            let mult = p.get("mult").and_then(Value::as_u64).unwrap_or(1) as u32;
            points.push(Point::new(field, space, coords, mult)?);
        }
        Ok(PointConfiguration { points })
    }
}

/// The field named in a configuration file, default `p = 2^31 - 1`.
pub fn field_of_json(value: &Value) -> Result<FieldSpec, PointsError> {
    match value.get("field").and_then(Value::as_str) {
        Some(tag) => Ok(tag.parse()?),
        None => Ok(FieldSpec::default()),
    }
}

fn scalar_json<F: Field>(field: &F, c: &F::Elem) -> Value {
    use num_traits::{One, ToPrimitive};
    let (n, d) = field.to_fraction(c);
    match (d.is_one(), n.to_i64()) {
        (true, Some(v)) => json!(v),
        _ => json!(field.format(c)),
    }
}

fn parse_scalar<F: Field>(field: &F, v: &Value) -> Result<F::Elem, PointsError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(PointsError::Parse(format!("bad coordinate {other}"))),
    };
    let (n, d) = crate::exactla::parse_fraction(&text)
        .ok_or_else(|| PointsError::Parse(format!("bad coordinate {text:?}")))?;
    Ok(field.from_fraction(&n, &d)?)
}

/// Counter-based stream: the same `(seed, trial)` always gives the same
/// generator, independent of scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `iota(p)` in degree `L`: the term `x^(J)` carries `a^J(p)`.
pub fn evaluation_dual<F: Field>(
    field: &F,
    space: &Space,
    p: &Point<F>,
    l: &MultiDegree,
) -> Result<DualElement<F>, PointsError> {
    space.check_degree(l)?;
    let terms = space
        .enumerate_monomials(l)
        .into_iter()
        .map(|j| {
            let v = p.evaluate(field, &j);
            (j, v)
        })
        .collect::<Vec<_>>();
    Ok(DualElement::new(field, space, l.clone(), terms).expect("monomials of degree L"))
}

/// All exponents in `m` variables of total degree `< order`.
fn derivative_orders(m: usize, order: u32) -> Vec<Exponent> {
    let mut out = vec![Exponent::zero(m)];
    let mut frontier = vec![Exponent::zero(m)];
    for _ in 1..order {
        let mut next = BTreeSet::new();
        for e in &frontier {
            for v in 0..m {
                next.insert(e.times_variable(v));
            }
        }
        frontier = next.into_iter().collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

/// Rows are the conditions the configuration imposes on `S_D`.
pub fn condition_matrix<F: Field>(
    field: &F,
    space: &Space,
    z: &PointConfiguration<F>,
    d: &MultiDegree,
) -> Result<Matrix<F::Elem>, PointsError> {
    space.check_degree(d)?;
    let mons = space.enumerate_monomials(d);
    let m = space.num_vars();
    let mut rows = Vec::new();
    for p in &z.points {
        if p.mult > 1 {
            let ch = field.characteristic();
            if ch != 0 && ch <= d.total().max(0) as u64 {
                return Err(PointsError::CharacteristicTooSmall {
                    characteristic: ch,
                    mult: p.mult,
                    degree: d.clone(),
                });
            }
        }
        for beta in derivative_orders(m, p.mult) {
            let row = mons
                .iter()
                .map(|j| match j.checked_div(&beta) {
                    None => field.zero(),
                    Some(rest) => {
                        let c = j
                            .0
                            .iter()
                            .zip(&beta.0)
                            .map(|(&a, &b)| binomial(a as u64, b as u64))
                            .fold(field.one(), |acc, c| field.mul(&acc, &field_from_u64(field, c)));
                        field.mul(&c, &p.evaluate(field, &rest))
                    }
                })
                .collect();
            rows.push(row);
        }
    }
    Ok(Matrix::from_rows(mons.len(), rows))
}

fn field_from_u64<F: Field>(field: &F, v: u64) -> F::Elem {
    match i64::try_from(v) {
        Ok(x) => field.from_i64(x),
        Err(_) => {
            let big = num_bigint::BigInt::from(v);
            field
                .from_fraction(&big, &num_bigint::BigInt::from(1))
                .expect("unit denominator")
        }
    }
}

/// `(I_Z)_D`.
pub fn ideal_degree_piece<F: Field>(
    field: &F,
    space: &Space,
    z: &PointConfiguration<F>,
    d: &MultiDegree,
) -> Result<DegreewiseSubspace<F>, PointsError> {
    let m = condition_matrix(field, space, z, d)?;
    Ok(DegreewiseSubspace {
        degree: d.clone(),
        space: kernel(field, &m),
    })
}

/// `h_Z(D) = dim S_D - dim (I_Z)_D`, the rank of the condition matrix.
pub fn hilbert_function_points<F: Field>(
    field: &F,
    space: &Space,
    z: &PointConfiguration<F>,
    d: &MultiDegree,
) -> Result<usize, PointsError> {
    if !d.is_effective() {
        return Ok(0);
    }
    Ok(rank(field, &condition_matrix(field, space, z, d)?))
}

pub fn hilbert_table<F: Field>(
    field: &F,
    space: &Space,
    z: &PointConfiguration<F>,
    window: &DegreeWindow,
) -> Result<Vec<usize>, PointsError> {
    window
        .iter()
        .map(|d| hilbert_function_points(field, space, z, d))
        .collect()
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GenericDegreeRow {
    pub degree: MultiDegree,
    pub dim: usize,
    pub generic: usize,
    pub matching_trials: usize,
    pub min_observed: usize,
    pub max_observed: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GenericHfReport {
    pub space: Space,
    pub field: String,
    pub r: usize,
    pub seed: u64,
    pub trials: usize,
    pub passes: usize,
    pub pass_fraction: f64,
    /// Number of distinct Hilbert functions seen across the trials.
    pub distinct_functions: usize,
    pub degrees: Vec<GenericDegreeRow>,
}

impl GenericHfReport {
    pub fn all_pass(&self) -> bool {
        self.passes == self.trials
    }
}

/// Samples `trials` configurations of `r` random simple points and compares
/// their Hilbert function with `min(r, dim S_D)` on the window.
pub fn check_generic_hf<F: Field>(
    field: &F,
    space: &Space,
    r: usize,
    window: &DegreeWindow,
    trials: usize,
    seed: u64,
) -> Result<GenericHfReport, PointsError> {
    let generic: Vec<usize> = window.iter().map(|d| space.generic_hf(r, d)).collect();
    let tables = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let z = PointConfiguration::random_simple(field, space, r, &mut rng);
            hilbert_table(field, space, &z, window)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let passes = tables.iter().filter(|t| **t == generic).count();
    let distinct: BTreeSet<&Vec<usize>> = tables.iter().collect();
    let degrees = window
        .iter()
        .enumerate()
        .map(|(i, d)| GenericDegreeRow {
            degree: d.clone(),
            dim: space.dim_degree(d),
            generic: generic[i],
            matching_trials: tables.iter().filter(|t| t[i] == generic[i]).count(),
            min_observed: tables.iter().map(|t| t[i]).min().unwrap_or(0),
            max_observed: tables.iter().map(|t| t[i]).max().unwrap_or(0),
        })
        .collect();
    Ok(GenericHfReport {
        space: space.clone(),
        field: field.label(),
        r,
        seed,
        trials,
        passes,
        pass_fraction: if trials == 0 { 1.0 } else { passes as f64 / trials as f64 },
        distinct_functions: distinct.len(),
        degrees,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AddPointRow {
    pub degree: MultiDegree,
    pub dim: usize,
    pub before: usize,
    pub after: usize,
    pub predicted: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AddPointReport {
    pub rows: Vec<AddPointRow>,
    pub holds: bool,
}

/// Checks `h_{Z+p}(D) = min(h_Z(D) + 1, dim S_D)` on the window.
pub fn check_add_point<F: Field>(
    field: &F,
    space: &Space,
    z: &PointConfiguration<F>,
    p: &Point<F>,
    window: &DegreeWindow,
) -> Result<AddPointReport, PointsError> {
    if z.contains_location(field, p) {
        return Err(PointsError::PointInSupport);
    }
    let bigger = z.with_point(p.with_mult(1));
    let mut rows = Vec::with_capacity(window.len());
    for d in window.iter() {
        let dim = space.dim_degree(d);
        let before = hilbert_function_points(field, space, z, d)?;
        let after = hilbert_function_points(field, space, &bigger, d)?;
        let predicted = (before + 1).min(dim);
        rows.push(AddPointRow {
            degree: d.clone(),
            dim,
            before,
            after,
            predicted,
            holds: after == predicted,
        });
    }
    let holds = rows.iter().all(|r| r.holds);
    Ok(AddPointReport { rows, holds })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AddPointTrials {
    pub space: Space,
    pub field: String,
    pub seed: u64,
    pub trials: usize,
    pub max_points: usize,
    pub holding: usize,
}

/// Seeded trials of [`check_add_point`]: trial `t` uses `t mod max_points`
/// random points plus one more random point.
pub fn add_point_trials<F: Field>(
    field: &F,
    space: &Space,
    max_points: usize,
    window: &DegreeWindow,
    trials: usize,
    seed: u64,
) -> Result<AddPointTrials, PointsError> {
    let max_points = max_points.max(1);
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let z = PointConfiguration::random_simple(field, space, t % max_points, &mut rng);
            let p = Point::random(field, space, &mut rng, 1);
            check_add_point(field, space, &z, &p, window).map(|r| r.holds)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AddPointTrials {
        space: space.clone(),
        field: field.label(),
        seed,
        trials,
        max_points,
        holding: outcomes.iter().filter(|&&h| h).count(),
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NestedRow {
    pub degree: MultiDegree,
    pub h_sub: usize,
    pub h_full: usize,
    pub bound: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NestedReport {
    pub sub_length: usize,
    pub full_length: usize,
    pub rows: Vec<NestedRow>,
    pub holds: bool,
}

/// `sub` is contained in `full`: every point of `sub` matches a distinct
/// point of `full` with at least its multiplicity.
pub fn is_nested<F: Field>(field: &F, sub: &PointConfiguration<F>, full: &PointConfiguration<F>) -> bool {
    let mut used = vec![false; full.points.len()];
    for p in &sub.points {
        let hit = full
            .points
            .iter()
            .enumerate()
            .find(|(i, q)| !used[*i] && q.mult >= p.mult && q.same_location(field, p));
        match hit {
            Some((i, _)) => used[i] = true,
            None => return false,
        }
    }
    true
}

/// Checks `h_R(D) <= h_{R'}(D) + (deg R - deg R')` on the window.
pub fn check_nested_inequality<F: Field>(
    field: &F,
    space: &Space,
    sub: &PointConfiguration<F>,
    full: &PointConfiguration<F>,
    window: &DegreeWindow,
) -> Result<NestedReport, PointsError> {
    if !is_nested(field, sub, full) {
        return Err(PointsError::NotNested);
    }
    let sub_length = sub.length(space);
    let full_length = full.length(space);
    let mut rows = Vec::with_capacity(window.len());
    for d in window.iter() {
        let h_sub = hilbert_function_points(field, space, sub, d)?;
        let h_full = hilbert_function_points(field, space, full, d)?;
        let bound = h_sub + (full_length - sub_length);
        rows.push(NestedRow {
            degree: d.clone(),
            h_sub,
            h_full,
            bound,
            holds: h_full <= bound,
        });
    }
    let holds = rows.iter().all(|r| r.holds);
    Ok(NestedReport {
        sub_length,
        full_length,
        rows,
        holds,
    })
}

/// Upper bound on `h_R(D)` for any length-`full_length` scheme `R`
/// containing the computed subscheme `R'`, compared with the generic value.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DefectBoundReport {
    pub space: Space,
    pub field: String,
    pub degree: MultiDegree,
    pub sub_length: usize,
    pub sub_hf: usize,
    pub full_length: usize,
    pub bound: usize,
    pub generic: usize,
    /// `bound < generic`: no such `R` can have the generic Hilbert function.
    pub below_generic: bool,
}

pub fn defect_bound<F: Field>(
    field: &F,
    space: &Space,
    sub: &PointConfiguration<F>,
    full_length: usize,
    d: &MultiDegree,
) -> Result<DefectBoundReport, PointsError> {
    let sub_length = sub.length(space);
    if full_length < sub_length {
        return Err(PointsError::NotNested);
    }
    let sub_hf = hilbert_function_points(field, space, sub, d)?;
    let bound = sub_hf + (full_length - sub_length);
    let generic = space.generic_hf(full_length, d);
    Ok(DefectBoundReport {
        space: space.clone(),
        field: field.label(),
        degree: d.clone(),
        sub_length,
        sub_hf,
        full_length,
        bound,
        generic,
        below_generic: bound < generic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolar::contract;
    use crate::exactla::{PrimeField, Rationals};

    fn deg(v: &[i64]) -> MultiDegree {
        MultiDegree(v.to_vec())
    }

    fn pt<F: Field>(f: &F, s: &Space, coords: &[&[i64]], mult: u32) -> Point<F> {
        Point::new(
            f,
            s,
            coords.iter().map(|b| b.iter().map(|&c| f.from_i64(c)).collect()).collect(),
            mult,
        )
        .unwrap()
    }

    #[test]
    fn evaluation_duals() {
        let f = Rationals;
        let p1 = Space::projective(1);
        let e0 = pt(&f, &p1, &[&[1, 0]], 1);
        let d = evaluation_dual(&f, &p1, &e0, &deg(&[2])).unwrap();
        assert_eq!(d, DualElement::monomial(&f, &p1, Exponent(vec![2, 0])));
        let ones = pt(&f, &p1, &[&[1, 1]], 1);
        let d = evaluation_dual(&f, &p1, &ones, &deg(&[2])).unwrap();
        assert!(d.terms().values().all(|c| *c == f.one()));
        assert_eq!(d.terms().len(), 3);
    }

    #[test]
    fn contraction_of_evaluation_dual_rescales() {
        let f = PrimeField::default();
        let s: Space = "P1xP2".parse().unwrap();
        let mut rng = trial_rng(5, 0);
        let p = Point::random(&f, &s, &mut rng, 1);
        let l = deg(&[3, 2]);
        let full = evaluation_dual(&f, &s, &p, &l).unwrap();
        for theta in s.enumerate_monomials(&deg(&[1, 1])) {
            let lhs = contract(&s, &theta, &full);
            let rhs = evaluation_dual(&f, &s, &p, &deg(&[2, 1]))
                .unwrap()
                .scale(&f, &p.evaluate(&f, &theta));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn simple_point_codimension() {
        let f = Rationals;
        let p2 = Space::projective(2);
        let z = PointConfiguration::new(vec![pt(&f, &p2, &[&[1, 2, 3]], 1)]);
        for d in 0..4 {
            let piece = ideal_degree_piece(&f, &p2, &z, &deg(&[d])).unwrap();
            assert_eq!(piece.codim(), 1);
        }
    }

    #[test]
    fn two_double_points_in_p6() {
        let p6 = Space::projective(6);
        let fp = PrimeField::default();
        let mut rng = trial_rng(1, 0);
        let z = PointConfiguration::new(vec![
            Point::random(&fp, &p6, &mut rng, 2),
            Point::random(&fp, &p6, &mut rng, 2),
        ]);
        assert_eq!(z.length(&p6), 14);
        assert_eq!(hilbert_function_points(&fp, &p6, &z, &deg(&[2])).unwrap(), 13);
        let q = Rationals;
        let zq = PointConfiguration::new(vec![
            pt(&q, &p6, &[&[1, 0, 0, 0, 0, 0, 0]], 2),
            pt(&q, &p6, &[&[0, 1, 0, 0, 0, 0, 0]], 2),
        ]);
        assert_eq!(hilbert_function_points(&q, &p6, &zq, &deg(&[2])).unwrap(), 13);
        let report = defect_bound(&fp, &p6, &z, 28, &deg(&[2])).unwrap();
        assert_eq!((report.bound, report.generic, report.below_generic), (27, 28, true));
    }

    #[test]
    fn small_characteristic_refused_for_fat_points() {
        let f = PrimeField::new(3).unwrap();
        let p2 = Space::projective(2);
        let z = PointConfiguration::new(vec![pt(&f, &p2, &[&[1, 0, 0]], 2)]);
        assert!(matches!(
            ideal_degree_piece(&f, &p2, &z, &deg(&[3])),
            Err(PointsError::CharacteristicTooSmall { .. })
        ));
        assert!(ideal_degree_piece(&f, &p2, &z, &deg(&[2])).is_ok());
    }

    #[test]
    fn generic_points_in_low_degree() {
        let f = PrimeField::default();
        let p2 = Space::projective(2);
        let mut rng = trial_rng(3, 0);
        let z = PointConfiguration::random_simple(&f, &p2, 3, &mut rng);
        assert_eq!(hilbert_function_points(&f, &p2, &z, &deg(&[1])).unwrap(), 3);
        assert_eq!(hilbert_function_points(&f, &p2, &z, &deg(&[0])).unwrap(), 1);
        for n in 1..5 {
            let pn = Space::projective(n);
            for r in 1..8 {
                let z = PointConfiguration::random_simple(&f, &pn, r, &mut rng);
                assert_eq!(hilbert_function_points(&f, &pn, &z, &deg(&[1])).unwrap(), r.min(n + 1));
            }
        }
    }

    #[test]
    fn generic_hf_report_single_point() {
        let f = PrimeField::default();
        let s: Space = "P1xP1".parse().unwrap();
        let w = DegreeWindow::boxed(&deg(&[2, 2])).unwrap();
        let rep = check_generic_hf(&f, &s, 1, &w, 10, 9).unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.distinct_functions, 1);
    }

    #[test]
    fn collinear_point_breaks_the_recursion() {
        let f = Rationals;
        let p2 = Space::projective(2);
        let z = PointConfiguration::new(vec![pt(&f, &p2, &[&[1, 0, 0]], 1), pt(&f, &p2, &[&[0, 1, 0]], 1)]);
        let on_line = pt(&f, &p2, &[&[1, 1, 0]], 1);
        let w = DegreeWindow::boxed(&deg(&[1])).unwrap();
        let rep = check_add_point(&f, &p2, &z, &on_line, &w).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.rows[1].after, 2);
        let off = pt(&f, &p2, &[&[0, 0, 1]], 1);
        assert!(check_add_point(&f, &p2, &z, &off, &w).unwrap().holds);
        let same = pt(&f, &p2, &[&[2, 0, 0]], 1);
        assert_eq!(check_add_point(&f, &p2, &z, &same, &w), Err(PointsError::PointInSupport));
        let empty = PointConfiguration::default();
        let rep = check_add_point(&f, &p2, &empty, &off, &DegreeWindow::boxed(&deg(&[3])).unwrap()).unwrap();
        assert!(rep.holds && rep.rows.iter().all(|r| r.after == 1));
    }

    #[test]
    fn nested_inequality_with_collinear_triple() {
        let f = Rationals;
        let p2 = Space::projective(2);
        let triple = PointConfiguration::new(vec![
            pt(&f, &p2, &[&[1, 0, 0]], 1),
            pt(&f, &p2, &[&[0, 1, 0]], 1),
            pt(&f, &p2, &[&[1, 1, 0]], 1),
        ]);
        let four = triple.with_point(pt(&f, &p2, &[&[1, 2, 5]], 1));
        let w = DegreeWindow::boxed(&deg(&[3])).unwrap();
        let rep = check_nested_inequality(&f, &p2, &triple, &four, &w).unwrap();
        assert!(rep.holds);
        let row1 = &rep.rows[1];
        assert_eq!((row1.h_sub, row1.bound), (2, 3));
        assert!(row1.h_full < 4);
        let same = check_nested_inequality(&f, &p2, &four, &four, &w).unwrap();
        assert!(same.rows.iter().all(|r| r.h_sub == r.h_full));
        assert_eq!(
            check_nested_inequality(&f, &p2, &four, &triple, &w),
            Err(PointsError::NotNested)
        );
    }

    #[test]
    fn configuration_json() {
        let f = Rationals;
        let s: Space = "P1xP1".parse().unwrap();
        let v: Value = serde_json::from_str(
            r#"{"field":"Q","points":[{"coords":[[1,0],[0,"1/2"]],"mult":1},{"coords":[[1,1],[1,-1]],"mult":2}]}"#,
        )
        .unwrap();
        let z = PointConfiguration::from_json(&f, &s, &v).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.length(&s), 1 + 3);
        assert_eq!(PointConfiguration::from_json(&f, &s, &z.to_json(&f)).unwrap(), z);
        let fp = PrimeField::default();
        assert!(PointConfiguration::from_json(&fp, &s, &v).is_err());
        let bad: Value = serde_json::from_str(r#"{"points":[{"coords":[[0,0],[1,0]]}]}"#).unwrap();
        assert!(matches!(
            PointConfiguration::from_json(&f, &s, &bad),
            Err(PointsError::ZeroBlock { block: 0 })
        ));
    }
}
