//! The Cox ring of a product of projective spaces `P^{a_1} x ... x P^{a_k}`.
//!
//! The ring is a polynomial ring in `m = sum (a_i + 1)` variables `x_{i,j}`
//! graded by `Z^k`, where `x_{i,j}` has degree `e_i`. Everything here is pure
//! combinatorics: degrees, exponent vectors, monomial bases and the degree
//! windows used to truncate infinite computations.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monideal::MonomialIdeal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("a space needs at least one factor")]
    NoFactors,
    #[error("factor {0} has dimension 0; every factor must be P^a with a >= 1")]
    ZeroDimensionalFactor(usize),
    #[error("cannot parse space descriptor {0:?}")]
    BadDescriptor(String),
    #[error("degree has {got} entries, the space has {expected} factors")]
    DegreeArity { expected: usize, got: usize },
    #[error("exponent has {got} entries, the space has {expected} variables")]
    ExponentArity { expected: usize, got: usize },
    #[error("degree window: {0}")]
    BadWindow(String),
}

/// An element of the grading group `Z^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn zero(k: usize) -> Self {
        MultiDegree(vec![0; k])
    }

    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = vec![0; k];
        v[i] = 1;
        MultiDegree(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&d| d >= 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Componentwise partial order.
    pub fn le(&self, other: &MultiDegree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, t: i64) -> MultiDegree {
        MultiDegree(self.0.iter().map(|a| a * t).collect())
    }
}

/// Canonical window order: total degree first, ties broken lexicographically.
impl Ord for MultiDegree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for MultiDegree {
    type Err = RingError;

    /// Accepts `2`, `1,1`, `(1,1)` or `[1,1]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let entries = trimmed
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| RingError::BadDescriptor(s.to_string()))?;
        Ok(MultiDegree(entries))
    }
}

/// Exponent vector of a monomial in the flattened variable order
/// `x_{1,0}, ..., x_{1,a_1}, x_{2,0}, ...`.
///
/// The order is total degree first and then *descending* lexicographic on the
/// flattened vector, so within a fixed degree `x0^2 < x0 x1 < x1^2`. This is
/// the order of [`Space::enumerate_monomials`] and of every generator list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(m: usize) -> Self {
        Exponent(vec![0; m])
    }

    pub fn variable(m: usize, idx: usize) -> Self {
        let mut v = vec![0; m];
        v[idx] = 1;
        Exponent(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, defined only when the result stays in `N^m`.
    pub fn checked_div(&self, other: &Exponent) -> Option<Exponent> {
        if !other.divides(self) {
            return None;
        }
        Some(Exponent(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (*a).max(*b))
                .collect(),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn times_variable(&self, idx: usize) -> Exponent {
        let mut v = self.0.clone();
        v[idx] += 1;
        Exponent(v)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `X = P^{a_1} x ... x P^{a_k}` together with its Cox variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    factor_dims: Vec<usize>,
    offsets: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SpaceJson {
    factors: Vec<usize>,
}

impl Serialize for Space {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SpaceJson {
            factors: self.factor_dims.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Space {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = SpaceJson::deserialize(d)?;
        Space::new(raw.factors).map_err(serde::de::Error::custom)
    }
}

impl Space {
    pub fn new(factor_dims: Vec<usize>) -> Result<Self, RingError> {
        if factor_dims.is_empty() {
            return Err(RingError::NoFactors);
        }
        if let Some(i) = factor_dims.iter().position(|&a| a == 0) {
            return Err(RingError::ZeroDimensionalFactor(i));
        }
        let mut offsets = Vec::with_capacity(factor_dims.len() + 1);
        let mut acc = 0;
        for &a in &factor_dims {
            offsets.push(acc);
            acc += a + 1;
        }
        offsets.push(acc);
        Ok(Space {
            factor_dims,
            offsets,
        })
    }

    /// `P^n`.
    pub fn projective(n: usize) -> Self {
        Space::new(vec![n]).expect("P^n with n >= 1")
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    /// Number of factors `k`, the rank of the grading group.
    pub fn num_factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn num_vars(&self) -> usize {
        self.offsets[self.factor_dims.len()]
    }

    /// `dim X = sum a_i`.
    pub fn dim(&self) -> usize {
        self.factor_dims.iter().sum()
    }

    pub fn factor_range(&self, factor: usize) -> std::ops::Range<usize> {
        self.offsets[factor]..self.offsets[factor + 1]
    }

    pub fn var_index(&self, factor: usize, slot: usize) -> usize {
        debug_assert!(slot <= self.factor_dims[factor]);
        self.offsets[factor] + slot
    }

    pub fn var_position(&self, idx: usize) -> (usize, usize) {
        let factor = self.offsets[1..].iter().position(|&o| idx < o).expect("variable index in range");
        (factor, idx - self.offsets[factor])
    }

    pub fn zero_degree(&self) -> MultiDegree {
        MultiDegree::zero(self.num_factors())
    }

    pub fn check_degree(&self, d: &MultiDegree) -> Result<(), RingError> {
        if d.arity() != self.num_factors() {
            return Err(RingError::DegreeArity {
                expected: self.num_factors(),
                got: d.arity(),
            });
        }
        Ok(())
    }

    pub fn check_exponent(&self, e: &Exponent) -> Result<(), RingError> {
        if e.len() != self.num_vars() {
            return Err(RingError::ExponentArity {
                expected: self.num_vars(),
                got: e.len(),
            });
        }
        Ok(())
    }

    /// Per-factor sums of an exponent vector.
    pub fn block_degree(&self, e: &Exponent) -> MultiDegree {
        MultiDegree(
            (0..self.num_factors())
                .map(|i| e.0[self.factor_range(i)].iter().map(|&x| x as i64).sum())
                .collect(),
        )
    }

    /// `dim S_D = prod C(a_i + D_i, a_i)`, zero off the effective cone.
    pub fn dim_degree(&self, d: &MultiDegree) -> usize {
        if !d.is_effective() || d.arity() != self.num_factors() {
            return 0;
        }
        self.factor_dims
            .iter()
            .zip(&d.0)
            .map(|(&a, &di)| binomial(a as u64 + di as u64, a as u64) as usize)
            .product()
    }

    /// Monomial basis of `S_D` in canonical (flattened descending-lex) order.
    pub fn enumerate_monomials(&self, d: &MultiDegree) -> Vec<Exponent> {
        if !d.is_effective() || d.arity() != self.num_factors() {
            return Vec::new();
        }
        let blocks: Vec<Vec<Vec<u32>>> = self
            .factor_dims
            .iter()
            .zip(&d.0)
            .map(|(&a, &di)| block_monomials(a + 1, di as u32))
            .collect();
        let mut out = vec![Vec::with_capacity(self.num_vars())];
        for block in &blocks {
            let mut next = Vec::with_capacity(out.len() * block.len());
            for prefix in &out {
                for b in block {
                    let mut v = prefix.clone();
                    v.extend_from_slice(b);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Exponent).collect()
    }

    /// Index of each monomial of `S_D` in [`Space::enumerate_monomials`].
    pub fn monomial_index(&self, d: &MultiDegree) -> HashMap<Exponent, usize> {
        self.enumerate_monomials(d)
            .into_iter()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect()
    }

    /// The irrelevant ideal: generated by the products `prod_i x_{i,j_i}`.
    pub fn irrelevant_ideal(&self) -> MonomialIdeal {
        let m = self.num_vars();
        let mut gens = vec![Exponent::zero(m)];
        for i in 0..self.num_factors() {
            let mut next = Vec::new();
            for g in &gens {
                for v in self.factor_range(i) {
                    next.push(g.times_variable(v));
                }
            }
            gens = next;
        }
        MonomialIdeal::new(m, gens)
    }

    /// Hilbert function of `r` general points: `min(r, dim S_D)`.
    pub fn generic_hf(&self, r: usize, d: &MultiDegree) -> usize {
        r.min(self.dim_degree(d))
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factor_dims.iter().map(|a| format!("P{a}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for Space {
    type Err = RingError;

    /// `P2`, `P1xP1`, `P^1 x P^2`, or JSON `{"factors":[1,1]}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.starts_with('{') {
            let raw: SpaceJson =
                serde_json::from_str(t).map_err(|_| RingError::BadDescriptor(s.to_string()))?;
            return Space::new(raw.factors);
        }
        let dims = t
            .split(['x', 'X', '×', '*'])
            .map(|part| {
                let p = part.trim();
                let rest = p
                    .strip_prefix('P')
                    .or_else(|| p.strip_prefix('p'))
                    .ok_or_else(|| RingError::BadDescriptor(s.to_string()))?;
                let rest = rest.trim_start_matches('^');
                rest.parse::<usize>()
                    .map_err(|_| RingError::BadDescriptor(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Space::new(dims)
    }
}

/// Exponent vectors of `nvars` variables summing to `d`, descending lex.
fn block_monomials(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut tail in block_monomials(nvars - 1, d - first) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A finite, downward closed set of effective degrees, listed in canonical
/// order (total degree, then lexicographic).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeWindow {
    degrees: Vec<MultiDegree>,
}

impl DegreeWindow {
    /// All effective `D <= bound`.
    pub fn boxed(bound: &MultiDegree) -> Result<Self, RingError> {
        if !bound.is_effective() {
            return Err(RingError::BadWindow(format!("box bound {bound} is not effective")));
        }
        let mut degrees = vec![MultiDegree(Vec::new())];
        for &b in &bound.0 {
            let mut next = Vec::new();
            for d in &degrees {
                for v in 0..=b {
                    let mut e = d.0.clone();
                    e.push(v);
                    next.push(MultiDegree(e));
                }
            }
            degrees = next;
        }
        degrees.sort();
        Ok(DegreeWindow { degrees })
    }

    /// All effective `D` with `|D| <= max_total`.
    pub fn total_degree(k: usize, max_total: u32) -> Result<Self, RingError> {
        if k == 0 {
            return Err(RingError::NoFactors);
        }
        let full = DegreeWindow::boxed(&MultiDegree(vec![max_total as i64; k]))?;
        Ok(DegreeWindow {
            degrees: full
                .degrees
                .into_iter()
                .filter(|d| d.total() <= max_total as i64)
                .collect(),
        })
    }

    pub fn from_degrees(mut degrees: Vec<MultiDegree>) -> Result<Self, RingError> {
        degrees.sort();
        degrees.dedup();
        let k = degrees
            .first()
            .map(|d| d.arity())
            .ok_or_else(|| RingError::BadWindow("empty window".into()))?;
        for d in &degrees {
            if d.arity() != k {
                return Err(RingError::BadWindow("mixed arities".into()));
            }
            if !d.is_effective() {
                return Err(RingError::BadWindow(format!("{d} is not effective")));
            }
            for i in 0..k {
                if d.0[i] > 0 {
                    let below = d.sub(&MultiDegree::unit(k, i));
                    if degrees.binary_search(&below).is_err() {
                        return Err(RingError::BadWindow(format!(
                            "not downward closed: {d} present but {below} missing"
                        )));
                    }
                }
            }
        }
        Ok(DegreeWindow { degrees })
    }

    pub fn degrees(&self) -> &[MultiDegree] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.degrees[0].arity()
    }

    pub fn index_of(&self, d: &MultiDegree) -> Option<usize> {
        self.degrees.binary_search(d).ok()
    }

    pub fn contains(&self, d: &MultiDegree) -> bool {
        self.index_of(d).is_some()
    }

    /// True when every effective `D <= bound` lies in the window.
    pub fn covers_box(&self, bound: &MultiDegree) -> bool {
        match DegreeWindow::boxed(bound) {
            Ok(b) => b.degrees.iter().all(|d| self.contains(d)),
            Err(_) => false,
        }
    }

    /// Componentwise maximum of the window's degrees.
    pub fn bounding_box(&self) -> MultiDegree {
        let k = self.arity();
        MultiDegree(
            (0..k)
                .map(|i| self.degrees.iter().map(|d| d.0[i]).max().unwrap_or(0))
                .collect(),
        )
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiDegree> {
        self.degrees.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(v: &[i64]) -> MultiDegree {
        MultiDegree(v.to_vec())
    }

    #[test]
    fn dimensions() {
        assert_eq!(Space::projective(2).dim_degree(&deg(&[2])), 6);
        let p1p1: Space = "P1xP1".parse().unwrap();
        assert_eq!(p1p1.dim_degree(&deg(&[1, 1])), 4);
        assert_eq!(Space::projective(2).dim_degree(&deg(&[-1])), 0);
    }

    #[test]
    fn enumeration_order_and_counts() {
        let p1 = Space::projective(1);
        let mons = p1.enumerate_monomials(&deg(&[2]));
        let raw: Vec<Vec<u32>> = mons.iter().map(|e| e.0.clone()).collect();
        assert_eq!(raw, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        let p1p1: Space = "P1xP1".parse().unwrap();
        assert_eq!(p1p1.enumerate_monomials(&deg(&[1, 0])).len(), 2);
        assert_eq!(Space::projective(2).enumerate_monomials(&deg(&[3])).len(), 10);
        assert!(Space::projective(2).enumerate_monomials(&deg(&[-1])).is_empty());
    }

    #[test]
    fn enumeration_is_sorted_in_exponent_order() {
        let s: Space = "P1xP2".parse().unwrap();
        let mons = s.enumerate_monomials(&deg(&[2, 2]));
        assert!(mons.windows(2).all(|w| w[0] < w[1]));
        for e in &mons {
            assert_eq!(s.block_degree(e), deg(&[2, 2]));
        }
    }

    #[test]
    fn irrelevant_ideals() {
        let gens = Space::projective(2).irrelevant_ideal();
        assert_eq!(gens.generators().len(), 3);
        assert!(gens.generators().iter().all(|g| g.total_degree() == 1));
        let p1p1: Space = "P1xP1".parse().unwrap();
        let b = p1p1.irrelevant_ideal();
        let raw: Vec<Vec<u32>> = b.generators().iter().map(|e| e.0.clone()).collect();
        assert_eq!(
            raw,
            vec![
                vec![1, 0, 1, 0],
                vec![1, 0, 0, 1],
                vec![0, 1, 1, 0],
                vec![0, 1, 0, 1]
            ]
        );
        let p1p2: Space = "P1xP2".parse().unwrap();
        assert_eq!(p1p2.irrelevant_ideal().generators().len(), 6);
    }

    #[test]
    fn generic_hilbert_function() {
        let p2 = Space::projective(2);
        assert_eq!(p2.generic_hf(4, &deg(&[2])), 4);
        assert_eq!(p2.generic_hf(4, &deg(&[1])), 3);
        let p1p1: Space = "P1xP1".parse().unwrap();
        assert_eq!(p1p1.generic_hf(3, &deg(&[1, 1])), 3);
    }

    #[test]
    fn descriptor_parsing() {
        assert_eq!("P2".parse::<Space>().unwrap().factor_dims(), &[2]);
        assert_eq!("P^1 x P^2".parse::<Space>().unwrap().factor_dims(), &[1, 2]);
        assert_eq!(
            r#"{"factors":[1,1]}"#.parse::<Space>().unwrap().to_string(),
            "P1xP1"
        );
        assert!("P0".parse::<Space>().is_err());
        assert!("Q2".parse::<Space>().is_err());
        let s: Space = "P1xP2".parse().unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"factors":[1,2]}"#);
    }

    #[test]
    fn variable_positions_round_trip() {
        let s: Space = "P2xP1xP3".parse().unwrap();
        for idx in 0..s.num_vars() {
            let (f, j) = s.var_position(idx);
            assert_eq!(s.var_index(f, j), idx);
        }
    }

    #[test]
    fn windows() {
        let w = DegreeWindow::boxed(&deg(&[1, 1])).unwrap();
        assert_eq!(
            w.degrees(),
            &[deg(&[0, 0]), deg(&[0, 1]), deg(&[1, 0]), deg(&[1, 1])]
        );
        let t = DegreeWindow::total_degree(2, 2).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.covers_box(&deg(&[1, 1])));
        assert!(!t.covers_box(&deg(&[2, 1])));
        assert!(DegreeWindow::from_degrees(vec![deg(&[0]), deg(&[2])]).is_err());
        assert_eq!(t.bounding_box(), deg(&[2, 2]));
    }
}
