//! Apolarity: the contraction action of the Cox ring `S` on its graded dual
//! `S~`, catalecticant matrices and annihilator ideals.
//!
//! Dual elements are written in the divided-power basis `x^(J)`, on which a
//! monomial acts by `a^I . x^(J) = x^(J - I)` (zero when `J - I` leaves `N^m`).
//! No multinomial coefficients ever appear, so everything here is valid in
//! every characteristic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactla::{kernel, DegreewiseSubspace, Field, LinAlgError, Matrix, Subspace};
use crate::monideal::{format_monomial, parse_monomial, MonomialIdeal};
use crate::points::{self, PointConfiguration, PointsError};
use crate::ring::{Exponent, MultiDegree, RingError, Space};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApolarError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("term {exponent:?} has degree {got}, expected {expected}")]
    Inhomogeneous {
        exponent: Vec<u32>,
        expected: MultiDegree,
        got: MultiDegree,
    },
    #[error("expected a single monomial")]
    NotMonomial,
    #[error("a dual subspace needs at least one nonzero element")]
    EmptySubspace,
    #[error("cannot parse dual element: {0}")]
    Parse(String),
}

/// A homogeneous element of `S~_L` in the divided-power monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualElement<F: Field> {
    degree: MultiDegree,
    terms: BTreeMap<Exponent, F::Elem>,
}

impl<F: Field> DualElement<F> {
    pub fn new(
        field: &F,
        space: &Space,
        degree: MultiDegree,
        terms: impl IntoIterator<Item = (Exponent, F::Elem)>,
    ) -> Result<Self, ApolarError> {
        space.check_degree(&degree)?;
        let mut map: BTreeMap<Exponent, F::Elem> = BTreeMap::new();
        for (e, c) in terms {
            space.check_exponent(&e)?;
            let got = space.block_degree(&e);
            if got != degree {
                return Err(ApolarError::Inhomogeneous {
                    exponent: e.0,
                    expected: degree,
                    got,
                });
            }
            let entry = map.entry(e).or_insert_with(|| field.zero());
            *entry = field.add(entry, &c);
        }
        map.retain(|_, c| !field.is_zero(c));
        Ok(DualElement { degree, terms: map })
    }

    /// `x^(e)` with coefficient one.
    pub fn monomial(field: &F, space: &Space, e: Exponent) -> Self {
        let degree = space.block_degree(&e);
        let mut terms = BTreeMap::new();
        terms.insert(e, field.one());
        DualElement { degree, terms }
    }

    pub fn zero(degree: MultiDegree) -> Self {
        DualElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, F::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, field: &F, e: &Exponent) -> F::Elem {
        self.terms.get(e).cloned().unwrap_or_else(|| field.zero())
    }

    /// The single exponent of a one-term element.
    pub fn as_monomial(&self) -> Option<&Exponent> {
        if self.terms.len() == 1 {
            self.terms.keys().next()
        } else {
            None
        }
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        let mut terms = BTreeMap::new();
        for (e, v) in &self.terms {
            let t = field.mul(v, c);
            if !field.is_zero(&t) {
                terms.insert(e.clone(), t);
            }
        }
        DualElement {
            degree: self.degree.clone(),
            terms,
        }
    }

    pub fn add(&self, field: &F, other: &DualElement<F>) -> Self {
        assert_eq!(self.degree, other.degree, "adding dual elements of different degrees");
        let mut terms = self.terms.clone();
        for (e, v) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(|| field.zero());
            *entry = field.add(entry, v);
        }
        terms.retain(|_, c| !field.is_zero(c));
        DualElement {
            degree: self.degree.clone(),
            terms,
        }
    }

    /// Coordinates w.r.t. `space.enumerate_monomials(L)`.
    pub fn coordinates(&self, field: &F, space: &Space) -> Vec<F::Elem> {
        space
            .enumerate_monomials(&self.degree)
            .iter()
            .map(|e| self.coefficient(field, e))
            .collect()
    }

    pub fn from_coordinates(field: &F, space: &Space, degree: &MultiDegree, coords: &[F::Elem]) -> Self {
        let mons = space.enumerate_monomials(degree);
        assert_eq!(mons.len(), coords.len());
        let terms = mons
            .into_iter()
            .zip(coords)
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(e, c)| (e, c.clone()))
            .collect();
        DualElement {
            degree: degree.clone(),
            terms,
        }
    }

    /// `{"L":[...], "terms":[{"exp":[...], "num":..., "den":...}]}`
    pub fn to_json(&self, field: &F) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let (n, d) = field.to_fraction(c);
                json!({"exp": e.0, "num": bigint_json(&n), "den": bigint_json(&d)})
            })
            .collect();
        json!({"L": self.degree.0, "terms": terms})
    }

    pub fn from_json(field: &F, space: &Space, value: &Value) -> Result<Self, ApolarError> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(rename = "L")]
            l: Vec<i64>,
            terms: Vec<RawTerm>,
        }
        #[derive(Deserialize)]
        struct RawTerm {
            exp: Vec<u32>,
            num: Value,
            #[serde(default)]
            den: Option<Value>,
        }
        let raw: Raw =
            serde_json::from_value(value.clone()).map_err(|e| ApolarError::Parse(e.to_string()))?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let num = json_bigint(&t.num)?;
            let den = match &t.den {
                Some(d) => json_bigint(d)?,
                None => BigInt::from(1),
            };
            terms.push((Exponent(t.exp), field.from_fraction(&num, &den)?));
        }
        DualElement::new(field, space, MultiDegree(raw.l), terms)
    }

    /// `2*x0^2 + x0 x1 - 1/3*x1^2`-style text; variables as in
    /// [`parse_monomial`]. A bare monomial has coefficient one.
    pub fn parse_text(field: &F, space: &Space, text: &str) -> Result<Self, ApolarError> {
        let normalized = text.replace('-', "+-");
        let mut terms = Vec::new();
        for chunk in normalized.split('+') {
            let c = chunk.trim();
            if c.is_empty() {
                continue;
            }
            let (negative, c) = match c.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, c),
            };
            let (coef, mono) = match c.split_once('*') {
                Some((head, tail)) if !head.trim_start().starts_with(['x', 'a']) => {
                    let (n, d) = crate::exactla::parse_fraction(head)
                        .ok_or_else(|| ApolarError::Parse(format!("bad coefficient {head:?}")))?;
                    (field.from_fraction(&n, &d)?, tail)
                }
                _ => (field.one(), c),
            };
            let coef = if negative { field.neg(&coef) } else { coef };
            let e = parse_monomial(space, mono).map_err(ApolarError::Parse)?;
            terms.push((e, coef));
        }
        let first = terms
            .first()
            .ok_or_else(|| ApolarError::Parse("empty dual element".into()))?;
        let degree = space.block_degree(&first.0);
        DualElement::new(field, space, degree, terms)
    }

    pub fn to_text(&self, field: &F, space: &Space) -> String {
        format_linear_form(field, space, self.terms.iter())
    }
}

/// Terms joined by ` + ` or ` - `, coefficient one omitted.
pub fn format_linear_form<'a, F: Field + 'a>(
    field: &F,
    space: &Space,
    terms: impl Iterator<Item = (&'a Exponent, &'a F::Elem)>,
) -> String
where
    F::Elem: 'a,
{
    use num_traits::Signed;
    let mut out = String::new();
    for (e, c) in terms {
        let (n, d) = field.to_fraction(c);
        let negative = n.is_negative() != d.is_negative();
        let mag = field.from_fraction(&n.abs(), &d.abs()).expect("nonzero denominator");
        let mono = format_monomial(space, e);
        let body = if mag == field.one() {
            mono
        } else {
            format!("{}*{}", field.format(&mag), mono)
        };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

fn bigint_json(n: &BigInt) -> Value {
    use num_traits::ToPrimitive;
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn json_bigint(v: &Value) -> Result<BigInt, ApolarError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| ApolarError::Parse(format!("non-integer coefficient {n}"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| ApolarError::Parse(format!("bad integer {s:?}"))),
        other => Err(ApolarError::Parse(format!("bad coefficient {other}"))),
    }
}

/// `a^theta . F`: shifts every term by `-theta`, dropping those that leave
/// the positive orthant.
pub fn contract<F: Field>(space: &Space, theta: &Exponent, f: &DualElement<F>) -> DualElement<F> {
    let degree = f.degree.sub(&space.block_degree(theta));
    let terms = f
        .terms
        .iter()
        .filter_map(|(j, c)| j.checked_div(theta).map(|k| (k, c.clone())))
        .collect();
    DualElement { degree, terms }
}

/// Bilinear extension of [`contract`] to a homogeneous form
/// `theta = sum c_I a^I`.
pub fn contract_form<F: Field>(
    field: &F,
    space: &Space,
    theta: &[(Exponent, F::Elem)],
    f: &DualElement<F>,
) -> Result<DualElement<F>, ApolarError> {
    let Some((first, _)) = theta.first() else {
        return Ok(DualElement::zero(f.degree.clone()));
    };
    let d = space.block_degree(first);
    let out_degree = f.degree.sub(&d);
    let mut acc: BTreeMap<Exponent, F::Elem> = BTreeMap::new();
    for (i, c) in theta {
        let got = space.block_degree(i);
        if got != d {
            return Err(ApolarError::Inhomogeneous {
                exponent: i.0.clone(),
                expected: d,
                got,
            });
        }
        for (k, v) in contract(space, i, f).terms {
            let t = field.mul(c, &v);
            let entry = acc.entry(k).or_insert_with(|| field.zero());
            *entry = field.add(entry, &t);
        }
    }
    acc.retain(|_, c| !field.is_zero(c));
    Ok(DualElement {
        degree: out_degree,
        terms: acc,
    })
}

/// Matrix of `theta -> theta . F` from `S_D` to `S~_{L-D}` in monomial bases:
/// entry `(K, I)` is the coefficient of `x^(I+K)` in `F`. Zero rows when
/// `L - D` is not effective.
pub fn catalecticant<F: Field>(
    field: &F,
    space: &Space,
    f: &DualElement<F>,
    d: &MultiDegree,
) -> Matrix<F::Elem> {
    let cols = space.enumerate_monomials(d);
    let rows = space.enumerate_monomials(&f.degree.sub(d));
    let mut m = Matrix::zeros(field, rows.len(), cols.len());
    for (r, k) in rows.iter().enumerate() {
        for (c, i) in cols.iter().enumerate() {
            if let Some(v) = f.terms.get(&k.mul(i)) {
                m[(r, c)] = v.clone();
            }
        }
    }
    m
}

/// A nonzero subspace of `S~_L` with a canonical (echelonized) basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSubspace<F: Field> {
    degree: MultiDegree,
    basis: Vec<DualElement<F>>,
}

impl<F: Field> DualSubspace<F> {
    pub fn new(field: &F, space: &Space, elements: &[DualElement<F>]) -> Result<Self, ApolarError> {
        let first = elements.first().ok_or(ApolarError::EmptySubspace)?;
        let degree = first.degree.clone();
        space.check_degree(&degree)?;
        let mut rows = Vec::with_capacity(elements.len());
        for e in elements {
            if e.degree != degree {
                return Err(ApolarError::Inhomogeneous {
                    exponent: e.terms.keys().next().map(|k| k.0.clone()).unwrap_or_default(),
                    expected: degree,
                    got: e.degree.clone(),
                });
            }
            rows.push(e.coordinates(field, space));
        }
        let n = space.dim_degree(&degree);
        let sub = Subspace::from_rows(field, n, rows);
        if sub.dim() == 0 {
            return Err(ApolarError::EmptySubspace);
        }
        let basis = (0..sub.dim())
            .map(|i| DualElement::from_coordinates(field, space, &degree, sub.basis().row(i)))
            .collect();
        Ok(DualSubspace { degree, basis })
    }

    pub fn span_of(field: &F, space: &Space, f: &DualElement<F>) -> Result<Self, ApolarError> {
        DualSubspace::new(field, space, std::slice::from_ref(f))
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DualElement<F>] {
        &self.basis
    }

    /// Spanned by monomials, i.e. fixed by the maximal torus. The echelon
    /// basis of such a span consists of the monomials themselves.
    pub fn is_torus_fixed(&self) -> bool {
        self.basis.iter().all(|b| b.as_monomial().is_some())
    }

    pub fn monomials(&self) -> Option<Vec<Exponent>> {
        self.basis
            .iter()
            .map(|b| b.as_monomial().cloned())
            .collect()
    }

    pub fn as_row_space(&self, field: &F, space: &Space) -> Subspace<F> {
        Subspace::from_rows(
            field,
            space.dim_degree(&self.degree),
            self.basis.iter().map(|b| b.coordinates(field, space)).collect(),
        )
    }
}

/// `Ann(E)_D`: the common kernel of the catalecticants of a basis of `E`.
pub fn annihilator_degree<F: Field>(
    field: &F,
    space: &Space,
    e: &DualSubspace<F>,
    d: &MultiDegree,
) -> DegreewiseSubspace<F> {
    let n = space.dim_degree(d);
    let mut stacked = Matrix::zeros(field, 0, n);
    for f in &e.basis {
        stacked = stacked.stack(&catalecticant(field, space, f, d));
    }
    DegreewiseSubspace {
        degree: d.clone(),
        space: kernel(field, &stacked),
    }
}

/// `Ann(x^(a)) = (a_v^{a_v + 1} : every variable v)`.
pub fn annihilator_monomial<F: Field>(
    space: &Space,
    f: &DualElement<F>,
) -> Result<MonomialIdeal, ApolarError> {
    let a = f.as_monomial().ok_or(ApolarError::NotMonomial)?;
    Ok(annihilator_of_exponent(space, a))
}

pub fn annihilator_of_exponent(space: &Space, a: &Exponent) -> MonomialIdeal {
    let m = space.num_vars();
    let gens = (0..m).map(|v| {
        let mut e = Exponent::zero(m);
        e.0[v] = a.0[v] + 1;
        e
    });
    MonomialIdeal::new(m, gens)
}

/// Annihilator of a monomial span, the intersection of the monomial
/// annihilators.
pub fn annihilator_monomial_span<F: Field>(
    space: &Space,
    e: &DualSubspace<F>,
) -> Result<MonomialIdeal, ApolarError> {
    let mons = e.monomials().ok_or(ApolarError::NotMonomial)?;
    Ok(annihilator_of_monomials(space, &mons))
}

pub fn annihilator_of_monomials(space: &Space, mons: &[Exponent]) -> MonomialIdeal {
    let mut iter = mons.iter();
    let Some(first) = iter.next() else {
        return MonomialIdeal::unit(space.num_vars());
    };
    iter.fold(annihilator_of_exponent(space, first), |acc, a| {
        acc.intersect(&annihilator_of_exponent(space, a))
    })
}

/// Anything that can list its monomials in a given degree.
pub trait MonomialPieces {
    /// `None` when the degree is outside what the object describes.
    fn monomials_in_degree(&self, space: &Space, d: &MultiDegree) -> Option<Vec<Exponent>>;
}

impl MonomialPieces for MonomialIdeal {
    fn monomials_in_degree(&self, space: &Space, d: &MultiDegree) -> Option<Vec<Exponent>> {
        Some(self.degree_piece(space, d))
    }
}

/// Tests `I_L ⊆ Ann(E)_L`, which already forces `I ⊆ Ann(E)` in every
/// degree. For a monomial `u` of degree `L`, `u . F` is the coefficient of
/// `x^(u)` in `F`.
pub fn containment_in_annihilator<F: Field, I: MonomialPieces + ?Sized>(
    field: &F,
    space: &Space,
    ideal: &I,
    e: &DualSubspace<F>,
) -> bool {
    let Some(piece) = ideal.monomials_in_degree(space, &e.degree) else {
        return false;
    };
    piece.iter().all(|u| {
        e.basis
            .iter()
            .all(|f| field.is_zero(&f.coefficient(field, u)))
    })
}

/// `I_L ⊆ Ann(E)_L` for an arbitrary degree-`L` subspace.
pub fn subspace_in_annihilator<F: Field>(
    field: &F,
    space: &Space,
    piece: &DegreewiseSubspace<F>,
    e: &DualSubspace<F>,
) -> Result<bool, ApolarError> {
    let ann = annihilator_degree(field, space, e, &e.degree);
    Ok(piece.is_subspace_of(field, &ann)?)
}

/// `I(Z)_L ⊆ Ann(E)_L`, equivalently `E ⊆ <Z>`.
pub fn apolarity_check<F: Field>(
    field: &F,
    space: &Space,
    z: &PointConfiguration<F>,
    e: &DualSubspace<F>,
) -> Result<bool, PointsError> {
    let piece = points::ideal_degree_piece(field, space, z, &e.degree)?;
    let ann = annihilator_degree(field, space, e, &e.degree);
    Ok(piece.is_subspace_of(field, &ann)?)
}

/// The direct test: every basis element of `E` is a combination of the
/// dual vectors cut out by `Z` in degree `L` (point evaluations, and for fat
/// points their divided-power derivatives).
pub fn span_membership<F: Field>(
    field: &F,
    space: &Space,
    z: &PointConfiguration<F>,
    e: &DualSubspace<F>,
) -> Result<bool, PointsError> {
    let conditions = points::condition_matrix(field, space, z, &e.degree)?;
    let span = Subspace::row_space(field, &conditions);
    for f in &e.basis {
        if !span.contains(field, &f.coordinates(field, space))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Serializable summary of a degree piece of an annihilator.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AnnihilatorPiece {
    pub degree: MultiDegree,
    pub dim: usize,
    pub codim: usize,
    pub basis: Vec<String>,
}

pub fn describe_piece<F: Field>(
    field: &F,
    space: &Space,
    piece: &DegreewiseSubspace<F>,
) -> AnnihilatorPiece {
    let mons = space.enumerate_monomials(&piece.degree);
    let basis = (0..piece.dim())
        .map(|i| {
            let row = piece.space.basis().row(i);
            format_linear_form(
                field,
                space,
                mons.iter()
                    .zip(row)
                    .filter(|(_, c)| !field.is_zero(c)),
            )
        })
        .collect();
    AnnihilatorPiece {
        degree: piece.degree.clone(),
        dim: piece.dim(),
        codim: piece.codim(),
        basis,
    }
}
