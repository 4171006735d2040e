//! Exact linear algebra over the rationals and prime fields.
//!
//! Fields are passed around as explicit context values (`&F`), elements are
//! plain data. Subspaces are always stored in reduced row echelon form, which
//! makes equality of subspaces a comparison of matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use crate::ring::MultiDegree;

/// Default prime for randomized experiments, `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("degrees differ ({0} vs {1})")]
    DegreeMismatch(MultiDegree, MultiDegree),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse field {0:?}; expected Q or p=PRIME")]
    BadField(String),
    #[error("denominator is zero in the target field")]
    ZeroDenominator,
}

#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// A "general" element: uniform in the prime field, a wide random integer
    /// over the rationals.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Canonical `num / den` representative (den = 1 in prime fields).
    fn to_fraction(&self, a: &Self::Elem) -> (BigInt, BigInt);
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem, LinAlgError>;
    /// `Q` or `p=PRIME`.
    fn label(&self) -> String;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn format(&self, a: &Self::Elem) -> String {
        let (n, d) = self.to_fraction(a);
        if d.is_one() {
            n.to_string()
        } else {
            format!("{n}/{d}")
        }
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

/// Range of random integers used as "general" rational coordinates.
const RATIONAL_SAMPLE_BOUND: i64 = 1 << 16;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }
    fn to_fraction(&self, a: &BigRational) -> (BigInt, BigInt) {
        (a.numer().clone(), a.denom().clone())
    }
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<BigRational, LinAlgError> {
        if den.is_zero() {
            return Err(LinAlgError::ZeroDenominator);
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn label(&self) -> String {
        "Q".to_string()
    }
}

/// `F_p` for a prime `p < 2^63`, elements stored as reduced residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinAlgError> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((v % &p) + &p) % &p;
        r.to_u64().expect("residue fits in u64")
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    /// Symmetric representative in `(-p/2, p/2]`.
    fn to_fraction(&self, a: &u64) -> (BigInt, BigInt) {
        let v = if *a > self.p / 2 {
            BigInt::from(*a) - BigInt::from(self.p)
        } else {
            BigInt::from(*a)
        };
        (v, BigInt::one())
    }
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<u64, LinAlgError> {
        let d = self.inv(&self.reduce_big(den)).ok_or(LinAlgError::ZeroDenominator)?;
        Ok(self.mul(&self.reduce_big(num), &d))
    }
    fn label(&self) -> String {
        format!("p={}", self.p)
    }
}

/// Runtime choice of field, as given on the command line or in a file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl FromStr for FieldSpec {
    type Err = LinAlgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            return Ok(FieldSpec::Rational);
        }
        let digits = t
            .strip_prefix("p=")
            .or_else(|| t.strip_prefix("P="))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| LinAlgError::BadField(s.to_string()))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "p={p}"),
        }
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix<E>) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<E> std::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> std::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows);
    let mut out = Matrix::zeros(field, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = &a[(i, k)];
            if field.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let t = field.mul(x, &b[(k, j)]);
                out[(i, j)] = field.add(&out[(i, j)], &t);
            }
        }
    }
    out
}

/// In-place reduced row echelon form; returns the pivot columns. Zero rows
/// end up at the bottom.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !field.is_zero(&m[(i, c)])) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = field.inv(&m[(r, c)]).expect("nonzero pivot");
        for j in c..m.cols {
            m[(r, j)] = field.mul(&m[(r, j)], &inv);
        }
        for i in 0..m.rows {
            if i == r || field.is_zero(&m[(i, c)]) {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in c..m.cols {
                let t = field.mul(&factor, &m[(r, j)]);
                m[(i, j)] = field.sub(&m[(i, j)], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    rref(field, &mut work).len()
}

/// Canonical basis of `{v : M v = 0}`.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F> {
    let mut work = m.clone();
    let pivots = rref(field, &mut work);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut rows = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(&work[(i, free)]);
        }
        rows.push(v);
    }
    Subspace::from_rows(field, n, rows)
}

/// A linear subspace of `F^n` stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F::Elem>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_rows(field: &F, ambient: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let mut m = Matrix::from_rows(ambient, rows);
        let pivots = rref(field, &mut m);
        let rank = pivots.len();
        m.data.truncate(rank * ambient);
        m.rows = rank;
        Subspace {
            ambient,
            basis: m,
            pivots,
        }
    }

    pub fn row_space(field: &F, m: &Matrix<F::Elem>) -> Self {
        Subspace::from_rows(field, m.cols, m.row_vecs())
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix {
                rows: 0,
                cols: ambient,
                data: Vec::new(),
            },
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn basis(&self) -> &Matrix<F::Elem> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Membership by reduction against the echelon basis.
    pub fn contains(&self, field: &F, v: &[F::Elem]) -> Result<bool, LinAlgError> {
        if v.len() != self.ambient {
            return Err(LinAlgError::AmbientMismatch(self.ambient, v.len()));
        }
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if field.is_zero(&w[p]) {
                continue;
            }
            let factor = w[p].clone();
            for (j, wj) in w.iter_mut().enumerate().skip(p) {
                let t = field.mul(&factor, &self.basis[(i, j)]);
                *wj = field.sub(wj, &t);
            }
        }
        Ok(w.iter().all(|x| field.is_zero(x)))
    }

    pub fn is_subspace_of(&self, field: &F, other: &Subspace<F>) -> Result<bool, LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::AmbientMismatch(self.ambient, other.ambient));
        }
        for i in 0..self.dim() {
            if !other.contains(field, self.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, field: &F, other: &Subspace<F>) -> Result<Subspace<F>, LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Ok(Subspace::from_rows(field, self.ambient, rows))
    }

    /// Orthogonal complement under the standard pairing.
    pub fn perp(&self, field: &F) -> Subspace<F> {
        kernel(field, &self.basis)
    }

    /// `U cap V = (U^perp + V^perp)^perp`.
    pub fn intersect(&self, field: &F, other: &Subspace<F>) -> Result<Subspace<F>, LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::AmbientMismatch(self.ambient, other.ambient));
        }
        let a = self.perp(field);
        let b = other.perp(field);
        Ok(kernel(field, &a.basis.stack(&b.basis)))
    }
}

/// A subspace of `S_D`, in coordinates w.r.t. the canonical monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreewiseSubspace<F: Field> {
    pub degree: MultiDegree,
    pub space: Subspace<F>,
}

impl<F: Field> DegreewiseSubspace<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn codim(&self) -> usize {
        self.space.codim()
    }

    pub fn contains(&self, field: &F, v: &[F::Elem]) -> Result<bool, LinAlgError> {
        self.space.contains(field, v)
    }

    pub fn intersect(
        &self,
        field: &F,
        other: &DegreewiseSubspace<F>,
    ) -> Result<DegreewiseSubspace<F>, LinAlgError> {
        if self.degree != other.degree {
            return Err(LinAlgError::DegreeMismatch(
                self.degree.clone(),
                other.degree.clone(),
            ));
        }
        Ok(DegreewiseSubspace {
            degree: self.degree.clone(),
            space: self.space.intersect(field, &other.space)?,
        })
    }

    pub fn is_subspace_of(
        &self,
        field: &F,
        other: &DegreewiseSubspace<F>,
    ) -> Result<bool, LinAlgError> {
        if self.degree != other.degree {
            return Err(LinAlgError::DegreeMismatch(
                self.degree.clone(),
                other.degree.clone(),
            ));
        }
        self.space.is_subspace_of(field, &other.space)
    }
}

/// Parse `a`, `-a`, or `a/b` as an exact fraction.
pub fn parse_fraction(s: &str) -> Option<(BigInt, BigInt)> {
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => Some((n.trim().parse().ok()?, d.trim().parse().ok()?)),
        None => Some((t.parse().ok()?, BigInt::one())),
    }
}
