//! Multihomogeneous monomial ideals given by minimal generators.
//!
//! Saturation with respect to the irrelevant ideal `B = (g_1, ..., g_s)` uses
//! `I : B^inf = I : g_1^inf cap ... cap I : g_s^inf`, and for a squarefree
//! monomial `g` the colon `I : g^inf` is obtained by deleting the variables of
//! `g` from every generator.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{Exponent, MultiDegree, Space};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("colon by a non-squarefree monomial")]
    NotSquarefree,
    #[error("colon by the unit monomial")]
    UnitColon,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generator has {got} variables, expected {expected}")]
    Arity { expected: usize, got: usize },
}

/// A monomial ideal, canonically represented by its sorted minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Exponent>,
}

impl MonomialIdeal {
    /// Minimalizes and sorts `gens`.
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Exponent>) -> Self {
        let mut all: Vec<Exponent> = gens.into_iter().collect();
        debug_assert!(all.iter().all(|g| g.len() == nvars));
        all.sort();
        all.dedup();
        let mut minimal: Vec<Exponent> = Vec::with_capacity(all.len());
        for g in all {
            // sorted by total degree, so any divisor of g is already placed
            if !minimal.iter().any(|h| h.divides(&g)) {
                minimal.push(g);
            }
        }
        MonomialIdeal {
            nvars,
            generators: minimal,
        }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            generators: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            generators: vec![Exponent::zero(nvars)],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Exponent] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.first().is_some_and(|g| g.is_one())
    }

    pub fn membership(&self, u: &Exponent) -> bool {
        self.generators.iter().any(|g| g.divides(u))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.generators.iter().all(|g| self.membership(g))
    }

    /// Monomials of `I_D`, in canonical order.
    pub fn degree_piece(&self, space: &Space, d: &MultiDegree) -> Vec<Exponent> {
        space
            .enumerate_monomials(d)
            .into_iter()
            .filter(|u| self.membership(u))
            .collect()
    }

    /// `dim (S/I)_D`.
    pub fn hilbert_function(&self, space: &Space, d: &MultiDegree) -> usize {
        space
            .enumerate_monomials(d)
            .iter()
            .filter(|u| !self.membership(u))
            .count()
    }

    /// `I : g^inf` for squarefree `g`.
    pub fn colon_variable_power(&self, g: &Exponent) -> Result<MonomialIdeal, IdealError> {
        if !g.is_squarefree() {
            return Err(IdealError::NotSquarefree);
        }
        if g.is_one() {
            return Err(IdealError::UnitColon);
        }
        let stripped = self.generators.iter().map(|gen| {
            Exponent(
                gen.0
                    .iter()
                    .zip(&g.0)
                    .map(|(&e, &s)| if s == 1 { 0 } else { e })
                    .collect(),
            )
        });
        Ok(MonomialIdeal::new(self.nvars, stripped))
    }

    /// Pairwise lcm of generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut lcms = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                lcms.push(a.lcm(b));
            }
        }
        MonomialIdeal::new(self.nvars, lcms)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(
            self.nvars,
            self.generators.iter().chain(&other.generators).cloned(),
        )
    }

    /// Saturation with respect to the irrelevant ideal of `space`.
    pub fn saturate(&self, space: &Space) -> MonomialIdeal {
        let mut acc: Option<MonomialIdeal> = None;
        for g in space.irrelevant_ideal().generators() {
            let colon = self
                .colon_variable_power(g)
                .expect("irrelevant generators are squarefree and nonconstant");
            acc = Some(match acc {
                None => colon,
                Some(a) => a.intersect(&colon),
            });
        }
        acc.unwrap_or_else(|| self.clone())
    }

    pub fn is_saturated(&self, space: &Space) -> bool {
        self.saturate(space) == *self
    }

    /// One monomial per line in the `x{i},{j}^e` notation.
    pub fn to_text(&self, space: &Space) -> String {
        let mut out = String::new();
        for g in &self.generators {
            out.push_str(&format_monomial(space, g));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(space: &Space, text: &str) -> Result<MonomialIdeal, IdealError> {
        let mut gens = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let l = line.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                continue;
            }
            let e = parse_monomial(space, l).map_err(|msg| IdealError::Parse {
                line: lineno + 1,
                msg,
            })?;
            gens.push(e);
        }
        Ok(MonomialIdeal::new(space.num_vars(), gens))
    }

    /// JSON list of exponent vectors.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.generators).expect("exponents serialize")
    }

    pub fn from_json(space: &Space, value: &serde_json::Value) -> Result<MonomialIdeal, IdealError> {
        let gens: Vec<Exponent> =
            serde_json::from_value(value.clone()).map_err(|e| IdealError::Parse {
                line: 0,
                msg: e.to_string(),
            })?;
        for g in &gens {
            if g.len() != space.num_vars() {
                return Err(IdealError::Arity {
                    expected: space.num_vars(),
                    got: g.len(),
                });
            }
        }
        Ok(MonomialIdeal::new(space.num_vars(), gens))
    }

    /// Reads either the JSON or the line-based text format.
    pub fn parse_any(space: &Space, text: &str) -> Result<MonomialIdeal, IdealError> {
        if text.trim_start().starts_with('[') {
            let v: serde_json::Value =
                serde_json::from_str(text).map_err(|e| IdealError::Parse {
                    line: 0,
                    msg: e.to_string(),
                })?;
            MonomialIdeal::from_json(space, &v)
        } else {
            MonomialIdeal::parse_text(space, text)
        }
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.generators.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let gens = Vec::<Exponent>::deserialize(d)?;
        let nvars = gens.first().map(|g| g.len()).unwrap_or(0);
        if gens.iter().any(|g| g.len() != nvars) {
            return Err(serde::de::Error::custom("generators of mixed length"));
        }
        Ok(MonomialIdeal::new(nvars, gens))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{:?}", g.0))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `x1,0^2 x2,1` style: 1-based factor, 0-based slot; plain `x0^2 x1` on a
/// single projective space. `1` for the unit.
pub fn format_monomial(space: &Space, e: &Exponent) -> String {
    let single = space.num_factors() == 1;
    let parts: Vec<String> = e
        .0
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(idx, &k)| {
            let (factor, slot) = space.var_position(idx);
            let var = if single {
                format!("x{slot}")
            } else {
                format!("x{},{}", factor + 1, slot)
            };
            if k == 1 {
                var
            } else {
                format!("{var}^{k}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

/// Parses a monomial written as whitespace- or `*`-separated factors.
///
/// Each factor is `x{i},{j}[^e]` (1-based factor `i`, slot `j`) or
/// `x{v}[^e]` with `v` a flattened 0-based variable index. `1` is the unit.
pub fn parse_monomial(space: &Space, s: &str) -> Result<Exponent, String> {
    let mut e = Exponent::zero(space.num_vars());
    let t = s.trim();
    if t == "1" {
        return Ok(e);
    }
    for tok in t.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
        let body = tok
            .strip_prefix('x')
            .or_else(|| tok.strip_prefix('a'))
            .ok_or_else(|| format!("bad factor {tok:?}"))?;
        let (var, pow) = match body.split_once('^') {
            Some((v, p)) => (v, p.parse::<u32>().map_err(|_| format!("bad exponent in {tok:?}"))?),
            None => (body, 1),
        };
        let idx = match var.split_once(',') {
            Some((i, j)) => {
                let i: usize = i.parse().map_err(|_| format!("bad factor index in {tok:?}"))?;
                let j: usize = j.parse().map_err(|_| format!("bad slot in {tok:?}"))?;
                if i == 0 || i > space.num_factors() || j > space.factor_dims()[i - 1] {
                    return Err(format!("variable {tok:?} not in {space}"));
                }
                space.var_index(i - 1, j)
            }
            None => {
                let v: usize = var.parse().map_err(|_| format!("bad variable in {tok:?}"))?;
                if v >= space.num_vars() {
                    return Err(format!("variable {tok:?} not in {space}"));
                }
                v
            }
        };
        e.0[idx] += pow;
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(v: &[u32]) -> Exponent {
        Exponent(v.to_vec())
    }

    fn deg(v: &[i64]) -> MultiDegree {
        MultiDegree(v.to_vec())
    }

    #[test]
    fn membership() {
        let i = MonomialIdeal::new(3, [ex(&[2, 0, 0]), ex(&[0, 1, 1])]);
        assert!(i.membership(&ex(&[2, 0, 0])));
        assert!(!i.membership(&ex(&[0, 0, 0])));
        assert!(i.membership(&ex(&[2, 1, 0])));
        assert!(!i.membership(&ex(&[1, 1, 0])));
    }

    #[test]
    fn minimalization() {
        let i = MonomialIdeal::new(2, [ex(&[2, 1]), ex(&[1, 0]), ex(&[1, 0]), ex(&[0, 3])]);
        assert_eq!(i.generators(), &[ex(&[1, 0]), ex(&[0, 3])]);
    }

    #[test]
    fn hilbert_functions() {
        let p2 = Space::projective(2);
        assert_eq!(MonomialIdeal::zero(3).hilbert_function(&p2, &deg(&[3])), 10);
        let i = MonomialIdeal::new(3, [ex(&[2, 0, 0]), ex(&[0, 2, 0]), ex(&[0, 0, 3])]);
        // standard monomials of degree 4 with exponents <= (1,1,2): only x0 x1 x2^2
        let brute = p2
            .enumerate_monomials(&deg(&[4]))
            .iter()
            .filter(|u| u.0[0] <= 1 && u.0[1] <= 1 && u.0[2] <= 2)
            .count();
        assert_eq!(brute, 1);
        assert_eq!(i.hilbert_function(&p2, &deg(&[4])), 1);
        let p1p1: Space = "P1xP1".parse().unwrap();
        assert_eq!(p1p1.irrelevant_ideal().hilbert_function(&p1p1, &deg(&[1, 1])), 0);
        assert_eq!(MonomialIdeal::unit(4).hilbert_function(&p1p1, &deg(&[2, 1])), 0);
    }

    #[test]
    fn colon_by_variable_powers() {
        let i = MonomialIdeal::new(2, [ex(&[2, 1])]);
        assert_eq!(
            i.colon_variable_power(&ex(&[0, 1])).unwrap(),
            MonomialIdeal::new(2, [ex(&[2, 0])])
        );
        let sat = MonomialIdeal::new(2, [ex(&[2, 0])]);
        assert_eq!(sat.colon_variable_power(&ex(&[0, 1])).unwrap(), sat);
        assert_eq!(
            i.colon_variable_power(&ex(&[0, 2])),
            Err(IdealError::NotSquarefree)
        );
        assert_eq!(i.colon_variable_power(&ex(&[0, 0])), Err(IdealError::UnitColon));
    }

    #[test]
    fn saturation_examples() {
        let p1 = Space::projective(1);
        let i = MonomialIdeal::new(2, [ex(&[2, 0]), ex(&[1, 1])]);
        assert_eq!(i.saturate(&p1), MonomialIdeal::new(2, [ex(&[1, 0])]));
        assert!(!i.is_saturated(&p1));
        assert!(p1.irrelevant_ideal().saturate(&p1).is_unit());
        let point = MonomialIdeal::new(2, [ex(&[0, 1])]);
        assert!(point.is_saturated(&p1));
        assert!(MonomialIdeal::unit(2).is_saturated(&p1));
        let p1p1: Space = "P1xP1".parse().unwrap();
        assert!(p1p1.irrelevant_ideal().saturate(&p1p1).is_unit());
        // (x_{1,0}) cuts out {pt} x P^1
        let fibre = MonomialIdeal::new(4, [ex(&[1, 0, 0, 0])]);
        assert!(fibre.is_saturated(&p1p1));
    }

    #[test]
    fn intersections() {
        let i = MonomialIdeal::new(2, [ex(&[1, 0])]);
        let j = MonomialIdeal::new(2, [ex(&[0, 1])]);
        assert_eq!(i.intersect(&i), i);
        assert_eq!(i.intersect(&j), MonomialIdeal::new(2, [ex(&[1, 1])]));
        assert!(i.intersect(&MonomialIdeal::zero(2)).is_zero());
    }

    #[test]
    fn text_round_trip() {
        let s: Space = "P1xP1".parse().unwrap();
        let i = MonomialIdeal::new(4, [ex(&[2, 0, 0, 1]), ex(&[0, 1, 1, 0])]);
        let text = i.to_text(&s);
        assert_eq!(text, "x1,1 x2,0\nx1,0^2 x2,1\n");
        assert_eq!(MonomialIdeal::parse_text(&s, &text).unwrap(), i);
        let v = i.to_json();
        assert_eq!(MonomialIdeal::from_json(&s, &v).unwrap(), i);
        assert_eq!(MonomialIdeal::parse_any(&s, &v.to_string()).unwrap(), i);
        assert!(MonomialIdeal::parse_text(&s, "x3,0").is_err());
        let p2 = Space::projective(2);
        assert_eq!(parse_monomial(&p2, "x0^1 x1^1 x2^2").unwrap(), ex(&[1, 1, 2]));
        assert_eq!(parse_monomial(&p2, "1").unwrap(), ex(&[0, 0, 0]));
    }
}
