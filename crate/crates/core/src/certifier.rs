//! Border-rank lower bounds by exhaustive search over monomial ideals.
//!
//! For a torus-fixed target `E` (a span of monomials in `S~_L`), `E` lies in
//! the `r`-th (Grassmann) secant variety only if some torus-fixed, i.e.
//! monomial, ideal `I ⊆ Ann(E)` has Hilbert function `min(r, dim S_D)` in
//! every degree. The search below looks for such an ideal truncated to a
//! finite [`DegreeWindow`]: a family of monomial sets, one per degree, closed
//! under multiplication inside the window, of the required sizes and
//! contained in `Ann(E)`.
//!
//! * `Nonexistent` means the exhaustive search found nothing: the border
//!   rank of `E` exceeds `r`.
//! * `Candidate` is a flag satisfying every constraint inside the window. It
//!   is a necessary-condition witness, never a rank statement.
//! * `Undecided` means the node budget ran out.
//!
//! Degrees are processed in window order. At each degree the multiples of
//! the previous pieces are forced; the search branches over the ways of
//! completing the forced set to the required size with admissible monomials,
//! lexicographically least completions first.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::apolar::{
    annihilator_of_monomials, containment_in_annihilator, contract, DualElement, DualSubspace,
    MonomialPieces,
};
use crate::exactla::{Field, Rationals};
use crate::monideal::format_monomial;
use crate::ring::{DegreeWindow, Exponent, MultiDegree, RingError, Space};

pub const CERTIFICATE_SCHEMA: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("target is not spanned by monomials; the monomial search would be unsound")]
    NotTorusFixed,
    #[error("target is empty")]
    EmptyTarget,
    #[error("target monomials have different degrees")]
    MixedDegrees,
    #[error("window must contain every degree D <= {0}")]
    WindowTooSmall(MultiDegree),
    #[error("r must be at least 1")]
    ZeroRank,
}

/// Monomial pieces of a candidate ideal, one per window degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedIdealFlag {
    window: DegreeWindow,
    pieces: BTreeMap<MultiDegree, Vec<Exponent>>,
}

impl TruncatedIdealFlag {
    /// Pieces are sorted; missing window degrees become empty pieces.
    pub fn new(window: DegreeWindow, pieces: BTreeMap<MultiDegree, Vec<Exponent>>) -> Self {
        let mut pieces = pieces;
        for d in window.iter() {
            pieces.entry(d.clone()).or_default();
        }
        for p in pieces.values_mut() {
            p.sort();
            p.dedup();
        }
        TruncatedIdealFlag { window, pieces }
    }

    pub fn window(&self) -> &DegreeWindow {
        &self.window
    }

    pub fn piece(&self, d: &MultiDegree) -> Option<&[Exponent]> {
        self.pieces.get(d).map(|v| v.as_slice())
    }

    pub fn pieces(&self) -> &BTreeMap<MultiDegree, Vec<Exponent>> {
        &self.pieces
    }

    pub fn pieces_mut(&mut self) -> &mut BTreeMap<MultiDegree, Vec<Exponent>> {
        &mut self.pieces
    }

    /// Multiplicative closure inside the window.
    pub fn is_closed(&self, space: &Space) -> bool {
        for (d, piece) in &self.pieces {
            for u in piece {
                for v in 0..space.num_vars() {
                    let (factor, _) = space.var_position(v);
                    let up = d.add(&MultiDegree::unit(space.num_factors(), factor));
                    if let Some(target) = self.pieces.get(&up) {
                        if target.binary_search(&u.times_variable(v)).is_err() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

impl MonomialPieces for TruncatedIdealFlag {
    fn monomials_in_degree(&self, _space: &Space, d: &MultiDegree) -> Option<Vec<Exponent>> {
        self.pieces.get(d).cloned()
    }
}

#[derive(Serialize)]
struct FlagPieceJson<'a> {
    degree: &'a MultiDegree,
    size: usize,
    monomials: &'a [Exponent],
}

impl Serialize for TruncatedIdealFlag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pieces: Vec<FlagPieceJson<'_>> = self
            .window
            .iter()
            .map(|d| {
                let m = self.pieces.get(d).map(|v| v.as_slice()).unwrap_or(&[]);
                FlagPieceJson {
                    degree: d,
                    size: m.len(),
                    monomials: m,
                }
            })
            .collect();
        pieces.serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Candidate,
    Nonexistent,
    Undecided,
}

impl Verdict {
    pub fn letter(self) -> char {
        match self {
            Verdict::Candidate => 'C',
            Verdict::Nonexistent => 'N',
            Verdict::Undecided => 'U',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceRequirement {
    pub degree: MultiDegree,
    pub dim: usize,
    pub required: usize,
    pub admissible: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub schema: u32,
    pub space: Space,
    pub target: Vec<Exponent>,
    pub target_degree: MultiDegree,
    pub r: usize,
    pub window: DegreeWindow,
    pub requirements: Vec<PieceRequirement>,
    pub verdict: Verdict,
    pub nodes_explored: u64,
    pub trace_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<TruncatedIdealFlag>,
    /// Result of [`validate_candidate`] on the emitted flag.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub revalidated: Option<bool>,
}

impl Certificate {
    /// `Some(r + 1)` for a nonexistence certificate.
    pub fn lower_bound(&self) -> Option<usize> {
        (self.verdict == Verdict::Nonexistent).then_some(self.r + 1)
    }

    pub fn summary(&self, space: &Space) -> String {
        let target: Vec<String> = self.target.iter().map(|t| format_monomial(space, t)).collect();
        let what = match self.verdict {
            Verdict::Nonexistent => format!(
                "necessary condition for r={} fails: no monomial ideal with generic Hilbert function inside Ann(E) on the window; border rank >= {}",
                self.r,
                self.r + 1
            ),
            Verdict::Candidate => format!(
                "necessary condition for r={} passes: a monomial ideal with generic Hilbert function inside Ann(E) exists on the window",
                self.r
            ),
            Verdict::Undecided => format!(
                "necessary condition for r={} undecided: node budget exhausted",
                self.r
            ),
        };
        format!(
            "E = <{}> in degree {} on {}: {} ({} nodes)",
            target.join("; "),
            self.target_degree,
            space,
            what,
            self.nodes_explored
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Node budget; `None` for unbounded.
    pub max_nodes: Option<u64>,
}

/// The window used when none is given: every `D <= L`.
pub fn default_window(l: &MultiDegree) -> Result<DegreeWindow, RingError> {
    DegreeWindow::boxed(l)
}

/// Entry point for a dual subspace; refuses targets that are not torus-fixed.
pub fn certify<F: Field>(
    space: &Space,
    e: &DualSubspace<F>,
    r: usize,
    window: &DegreeWindow,
    opts: CertifyOptions,
) -> Result<Certificate, CertifyError> {
    let mons = e.monomials().ok_or(CertifyError::NotTorusFixed)?;
    certify_monomials(space, &mons, r, window, opts)
}

fn check_target(space: &Space, targets: &[Exponent]) -> Result<MultiDegree, CertifyError> {
    let first = targets.first().ok_or(CertifyError::EmptyTarget)?;
    for t in targets {
        space.check_exponent(t)?;
    }
    let l = space.block_degree(first);
    if targets.iter().any(|t| space.block_degree(t) != l) {
        return Err(CertifyError::MixedDegrees);
    }
    Ok(l)
}

/// Search for `E = span(targets)`.
pub fn certify_monomials(
    space: &Space,
    targets: &[Exponent],
    r: usize,
    window: &DegreeWindow,
    opts: CertifyOptions,
) -> Result<Certificate, CertifyError> {
    if r == 0 {
        return Err(CertifyError::ZeroRank);
    }
    let l = check_target(space, targets)?;
    if window.arity() != space.num_factors() || !window.covers_box(&l) {
        return Err(CertifyError::WindowTooSmall(l));
    }
    let mut targets = targets.to_vec();
    targets.sort();
    targets.dedup();

    let layers = build_layers(space, &targets, r, window);
    let requirements = layers
        .iter()
        .map(|layer| PieceRequirement {
            degree: layer.degree.clone(),
            dim: layer.monomials.len(),
            required: layer.required,
            admissible: layer.admissible.iter().filter(|&&a| a).count(),
        })
        .collect();
    let outcome = run_search(&layers, opts.max_nodes.unwrap_or(u64::MAX));

    let flag = outcome.chosen.as_ref().map(|chosen| {
        let pieces = layers
            .iter()
            .zip(chosen)
            .map(|(layer, idx)| {
                (
                    layer.degree.clone(),
                    idx.iter().map(|&i| layer.monomials[i].clone()).collect(),
                )
            })
            .collect();
        TruncatedIdealFlag::new(window.clone(), pieces)
    });
    let revalidated = flag
        .as_ref()
        .map(|f| validate_candidate(space, f, &targets, r));

    Ok(Certificate {
        schema: CERTIFICATE_SCHEMA,
        space: space.clone(),
        target: targets,
        target_degree: l,
        r,
        window: window.clone(),
        requirements,
        verdict: outcome.verdict,
        nodes_explored: outcome.nodes,
        trace_hash: hex::encode(outcome.trace),
        flag,
        revalidated,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub r: usize,
    pub verdict: Verdict,
    pub nodes_explored: u64,
    pub trace_hash: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub schema: u32,
    pub space: Space,
    pub target: Vec<Exponent>,
    pub window: DegreeWindow,
    pub rows: Vec<ScanRow>,
    /// `1 + max{r : NONEXISTENT}`.
    pub lower_bound: usize,
    pub any_undecided: bool,
    #[serde(skip)]
    pub certificates: Vec<Certificate>,
}

impl ScanReport {
    pub fn verdict_string(&self) -> String {
        self.rows.iter().map(|r| r.verdict.letter()).collect()
    }
}

/// Independent certificates for `r = 1..=r_max`.
pub fn lower_bound_scan(
    space: &Space,
    targets: &[Exponent],
    r_max: usize,
    window: &DegreeWindow,
    opts: CertifyOptions,
) -> Result<ScanReport, CertifyError> {
    if r_max == 0 {
        return Err(CertifyError::ZeroRank);
    }
    let certificates = (1..=r_max)
        .map(|r| certify_monomials(space, targets, r, window, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<ScanRow> = certificates
        .iter()
        .map(|c| ScanRow {
            r: c.r,
            verdict: c.verdict,
            nodes_explored: c.nodes_explored,
            trace_hash: c.trace_hash.clone(),
        })
        .collect();
    let lower_bound = 1 + certificates
        .iter()
        .filter(|c| c.verdict == Verdict::Nonexistent)
        .map(|c| c.r)
        .max()
        .unwrap_or(0);
    let any_undecided = rows.iter().any(|r| r.verdict == Verdict::Undecided);
    let first = &certificates[0];
    Ok(ScanReport {
        schema: CERTIFICATE_SCHEMA,
        space: space.clone(),
        target: first.target.clone(),
        window: window.clone(),
        rows,
        lower_bound,
        any_undecided,
        certificates,
    })
}

/// Rechecks a flag from scratch: every window degree present, pieces made
/// of degree-`D` monomials of size `dim S_D - min(r, dim S_D)`, closure under
/// multiplication, every monomial contracting each target to zero, and the
/// degree-`L` containment that controls all degrees.
pub fn validate_candidate(
    space: &Space,
    flag: &TruncatedIdealFlag,
    targets: &[Exponent],
    r: usize,
) -> bool {
    let Ok(l) = check_target(space, targets) else {
        return false;
    };
    if !flag.window.covers_box(&l) {
        return false;
    }
    if flag.pieces.keys().any(|d| !flag.window.contains(d)) {
        return false;
    }
    let field = Rationals;
    let duals: Vec<DualElement<Rationals>> = targets
        .iter()
        .map(|t| DualElement::monomial(&field, space, t.clone()))
        .collect();
    for d in flag.window.iter() {
        let Some(piece) = flag.pieces.get(d) else {
            return false;
        };
        let dim = space.dim_degree(d);
        if piece.len() != dim - r.min(dim) {
            return false;
        }
        if piece.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for u in piece {
            if u.len() != space.num_vars() || space.block_degree(u) != *d {
                return false;
            }
            if duals.iter().any(|f| !contract(space, u, f).is_zero()) {
                return false;
            }
        }
    }
    if !flag.is_closed(space) {
        return false;
    }
    let Ok(e) = DualSubspace::new(&field, space, &duals) else {
        return false;
    };
    containment_in_annihilator(&field, space, flag, &e)
}

struct Layer {
    degree: MultiDegree,
    monomials: Vec<Exponent>,
    admissible: Vec<bool>,
    required: usize,
    /// `(predecessor layer, image indices in this layer of each of its monomials)`.
    preds: Vec<(usize, Vec<Vec<usize>>)>,
}

fn build_layers(space: &Space, targets: &[Exponent], r: usize, window: &DegreeWindow) -> Vec<Layer> {
    let ann = annihilator_of_monomials(space, targets);
    let k = space.num_factors();
    let mut layers: Vec<Layer> = Vec::with_capacity(window.len());
    for d in window.iter() {
        let monomials = space.enumerate_monomials(d);
        let index = space.monomial_index(d);
        let admissible = monomials.iter().map(|u| ann.membership(u)).collect();
        let dim = monomials.len();
        let mut preds = Vec::new();
        for factor in 0..k {
            if d.0[factor] == 0 {
                continue;
            }
            let below = d.sub(&MultiDegree::unit(k, factor));
            let j = window.index_of(&below).expect("window is downward closed");
            let images = layers[j]
                .monomials
                .iter()
                .map(|u| {
                    space
                        .factor_range(factor)
                        .map(|v| index[&u.times_variable(v)])
                        .collect()
                })
                .collect();
            preds.push((j, images));
        }
        layers.push(Layer {
            degree: d.clone(),
            monomials,
            admissible,
            required: dim - r.min(dim),
            preds,
        });
    }
    layers
}

/// Completions of the forced set at `layer`, or `None` when it is pruned.
fn branch_data(layer: &Layer, chosen: &[Vec<usize>]) -> Option<(Vec<usize>, Vec<usize>, usize)> {
    let n = layer.monomials.len();
    let mut forced = vec![false; n];
    for (j, images) in &layer.preds {
        for &u in &chosen[*j] {
            for &t in &images[u] {
                forced[t] = true;
            }
        }
    }
    let forced_idx: Vec<usize> = (0..n).filter(|&i| forced[i]).collect();
    if forced_idx.len() > layer.required || forced_idx.iter().any(|&i| !layer.admissible[i]) {
        return None;
    }
    let extras: Vec<usize> = (0..n).filter(|&i| !forced[i] && layer.admissible[i]).collect();
    let need = layer.required - forced_idx.len();
    if need > extras.len() {
        return None;
    }
    Some((forced_idx, extras, need))
}

fn merge(forced: &[usize], extras: &[usize], pick: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = forced.to_vec();
    out.extend(pick.iter().map(|&p| extras[p]));
    out.sort_unstable();
    out
}

/// Index combinations of `0..n` of size `k` in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            started: false,
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.idx.clone());
        }
        let k = self.idx.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(self.idx.clone());
            }
        }
        self.done = true;
        None
    }
}

fn encode_node(buf: &mut Vec<u8>, layer: usize, piece: &[usize]) {
    buf.extend_from_slice(&(layer as u32).to_le_bytes());
    buf.extend_from_slice(&(piece.len() as u32).to_le_bytes());
    for &p in piece {
        buf.extend_from_slice(&(p as u32).to_le_bytes());
    }
}

enum SubOutcome {
    Found(Vec<Vec<usize>>),
    Exhausted,
    Budget,
    Cancelled,
}

struct Subtree<'a> {
    layers: &'a [Layer],
    budget: u64,
    count: u64,
    hasher: Sha256,
    scratch: Vec<u8>,
    cancel: &'a AtomicUsize,
    index: usize,
}

impl Subtree<'_> {
    fn visit(&mut self, layer: usize, piece: &[usize]) -> bool {
        self.count += 1;
        self.scratch.clear();
        encode_node(&mut self.scratch, layer, piece);
        self.hasher.update(&self.scratch);
        self.count <= self.budget
    }

    fn dfs(&mut self, chosen: &mut Vec<Vec<usize>>) -> SubOutcome {
        let d = chosen.len();
        if d == self.layers.len() {
            return SubOutcome::Found(chosen.clone());
        }
        if self.cancel.load(Ordering::Relaxed) < self.index {
            return SubOutcome::Cancelled;
        }
        let Some((forced, extras, need)) = branch_data(&self.layers[d], chosen) else {
            return SubOutcome::Exhausted;
        };
        for pick in Combinations::new(extras.len(), need) {
            let piece = merge(&forced, &extras, &pick);
            if !self.visit(d, &piece) {
                return SubOutcome::Budget;
            }
            chosen.push(piece);
            let out = self.dfs(chosen);
            chosen.pop();
            match out {
                SubOutcome::Exhausted => continue,
                other => return other,
            }
        }
        SubOutcome::Exhausted
    }
}

struct SearchOutcome {
    verdict: Verdict,
    chosen: Option<Vec<Vec<usize>>>,
    nodes: u64,
    trace: [u8; 32],
}

/// Walks the forced chain from the root to the first degree with more than
/// one completion, then explores those subtrees (in parallel when a rayon
/// pool allows it) and reduces their results in DFS order. The reduction,
/// node counts and trace depend only on the inputs, not on scheduling.
fn run_search(layers: &[Layer], max_nodes: u64) -> SearchOutcome {
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    let mut prefix_nodes: u64 = 0;
    let mut prefix_bytes: Vec<u8> = Vec::new();
    let finish = |verdict, chosen, nodes, prefix_bytes: &[u8], digests: &[[u8; 32]]| {
        let mut h = Sha256::new();
        h.update(prefix_bytes);
        for d in digests {
            h.update(d);
        }
        SearchOutcome {
            verdict,
            chosen,
            nodes,
            trace: h.finalize().into(),
        }
    };
    loop {
        let d = chosen.len();
        if d == layers.len() {
            return finish(Verdict::Candidate, Some(chosen), prefix_nodes, &prefix_bytes, &[]);
        }
        let Some((forced, extras, need)) = branch_data(&layers[d], &chosen) else {
            return finish(Verdict::Nonexistent, None, prefix_nodes, &prefix_bytes, &[]);
        };
        let children: Vec<Vec<usize>> = Combinations::new(extras.len(), need)
            .map(|pick| merge(&forced, &extras, &pick))
            .collect();
        if children.len() == 1 {
            prefix_nodes += 1;
            if prefix_nodes > max_nodes {
                return finish(Verdict::Undecided, None, max_nodes, &prefix_bytes, &[]);
            }
            let child = children.into_iter().next().expect("one child");
            encode_node(&mut prefix_bytes, d, &child);
            chosen.push(child);
            continue;
        }

        let remaining = max_nodes - prefix_nodes;
        let best = AtomicUsize::new(usize::MAX);
        let results: Vec<(SubOutcome, u64, [u8; 32])> = children
            .par_iter()
            .enumerate()
            .map(|(i, child)| {
                if best.load(Ordering::Relaxed) < i {
                    return (SubOutcome::Cancelled, 0, [0u8; 32]);
                }
                let mut sub = Subtree {
                    layers,
                    budget: remaining,
                    count: 0,
                    hasher: Sha256::new(),
                    scratch: Vec::new(),
                    cancel: &best,
                    index: i,
                };
                let out = if sub.visit(d, child) {
                    let mut path = chosen.clone();
                    path.push(child.clone());
                    sub.dfs(&mut path)
                } else {
                    SubOutcome::Budget
                };
                if matches!(out, SubOutcome::Found(_)) {
                    best.fetch_min(i, Ordering::Relaxed);
                }
                (out, sub.count, sub.hasher.finalize().into())
            })
            .collect();

        let mut total = prefix_nodes;
        let mut digests = Vec::new();
        for (out, count, digest) in results {
            total = total.saturating_add(count);
            digests.push(digest);
            if total > max_nodes {
                return finish(Verdict::Undecided, None, max_nodes, &prefix_bytes, &digests);
            }
            match out {
                SubOutcome::Found(path) => {
                    return finish(Verdict::Candidate, Some(path), total, &prefix_bytes, &digests);
                }
                SubOutcome::Exhausted => {}
                SubOutcome::Budget => {
                    return finish(Verdict::Undecided, None, max_nodes, &prefix_bytes, &digests);
                }
                SubOutcome::Cancelled => unreachable!("cancelled subtrees follow a found one"),
            }
        }
        return finish(Verdict::Nonexistent, None, total, &prefix_bytes, &digests);
    }
}

/// Parses `x0^1 x1^1 x2^2`; several monomials separated by `;` span a
/// higher-dimensional target.
pub fn parse_target(space: &Space, text: &str) -> Result<Vec<Exponent>, String> {
    text.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            if t.contains('+') {
                return Err(format!("{t:?} is not a monomial"));
            }
            crate::monideal::parse_monomial(space, t)
        })
        .collect()
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

    fn verdicts(space: &Space, target: &[Exponent], r_max: usize) -> String {
        let l = space.block_degree(&target[0]);
        let w = default_window(&l).unwrap();
        lower_bound_scan(space, target, r_max, &w, CertifyOptions::default())
            .unwrap()
            .verdict_string()
    }

    #[test]
    fn combinations_in_lex_order() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn monomial_border_rank_examples() {
        let p2 = Space::projective(2);
        assert_eq!(verdicts(&p2, &[ex(&[1, 1, 2])], 4), "NNNC");
        assert_eq!(verdicts(&p2, &[ex(&[1, 1, 1])], 4), "NNNC");
        assert_eq!(verdicts(&p2, &[ex(&[1, 1, 3])], 4), "NNNC");
    }

    #[test]
    fn pure_powers_have_rank_one() {
        for n in 1..4 {
            let s = Space::projective(n);
            let mut a = vec![0u32; n + 1];
            a[0] = 3;
            let l = deg(&[3]);
            let c = certify_monomials(&s, &[Exponent(a)], 1, &default_window(&l).unwrap(), CertifyOptions::default()).unwrap();
            assert_eq!(c.verdict, Verdict::Candidate);
            assert_eq!(c.revalidated, Some(true));
        }
    }

    #[test]
    fn grassmann_target_with_two_points() {
        let p1 = Space::projective(1);
        let target = [ex(&[2, 0]), ex(&[0, 2])];
        let w = default_window(&deg(&[2])).unwrap();
        let c = certify_monomials(&p1, &target, 2, &w, CertifyOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Candidate);
        let c1 = certify_monomials(&p1, &target, 1, &w, CertifyOptions::default()).unwrap();
        assert_eq!(c1.verdict, Verdict::Nonexistent);
    }

    #[test]
    fn refusals() {
        let p2 = Space::projective(2);
        let f = Rationals;
        let g = DualElement::parse_text(&f, &p2, "x0^2 + x1^2").unwrap();
        let e = DualSubspace::span_of(&f, &p2, &g).unwrap();
        let w = default_window(&deg(&[2])).unwrap();
        assert_eq!(
            certify(&p2, &e, 2, &w, CertifyOptions::default()),
            Err(CertifyError::NotTorusFixed)
        );
        let small = default_window(&deg(&[1])).unwrap();
        assert_eq!(
            certify_monomials(&p2, &[ex(&[2, 0, 0])], 2, &small, CertifyOptions::default()),
            Err(CertifyError::WindowTooSmall(deg(&[2])))
        );
        assert_eq!(
            certify_monomials(&p2, &[ex(&[2, 0, 0]), ex(&[1, 0, 0])], 2, &w, CertifyOptions::default()),
            Err(CertifyError::MixedDegrees)
        );
        assert!(parse_target(&p2, "x0^2 + x1^2").is_err());
    }

    #[test]
    fn budget_exhaustion_is_undecided() {
        let p2 = Space::projective(2);
        let w = default_window(&deg(&[4])).unwrap();
        let c = certify_monomials(&p2, &[ex(&[1, 1, 2])], 3, &w, CertifyOptions { max_nodes: Some(1) }).unwrap();
        assert_eq!(c.verdict, Verdict::Undecided);
        assert!(c.lower_bound().is_none());
        let full = certify_monomials(&p2, &[ex(&[1, 1, 2])], 3, &w, CertifyOptions::default()).unwrap();
        assert_eq!(full.verdict, Verdict::Nonexistent);
        let exact = certify_monomials(
            &p2,
            &[ex(&[1, 1, 2])],
            3,
            &w,
            CertifyOptions { max_nodes: Some(full.nodes_explored) },
        )
        .unwrap();
        assert_eq!(exact.verdict, Verdict::Nonexistent);
    }

    #[test]
    fn validation_rejects_broken_flags() {
        let p2 = Space::projective(2);
        let target = [ex(&[1, 1, 2])];
        let w = default_window(&deg(&[4])).unwrap();
        let c = certify_monomials(&p2, &target, 4, &w, CertifyOptions::default()).unwrap();
        let flag = c.flag.unwrap();
        assert!(validate_candidate(&p2, &flag, &target, 4));

        let mut missing = flag.clone();
        missing.pieces_mut().get_mut(&deg(&[4])).unwrap().pop();
        assert!(!validate_candidate(&p2, &missing, &target, 4));

        // swap a degree-2 generator for another admissible-size set that
        // breaks closure
        let mut open = flag.clone();
        let two = open.pieces_mut().get_mut(&deg(&[2])).unwrap();
        two.clear();
        two.extend([ex(&[2, 0, 0]), ex(&[1, 1, 0])]);
        two.sort();
        assert!(!open.is_closed(&p2));
        assert!(!validate_candidate(&p2, &open, &target, 4));
    }

    #[test]
    fn scaling_the_target_changes_nothing() {
        let f = Rationals;
        let p2 = Space::projective(2);
        let m = DualElement::monomial(&f, &p2, ex(&[1, 1, 2]));
        let scaled = m.scale(&f, &f.from_i64(-7));
        let w = default_window(&deg(&[4])).unwrap();
        for r in 1..=4 {
            let a = certify(&p2, &DualSubspace::span_of(&f, &p2, &m).unwrap(), r, &w, CertifyOptions::default()).unwrap();
            let b = certify(&p2, &DualSubspace::span_of(&f, &p2, &scaled).unwrap(), r, &w, CertifyOptions::default()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn multigraded_target() {
        // x_{1,0} x_{1,1} x_{2,0} x_{2,1} on P1xP1: a product of two rank-2
        // binary forms; border rank 4 (the Segre product of two rank-2 points)
        let s: Space = "P1xP1".parse().unwrap();
        let v = verdicts(&s, &[ex(&[1, 1, 1, 1])], 4);
        assert_eq!(v.len(), 4);
        assert!(v.starts_with('N'));
        assert!(v.ends_with('C'));
    }
}
