//! Reference implementations used as oracles by the integration tests.
//! They share no search or saturation code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use border_apolarity::monideal::MonomialIdeal;
use border_apolarity::ring::{DegreeWindow, Exponent, MultiDegree, Space};

/// `u . x^(a) != 0` exactly when `u <= a` componentwise.
fn kills(u: &Exponent, a: &Exponent) -> bool {
    u.0.iter().zip(&a.0).any(|(x, y)| x > y)
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn leaf_ok(
    space: &Space,
    window: &DegreeWindow,
    pieces: &[BTreeSet<Vec<u32>>],
    targets: &[Exponent],
) -> bool {
    let degrees: Vec<&MultiDegree> = window.iter().collect();
    for (i, piece) in pieces.iter().enumerate() {
        for u in piece {
            let ue = Exponent(u.clone());
            if !targets.iter().all(|a| kills(&ue, a)) {
                return false;
            }
            for v in 0..space.num_vars() {
                let (f, _) = space.var_position(v);
                let mut up = degrees[i].0.clone();
                up[f] += 1;
                if let Some(j) = degrees.iter().position(|d| d.0 == up) {
                    let mut w = u.clone();
                    w[v] += 1;
                    if !pieces[j].contains(&w) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Unpruned search: every size-exact subset of every `S_D`, checked only at
/// the leaves.
pub fn brute_force_exists(
    space: &Space,
    targets: &[Exponent],
    r: usize,
    window: &DegreeWindow,
) -> bool {
    let layers: Vec<(Vec<Exponent>, usize)> = window
        .iter()
        .map(|d| {
            let mons = space.enumerate_monomials(d);
            let need = mons.len() - r.min(mons.len());
            (mons, need)
        })
        .collect();
    fn rec(
        space: &Space,
        window: &DegreeWindow,
        layers: &[(Vec<Exponent>, usize)],
        targets: &[Exponent],
        acc: &mut Vec<BTreeSet<Vec<u32>>>,
    ) -> bool {
        let i = acc.len();
        if i == layers.len() {
            return leaf_ok(space, window, acc, targets);
        }
        let (mons, need) = &layers[i];
        for c in combos(mons.len(), *need) {
            acc.push(c.iter().map(|&j| mons[j].0.clone()).collect());
            let found = rec(space, window, layers, targets, acc);
            acc.pop();
            if found {
                return true;
            }
        }
        false
    }
    rec(space, window, &layers, targets, &mut Vec::new())
}

/// `(I : B^k)_D` with `B^k` spanned by all monomials of degree `(k,..,k)`.
fn colon_power_piece(space: &Space, ideal: &MonomialIdeal, k: i64, d: &MultiDegree) -> Vec<Exponent> {
    let kk = MultiDegree(vec![k; space.num_factors()]);
    let multipliers = space.enumerate_monomials(&kk);
    space
        .enumerate_monomials(d)
        .into_iter()
        .filter(|u| multipliers.iter().all(|m| ideal.membership(&u.mul(m))))
        .collect()
}

/// Saturation by stabilization of `I : B^k`, degreewise inside `window`,
/// for `k` up to `max_k`. Returns the final pieces and the last `k` at which
/// they changed, which must stay well below `max_k` for the answer to count.
pub fn saturation_by_stabilization(
    space: &Space,
    ideal: &MonomialIdeal,
    window: &DegreeWindow,
    max_k: i64,
) -> (Vec<Vec<Exponent>>, i64) {
    let mut prev: Vec<Vec<Exponent>> = window
        .iter()
        .map(|d| colon_power_piece(space, ideal, 0, d))
        .collect();
    let mut last_change = 0;
    for k in 1..=max_k {
        let next: Vec<Vec<Exponent>> = window
            .iter()
            .map(|d| colon_power_piece(space, ideal, k, d))
            .collect();
        if next != prev {
            last_change = k;
        }
        prev = next;
    }
    (prev, last_change)
}

/// Random monomial ideal with generators inside `bound`.
pub fn random_monomial_ideal<R: rand::Rng>(
    space: &Space,
    bound: &MultiDegree,
    max_gens: usize,
    rng: &mut R,
) -> MonomialIdeal {
    let window = DegreeWindow::boxed(bound).expect("valid box");
    let all: Vec<Exponent> = window
        .iter()
        .flat_map(|d| space.enumerate_monomials(d))
        .filter(|e| e.total_degree() > 0)
        .collect();
    let n = rng.gen_range(1..=max_gens);
    let gens = (0..n).map(|_| all[rng.gen_range(0..all.len())].clone());
    MonomialIdeal::new(space.num_vars(), gens)
}
