//! Weighted dissociation sets: a local-ratio 2-approximation with a
//! self-certifying lower bound, and an exact branch-and-bound solver.
//!
//! # The approximation
//!
//! For a vertex `u` of residual degree `d >= 2`, every dissociation set
//! contains `u` or at least `d - 1` of its neighbours. The weight function
//! putting `d - 1` on `u` and `1` on each residual neighbour therefore costs
//! any feasible set at least `d - 1`. Each round picks the residual vertex of
//! largest degree, subtracts the largest multiple `eps` of that function the
//! residual weights allow, and credits `eps * (d - 1)` to the lower bound.
//! Vertices whose weight reaches zero become tentative deletions.
//!
//! A reverse-delete pass then restores tentative vertices, newest first,
//! whenever that keeps the set valid. Neighbours of a round's center that had
//! left the residual graph earlier were inserted earlier, so they are still
//! deleted when the center is examined; a center kept in the final set thus
//! has some residual neighbour restored. This bounds what the final set pays
//! per round by `2 * eps * (d - 1)`, and summing over rounds gives
//! `weight <= 2 * lower_bound`, which every run asserts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The exact solver refuses larger inputs.
pub const EXACT_MAX_N: usize = 22;

/// Relative slack used when comparing accumulated floating-point weights.
const REL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalRatioStep {
    pub center: usize,
    pub degree: usize,
    pub epsilon: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DissociationResult {
    pub deleted: VertexSet,
    pub weight: f64,
    pub lower_bound: f64,
    pub trace: Vec<LocalRatioStep>,
}

pub fn approx_dissociation_2(g: &Graph) -> DissociationResult {
    let n = g.n();
    let mut w: Vec<f64> = g.weights().to_vec();
    let mut in_h: Vec<bool> = w.iter().map(|&x| x > 0.0).collect();
    let mut tentative: Vec<usize> = (0..n).filter(|&v| !in_h[v]).collect();
    let mut deg: Vec<usize> = (0..n)
        .map(|v| if in_h[v] { g.neighbors(v).iter().filter(|&&u| in_h[u]).count() } else { 0 })
        .collect();
    let mut lower_bound = 0.0;
    let mut trace = Vec::new();

    while let Some(u) = (0..n)
        .filter(|&v| in_h[v] && deg[v] >= 2)
        .max_by_key(|&v| (deg[v], std::cmp::Reverse(v)))
    {
        let d = deg[u];
        let coeff_u = (d - 1) as f64;
        let nbrs: Vec<usize> = g.neighbors(u).iter().copied().filter(|&x| in_h[x]).collect();
        let eps = nbrs.iter().fold(w[u] / coeff_u, |acc, &x| acc.min(w[x]));

        let mut tight = Vec::new();
        for (v, c) in std::iter::once((u, coeff_u)).chain(nbrs.iter().map(|&x| (x, 1.0))) {
            let before = g.weight(v).max(f64::MIN_POSITIVE);
            w[v] -= eps * c;
            if w[v] <= REL_TOL * before {
                w[v] = 0.0;
                tight.push(v);
            }
        }
        debug_assert!(!tight.is_empty(), "the minimising vertex reaches zero");
        for &v in &tight {
            in_h[v] = false;
            deg[v] = 0;
            for &x in g.neighbors(v) {
                if in_h[x] {
                    deg[x] -= 1;
                }
            }
            tentative.push(v);
        }
        lower_bound += eps * coeff_u;
        trace.push(LocalRatioStep {
            center: u,
            degree: d,
            epsilon: eps,
        });
    }

    let deleted = reverse_delete(g, &tentative);
    let weight = g.total_weight(&deleted);
    assert!(
        weight <= 2.0 * lower_bound * (1.0 + REL_TOL) + REL_TOL,
        "local-ratio certificate violated: weight {weight} > 2 * {lower_bound}"
    );
    DissociationResult {
        deleted,
        weight,
        lower_bound,
        trace,
    }
}

/// Restores tentative vertices newest first while the set stays valid.
fn reverse_delete(g: &Graph, tentative: &[usize]) -> VertexSet {
    let n = g.n();
    let mut deleted = vec![false; n];
    for &v in tentative {
        deleted[v] = true;
    }
    // kept[v] = number of non-deleted neighbours of v
    let mut kept: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().filter(|&&u| !deleted[u]).count())
        .collect();
    for &v in tentative.iter().rev() {
        let restorable =
            kept[v] <= 1 && g.neighbors(v).iter().all(|&x| deleted[x] || kept[x] == 0);
        if restorable {
            deleted[v] = false;
            for &x in g.neighbors(v) {
                kept[x] += 1;
            }
        }
    }
    (0..n).filter(|&v| deleted[v]).collect()
}

/// Minimum-weight dissociation set by include/exclude search; among
/// minimum-weight sets the lexicographically smallest is returned.
pub fn exact_dissociation(g: &Graph) -> Result<(VertexSet, f64)> {
    let n = g.n();
    if n > EXACT_MAX_N {
        return Err(Error::TooLarge { n, max: EXACT_MAX_N });
    }
    let mut search = ExactSearch {
        g,
        deleted: vec![false; n],
        kept_deg: vec![0; n],
        best: None,
    };
    search.run(0, 0.0);
    let (set, weight) = search.best.expect("deleting everything is feasible");
    Ok((VertexSet::from_sorted(set), weight))
}

struct ExactSearch<'a> {
    g: &'a Graph,
    deleted: Vec<bool>,
    /// Kept neighbours among already decided vertices.
    kept_deg: Vec<usize>,
    best: Option<(Vec<usize>, f64)>,
}

impl ExactSearch<'_> {
    fn beats_best(&self, weight: f64, set: &[usize]) -> bool {
        match &self.best {
            None => true,
            Some((bset, bw)) => {
                let tol = REL_TOL * bw.abs().max(1.0);
                weight < bw - tol || (weight <= bw + tol && set < bset.as_slice())
            }
        }
    }

    fn run(&mut self, v: usize, weight: f64) {
        if let Some((_, bw)) = &self.best {
            if weight > bw + REL_TOL * bw.abs().max(1.0) {
                return;
            }
        }
        let g = self.g;
        if v == g.n() {
            let set: Vec<usize> = (0..v).filter(|&u| self.deleted[u]).collect();
            if self.beats_best(weight, &set) {
                self.best = Some((set, weight));
            }
            return;
        }
        // deleting v first explores lexicographically smaller sets first
        self.deleted[v] = true;
        self.run(v + 1, weight + g.weight(v));
        self.deleted[v] = false;

        let earlier = g.neighbors(v).iter().copied().filter(|&u| u < v && !self.deleted[u]);
        let mut count = 0;
        let mut ok = true;
        for u in earlier.clone() {
            count += 1;
            if self.kept_deg[u] >= 1 {
                ok = false;
            }
        }
        if ok && count <= 1 {
            let touched: Vec<usize> = earlier.collect();
            for &u in &touched {
                self.kept_deg[u] += 1;
            }
            self.kept_deg[v] = count;
            self.run(v + 1, weight);
            for &u in &touched {
                self.kept_deg[u] -= 1;
            }
            self.kept_deg[v] = 0;
        }
    }
}
