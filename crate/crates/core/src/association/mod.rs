//! Association sets (cluster vertex deletion).
//!
//! [`solve`] is the 2.5-approximation driver:
//!
//! 1. cluster graphs need nothing, disconnected graphs are split;
//! 2. [`reduce`] removes vertex-disjoint copies of forbidden patterns until
//!    every component is in *reduced form* (see [`reduced_form_violation`]);
//! 3. a reduced component made of universal vertices plus two disjoint
//!    cliques is solved exactly by [`two_cliques_solution`];
//! 4. a maximal strong module that is not a clique has exactly one outside
//!    neighbour, which is deleted ([`module_neighbor_step`]) before recursing
//!    on the rest;
//! 5. otherwise every maximal strong module is a clique and the quotient is
//!    triangle-free, so a weighted dissociation set of the quotient (weights
//!    = module sizes) lifts to an association set of the same size.
//!
//! Every step records a lower bound on the optimum it accounts for, and the
//! final size is checked against 2.5 times their sum.

mod exact;
mod naive;
mod reduce;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::dissociation::{approx_dissociation_2, DissociationResult};
use crate::error::{Error, Result};
use crate::graph::{validate_solution, Graph, Mode, VertexSet};
use crate::md::{maximal_strong_modules, quotient_of, top_partition, QuotientGraph};
use crate::witness::{Kind, Witness};

pub use exact::{exact_association, exact_association_enumerate, exact_association_with_budget, EXACT_DEFAULT_BUDGET};
pub use naive::naive_3_approx;
pub use reduce::{reduce, Reduction};

/// Steps of the reduction that construct witnesses, named by their position
/// in the procedure (triangle disposal is phase 3, the cleanup loop phase 4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Step {
    /// 3.6: the first distinguisher is adjacent to the third triangle module.
    DistinguisherAdjacent,
    /// 3.7: the first distinguisher is not adjacent to the third module.
    DistinguisherNonAdjacent,
    /// 4.3: a prime quotient must be triangle-free after triangle disposal.
    PrimeTriangle,
    /// 4.4: two adjacent non-clique modules give a C4.
    AdjacentNonCliques,
    /// 4.5.1: clique quotient, module with a P4 or C4.
    CliqueQuotientObstruction,
    /// 4.5.2: clique quotient, module with two components.
    CliqueQuotientTwoComponents,
    /// 4.5.3: clique quotient, module with three or more components.
    CliqueQuotientManyComponents,
    /// 4.6.1: non-cluster module with a P4 or C4.
    ModuleObstruction,
    /// 4.6.2: disconnected non-cluster module.
    ModuleDisconnected,
    /// 4.6.3: connected, trivially perfect, non-cluster module.
    ModuleConnected,
    /// 4.7: non-clique module with more than one outside neighbour.
    NonCliqueNeighbors,
    /// 4.8: nontrivial module with at least three quotient neighbours.
    ManyNeighbors,
    /// Driver: the weighted quotient must be triangle-free.
    Contraction,
    /// Driver: final validity and ratio certificate.
    Certificate,
}

impl Step {
    pub fn code(self) -> &'static str {
        match self {
            Step::DistinguisherAdjacent => "3.6",
            Step::DistinguisherNonAdjacent => "3.7",
            Step::PrimeTriangle => "4.3",
            Step::AdjacentNonCliques => "4.4",
            Step::CliqueQuotientObstruction => "4.5.1",
            Step::CliqueQuotientTwoComponents => "4.5.2",
            Step::CliqueQuotientManyComponents => "4.5.3",
            Step::ModuleObstruction => "4.6.1",
            Step::ModuleDisconnected => "4.6.2",
            Step::ModuleConnected => "4.6.3",
            Step::NonCliqueNeighbors => "4.7",
            Step::ManyNeighbors => "4.8",
            Step::Contraction => "contraction",
            Step::Certificate => "certificate",
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Why a vertex was deleted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Witness(Kind),
    TwoCliques,
    ModuleNeighbor,
    QuotientDissociation,
    Naive,
    Exact,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Witness(k) => write!(f, "{}", k.to_string().to_lowercase()),
            Rule::TwoCliques => f.write_str("two-cliques"),
            Rule::ModuleNeighbor => f.write_str("module-neighbor"),
            Rule::QuotientDissociation => f.write_str("quotient-dissociation"),
            Rule::Naive => f.write_str("naive"),
            Rule::Exact => f.write_str("exact"),
        }
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An association set with per-vertex provenance and a certified lower
/// bound on the optimum (`None` when the producing algorithm has none).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Solution {
    pub deleted: VertexSet,
    pub provenance: BTreeMap<usize, Rule>,
    pub witnesses: Vec<Witness>,
    pub quotient_lower_bound: Option<f64>,
    pub lower_bound: Option<f64>,
}

impl Solution {
    pub fn size(&self) -> usize {
        self.deleted.len()
    }

    fn from_parts(deleted: Vec<bool>, provenance: BTreeMap<usize, Rule>, witnesses: Vec<Witness>) -> Self {
        Self {
            deleted: (0..deleted.len()).filter(|&v| deleted[v]).collect(),
            provenance,
            witnesses,
            quotient_lower_bound: None,
            lower_bound: None,
        }
    }
}

/// Universal vertices `U` and the two cliques `A`, `B` (ordered by smallest
/// vertex) when `g` has exactly that shape with `U` non-empty.
pub fn two_cliques_shape(g: &Graph) -> Option<(VertexSet, VertexSet, VertexSet)> {
    let n = g.n();
    let universal: VertexSet = g.vertices().filter(|&v| g.degree(v) + 1 == n).collect();
    if universal.is_empty() || universal.len() == n {
        return None;
    }
    let rest = g.without(&universal);
    let comps = rest.graph.components();
    if comps.len() != 2 {
        return None;
    }
    let mut cliques = Vec::with_capacity(2);
    for c in comps {
        if !rest.graph.induced_on(c.as_slice()).graph.is_clique() {
            return None;
        }
        cliques.push(c.lift(&rest.to_parent));
    }
    let b = cliques.pop()?;
    let a = cliques.pop()?;
    Some((universal, a, b))
}

/// Minimum association set of a graph made of universal vertices plus two
/// disjoint cliques: the smallest of `U`, `A`, `B` (earlier wins ties).
pub fn two_cliques_solution(g: &Graph) -> Result<VertexSet> {
    let (u, a, b) = two_cliques_shape(g).ok_or_else(|| Error::Precondition {
        op: "two_cliques_solution",
        detail: "graph is not universal vertices plus two disjoint cliques".into(),
    })?;
    Ok([u, a, b].into_iter().min_by_key(VertexSet::len).expect("three candidates"))
}

/// For a non-clique cluster module `m` with a single outside neighbour `v`,
/// returns `v` and the vertices outside `m ∪ {v}`.
pub fn module_neighbor_step(g: &Graph, m: &VertexSet) -> Result<(usize, VertexSet)> {
    g.check_set(m)?;
    let nbrs = g.set_neighborhood(m);
    if nbrs.len() != 1 {
        return Err(Error::Precondition {
            op: "module_neighbor_step",
            detail: format!("module {:?} has {} outside neighbours, expected 1", m.as_slice(), nbrs.len()),
        });
    }
    let v = nbrs.as_slice()[0];
    let closed = m.union(&nbrs);
    let rest = g.vertices().filter(|&u| !closed.contains(u)).collect();
    Ok((v, rest))
}

/// Weighted quotient over the maximal strong modules of a connected,
/// non-clique graph whose modules are all cliques.
pub fn contract_to_weighted_quotient(g: &Graph) -> Result<QuotientGraph> {
    let pre = |detail: String| Error::Precondition {
        op: "contract_to_weighted_quotient",
        detail,
    };
    if g.is_clique() {
        return Err(pre("graph is a clique".into()));
    }
    if !g.is_connected() {
        return Err(pre("graph is disconnected".into()));
    }
    let parts = maximal_strong_modules(g)?;
    if let Some(p) = parts.iter().find(|p| !g.induced_on(p.as_slice()).graph.is_clique()) {
        return Err(pre(format!("module {:?} is not a clique", p.as_slice())));
    }
    let q = quotient_of(g, &parts)?;
    if let Some(t) = q.graph.triangle() {
        return Err(Error::Certification {
            step: Step::Contraction,
            detail: format!("quotient triangle on modules {t:?}"),
        });
    }
    Ok(q)
}

/// Base vertices of the quotient nodes deleted by `d`.
pub fn lift_quotient_solution(q: &QuotientGraph, d: &DissociationResult) -> VertexSet {
    q.expand(&d.deleted)
}

/// Why a graph is not in reduced form, or `None` if it is. Per component:
/// a clique, or universal vertices plus two disjoint cliques, or a
/// triangle-free quotient over the maximal strong modules in which every
/// module induces a cluster graph, every non-clique module has exactly one
/// outside neighbour, and every module with more than two quotient
/// neighbours is a single vertex.
pub fn reduced_form_violation(g: &Graph) -> Option<String> {
    for comp in g.components() {
        let sub = g.induced_on(comp.as_slice());
        let h = &sub.graph;
        if h.is_clique() || two_cliques_shape(h).is_some() {
            continue;
        }
        let (_, parts) = top_partition(h);
        let q = match quotient_of(h, &parts) {
            Ok(q) => q,
            Err(e) => return Some(format!("quotient construction failed: {e}")),
        };
        let lift = |s: &VertexSet| s.lift(&sub.to_parent).into_vec();
        if let Some(t) = q.graph.triangle() {
            let mods: Vec<_> = t.iter().map(|&i| lift(&parts[i])).collect();
            return Some(format!("quotient triangle on modules {mods:?}"));
        }
        for (i, p) in parts.iter().enumerate() {
            let inner = h.induced_on(p.as_slice()).graph;
            if !inner.is_cluster() {
                return Some(format!("module {:?} is not a cluster", lift(p)));
            }
            if !inner.is_clique() && h.set_neighborhood(p).len() != 1 {
                return Some(format!("non-clique module {:?} has several neighbours", lift(p)));
            }
            if q.graph.degree(i) > 2 && p.len() > 1 {
                return Some(format!("module {:?} has {} quotient neighbours", lift(p), q.graph.degree(i)));
            }
        }
    }
    None
}

/// Upper bound on `|deleted| / lower_bound` certified by [`solve`].
pub const RATIO: f64 = 2.5;

/// Approximate minimum association set with ratio 2.5.
pub fn solve(g: &Graph) -> Result<Solution> {
    let n = g.n();
    let mut deleted = vec![false; n];
    let mut provenance = BTreeMap::new();
    let mut witnesses = Vec::new();
    let mut lower_bound = 0.0;
    let mut quotient_lb: Option<f64> = None;

    let mut take = |verts: &mut dyn Iterator<Item = usize>, rule: Rule| {
        for v in verts {
            debug_assert!(!deleted[v], "vertex {v} deleted twice");
            deleted[v] = true;
            provenance.insert(v, rule);
        }
    };

    // (vertex set, already in reduced form)
    let mut work: Vec<(VertexSet, bool)> = vec![(VertexSet::full(n), false)];
    while let Some((part, reduced)) = work.pop() {
        if part.len() < 3 {
            continue;
        }
        let sub = g.induced_on(part.as_slice());
        let h = &sub.graph;
        let up = |s: &VertexSet| s.lift(&sub.to_parent);

        if !reduced {
            if h.is_cluster() {
                continue;
            }
            let comps = h.components();
            if comps.len() > 1 {
                work.extend(comps.iter().rev().map(|c| (up(c), false)));
                continue;
            }
            let red = reduce(h)?;
            for (_, w) in &red.witnesses {
                let lifted = w.lift(&sub.to_parent);
                let w = Witness::certify(g, lifted.kind, lifted.vertices)?;
                take(&mut w.vertices.iter().copied(), Rule::Witness(w.kind));
                lower_bound += 2.0;
                witnesses.push(w);
            }
            let rest = h.without(&red.removed);
            let comps = rest.graph.components();
            work.extend(comps.iter().rev().map(|c| (up(&c.lift(&rest.to_parent)), true)));
            continue;
        }

        if h.is_clique() {
            continue;
        }
        if two_cliques_shape(h).is_some() {
            let x = two_cliques_solution(h)?;
            lower_bound += x.len() as f64;
            take(&mut up(&x).iter(), Rule::TwoCliques);
            continue;
        }
        let parts = maximal_strong_modules(h)?;
        if let Some(m) = parts.iter().find(|p| !h.induced_on(p.as_slice()).graph.is_clique()) {
            let (v, rest) = module_neighbor_step(h, m)?;
            lower_bound += 1.0;
            take(&mut std::iter::once(sub.to_parent[v]), Rule::ModuleNeighbor);
            work.push((up(&rest), false));
            continue;
        }
        let q = contract_to_weighted_quotient(h)?;
        let d = approx_dissociation_2(&q.graph);
        lower_bound += d.lower_bound;
        *quotient_lb.get_or_insert(0.0) += d.lower_bound;
        let x = lift_quotient_solution(&q, &d);
        take(&mut up(&x).iter(), Rule::QuotientDissociation);
    }

    let mut sol = Solution::from_parts(deleted, provenance, witnesses);
    sol.quotient_lower_bound = quotient_lb;
    sol.lower_bound = Some(lower_bound);
    let check = validate_solution(g, &sol.deleted, Mode::Association)?;
    if !check.valid {
        return Err(Error::Certification {
            step: Step::Certificate,
            detail: format!("remaining induced P3 {:?}", check.witness),
        });
    }
    if sol.size() as f64 > RATIO * lower_bound + 1e-6 {
        return Err(Error::Certification {
            step: Step::Certificate,
            detail: format!("{} deletions exceed {RATIO} x lower bound {lower_bound}", sol.size()),
        });
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles_sharing_vertex() -> Graph {
        Graph::new(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap()
    }

    /// `u` universal vertices, then cliques of sizes `a` and `b`.
    fn universal_plus_cliques(u: usize, a: usize, b: usize) -> Graph {
        let n = u + a + b;
        let mut edges = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                let in_a = |v: usize| (u..u + a).contains(&v);
                if x < u || (in_a(x) && in_a(y)) || (x >= u + a && y >= u + a) {
                    edges.push((x, y));
                }
            }
        }
        Graph::new(n, edges).unwrap()
    }

    #[test]
    fn solve_examples() {
        assert!(solve(&Graph::complete(5)).unwrap().deleted.is_empty());
        let s = solve(&Graph::path(3)).unwrap();
        assert_eq!(s.deleted, VertexSet::singleton(1));
        let s = solve(&two_triangles_sharing_vertex()).unwrap();
        assert_eq!(s.deleted, VertexSet::singleton(0));
        assert_eq!(s.provenance[&0], Rule::TwoCliques);
    }

    #[test]
    fn two_cliques_examples() {
        assert_eq!(two_cliques_solution(&universal_plus_cliques(1, 2, 2)).unwrap(), VertexSet::from([0]));
        assert_eq!(two_cliques_solution(&universal_plus_cliques(3, 1, 5)).unwrap(), VertexSet::from([3]));
        assert_eq!(two_cliques_solution(&universal_plus_cliques(2, 2, 2)).unwrap().len(), 2);
        assert!(two_cliques_solution(&Graph::cycle(5)).is_err());
    }

    #[test]
    fn module_neighbor_examples() {
        let (v, rest) = module_neighbor_step(&Graph::path(3), &VertexSet::from([0, 2])).unwrap();
        assert_eq!((v, rest), (1, VertexSet::new()));
        let star = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let (v, rest) = module_neighbor_step(&star, &VertexSet::from([1, 2, 3, 4])).unwrap();
        assert_eq!((v, rest), (0, VertexSet::new()));
        // 2K2 joined to vertex 4
        let g = Graph::new(5, [(0, 1), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)]).unwrap();
        let (v, rest) = module_neighbor_step(&g, &VertexSet::from([0, 1, 2, 3])).unwrap();
        assert_eq!((v, rest), (4, VertexSet::new()));
        assert!(module_neighbor_step(&Graph::path(4), &VertexSet::from([0])).is_ok());
        assert!(module_neighbor_step(&Graph::path(4), &VertexSet::from([1])).is_err());
    }

    #[test]
    fn contraction_examples() {
        let q = contract_to_weighted_quotient(&Graph::path(4)).unwrap();
        assert_eq!(q.graph.m(), 3);
        assert!(q.graph.weights().iter().all(|&w| w == 1.0));
        // C5 on 0..5 with vertex 5 a true twin of 0
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1), (5, 4)]).unwrap();
        let q = contract_to_weighted_quotient(&g).unwrap();
        assert_eq!(q.graph.weights(), &[2.0, 1.0, 1.0, 1.0, 1.0]);
        assert_eq!(q.parts[0], VertexSet::from([0, 5]));
        assert!(contract_to_weighted_quotient(&Graph::complete(3)).is_err());
    }

    #[test]
    fn lift_examples() {
        let g = Graph::new(5, [(0, 2), (1, 2), (2, 3), (2, 4), (0, 1), (3, 4)]).unwrap();
        // clique modules {0,1}, {2}, {3,4}: quotient P3 with weights 2,1,2
        let parts = [VertexSet::from([0, 1]), VertexSet::from([2]), VertexSet::from([3, 4])];
        let q = quotient_of(&g, &parts).unwrap();
        assert_eq!(q.graph.weights(), &[2.0, 1.0, 2.0]);
        let d = approx_dissociation_2(&q.graph);
        assert_eq!(lift_quotient_solution(&q, &d), VertexSet::singleton(2));
        let c5 = contract_to_weighted_quotient(&Graph::cycle(5)).unwrap();
        assert_eq!(lift_quotient_solution(&c5, &approx_dissociation_2(&c5.graph)).len(), 2);
    }

    #[test]
    fn reduced_form_examples() {
        assert!(reduced_form_violation(&Graph::cycle(5)).is_none());
        assert!(reduced_form_violation(&Graph::path(3)).is_none());
        assert!(reduced_form_violation(&Kind::Gem.graph()).is_some());
    }
}
