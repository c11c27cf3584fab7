use std::collections::BTreeMap;

use crate::graph::{Graph, VertexSet};
use crate::witness::{Kind, Witness};

use super::{Rule, Solution};

/// Deletes all three vertices of an induced P3 until none is left. Any
/// solution hits each of the disjoint P3s, so the result is at most three
/// times the optimum.
pub fn naive_3_approx(g: &Graph) -> Solution {
    let mut removed = VertexSet::new();
    let mut provenance = BTreeMap::new();
    let mut witnesses = Vec::new();
    loop {
        let rest = g.without(&removed);
        let Some(t) = rest.graph.induced_p3() else {
            break;
        };
        let verts: Vec<usize> = t.iter().map(|&v| rest.to_parent[v]).collect();
        let w = Witness::certify(g, Kind::P3, verts).expect("induced P3 of a subgraph is induced");
        for &v in &w.vertices {
            removed.insert(v);
            provenance.insert(v, Rule::Naive);
        }
        witnesses.push(w);
    }
    Solution {
        lower_bound: Some(witnesses.len() as f64),
        deleted: removed,
        provenance,
        witnesses,
        quotient_lower_bound: None,
    }
}
