//! Modular decomposition.
//!
//! A node of the decomposition tree is a strong module; its children are the
//! maximal strong modules of the subgraph it induces. Disconnected subgraphs
//! give parallel nodes (children = components), disconnected complements give
//! series nodes (children = co-components), and everything else is prime.
//!
//! The prime case is handled by partition refinement: for a pivot `v`, refine
//! `{N(v), V - N[v]}` until every part is a module. The parts are then exactly
//! the maximal modules avoiding `v`. The maximal strong module holding `v` is
//! recovered from the "forcing" digraph on those parts (part `X` forces `Y`
//! when `Y` is adjacent to exactly one of `v` and `X`): parts in the unique
//! source component force the whole graph and are maximal strong modules on
//! their own, the rest merge with `v`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Exhaustive strong-module enumeration is limited to this many vertices.
pub const ORACLE_MAX_N: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MdKind {
    Leaf,
    Parallel,
    Series,
    Prime,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdNode {
    pub vertices: VertexSet,
    pub kind: MdKind,
    pub children: Vec<MdNode>,
}

impl MdNode {
    fn leaf(v: usize) -> Self {
        Self {
            vertices: VertexSet::singleton(v),
            kind: MdKind::Leaf,
            children: Vec::new(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.kind == MdKind::Leaf
    }

    /// Nodes in preorder.
    pub fn nodes(&self) -> Vec<&MdNode> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            out.push(node);
            stack.extend(node.children.iter().rev());
        }
        out
    }

    /// Vertex sets of all nodes, sorted; equals the set of strong modules.
    pub fn strong_modules(&self) -> Vec<VertexSet> {
        let mut sets: Vec<VertexSet> = self.nodes().into_iter().map(|n| n.vertices.clone()).collect();
        sets.sort();
        sets
    }

    /// The inclusion-minimal node whose vertex set contains `u`.
    pub fn smallest_containing(&self, u: &VertexSet) -> &MdNode {
        let mut node = self;
        while let Some(child) = node.children.iter().find(|c| u.is_subset(&c.vertices)) {
            node = child;
        }
        node
    }

    pub fn child_sets(&self) -> Vec<VertexSet> {
        self.children.iter().map(|c| c.vertices.clone()).collect()
    }
}

/// Builds the modular decomposition tree; children are ordered by their
/// smallest vertex.
pub fn md_tree(g: &Graph) -> Result<MdNode> {
    if g.n() == 0 {
        return Err(Error::TooFewVertices { min: 1, n: 0 });
    }
    let ids: Vec<usize> = g.vertices().collect();
    Ok(decompose(g, &ids))
}

fn decompose(h: &Graph, ids: &[usize]) -> MdNode {
    if h.n() == 1 {
        return MdNode::leaf(ids[0]);
    }
    let (kind, parts) = top_partition(h);
    let children = parts
        .iter()
        .map(|p| {
            let sub = h.induced_on(p.as_slice());
            let sub_ids: Vec<usize> = p.iter().map(|v| ids[v]).collect();
            decompose(&sub.graph, &sub_ids)
        })
        .collect();
    MdNode {
        vertices: VertexSet::from_sorted(ids.to_vec()),
        kind,
        children,
    }
}

/// Kind of the root node and its children (the maximal strong modules),
/// ordered by smallest vertex. A single vertex yields `(Leaf, [])`.
pub fn top_partition(g: &Graph) -> (MdKind, Vec<VertexSet>) {
    if g.n() <= 1 {
        return (MdKind::Leaf, Vec::new());
    }
    let comps = g.components();
    if comps.len() > 1 {
        return (MdKind::Parallel, comps);
    }
    let cocomps = g.co_components();
    if cocomps.len() > 1 {
        return (MdKind::Series, cocomps);
    }
    let mut parts = prime_partition(g);
    parts.sort_by_key(|p| p.min());
    (MdKind::Prime, parts)
}

pub fn maximal_strong_modules(g: &Graph) -> Result<Vec<VertexSet>> {
    if g.n() < 2 {
        return Err(Error::TooFewVertices { min: 2, n: g.n() });
    }
    Ok(top_partition(g).1)
}

/// True iff `g` has at least four vertices and only trivial modules.
pub fn is_prime(g: &Graph) -> bool {
    if g.n() < 4 {
        return false;
    }
    let (kind, parts) = top_partition(g);
    kind == MdKind::Prime && parts.len() == g.n()
}

/// Maximal modules not containing `pivot`, by partition refinement.
fn refine_excluding(h: &Graph, pivot: usize) -> Vec<Vec<usize>> {
    let n = h.n();
    let mut part_of = vec![usize::MAX; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let inside: Vec<usize> = h.neighbors(pivot).to_vec();
    let outside: Vec<usize> = (0..n).filter(|&u| u != pivot && !h.adjacent(pivot, u)).collect();
    for p in [inside, outside] {
        if !p.is_empty() {
            for &x in &p {
                part_of[x] = parts.len();
            }
            parts.push(p);
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&u| u != pivot).collect();
    let mut queued = vec![true; n];
    queued[pivot] = false;
    let mut count = vec![0usize; parts.len()];
    let mut mark = vec![false; n];
    let mut touched = Vec::new();

    while let Some(x) = queue.pop_front() {
        queued[x] = false;
        let px = part_of[x];
        for &y in h.neighbors(x) {
            if y == pivot || part_of[y] == px {
                continue;
            }
            let py = part_of[y];
            if count[py] == 0 {
                touched.push(py);
            }
            count[py] += 1;
            mark[y] = true;
        }
        for &p in &touched {
            let hits = std::mem::take(&mut count[p]);
            if hits == parts[p].len() {
                continue;
            }
            let (hit, rest): (Vec<usize>, Vec<usize>) = parts[p].iter().partition(|&&y| mark[y]);
            let q = parts.len();
            for &y in &hit {
                part_of[y] = q;
            }
            parts[p] = rest;
            parts.push(hit);
            count.push(0);
            for &y in parts[p].iter().chain(&parts[q]) {
                if !queued[y] {
                    queued[y] = true;
                    queue.push_back(y);
                }
            }
        }
        for &y in h.neighbors(x) {
            mark[y] = false;
        }
        touched.clear();
    }
    parts
}

/// Maximal strong modules of a graph that is connected and co-connected.
fn prime_partition(h: &Graph) -> Vec<VertexSet> {
    let n = h.n();
    let pivot = (0..n)
        .min_by_key(|&u| (h.degree(u), u))
        .expect("prime partition of a non-empty graph");
    let parts = refine_excluding(h, pivot);
    let k = parts.len();
    let mut part_of = vec![k; n];
    for (i, p) in parts.iter().enumerate() {
        for &x in p {
            part_of[x] = i;
        }
    }
    let adjacent_parts = |x: usize| -> Vec<usize> {
        let mut ps: Vec<usize> = h
            .neighbors(x)
            .iter()
            .map(|&y| part_of[y])
            .filter(|&p| p != k && p != part_of[x])
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    };
    let pivot_parts = adjacent_parts(pivot);

    // forcing digraph over parts
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (x, out) in out_edges.iter_mut().enumerate() {
        let own = adjacent_parts(parts[x][0]);
        let (mut i, mut j) = (0, 0);
        while i < pivot_parts.len() || j < own.len() {
            let a = pivot_parts.get(i).copied().unwrap_or(usize::MAX);
            let b = own.get(j).copied().unwrap_or(usize::MAX);
            let y = if a < b {
                i += 1;
                a
            } else if b < a {
                j += 1;
                b
            } else {
                i += 1;
                j += 1;
                continue;
            };
            if y != x {
                out.push(y);
            }
        }
    }

    let comp = strongly_connected(&out_edges);
    let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
    let mut has_in = vec![false; ncomp];
    for (x, outs) in out_edges.iter().enumerate() {
        for &y in outs {
            if comp[x] != comp[y] {
                has_in[comp[y]] = true;
            }
        }
    }
    let sources: Vec<usize> = (0..ncomp).filter(|&c| !has_in[c]).collect();
    assert_eq!(
        sources.len(),
        1,
        "forcing digraph of a prime node must have a unique source component"
    );
    let source = sources[0];

    let mut result = Vec::new();
    let mut with_pivot = vec![pivot];
    for (i, p) in parts.into_iter().enumerate() {
        if comp[i] == source {
            result.push(p.into_iter().collect());
        } else {
            with_pivot.extend(p);
        }
    }
    result.push(with_pivot.into_iter().collect());
    result
}

/// Strongly connected component id per node (iterative Kosaraju).
fn strongly_connected(out_edges: &[Vec<usize>]) -> Vec<usize> {
    let k = out_edges.len();
    let mut in_edges = vec![Vec::new(); k];
    for (x, outs) in out_edges.iter().enumerate() {
        for &y in outs {
            in_edges[y].push(x);
        }
    }
    let mut order = Vec::with_capacity(k);
    let mut seen = vec![false; k];
    for s in 0..k {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some((x, i)) = stack.pop() {
            if let Some(&y) = out_edges[x].get(i) {
                stack.push((x, i + 1));
                if !seen[y] {
                    seen[y] = true;
                    stack.push((y, 0));
                }
            } else {
                order.push(x);
            }
        }
    }
    let mut comp = vec![usize::MAX; k];
    let mut next = 0;
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &in_edges[x] {
                if comp[y] == usize::MAX {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    comp
}

/// A vertex outside `s` adjacent to some but not all of `s`, together with
/// one neighbour and one non-neighbour inside `s`.
pub fn module_splitter(g: &Graph, s: &VertexSet) -> Option<(usize, (usize, usize))> {
    let rep = s.min()?;
    for x in s.iter().skip(1) {
        for (a, b) in [(rep, x), (x, rep)] {
            if let Some(&y) = g.neighbors(a).iter().find(|&&y| !s.contains(y) && !g.adjacent(b, y)) {
                return Some((y, (a, b)));
            }
        }
    }
    None
}

pub fn is_module(g: &Graph, s: &VertexSet) -> bool {
    module_splitter(g, s).is_none()
}

/// Graph on the parts of a module partition, adjacent iff completely joined.
/// Vertex `i` of `graph` stands for `parts[i]` and weighs `|parts[i]|`.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    pub parts: Vec<VertexSet>,
    pub graph: Graph,
}

impl QuotientGraph {
    pub fn part_weight(&self, i: usize) -> f64 {
        self.parts[i].len() as f64
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Base vertices of the given quotient nodes.
    pub fn expand(&self, nodes: &VertexSet) -> VertexSet {
        nodes.iter().flat_map(|i| self.parts[i].iter()).collect()
    }
}

/// Quotient of `g` by a partition of its vertex set into modules. Every part
/// is checked; a part that is not a module is reported with a splitter.
pub fn quotient_of(g: &Graph, parts: &[VertexSet]) -> Result<QuotientGraph> {
    let n = g.n();
    let mut part_of = vec![usize::MAX; n];
    for (i, p) in parts.iter().enumerate() {
        g.check_set(p)?;
        if p.is_empty() {
            return Err(Error::NotAPartition);
        }
        for v in p {
            if part_of[v] != usize::MAX {
                return Err(Error::NotAPartition);
            }
            part_of[v] = i;
        }
    }
    if part_of.contains(&usize::MAX) {
        return Err(Error::NotAPartition);
    }

    let outside = |x: usize| -> Vec<usize> {
        g.neighbors(x)
            .iter()
            .copied()
            .filter(|&y| part_of[y] != part_of[x])
            .collect()
    };
    let mut edges = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let rep = p.as_slice()[0];
        let rep_out = outside(rep);
        for x in p.iter().skip(1) {
            let x_out = outside(x);
            if x_out != rep_out {
                let (splitter, inside) = first_difference(&rep_out, &x_out)
                    .map(|(y, in_rep)| (y, if in_rep { (rep, x) } else { (x, rep) }))
                    .expect("different lists differ somewhere");
                return Err(Error::NotAModule {
                    part: i,
                    splitter,
                    inside,
                });
            }
        }
        edges.extend(rep_out.iter().map(|&y| (i, part_of[y])).filter(|&(a, b)| a < b));
    }
    let weights = parts.iter().map(|p| p.len() as f64).collect();
    let graph = Graph::new(parts.len(), edges)?.with_weights(weights)?;
    Ok(QuotientGraph {
        parts: parts.to_vec(),
        graph,
    })
}

/// First element of the symmetric difference of two sorted lists, flagged
/// with whether it came from `a`.
fn first_difference(a: &[usize], b: &[usize]) -> Option<(usize, bool)> {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(&x), Some(&y)) => return Some(if x < y { (x, true) } else { (y, false) }),
            (Some(&x), None) => return Some((x, true)),
            (None, Some(&y)) => return Some((y, false)),
            (None, None) => return None,
        }
    }
}

/// All strong modules by brute force: every subset is tested for being a
/// module, then kept if no other module overlaps it.
pub fn strong_modules_oracle(g: &Graph) -> Result<Vec<VertexSet>> {
    let n = g.n();
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge { n, max: ORACLE_MAX_N });
    }
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &u| acc | 1 << u))
        .collect();
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let modules: Vec<u32> = (1..=full)
        .filter(|&s| {
            (0..n)
                .filter(|&x| s >> x & 1 == 0)
                .all(|x| adj[x] & s == 0 || adj[x] & s == s)
        })
        .collect();
    let mut strong: Vec<VertexSet> = modules
        .iter()
        .filter(|&&a| {
            modules
                .iter()
                .all(|&b| a & b == 0 || a & b == a || a & b == b)
        })
        .map(|&s| (0..n).filter(|&x| s >> x & 1 == 1).collect())
        .collect();
    strong.sort();
    Ok(strong)
}
