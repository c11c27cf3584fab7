//! Immutable simple undirected graphs.
//!
//! Vertices are dense ids `0..n`; every id carries an external label and a
//! non-negative weight (1 unless set otherwise). Neighbor lists are sorted, and
//! graphs below a size threshold also cache a bit matrix for O(1) adjacency.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graphs with at most this many vertices cache an adjacency bit matrix.
pub const DEFAULT_MATRIX_THRESHOLD: usize = 512;

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    /// Wraps a vector that is already strictly increasing.
    pub fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self(members)
    }

    pub fn singleton(v: usize) -> Self {
        Self(vec![v])
    }

    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            if a < b {
                out.push(a);
                i += 1;
            } else if b < a {
                out.push(b);
                j += 1;
            } else {
                out.push(a);
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        VertexSet(out)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.len() <= other.len() && self.iter().all(|v| other.contains(v))
    }

    /// Maps local ids through `to_parent` (as produced by [`Graph::induced`]).
    pub fn lift(&self, to_parent: &[usize]) -> VertexSet {
        self.iter().map(|v| to_parent[v]).collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

#[derive(Clone, Debug)]
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn build(adj: &[Vec<usize>]) -> Self {
        let n = adj.len();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for (u, nbrs) in adj.iter().enumerate() {
            for &v in nbrs {
                bits[u * words + v / 64] |= 1 << (v % 64);
            }
        }
        Self { words, bits }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }
}

/// Simple undirected vertex-weighted graph.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Vec<Arc<str>>,
    weights: Vec<f64>,
    m: usize,
    matrix: Option<BitMatrix>,
    matrix_threshold: usize,
}

/// An induced subgraph together with the map from its ids to the parent's.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    pub to_parent: Vec<usize>,
}

/// Which deletion problem a vertex set is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every component of `G - X` is a clique (no induced P3).
    Association,
    /// `G - X` has maximum degree at most one (no P3 subgraph).
    Dissociation,
}

/// Outcome of [`validate_solution`]; `witness` is a violating P3 `(a, b, c)`
/// with center `b` when the set is not valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub valid: bool,
    pub witness: Option<[usize; 3]>,
}

fn check_weight(label: &str, w: f64) -> Result<()> {
    if w.is_finite() && w >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidWeight {
            label: label.to_string(),
            weight: w,
        })
    }
}

/// Incremental construction from labelled edges; labels get ids in order of
/// first appearance.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    ids: HashMap<String, usize>,
    labels: Vec<Arc<str>>,
    edges: Vec<(usize, usize)>,
    weights: HashMap<usize, f64>,
    matrix_threshold: Option<usize>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn matrix_threshold(mut self, threshold: usize) -> Self {
        self.matrix_threshold = Some(threshold);
        self
    }

    pub fn vertex(&mut self, label: &str) -> usize {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.ids.insert(label.to_string(), id);
        self.labels.push(Arc::from(label));
        id
    }

    pub fn edge(&mut self, a: &str, b: &str) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop(a.to_string()));
        }
        let (u, v) = (self.vertex(a), self.vertex(b));
        self.edges.push((u, v));
        Ok(())
    }

    pub fn weight(&mut self, label: &str, w: f64) -> Result<()> {
        check_weight(label, w)?;
        let id = self.vertex(label);
        self.weights.insert(id, w);
        Ok(())
    }

    pub fn build(self) -> Result<Graph> {
        let n = self.labels.len();
        let mut weights = vec![1.0; n];
        for (id, w) in self.weights {
            weights[id] = w;
        }
        Graph::assemble(
            n,
            self.edges,
            self.labels,
            weights,
            self.matrix_threshold.unwrap_or(DEFAULT_MATRIX_THRESHOLD),
        )
    }
}

/// Builds a graph from labelled edges, deduplicating repeated pairs.
pub fn build_graph<S: AsRef<str>>(
    edges: &[(S, S)],
    weights: Option<&HashMap<String, f64>>,
) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    for (a, c) in edges {
        b.edge(a.as_ref(), c.as_ref())?;
    }
    if let Some(ws) = weights {
        let mut entries: Vec<_> = ws.iter().collect();
        entries.sort_by(|x, y| x.0.cmp(y.0));
        for (label, &w) in entries {
            b.weight(label, w)?;
        }
    }
    b.build()
}

impl Graph {
    /// Graph on ids `0..n` labelled by their decimal id.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: Vec<_> = edges.into_iter().collect();
        for &(u, v) in &edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { id: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u.to_string()));
            }
        }
        let labels = (0..n).map(|i| Arc::from(i.to_string().as_str())).collect();
        Self::assemble(n, edges, labels, vec![1.0; n], DEFAULT_MATRIX_THRESHOLD)
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path is valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is valid")
    }

    fn assemble(
        n: usize,
        edges: Vec<(usize, usize)>,
        labels: Vec<Arc<str>>,
        weights: Vec<f64>,
        matrix_threshold: usize,
    ) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        for (label, &w) in labels.iter().zip(&weights) {
            check_weight(label, w)?;
        }
        Ok(Self::from_parts(adj, labels, weights, m / 2, matrix_threshold))
    }

    fn from_parts(
        adj: Vec<Vec<usize>>,
        labels: Vec<Arc<str>>,
        weights: Vec<f64>,
        m: usize,
        matrix_threshold: usize,
    ) -> Self {
        let matrix = (adj.len() <= matrix_threshold).then(|| BitMatrix::build(&adj));
        Self {
            adj,
            labels,
            weights,
            m,
            matrix,
            matrix_threshold,
        }
    }

    /// Replaces all vertex weights.
    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.n() {
            return Err(Error::WeightCount {
                expected: self.n(),
                got: weights.len(),
            });
        }
        for (label, &w) in self.labels.iter().zip(&weights) {
            check_weight(label, w)?;
        }
        self.weights = weights;
        Ok(self)
    }

    /// Same graph with every weight reset to 1.
    pub fn unweighted(&self) -> Self {
        let mut g = self.clone();
        g.weights = vec![1.0; g.n()];
        g
    }

    pub fn with_matrix_threshold(self, threshold: usize) -> Self {
        Self::from_parts(self.adj, self.labels, self.weights, self.m, threshold)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        match &self.matrix {
            Some(mat) => mat.get(u, v),
            None => {
                let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
                    (u, v)
                } else {
                    (v, u)
                };
                self.adj[a].binary_search(&b).is_ok()
            }
        }
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_weight(&self, set: &VertexSet) -> f64 {
        set.iter().map(|v| self.weights[v]).sum()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(|l| &**l)
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| &**l == label)
    }

    pub fn has_matrix(&self) -> bool {
        self.matrix.is_some()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.as_slice().last() {
            Some(&v) if v >= self.n() => Err(Error::VertexOutOfRange { id: v, n: self.n() }),
            _ => Ok(()),
        }
    }

    /// Subgraph induced by `s`, with local id `i` standing for `s[i]`.
    pub fn induced(&self, s: &VertexSet) -> Result<Induced> {
        self.check_set(s)?;
        Ok(self.induced_on(s.as_slice()))
    }

    /// Like [`Graph::induced`] for a strictly increasing id slice known to be in range.
    pub(crate) fn induced_on(&self, verts: &[usize]) -> Induced {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let mut m = 0;
        let adj: Vec<Vec<usize>> = verts
            .iter()
            .map(|&v| {
                let list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter(|&&u| local[u] != usize::MAX).map(|&u| local[u])
                    .collect();
                m += list.len();
                list
            })
            .collect();
        let labels = verts.iter().map(|&v| self.labels[v].clone()).collect();
        let weights = verts.iter().map(|&v| self.weights[v]).collect();
        Induced {
            graph: Self::from_parts(adj, labels, weights, m / 2, self.matrix_threshold),
            to_parent: verts.to_vec(),
        }
    }

    /// Subgraph on everything except `removed`.
    pub fn without(&self, removed: &VertexSet) -> Induced {
        let keep: Vec<usize> = self.vertices().filter(|&v| !removed.contains(v)).collect();
        self.induced_on(&keep)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            for v in 0..n {
                if v != u && !self.adjacent(u, v) {
                    list.push(v);
                    m += 1;
                }
            }
        }
        Self::from_parts(
            adj,
            self.labels.clone(),
            self.weights.clone(),
            m / 2,
            self.matrix_threshold,
        )
    }

    pub fn is_clique(&self) -> bool {
        let n = self.n();
        self.m * 2 == n * n.saturating_sub(1)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Connected components ordered by their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut parts = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = parts.len();
            comp[s] = id;
            stack.push(s);
            let mut members = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        stack.push(v);
                    }
                }
            }
            parts.push(members.into_iter().collect());
        }
        parts
    }

    /// Components of the complement graph, ordered by their smallest vertex,
    /// computed in O(n + m) without materialising the complement.
    pub fn co_components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut unvisited: Vec<usize> = (0..n).rev().collect();
        let mut mark = vec![false; n];
        let mut parts = Vec::new();
        let mut queue = Vec::new();
        while let Some(s) = unvisited.pop() {
            let mut members = vec![s];
            queue.push(s);
            while let Some(u) = queue.pop() {
                for &v in &self.adj[u] {
                    mark[v] = true;
                }
                let mut keep = Vec::with_capacity(unvisited.len());
                for &w in &unvisited {
                    if mark[w] {
                        keep.push(w);
                    } else {
                        members.push(w);
                        queue.push(w);
                    }
                }
                unvisited = keep;
                for &v in &self.adj[u] {
                    mark[v] = false;
                }
            }
            parts.push(members.into_iter().collect::<VertexSet>());
        }
        parts.sort_by_key(|p: &VertexSet| p.min());
        parts
    }

    /// An induced P3 `(a, b, c)` with center `b`, or `None` for cluster graphs.
    pub fn induced_p3(&self) -> Option<[usize; 3]> {
        let mut in_nbhd = vec![false; self.n()];
        for comp in self.components() {
            let k = comp.len();
            let Some(v) = comp.iter().find(|&v| self.degree(v) + 1 < k) else {
                continue;
            };
            in_nbhd[v] = true;
            for &x in &self.adj[v] {
                in_nbhd[x] = true;
            }
            let found = self.adj[v]
                .iter()
                .find_map(|&x| self.adj[x].iter().find(|&&u| !in_nbhd[u]).map(|&u| [v, x, u]));
            debug_assert!(found.is_some(), "non-clique component has a vertex at distance two");
            return found;
        }
        None
    }

    pub fn is_cluster(&self) -> bool {
        self.induced_p3().is_none()
    }

    /// Some triangle `(a, b, c)` with `a < b < c`, if any.
    pub fn triangle(&self) -> Option<[usize; 3]> {
        let mut mark = vec![false; self.n()];
        for u in self.vertices() {
            for &v in &self.adj[u] {
                mark[v] = true;
            }
            let hit = self.adj[u]
                .iter()
                .filter(|&&v| v > u)
                .find_map(|&v| self.adj[v].iter().find(|&&w| w > v && mark[w]).map(|&w| [u, v, w]));
            for &v in &self.adj[u] {
                mark[v] = false;
            }
            if hit.is_some() {
                return hit;
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.triangle().is_none()
    }

    /// Every triangle `(a, b, c)` with `a < b < c`, lexicographically ordered.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        let mut mark = vec![false; self.n()];
        for u in self.vertices() {
            for &v in &self.adj[u] {
                mark[v] = true;
            }
            for &v in self.adj[u].iter().filter(|&&v| v > u) {
                for &w in self.adj[v].iter().filter(|&&w| w > v) {
                    if mark[w] {
                        out.push([u, v, w]);
                    }
                }
            }
            for &v in &self.adj[u] {
                mark[v] = false;
            }
        }
        out
    }

    /// Open neighbourhood of a vertex set: vertices outside `s` adjacent to some member.
    pub fn set_neighborhood(&self, s: &VertexSet) -> VertexSet {
        s.iter()
            .flat_map(|v| self.adj[v].iter().copied())
            .filter(|&u| !s.contains(u))
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj && self.labels == other.labels && self.weights == other.weights
    }
}

/// Checks whether removing `x` leaves a cluster graph (association) or a graph
/// of maximum degree at most one (dissociation).
pub fn validate_solution(g: &Graph, x: &VertexSet, mode: Mode) -> Result<Validation> {
    g.check_set(x)?;
    let witness = match mode {
        Mode::Association => {
            let rest = g.without(x);
            rest.graph
                .induced_p3()
                .map(|[a, b, c]| [rest.to_parent[a], rest.to_parent[b], rest.to_parent[c]])
        }
        Mode::Dissociation => g
            .vertices()
            .filter(|&v| !x.contains(v))
            .find_map(|v| {
                let mut kept = g.neighbors(v).iter().filter(|&&u| !x.contains(u));
                match (kept.next(), kept.next()) {
                    (Some(&a), Some(&c)) => Some([a, v, c]),
                    _ => None,
                }
            }),
    };
    Ok(Validation {
        valid: witness.is_none(),
        witness,
    })
}
