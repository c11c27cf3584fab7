//! Exact minimum association sets for small graphs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default node budget of the branching search.
pub const EXACT_DEFAULT_BUDGET: u64 = 50_000_000;

/// Subset enumeration handles at most this many vertices.
pub const ENUMERATE_MAX_N: usize = 22;

/// Up to this size [`exact_association`] enumerates subsets, which makes the
/// returned set the lexicographically smallest minimum one.
const TIE_BREAK_MAX_N: usize = 12;

/// The branching search keeps vertex sets in a `u128`.
const BRANCH_MAX_N: usize = 128;

/// Minimum association set and its size.
pub fn exact_association(g: &Graph) -> Result<(VertexSet, usize)> {
    exact_association_with_budget(g, EXACT_DEFAULT_BUDGET)
}

/// Like [`exact_association`] with an explicit limit on search nodes.
///
/// Components are solved separately. Inside a component, true twins are
/// merged into weighted classes (some minimum solution deletes each class
/// entirely or not at all), and iterative deepening branches on the three
/// vertices of an induced P3, pruned by a disjoint-P3 packing bound.
pub fn exact_association_with_budget(g: &Graph, budget: u64) -> Result<(VertexSet, usize)> {
    let n = g.n();
    if n <= TIE_BREAK_MAX_N {
        return exact_association_enumerate(g);
    }
    let mut deleted = Vec::new();
    let mut nodes = 0u64;
    for comp in g.components() {
        let sub = g.induced_on(comp.as_slice());
        if sub.graph.is_clique() {
            continue;
        }
        let (classes, class_graph) = twin_classes(&sub.graph);
        if class_graph.n() > BRANCH_MAX_N {
            return Err(Error::ExactUnavailable(format!(
                "component with {} twin classes exceeds {BRANCH_MAX_N}",
                class_graph.n()
            )));
        }
        let mut search = Branching::new(&class_graph, budget.saturating_sub(nodes));
        let picked = search.solve()?;
        nodes += search.nodes;
        for c in picked {
            deleted.extend(classes[c].iter().map(|&v| sub.to_parent[v]));
        }
    }
    let set: VertexSet = deleted.into_iter().collect();
    let size = set.len();
    Ok((set, size))
}

/// Groups vertices by closed neighbourhood; the class graph has one vertex
/// per class weighted by its size.
fn twin_classes(g: &Graph) -> (Vec<Vec<usize>>, Graph) {
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; g.n()];
    for v in g.vertices() {
        let mut key = g.neighbors(v).to_vec();
        let pos = key.partition_point(|&u| u < v);
        key.insert(pos, v);
        let c = *index.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(v);
        class_of[v] = c;
    }
    let edges = g
        .edges()
        .map(|(a, b)| (class_of[a], class_of[b]))
        .filter(|(a, b)| a < b);
    let weights = classes.iter().map(|c| c.len() as f64).collect();
    let graph = Graph::new(classes.len(), edges)
        .and_then(|q| q.with_weights(weights))
        .expect("class graph is simple");
    (classes, graph)
}

struct Branching {
    adj: Vec<u128>,
    weight: Vec<usize>,
    budget: u64,
    nodes: u64,
    chosen: Vec<usize>,
}

impl Branching {
    fn new(g: &Graph, budget: u64) -> Self {
        Self {
            adj: g
                .vertices()
                .map(|v| g.neighbors(v).iter().fold(0u128, |acc, &u| acc | 1 << u))
                .collect(),
            weight: g.weights().iter().map(|&w| w as usize).collect(),
            budget,
            nodes: 0,
            chosen: Vec::new(),
        }
    }

    /// An induced P3 `(a, b, c)` with center `b` inside `alive`.
    fn p3(&self, alive: u128) -> Option<[usize; 3]> {
        let mut rest = alive;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let nb = self.adj[b] & alive;
            let mut m = nb;
            while m != 0 {
                let a = m.trailing_zeros() as usize;
                m &= m - 1;
                let far = nb & !self.adj[a] & !(1u128 << a);
                if far != 0 {
                    return Some([a, b, far.trailing_zeros() as usize]);
                }
            }
        }
        None
    }

    /// Sum over greedily packed disjoint P3s of their lightest vertex.
    fn packing_bound(&self, mut alive: u128) -> usize {
        let mut bound = 0;
        while let Some(t) = self.p3(alive) {
            bound += t.iter().map(|&v| self.weight[v]).min().expect("three vertices");
            for v in t {
                alive &= !(1u128 << v);
            }
        }
        bound
    }

    fn solve(&mut self) -> Result<Vec<usize>> {
        let n = self.adj.len();
        let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        let mut k = self.packing_bound(all);
        loop {
            if self.dfs(all, k)? {
                return Ok(std::mem::take(&mut self.chosen));
            }
            k += 1;
        }
    }

    fn dfs(&mut self, alive: u128, left: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::ExactUnavailable(format!("search budget of {} nodes exceeded", self.budget)));
        }
        let Some(t) = self.p3(alive) else {
            return Ok(true);
        };
        if self.packing_bound(alive) > left {
            return Ok(false);
        }
        for v in [t[1], t[0], t[2]] {
            let w = self.weight[v];
            if w > left {
                continue;
            }
            self.chosen.push(v);
            if self.dfs(alive & !(1u128 << v), left - w)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

/// Minimum association set by enumerating subsets in order of size, then
/// lexicographically; the first valid one is returned.
pub fn exact_association_enumerate(g: &Graph) -> Result<(VertexSet, usize)> {
    let n = g.n();
    if n > ENUMERATE_MAX_N {
        return Err(Error::TooLarge { n, max: ENUMERATE_MAX_N });
    }
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &u| acc | 1 << u))
        .collect();
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let is_cluster = |alive: u32| {
        (0..n).filter(|&b| alive >> b & 1 == 1).all(|b| {
            let nb = adj[b] & alive;
            // every neighbour of b sees all other neighbours of b
            (0..n)
                .filter(|&a| nb >> a & 1 == 1)
                .all(|a| nb & !adj[a] & !(1 << a) == 0)
        })
    };
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let removed = idx.iter().fold(0u32, |acc, &v| acc | 1 << v);
            if is_cluster(full & !removed) {
                return Ok((VertexSet::from_sorted(idx), k));
            }
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("deleting every vertex leaves a cluster graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate_solution, Mode};
    use crate::witness::Kind;

    #[test]
    fn patterns_need_two() {
        for kind in Kind::FORBIDDEN {
            assert_eq!(exact_association(&kind.graph()).unwrap().1, 2, "{kind}");
        }
        assert_eq!(exact_association(&Graph::cycle(5)).unwrap().1, 2);
        assert_eq!(exact_association(&Graph::complete(6)).unwrap().1, 0);
    }

    #[test]
    fn lexicographic_ties() {
        let (set, size) = exact_association(&Graph::path(4)).unwrap();
        assert_eq!((set, size), (VertexSet::from([1]), 1));
    }

    #[test]
    fn branching_matches_enumeration() {
        // two disjoint C5s with a pendant twin pair, above the enumeration cut-off
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 1) % 5)));
        edges.extend([(10, 0), (11, 0), (10, 11), (12, 5)]);
        let g = Graph::new(13, edges).unwrap();
        let (set, size) = exact_association(&g).unwrap();
        assert!(validate_solution(&g, &set, Mode::Association).unwrap().valid);
        assert_eq!(size, exact_association_enumerate(&g).unwrap().1);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = Graph::cycle(40);
        assert!(matches!(
            exact_association_with_budget(&g, 5),
            Err(Error::ExactUnavailable(_))
        ));
    }
}
