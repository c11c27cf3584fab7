//! Removal of vertex-disjoint forbidden patterns until the graph is in
//! reduced form.
//!
//! Phase 3 works on the modular decomposition tree computed once up front.
//! Every triangle of a prime node's quotient is disposed of in turn: it is
//! dropped once one of its modules is fully deleted (3.2) or two of its
//! modules have been merged (3.3); two modules whose surviving closed
//! neighbourhoods coincide are merged (3.4). Otherwise a module `M'`
//! distinguishing `M1` and `M2` is found (3.5), and a second distinguisher
//! `M''` for `M2, M3` (3.6) or `M1, M3` (3.7). One vertex from each of these
//! five modules induces a forbidden pattern, or four of them induce a C4;
//! as many vertex-disjoint copies as the smallest module allows are deleted.
//! Series nodes are skipped: all their children share a closed
//! neighbourhood, so their triangles would only ever cause merges.
//!
//! Phase 4 recomputes the decomposition of the remaining graph after every
//! deletion and looks for one more pattern (steps 4.4 to 4.8) until the
//! graph is a clique, two intersecting cliques, or in reduced form.
//! Disconnected remainders are split and reduced from scratch (4.1).

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::md::{md_tree, quotient_of, top_partition, MdKind, MdNode};
use crate::witness::{classify_ordered, tp_check, Kind, TpCheck, Witness};

use super::{two_cliques_shape, Step};

/// Deleted vertices and the witnesses that justify them, each tagged with
/// the step that produced it.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Reduction {
    pub removed: VertexSet,
    pub witnesses: Vec<(Step, Witness)>,
}

pub fn reduce(g: &Graph) -> Result<Reduction> {
    let mut removed = vec![false; g.n()];
    let mut witnesses = Vec::new();
    let mut work = vec![VertexSet::full(g.n())];
    while let Some(part) = work.pop() {
        if part.len() < 4 {
            continue;
        }
        let sub = g.induced_on(part.as_slice());
        let (found, split) = reduce_connected(&sub.graph)?;
        for (step, w) in found {
            let lifted = w.lift(&sub.to_parent);
            let w = Witness::certify(g, lifted.kind, lifted.vertices).map_err(|e| cert(step, e.to_string()))?;
            for &v in &w.vertices {
                removed[v] = true;
            }
            witnesses.push((step, w));
        }
        work.extend(split.iter().rev().map(|c| c.lift(&sub.to_parent)));
    }
    Ok(Reduction {
        removed: (0..g.n()).filter(|&v| removed[v]).collect(),
        witnesses,
    })
}

fn cert(step: Step, detail: String) -> Error {
    Error::Certification { step, detail }
}

type Found = Vec<(Step, Witness)>;

/// Reduces `h`, returning witnesses in `h`'s ids and, if the remainder fell
/// apart, its components (to be reduced again on their own).
fn reduce_connected(h: &Graph) -> Result<(Found, Vec<VertexSet>)> {
    let comps = h.components();
    if comps.len() > 1 {
        return Ok((Vec::new(), comps));
    }
    if h.is_clique() {
        return Ok((Vec::new(), Vec::new()));
    }
    let n = h.n();
    let mut x = vec![false; n];
    let mut found = Vec::new();
    dispose_triangles(h, &mut x, &mut found)?;

    loop {
        let keep: Vec<usize> = (0..n).filter(|&v| !x[v]).collect();
        if keep.is_empty() {
            return Ok((found, Vec::new()));
        }
        let cur = h.induced_on(&keep);
        let comps = cur.graph.components();
        if comps.len() > 1 {
            let split = comps.iter().map(|c| c.lift(&cur.to_parent)).collect();
            return Ok((found, split));
        }
        let Some((step, w)) = cleanup_step(&cur.graph)? else {
            return Ok((found, Vec::new()));
        };
        let lifted = w.lift(&cur.to_parent);
        for &v in &lifted.vertices {
            x[v] = true;
        }
        found.push((step, lifted));
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = a;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra.max(rb)] = ra.min(rb);
    }
}

/// Phase 3 on the decomposition of `h`, deleting into `x`.
fn dispose_triangles(h: &Graph, x: &mut [bool], found: &mut Found) -> Result<()> {
    let tree = md_tree(h)?;
    for node in tree.nodes() {
        if node.kind == MdKind::Prime {
            dispose_node(h, node, x, found)?;
        }
    }
    Ok(())
}

fn dispose_node(h: &Graph, node: &MdNode, x: &mut [bool], found: &mut Found) -> Result<()> {
    let parts = node.child_sets();
    let inner = h.induced_on(node.vertices.as_slice());
    let local_parts: Vec<VertexSet> = parts
        .iter()
        .map(|p| p.iter().map(|v| inner.to_parent.binary_search(&v).expect("child inside parent")).collect())
        .collect();
    let q = quotient_of(&inner.graph, &local_parts)?.graph;
    let triangles = q.triangles();
    if triangles.is_empty() {
        return Ok(());
    }
    let mut alive: Vec<usize> = parts.iter().map(|p| p.iter().filter(|&v| !x[v]).count()).collect();
    let mut uf = UnionFind((0..parts.len()).collect());

    let closed = |i: usize, alive: &[usize]| -> Vec<usize> {
        let mut s: Vec<usize> = q.neighbors(i).iter().copied().filter(|&j| alive[j] > 0).collect();
        let pos = s.partition_point(|&j| j < i);
        s.insert(pos, i);
        s
    };
    // smallest alive node adjacent to exactly one of a, b
    let distinguisher = |a: usize, b: usize, alive: &[usize]| -> Option<usize> {
        let mut cands: Vec<usize> = q
            .neighbors(a)
            .iter()
            .chain(q.neighbors(b))
            .copied()
            .filter(|&j| j != a && j != b && alive[j] > 0 && q.adjacent(a, j) != q.adjacent(b, j))
            .collect();
        cands.sort_unstable();
        cands.first().copied()
    };

    for t in triangles {
        loop {
            if t.iter().any(|&i| alive[i] == 0) {
                break;
            }
            let pairs = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])];
            if pairs.iter().any(|&(a, b)| uf.find(a) == uf.find(b)) {
                break;
            }
            if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| closed(a, &alive) == closed(b, &alive)) {
                uf.union(a, b);
                break;
            }
            let (mut m1, mut m2, m3) = (t[0], t[1], t[2]);
            let mp = distinguisher(m1, m2, &alive).ok_or_else(|| {
                cert(Step::DistinguisherAdjacent, format!("no module distinguishes {m1} and {m2}"))
            })?;
            if q.adjacent(mp, m1) {
                std::mem::swap(&mut m1, &mut m2);
            }
            let (step, pair) = if q.adjacent(mp, m3) {
                (Step::DistinguisherAdjacent, (m2, m3))
            } else {
                (Step::DistinguisherNonAdjacent, (m1, m3))
            };
            let mpp = distinguisher(pair.0, pair.1, &alive)
                .ok_or_else(|| cert(step, format!("no module distinguishes {} and {}", pair.0, pair.1)))?;
            let chosen = pattern_on_nodes(&q, &[m1, m2, m3, mp, mpp])
                .ok_or_else(|| cert(step, format!("modules {:?} induce no forbidden pattern", [m1, m2, m3, mp, mpp])))?;

            let k = chosen.vertices.iter().map(|&i| alive[i]).min().expect("non-empty pattern");
            let lists: Vec<Vec<usize>> = chosen
                .vertices
                .iter()
                .map(|&i| parts[i].iter().filter(|&v| !x[v]).take(k).collect())
                .collect();
            for c in 0..k {
                let tuple: Vec<usize> = lists.iter().map(|l| l[c]).collect();
                let w = Witness::certify(h, chosen.kind, tuple).map_err(|e| cert(step, e.to_string()))?;
                for &v in &w.vertices {
                    x[v] = true;
                }
                found.push((step, w));
            }
            for &i in &chosen.vertices {
                alive[i] -= k;
            }
        }
    }
    Ok(())
}

/// A forbidden pattern on all five quotient nodes, else a C4 on four of them.
fn pattern_on_nodes(q: &Graph, nodes: &[usize; 5]) -> Option<Witness> {
    let all: VertexSet = nodes.iter().copied().collect();
    if let Some(w) = classify_ordered(q, &all).expect("five distinct nodes") {
        if w.kind.is_forbidden() {
            return Some(w);
        }
    }
    nodes.iter().find_map(|&skip| {
        let s: VertexSet = nodes.iter().copied().filter(|&i| i != skip).collect();
        classify_ordered(q, &s)
            .expect("four distinct nodes")
            .filter(|w| w.kind == Kind::C4)
    })
}

/// Certifies `vertices` (of `g`) as one of `kinds`.
fn certify_as(g: &Graph, step: Step, kinds: &[Kind], vertices: &[usize]) -> Result<(Step, Witness)> {
    let s: VertexSet = vertices.iter().copied().collect();
    if s.len() != vertices.len() {
        return Err(cert(step, format!("repeated vertex in {vertices:?}")));
    }
    match classify_ordered(g, &s)? {
        Some(w) if kinds.contains(&w.kind) => Ok((step, w)),
        other => Err(cert(
            step,
            format!("{vertices:?} induce {:?}, expected one of {kinds:?}", other.map(|w| w.kind)),
        )),
    }
}

/// Two non-adjacent vertices of `s`, if `g[s]` is not a clique.
fn non_adjacent_pair(g: &Graph, s: &VertexSet) -> Option<(usize, usize)> {
    s.iter()
        .find_map(|a| s.iter().find(|&b| b != a && !g.adjacent(a, b)).map(|b| (a, b)))
}

/// One phase-4 iteration on a connected graph: a pattern to delete, or
/// `None` when the graph is done.
fn cleanup_step(g: &Graph) -> Result<Option<(Step, Witness)>> {
    if g.is_clique() || two_cliques_shape(g).is_some() {
        return Ok(None);
    }
    let (kind, parts) = top_partition(g);
    let q = quotient_of(g, &parts)?.graph;
    if kind == MdKind::Prime {
        if let Some(t) = q.triangle() {
            let mods: Vec<_> = t.iter().map(|&i| parts[i].as_slice().to_vec()).collect();
            return Err(cert(Step::PrimeTriangle, format!("prime quotient keeps triangle {mods:?}")));
        }
    }
    let inner: Vec<Graph> = parts.iter().map(|p| g.induced_on(p.as_slice()).graph).collect();
    let is_clique: Vec<bool> = inner.iter().map(Graph::is_clique).collect();

    // 4.4
    if let Some((i, j)) = q.edges().find(|&(i, j)| !is_clique[i] && !is_clique[j]) {
        let (a1, a2) = non_adjacent_pair(g, &parts[i]).expect("non-clique");
        let (b1, b2) = non_adjacent_pair(g, &parts[j]).expect("non-clique");
        return certify_as(g, Step::AdjacentNonCliques, &[Kind::C4], &[a1, b1, a2, b2]).map(Some);
    }

    // 4.5
    if kind == MdKind::Series && parts.len() >= 3 {
        let nontrivial: Vec<usize> = (0..parts.len()).filter(|&i| parts[i].len() > 1).collect();
        let &[i] = nontrivial.as_slice() else {
            return Err(cert(
                Step::CliqueQuotientObstruction,
                format!("expected one nontrivial module, found {}", nontrivial.len()),
            ));
        };
        let universal: Vec<usize> = parts.iter().filter(|p| p.len() == 1).map(|p| p.as_slice()[0]).collect();
        return split_module(
            g,
            &parts[i],
            &inner[i],
            &universal,
            [
                Step::CliqueQuotientObstruction,
                Step::CliqueQuotientTwoComponents,
                Step::CliqueQuotientManyComponents,
            ],
        )
        .map(Some);
    }

    // 4.6
    if let Some(i) = (0..parts.len()).find(|&i| !inner[i].is_cluster()) {
        let outside: Vec<usize> = g.set_neighborhood(&parts[i]).into_vec();
        return split_module(
            g,
            &parts[i],
            &inner[i],
            &outside,
            [Step::ModuleObstruction, Step::ModuleDisconnected, Step::ModuleConnected],
        )
        .map(Some);
    }

    // 4.7
    for i in (0..parts.len()).filter(|&i| !is_clique[i]) {
        let (a, b) = non_adjacent_pair(g, &parts[i]).expect("non-clique");
        let nq = q.neighbors(i);
        if nq.len() >= 2 {
            let x = parts[nq[0]].as_slice()[0];
            let y = parts[nq[1]].as_slice()[0];
            return certify_as(g, Step::NonCliqueNeighbors, &[Kind::C4], &[a, x, b, y]).map(Some);
        }
        if let [j] = *nq {
            if parts[j].len() >= 2 {
                // clique module j is the only neighbour of i; a third module
                // next to j but not to i completes a fox
                let (c, d) = (parts[j].as_slice()[0], parts[j].as_slice()[1]);
                let far = q.neighbors(j).iter().find(|&&l| l != i).ok_or_else(|| {
                    cert(Step::NonCliqueNeighbors, format!("module {:?} has no other neighbour", parts[j].as_slice()))
                })?;
                let z = parts[*far].as_slice()[0];
                return certify_as(g, Step::NonCliqueNeighbors, &[Kind::Fox], &[c, d, a, b, z]).map(Some);
            }
        }
    }

    // 4.8
    if let Some(i) = (0..parts.len()).find(|&i| parts[i].len() > 1 && q.degree(i) >= 3) {
        let (c, d) = (parts[i].as_slice()[0], parts[i].as_slice()[1]);
        let nq = q.neighbors(i);
        let picks: Vec<usize> = nq[..3].iter().map(|&j| parts[j].as_slice()[0]).collect();
        return certify_as(g, Step::ManyNeighbors, &[Kind::Fox], &[c, d, picks[0], picks[1], picks[2]]).map(Some);
    }
    Ok(None)
}

/// Steps 4.5 and 4.6: a module `m` that is not a cluster (4.6) or the only
/// nontrivial module under a clique quotient (4.5). `outside` lists
/// vertices adjacent to all of `m`.
fn split_module(g: &Graph, m: &VertexSet, inner: &Graph, outside: &[usize], steps: [Step; 3]) -> Result<(Step, Witness)> {
    let up = |v: usize| m.as_slice()[v];
    let &v0 = outside.first().ok_or_else(|| cert(steps[0], "module has no outside neighbour".into()))?;

    // P4 plus a dominating vertex is a gem; a C4 is kept as is
    if let TpCheck::Obstruction(w) = tp_check(inner) {
        let mut verts: Vec<usize> = w.vertices.iter().map(|&v| up(v)).collect();
        if w.kind == Kind::P4 {
            verts.push(v0);
            return certify_as(g, steps[0], &[Kind::Gem], &verts);
        }
        return certify_as(g, steps[0], &[Kind::C4], &verts);
    }

    let comps = inner.components();
    if comps.len() == 2 || (comps.len() > 2 && steps[0] == Step::ModuleObstruction) {
        // P3 in a non-clique component, a dominating vertex, and a vertex
        // from another component form a dart
        let (ci, p3) = comps
            .iter()
            .enumerate()
            .find_map(|(ci, c)| {
                let sub = inner.induced_on(c.as_slice());
                sub.graph.induced_p3().map(|t| (ci, t.map(|v| sub.to_parent[v])))
            })
            .ok_or_else(|| cert(steps[1], "no component contains a P3".into()))?;
        let other = comps[if ci == 0 { 1 } else { 0 }].as_slice()[0];
        let verts = [up(p3[0]), up(p3[1]), up(p3[2]), up(other), v0];
        return certify_as(g, steps[1], &[Kind::Dart], &verts);
    }
    if comps.len() > 2 {
        // three vertices from different components plus two dominating ones
        let &v1 = outside
            .get(1)
            .ok_or_else(|| cert(steps[2], "fewer than two universal vertices".into()))?;
        let picks: Vec<usize> = comps[..3].iter().map(|c| up(c.as_slice()[0])).collect();
        return certify_as(g, steps[2], &[Kind::Fox], &[v0, v1, picks[0], picks[1], picks[2]]);
    }

    // connected trivially perfect non-cluster module (4.6.3): its universal
    // vertex u, a non-adjacent pair a, b, a neighbour v of the module and a
    // vertex x adjacent to v but to nothing in the module
    let step = steps[2];
    let k = inner.n();
    let u = inner
        .vertices()
        .find(|&w| inner.degree(w) + 1 == k)
        .ok_or_else(|| cert(step, "connected module without universal vertex".into()))?;
    let (a, b) = non_adjacent_pair(inner, &VertexSet::full(k)).ok_or_else(|| cert(step, "module is a clique".into()))?;
    let (v, x) = outside
        .iter()
        .find_map(|&v| {
            g.neighbors(v)
                .iter()
                .find(|&&x| !m.contains(x) && !g.adjacent(x, m.as_slice()[0]))
                .map(|&x| (v, x))
        })
        .ok_or_else(|| cert(step, format!("no vertex two steps away from module {:?}", m.as_slice())))?;
    certify_as(g, step, &[Kind::Dart], &[up(u), up(a), up(b), v, x])
}
