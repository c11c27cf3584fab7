//! Small forbidden induced subgraphs: detection, canonical ordering and
//! certification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Pattern kinds. `C4`, `Bull`, `Dart`, `Fox` and `Gem` form the forbidden
/// family; `P3` and `P4` are the auxiliary obstructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    P3,
    P4,
    C4,
    Bull,
    Dart,
    Fox,
    Gem,
}

impl Kind {
    pub const ALL: [Kind; 7] = [Kind::P3, Kind::P4, Kind::C4, Kind::Bull, Kind::Dart, Kind::Fox, Kind::Gem];
    pub const FORBIDDEN: [Kind; 5] = [Kind::C4, Kind::Bull, Kind::Dart, Kind::Fox, Kind::Gem];

    pub fn order(self) -> usize {
        match self {
            Kind::P3 => 3,
            Kind::P4 | Kind::C4 => 4,
            _ => 5,
        }
    }

    pub fn is_forbidden(self) -> bool {
        !matches!(self, Kind::P3 | Kind::P4)
    }

    /// Edges of the pattern on positions `0..order()`; positions follow the
    /// canonical vertex order of a [`Witness`] of this kind:
    ///
    /// * `C4`: cycle order.
    /// * `Bull`: triangle `t1 t2 t3`, then pendants `p1 ~ t1` and `p2 ~ t2`.
    /// * `Dart`: `(a, b, c, d, e)` with triangle `abc`, pendant `d` on `a`,
    ///   and `e` adjacent to `a` and `c`.
    /// * `Fox`: edge `(a, c)` joined to the independent set `(b, d, e)`.
    /// * `Gem`: path `p1 p2 p3 p4`, then the apex.
    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            Kind::P3 => &[(0, 1), (1, 2)],
            Kind::P4 => &[(0, 1), (1, 2), (2, 3)],
            Kind::C4 => &[(0, 1), (1, 2), (2, 3), (3, 0)],
            Kind::Bull => &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)],
            Kind::Dart => &[(0, 1), (1, 2), (2, 0), (3, 0), (0, 4), (4, 2)],
            Kind::Fox => &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
            Kind::Gem => &[(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)],
        }
    }

    /// The pattern as a standalone graph.
    pub fn graph(self) -> Graph {
        Graph::new(self.order(), self.edges().iter().copied()).expect("patterns are simple graphs")
    }

    fn adjacent(self, i: usize, j: usize) -> bool {
        self.edges().iter().any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
    }

    fn sorted_degrees(self) -> Vec<usize> {
        let mut deg = vec![0; self.order()];
        for &(a, b) in self.edges() {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.sort_unstable();
        deg
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::P3 => "P3",
            Kind::P4 => "P4",
            Kind::C4 => "C4",
            Kind::Bull => "bull",
            Kind::Dart => "dart",
            Kind::Fox => "fox",
            Kind::Gem => "gem",
        })
    }
}

/// An ordered vertex tuple inducing the pattern `kind` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub kind: Kind,
    pub vertices: Vec<usize>,
    pub certified: bool,
}

impl Witness {
    /// Checks that `vertices`, in the given order, induce `kind` in `g`.
    pub fn certify(g: &Graph, kind: Kind, vertices: Vec<usize>) -> Result<Self> {
        if matches_in_order(g, kind, &vertices) {
            Ok(Self {
                kind,
                vertices,
                certified: true,
            })
        } else {
            Err(Error::NotAWitness {
                expected: kind.to_string(),
                vertices,
            })
        }
    }

    /// Re-verifies against `g`, possibly a different graph than the one the
    /// witness was found in.
    pub fn recheck(&self, g: &Graph) -> bool {
        matches_in_order(g, self.kind, &self.vertices)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    /// Translates vertex ids through `to_parent`. The result is uncertified
    /// until checked against the parent graph.
    pub fn lift(&self, to_parent: &[usize]) -> Self {
        Self {
            kind: self.kind,
            vertices: self.vertices.iter().map(|&v| to_parent[v]).collect(),
            certified: false,
        }
    }
}

fn matches_in_order(g: &Graph, kind: Kind, t: &[usize]) -> bool {
    if t.len() != kind.order() || t.iter().any(|&v| v >= g.n()) {
        return false;
    }
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if t[i] == t[j] || g.adjacent(t[i], t[j]) != kind.adjacent(i, j) {
                return false;
            }
        }
    }
    true
}

/// Advances `p` to the next permutation in lexicographic order.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Induced-isomorphism test of `g[s]` against the fixed patterns; on a match
/// returns the kind and the vertices of `s` in canonical order.
pub fn classify_ordered(g: &Graph, s: &VertexSet) -> Result<Option<Witness>> {
    let k = s.len();
    if !(3..=5).contains(&k) {
        return Err(Error::PatternSize(k));
    }
    g.check_set(s)?;
    let verts = s.as_slice();
    let mut deg: Vec<usize> = verts
        .iter()
        .map(|&v| verts.iter().filter(|&&u| g.adjacent(u, v)).count())
        .collect();
    deg.sort_unstable();
    for kind in Kind::ALL {
        if kind.order() != k || kind.sorted_degrees() != deg {
            continue;
        }
        let mut perm: Vec<usize> = (0..k).collect();
        loop {
            let t: Vec<usize> = perm.iter().map(|&i| verts[i]).collect();
            if matches_in_order(g, kind, &t) {
                return Ok(Some(Witness {
                    kind,
                    vertices: t,
                    certified: true,
                }));
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    Ok(None)
}

pub fn classify(g: &Graph, s: &VertexSet) -> Result<Option<Kind>> {
    Ok(classify_ordered(g, s)?.map(|w| w.kind))
}

/// An induced P3 `(a, b, c)` with center `b`, or `None` iff `g` is a cluster graph.
pub fn find_p3(g: &Graph) -> Option<Witness> {
    g.induced_p3().map(|t| Witness {
        kind: Kind::P3,
        vertices: t.to_vec(),
        certified: matches_in_order(g, Kind::P3, &t),
    })
}

/// Outcome of [`tp_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TpCheck {
    TriviallyPerfect,
    /// An induced P4 or C4.
    Obstruction(Witness),
}

impl TpCheck {
    pub fn is_trivially_perfect(&self) -> bool {
        matches!(self, TpCheck::TriviallyPerfect)
    }
}

/// Certifying recognition of {P4, C4}-free graphs: every connected piece
/// must have a universal vertex, and removing it must leave pieces with the
/// same property. A piece without one yields a P4 or C4 around its
/// maximum-degree vertex.
pub fn tp_check(g: &Graph) -> TpCheck {
    let mut work = g.components();
    while let Some(piece) = work.pop() {
        if piece.len() <= 2 {
            continue;
        }
        let sub = g.induced_on(piece.as_slice());
        let h = &sub.graph;
        let k = h.n();
        if let Some(u) = h.vertices().find(|&u| h.degree(u) == k - 1) {
            let rest = h.without(&VertexSet::singleton(u));
            work.extend(
                rest.graph
                    .components()
                    .into_iter()
                    .map(|c| c.lift(&rest.to_parent).lift(&sub.to_parent)),
            );
            continue;
        }
        let local = obstruction_without_universal(h);
        let lifted = local.lift(&sub.to_parent);
        let w = Witness::certify(g, lifted.kind, lifted.vertices).expect("obstruction is induced");
        return TpCheck::Obstruction(w);
    }
    TpCheck::TriviallyPerfect
}

/// P4 or C4 in a connected graph with no universal vertex.
fn obstruction_without_universal(h: &Graph) -> Witness {
    let n = h.n();
    let v = h
        .vertices()
        .max_by_key(|&u| (h.degree(u), std::cmp::Reverse(u)))
        .expect("non-empty");
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([v]);
    dist[v] = 0;
    while let Some(x) = queue.pop_front() {
        for &y in h.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    if let Some(w) = h.vertices().find(|&u| dist[u] == 3) {
        let p2 = parent[w];
        let p1 = parent[p2];
        return Witness::certify(h, Kind::P4, vec![v, p1, p2, w]).expect("shortest paths are induced");
    }
    let u = h.vertices().find(|&u| dist[u] == 2).expect("v is not universal");
    let x = parent[u];
    // deg(v) >= deg(x) and x sees u, so v has a neighbour outside N[x]
    let y = h
        .neighbors(v)
        .iter()
        .copied()
        .find(|&y| y != x && !h.adjacent(x, y))
        .expect("maximum degree vertex has a private neighbour");
    if h.adjacent(y, u) {
        Witness::certify(h, Kind::C4, vec![v, x, u, y]).expect("chordless cycle")
    } else {
        Witness::certify(h, Kind::P4, vec![y, v, x, u]).expect("induced path")
    }
}

/// Exhaustive search over all 4- and 5-subsets for a forbidden pattern.
/// Meant for small graphs (the cost grows as n^5).
pub fn find_forbidden_bruteforce(g: &Graph) -> Option<Witness> {
    let n = g.n();
    for k in [4usize, 5] {
        if n < k {
            break;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let s = VertexSet::from_sorted(idx.clone());
            if let Some(w) = classify_ordered(g, &s).expect("valid subset") {
                if w.kind.is_forbidden() {
                    return Some(w);
                }
            }
            // next k-combination in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    None
}
