//! Acceptance suite. Every criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.
//!
//! Corpora: all 2^15 labelled graphs on six vertices plus 500 seeded G(n, p)
//! samples for each n in {8, 10, 12} and p in {0.1, 0.3, 0.5, 0.8}. The
//! library's exact solvers give the reference optima; they are themselves
//! cross-checked against the brute-force oracles in this file.

use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;

use clusterkit::association::{exact_association, naive_3_approx, reduce, solve};
use clusterkit::bench::{random_medium, run_suite, Algorithm, BenchOptions, Suite};
use clusterkit::dissociation::{approx_dissociation_2, exact_dissociation};
use clusterkit::generate::{generate, gnp, graph_from_mask, random_weights, GenSpec, Model};
use clusterkit::md::{md_tree, strong_modules_oracle, top_partition, MdKind};
use clusterkit::witness::Kind;
use clusterkit::{Graph, VertexSet};

// ---------------------------------------------------------------------------
// independent oracles on bitmasks (n <= 32)

fn adjacency(g: &Graph) -> Vec<u32> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &u| acc | 1 << u))
        .collect()
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask >> i & 1 == 1)
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// No kept triple a - b - c with a, c non-adjacent.
fn oracle_cluster(adj: &[u32], keep: u32) -> bool {
    bits(keep).all(|b| {
        let nb = adj[b] & keep;
        bits(nb).all(|a| nb & !adj[a] & !(1 << a) == 0)
    })
}

fn oracle_max_degree_one(adj: &[u32], keep: u32) -> bool {
    bits(keep).all(|v| (adj[v] & keep).count_ones() <= 1)
}

fn set_mask(s: &VertexSet) -> u32 {
    s.iter().fold(0, |acc, v| acc | 1 << v)
}

fn oracle_min_association(g: &Graph) -> usize {
    let adj = adjacency(g);
    let full = full_mask(g.n());
    (0..=full)
        .filter(|&del| oracle_cluster(&adj, full & !del))
        .map(|del| del.count_ones() as usize)
        .min()
        .expect("deleting everything works")
}

fn oracle_min_dissociation(g: &Graph) -> f64 {
    let adj = adjacency(g);
    let full = full_mask(g.n());
    (0..=full)
        .filter(|&del| oracle_max_degree_one(&adj, full & !del))
        .map(|del| bits(del).map(|v| g.weight(v)).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

fn oracle_is_module(adj: &[u32], s: u32, n: usize) -> bool {
    (0..n).filter(|&x| s >> x & 1 == 0).all(|x| adj[x] & s == 0 || adj[x] & s == s)
}

/// Only trivial modules (and at least four vertices).
fn oracle_prime(g: &Graph) -> bool {
    let n = g.n();
    let adj = adjacency(g);
    n >= 4
        && (1..full_mask(n)).all(|s| s.count_ones() < 2 || !oracle_is_module(&adj, s, n))
}

fn two_cliques_shape(adj: &[u32], keep: u32) -> bool {
    let universal: u32 = bits(keep).filter(|&v| adj[v] & keep == keep & !(1 << v)).fold(0, |a, v| a | 1 << v);
    let rest = keep & !universal;
    if universal == 0 || rest == 0 {
        return false;
    }
    let first = rest.trailing_zeros() as usize;
    let a = (adj[first] & rest) | 1 << first;
    let b = rest & !a;
    let clique = |s: u32| bits(s).all(|v| adj[v] & s == s & !(1 << v));
    b != 0 && clique(a) && clique(b) && bits(a).all(|v| adj[v] & b == 0)
}

/// The reduced-form clause suite, evaluated with the brute-force strong
/// module oracle. Returns the first violated clause.
fn oracle_reduced_form(g: &Graph) -> Result<(), String> {
    for comp in g.components() {
        let h = g.induced(&comp).unwrap().graph;
        let adj = adjacency(&h);
        let k = h.n();
        let full = full_mask(k);
        if h.is_clique() || two_cliques_shape(&adj, full) {
            continue;
        }
        let strong = strong_modules_oracle(&h).unwrap();
        let proper: Vec<u32> = strong.iter().map(set_mask).filter(|&s| s != full).collect();
        let maximal: Vec<u32> = proper
            .iter()
            .copied()
            .filter(|&s| !proper.iter().any(|&t| t != s && t & s == s))
            .collect();
        let adjacent = |a: u32, b: u32| adj[a.trailing_zeros() as usize] & b != 0;
        let qdeg = |a: u32| maximal.iter().filter(|&&b| b != a && adjacent(a, b)).count();
        for (i, &a) in maximal.iter().enumerate() {
            for (j, &b) in maximal.iter().enumerate().skip(i + 1) {
                for &c in &maximal[j + 1..] {
                    if adjacent(a, b) && adjacent(b, c) && adjacent(a, c) {
                        return Err(format!("quotient triangle {a:b} {b:b} {c:b}"));
                    }
                }
            }
        }
        for &m in &maximal {
            if !oracle_cluster(&adj, m) {
                return Err(format!("module {m:b} is not a cluster"));
            }
            let clique = bits(m).all(|v| adj[v] & m == m & !(1 << v));
            let outside = bits(m).fold(0u32, |acc, v| acc | adj[v]) & !m;
            if !clique && outside.count_ones() != 1 {
                return Err(format!("non-clique module {m:b} has {} neighbours", outside.count_ones()));
            }
            if qdeg(m) > 2 && m.count_ones() > 1 {
                return Err(format!("module {m:b} has {} quotient neighbours", qdeg(m)));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// corpora

struct Instance {
    id: String,
    graph: Graph,
    seed: u64,
}

fn corpus() -> &'static [Instance] {
    static CORPUS: OnceLock<Vec<Instance>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut out: Vec<Instance> = (0..1u64 << 15)
            .map(|mask| Instance {
                id: format!("n6/{mask}"),
                graph: graph_from_mask(6, mask),
                seed: mask,
            })
            .collect();
        for (n, p, seed, graph) in random_medium(500) {
            out.push(Instance {
                id: format!("gnp({n},{p})/{seed}"),
                graph,
                seed: 1_000_000 + seed * 100 + n as u64,
            });
        }
        out
    })
}

/// Exact optima, cross-checked against the oracle on every six-vertex graph
/// and on the first 30 seeds of each random cell.
fn exact_sizes() -> &'static [usize] {
    static EXACT: OnceLock<Vec<usize>> = OnceLock::new();
    EXACT.get_or_init(|| {
        corpus()
            .par_iter()
            .enumerate()
            .map(|(i, inst)| {
                let (set, k) = exact_association(&inst.graph).expect("small instance");
                assert_eq!(set.len(), k);
                let check = i < 1 << 15 || (inst.seed - 1_000_000) / 100 < 30;
                if check {
                    assert_eq!(k, oracle_min_association(&inst.graph), "exact solver disagrees on {}", inst.id);
                }
                k
            })
            .collect()
    })
}

// ---------------------------------------------------------------------------
// criteria

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(failures: Vec<String>, ok: String) -> Verdict {
    if failures.is_empty() {
        Ok(ok)
    } else {
        let shown: Vec<_> = failures.iter().take(5).cloned().collect();
        Err(format!("{} failures, e.g. {}", failures.len(), shown.join("; ")))
    }
}

fn ratio_association() -> Verdict {
    let exact = exact_sizes();
    let results: Vec<(usize, Option<String>)> = corpus()
        .par_iter()
        .zip(exact)
        .map(|(inst, &opt)| {
            let g = &inst.graph;
            let sol = match solve(g) {
                Ok(s) => s,
                Err(e) => return (0, Some(format!("{}: {e}", inst.id))),
            };
            let adj = adjacency(g);
            let keep = full_mask(g.n()) & !set_mask(&sol.deleted);
            if !oracle_cluster(&adj, keep) {
                return (sol.size(), Some(format!("{}: invalid", inst.id)));
            }
            // 2 * size <= 5 * opt, exactly on integers
            if 2 * sol.size() > 5 * opt {
                return (sol.size(), Some(format!("{}: {} vs optimum {opt}", inst.id, sol.size())));
            }
            (sol.size(), None)
        })
        .collect();
    let worst = results
        .iter()
        .zip(exact)
        .filter(|(_, &o)| o > 0)
        .map(|((s, _), &o)| *s as f64 / o as f64)
        .fold(1.0, f64::max);
    let failures = results.into_iter().filter_map(|(_, f)| f).collect();
    ensure(failures, format!("{} instances, max ratio {worst:.3}", corpus().len()))
}

fn ratio_dissociation() -> Verdict {
    let results: Vec<(f64, Option<String>)> = corpus()
        .par_iter()
        .enumerate()
        .map(|(i, inst)| {
            let n = inst.graph.n();
            let g = inst.graph.clone().with_weights(random_weights(n, 1, 100, inst.seed)).unwrap();
            let r = approx_dissociation_2(&g);
            let (_, opt) = exact_dissociation(&g).unwrap();
            if (i % 8 == 0 || n == 6 && i % 2 == 0) && (opt - oracle_min_dissociation(&g)).abs() > 1e-9 {
                return (0.0, Some(format!("{}: exact solver disagrees with oracle", inst.id)));
            }
            let adj = adjacency(&g);
            let keep = full_mask(n) & !set_mask(&r.deleted);
            let failure = if !oracle_max_degree_one(&adj, keep) {
                Some(format!("{}: invalid", inst.id))
            } else if r.weight > 2.0 * opt + 1e-9 {
                Some(format!("{}: weight {} vs optimum {opt}", inst.id, r.weight))
            } else if r.weight > 2.0 * r.lower_bound + 1e-9 {
                Some(format!("{}: weight {} vs bound {}", inst.id, r.weight, r.lower_bound))
            } else if r.lower_bound > opt + 1e-9 {
                Some(format!("{}: bound {} above optimum {opt}", inst.id, r.lower_bound))
            } else {
                None
            };
            (if opt > 0.0 { r.weight / opt } else { 1.0 }, failure)
        })
        .collect();
    let worst = results.iter().map(|r| r.0).fold(1.0, f64::max);
    let mut failures: Vec<String> = results.into_iter().filter_map(|r| r.1).collect();

    // self-certificate on instances too large for the exact solver
    for (n, seed) in [(500, 1), (1000, 2), (2000, 3)] {
        let g = gnp(n, 20.0 / n as f64, seed).unwrap();
        let g = g.with_weights(random_weights(n, 1, 100, seed)).unwrap();
        let r = approx_dissociation_2(&g);
        let valid = g
            .vertices()
            .filter(|&v| !r.deleted.contains(v))
            .all(|v| g.neighbors(v).iter().filter(|&&u| !r.deleted.contains(u)).count() <= 1);
        if !valid || r.weight > 2.0 * r.lower_bound + 1e-6 {
            failures.push(format!("gnp({n}) seed {seed}: weight {} bound {}", r.weight, r.lower_bound));
        }
    }
    ensure(failures, format!("{} instances + 3 large, max ratio {worst:.3}", corpus().len()))
}

fn reduce_postconditions() -> Verdict {
    let failures: Vec<String> = corpus()
        .par_iter()
        .filter_map(|inst| {
            let g = &inst.graph;
            let red = match reduce(g) {
                Ok(r) => r,
                Err(e) => return Some(format!("{}: {e}", inst.id)),
            };
            let mut used = 0u32;
            for (step, w) in &red.witnesses {
                if !w.kind.is_forbidden() || !w.certified || !w.recheck(g) {
                    return Some(format!("{}: bad witness {w:?} from {step}", inst.id));
                }
                let m = set_mask(&w.vertex_set());
                if used & m != 0 {
                    return Some(format!("{}: overlapping witnesses", inst.id));
                }
                used |= m;
            }
            if used != set_mask(&red.removed) {
                return Some(format!("{}: removed set differs from witness union", inst.id));
            }
            let rest = g.without(&red.removed).graph;
            oracle_reduced_form(&rest).err().map(|e| format!("{}: {e}", inst.id))
        })
        .collect();
    ensure(failures, format!("{} instances", corpus().len()))
}

fn pattern_floor() -> Verdict {
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    for kind in Kind::FORBIDDEN {
        let g = kind.graph();
        let opt = oracle_min_association(&g);
        let (_, lib) = exact_association(&g).unwrap();
        let naive = naive_3_approx(&g).size();
        let approx = solve(&g).map(|s| s.size()).unwrap_or(usize::MAX);
        if opt != 2 || lib != 2 || naive > 5 || approx > 5 {
            failures.push(format!("{kind}: oracle {opt}, exact {lib}, naive {naive}, solve {approx}"));
        }
        sizes.push(format!("{kind}={approx}/{naive}"));
    }
    ensure(failures, format!("optimum 2 on all five; solve/naive sizes {}", sizes.join(" ")))
}

fn triangle_free_equality() -> Verdict {
    let mut failures = Vec::new();
    let mut count = 0;
    for seed in 0..200u64 {
        let left = 2 + (seed % 5) as usize;
        let right = 2 + (seed / 5 % (11 - left) as u64) as usize;
        let p = [0.3, 0.5, 0.7][(seed % 3) as usize];
        let g = generate(&GenSpec {
            model: Model::Bipartite { left, right, p },
            seed,
        })
        .unwrap()
        .graph;
        assert!(g.n() <= 12 && g.is_triangle_free());
        let (_, a) = exact_association(&g).unwrap();
        let (_, d) = exact_dissociation(&g).unwrap();
        if a as f64 != d || a != oracle_min_association(&g) {
            failures.push(format!("seed {seed}: association {a}, dissociation {d}"));
        }
        count += 1;
    }
    ensure(failures, format!("{count} bipartite graphs"))
}

fn md_correctness() -> Verdict {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let mut prime_tops = 0;
    for i in 0..2000 {
        let n = rng.random_range(1..=7usize);
        let pairs = n * (n - 1) / 2;
        let mask = rng.random_range(0..1u64 << pairs);
        let g = graph_from_mask(n, mask);
        let tree = md_tree(&g).unwrap();
        if tree.strong_modules() != strong_modules_oracle(&g).unwrap() {
            failures.push(format!("sample {i}: tree differs from oracle"));
            continue;
        }
        if n >= 2 && g.is_connected() {
            let (kind, parts) = top_partition(&g);
            let q = clusterkit::md::quotient_of(&g, &parts).unwrap().graph;
            let ok = match kind {
                MdKind::Series => q.is_clique(),
                MdKind::Prime => {
                    prime_tops += 1;
                    oracle_prime(&q)
                }
                _ => false,
            };
            if !ok {
                failures.push(format!("sample {i}: top quotient neither clique nor prime"));
            }
        }
    }
    ensure(failures, format!("2000 samples, {prime_tops} prime top quotients"))
}

/// Checks that the prime quotient of `g[u]` embeds in the quotient of the
/// smallest strong module containing `u`; returns whether it is equal.
fn embedding_holds(g: &Graph, u: &VertexSet) -> Result<bool, String> {
    let tree = md_tree(g).unwrap();
    let m = tree.smallest_containing(u);
    let hit: Vec<VertexSet> = m
        .child_sets()
        .into_iter()
        .filter(|c| c.intersects(u))
        .collect();
    let gu = g.induced(u).unwrap();
    let (_, top) = top_partition(&gu.graph);
    let top: Vec<VertexSet> = top.iter().map(|s| s.lift(&gu.to_parent)).collect();
    // each U ∩ child lies inside one maximal strong module of G[U]
    let owner: Vec<usize> = hit
        .iter()
        .map(|c| {
            let part = c.intersection(u);
            top.iter()
                .position(|t| part.is_subset(t))
                .ok_or_else(|| format!("{:?} splits across modules of G[U]", part.as_slice()))
        })
        .collect::<Result<_, _>>()?;
    // one child per module of G[U]; adjacency must agree
    let mut rep = vec![usize::MAX; top.len()];
    for (i, &k) in owner.iter().enumerate() {
        if rep[k] == usize::MAX {
            rep[k] = i;
        }
    }
    if rep.contains(&usize::MAX) {
        return Err("module of G[U] without a child".into());
    }
    for a in 0..top.len() {
        for b in a + 1..top.len() {
            let in_u = g.adjacent(top[a].as_slice()[0], top[b].as_slice()[0]);
            let in_m = g.adjacent(hit[rep[a]].as_slice()[0], hit[rep[b]].as_slice()[0]);
            if in_u != in_m {
                return Err(format!("adjacency of modules {a}, {b} differs"));
            }
        }
    }
    Ok(hit.len() == top.len())
}

fn prime_embedding() -> Verdict {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let (mut pairs, mut equal, mut tries) = (0, 0, 0);
    while pairs < 500 {
        tries += 1;
        let n = rng.random_range(4..=9usize);
        let g = gnp(n, rng.random_range(0.2..0.8), rng.random()).unwrap();
        let u: VertexSet = (0..n).filter(|_| rng.random_bool(0.7)).collect();
        if u.len() < 4 {
            continue;
        }
        let gu = g.induced(&u).unwrap().graph;
        let (kind, _) = top_partition(&gu);
        if kind != MdKind::Prime {
            continue;
        }
        pairs += 1;
        match embedding_holds(&g, &u) {
            Ok(eq) => equal += eq as usize,
            Err(e) => failures.push(format!("pair {pairs}: {e}")),
        }
    }

    // the clique and independent-set quotients that do not embed
    let named = |edges: &[(&str, &str)]| clusterkit::build_graph(edges, None).unwrap();
    let vs = |g: &Graph, names: &[&str]| -> VertexSet { names.iter().map(|s| g.id_of(s).unwrap()).collect() };
    let labels = ["v1", "v2", "v3", "v4", "u1", "u2", "u3", "u4"];
    let missing = [("v1", "v3"), ("v1", "v4"), ("v2", "v4"), ("u1", "u3"), ("u1", "u4"), ("u2", "u4")];
    let mut edges = Vec::new();
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i + 1..] {
            if !missing.contains(&(a, b)) {
                edges.push((*a, *b));
            }
        }
    }
    let fig_a = named(&edges);
    let fig_b = named(&[("v1", "v3"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v4", "v6")]);
    for (name, g, u, u_kind, top_len) in [
        ("clique case", &fig_a, vs(&fig_a, &["v2", "v3", "u2", "u3"]), MdKind::Series, 2),
        ("independent case", &fig_b, vs(&fig_b, &["v1", "v2", "v5", "v6"]), MdKind::Parallel, 4),
    ] {
        let gu = g.induced(&u).unwrap().graph;
        let (kind, parts) = top_partition(&gu);
        let (_, g_parts) = top_partition(g);
        let m = md_tree(g).unwrap();
        let hit = m.smallest_containing(&u).children.iter().filter(|c| c.vertices.intersects(&u)).count();
        let reproduces = kind == u_kind && parts.len() == 4 && g_parts.len() == top_len && hit < parts.len();
        if !reproduces {
            failures.push(format!("{name} not reproduced"));
        }
    }
    ensure(
        failures,
        format!("{pairs} prime pairs ({tries} draws), {equal} with equality; both counterexamples reproduced"),
    )
}

fn naive_baseline() -> Verdict {
    let exact = exact_sizes();
    let failures: Vec<String> = corpus()
        .par_iter()
        .zip(exact)
        .filter_map(|(inst, &opt)| {
            let g = &inst.graph;
            let sol = naive_3_approx(g);
            let keep = full_mask(g.n()) & !set_mask(&sol.deleted);
            if !oracle_cluster(&adjacency(g), keep) || sol.size() > 3 * opt {
                Some(format!("{}: naive {} vs optimum {opt}", inst.id, sol.size()))
            } else {
                None
            }
        })
        .collect();
    let options = BenchOptions {
        deterministic: true,
        ..BenchOptions::default()
    };
    let mut means = Vec::new();
    let mut report_failures = 0;
    for suite in [Suite::ExhaustiveSmall, Suite::RandomMedium] {
        let report = run_suite(suite, &options).map_err(|e| e.to_string())?;
        report_failures += report.failures;
        let mean = |a| report.summary(a).and_then(|s| s.mean_ratio).unwrap_or(f64::NAN);
        means.push(format!(
            "{suite}: reduce25 {:.4} vs naive3 {:.4}",
            mean(Algorithm::Reduce25),
            mean(Algorithm::Naive3)
        ));
    }
    let mut failures = failures;
    if report_failures > 0 {
        failures.push(format!("{report_failures} failing bench records"));
    }
    ensure(failures, format!("mean ratios {}", means.join("; ")))
}

fn performance() -> Verdict {
    let mut times = Vec::new();
    for n in [500usize, 1000, 2000] {
        let g = gnp(n, 20.0 / n as f64, 11).unwrap();
        // best of three runs damps timer noise on the small sizes
        let mut secs = f64::INFINITY;
        let mut sol = None;
        for _ in 0..3 {
            let start = Instant::now();
            sol = Some(solve(&g).map_err(|e| e.to_string())?);
            secs = secs.min(start.elapsed().as_secs_f64());
        }
        let sol = sol.unwrap();
        if !clusterkit::validate_solution(&g, &sol.deleted, clusterkit::Mode::Association).unwrap().valid {
            return Err(format!("invalid solution at n={n}"));
        }
        times.push((n, secs));
    }
    let (_, t_max) = times[2];
    // least-squares slope of log time against log n
    let pts: Vec<(f64, f64)> = times.iter().map(|&(n, t)| ((n as f64).ln(), t.max(1e-6).ln())).collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / 3.0;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / 3.0;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let detail = format!(
        "times {} s, empirical exponent {slope:.2}",
        times.iter().map(|(n, t)| format!("n={n}:{t:.2}")).collect::<Vec<_>>().join(" ")
    );
    if t_max < 60.0 && slope < 3.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 ratio 2.5 against exact optimum", ratio_association),
        ("2 weighted dissociation ratio 2 and self-certificate", ratio_dissociation),
        ("3 reduction witnesses and reduced form", reduce_postconditions),
        ("4 forbidden patterns need two deletions", pattern_floor),
        ("5 triangle-free graphs: association = dissociation", triangle_free_equality),
        ("6 modular decomposition vs oracle", md_correctness),
        ("7 prime quotient embedding and counterexamples", prime_embedding),
        ("8 naive 3-approximation baseline", naive_baseline),
        ("9 performance on sparse G(n, 20/n)", performance),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
