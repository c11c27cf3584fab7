//! Benchmark suites comparing the 2.5-approximation, the naive
//! 3-approximation and the exact solver.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::association::{exact_association_with_budget, naive_3_approx, solve, Solution};
use crate::error::{Error, Result};
use crate::generate::{gnp, graph_from_mask};
use crate::graph::{validate_solution, Graph, Mode};

/// Environment variable capping the worker threads of [`run_suite`].
pub const THREADS_ENV: &str = "CLUSTERKIT_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// All 2^15 labelled graphs on 6 vertices.
    ExhaustiveSmall,
    /// Seeded G(n, p) for n in {8, 10, 12} and p in {0.1, 0.3, 0.5, 0.8}.
    RandomMedium,
    /// G(n, 20/n) for n in {500, 1000, 2000}; no exact solutions.
    Scaling,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::ExhaustiveSmall, Suite::RandomMedium, Suite::Scaling];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::ExhaustiveSmall => "exhaustive-small",
            Suite::RandomMedium => "random-medium",
            Suite::Scaling => "scaling",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.to_string() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Reduce25,
    Naive3,
    Exact,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Reduce25, Algorithm::Naive3, Algorithm::Exact];

    /// Worst-case ratio the algorithm guarantees.
    pub fn guarantee(self) -> f64 {
        match self {
            Algorithm::Reduce25 => 2.5,
            Algorithm::Naive3 => 3.0,
            Algorithm::Exact => 1.0,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Reduce25 => "reduce25",
            Algorithm::Naive3 => "naive3",
            Algorithm::Exact => "exact",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.to_string() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown algorithm `{s}`")))
    }
}

/// Runs one algorithm; exact solutions are wrapped with `Rule::Exact`.
pub fn run_algorithm(g: &Graph, algorithm: Algorithm, exact_budget: u64) -> Result<Solution> {
    match algorithm {
        Algorithm::Reduce25 => solve(g),
        Algorithm::Naive3 => Ok(naive_3_approx(g)),
        Algorithm::Exact => {
            let (deleted, size) = exact_association_with_budget(g, exact_budget)?;
            Ok(Solution {
                provenance: deleted.iter().map(|v| (v, crate::association::Rule::Exact)).collect(),
                deleted,
                witnesses: Vec::new(),
                quotient_lower_bound: None,
                lower_bound: Some(size as f64),
            })
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    /// Seeds per (n, p) cell of `random-medium`.
    pub seeds: u64,
    /// Instances per size in `scaling`.
    pub scaling_seeds: u64,
    /// Zero all timings so reports are byte-identical across runs.
    pub deterministic: bool,
    /// Worker threads; falls back to `CLUSTERKIT_THREADS`, then rayon's default.
    pub threads: Option<usize>,
    pub exact_budget: u64,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            seeds: 500,
            scaling_seeds: 1,
            deterministic: false,
            threads: None,
            exact_budget: crate::association::EXACT_DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub seed: Option<u64>,
    pub graph: Graph,
    pub with_exact: bool,
}

pub fn suite_instances(suite: Suite, options: &BenchOptions) -> Vec<Instance> {
    match suite {
        Suite::ExhaustiveSmall => (0..1u64 << 15)
            .map(|mask| Instance {
                id: format!("n6-{mask:05}"),
                seed: None,
                graph: graph_from_mask(6, mask),
                with_exact: true,
            })
            .collect(),
        Suite::RandomMedium => random_medium(options.seeds)
            .into_iter()
            .map(|(n, p, seed, graph)| Instance {
                id: format!("gnp-{n}-{p}-{seed}"),
                seed: Some(seed),
                graph,
                with_exact: true,
            })
            .collect(),
        Suite::Scaling => [500usize, 1000, 2000]
            .into_iter()
            .flat_map(|n| (0..options.scaling_seeds).map(move |seed| (n, seed)))
            .map(|(n, seed)| {
                let p = 20.0 / n as f64;
                Instance {
                    id: format!("gnp-{n}-{p}-{seed}"),
                    seed: Some(seed),
                    graph: gnp(n, p, seed).expect("valid probability"),
                    with_exact: false,
                }
            })
            .collect(),
    }
}

/// The random-medium corpus: `(n, p, seed, graph)` for `seeds` seeds per cell.
pub fn random_medium(seeds: u64) -> Vec<(usize, f64, u64, Graph)> {
    let mut out = Vec::new();
    for n in [8usize, 10, 12] {
        for p in [0.1, 0.3, 0.5, 0.8] {
            for seed in 0..seeds {
                out.push((n, p, seed, gnp(n, p, seed).expect("valid probability")));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub seed: Option<u64>,
    pub algorithm: Algorithm,
    pub size: usize,
    /// From an independent `validate_solution` pass.
    pub valid: bool,
    pub exact: Option<usize>,
    /// `size / exact`; 1 when both are zero.
    pub ratio: Option<f64>,
    /// `size / lower_bound` for algorithms that certify a lower bound.
    pub lower_bound_ratio: Option<f64>,
    pub wall_ms: f64,
    pub error: Option<String>,
}

impl Record {
    /// Invalid, errored, or above the algorithm's guarantee.
    pub fn failed(&self) -> bool {
        let g = self.algorithm.guarantee();
        self.error.is_some()
            || !self.valid
            || self.exact.is_some_and(|e| self.size as f64 > g * e as f64)
            || self.lower_bound_ratio.is_some_and(|r| r > g + 1e-9)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub algorithm: Algorithm,
    pub instances: usize,
    pub max_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub failures: usize,
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub suite: Suite,
    pub records: Vec<Record>,
    pub summaries: Vec<Summary>,
    pub failures: usize,
}

impl BenchReport {
    pub fn summary(&self, algorithm: Algorithm) -> Option<&Summary> {
        self.summaries.iter().find(|s| s.algorithm == algorithm)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Human-readable per-algorithm summary lines.
    pub fn text_summary(&self) -> String {
        let fmt_opt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.4}"));
        let mut out = format!("suite {}: {} records, {} failures\n", self.suite, self.records.len(), self.failures);
        for s in &self.summaries {
            out += &format!(
                "  {:<9} instances={:<6} max_ratio={:<8} mean_ratio={:<8} failures={} time_ms={:.1}\n",
                s.algorithm.to_string(),
                s.instances,
                fmt_opt(s.max_ratio),
                fmt_opt(s.mean_ratio),
                s.failures,
                s.total_ms
            );
        }
        out
    }
}

fn evaluate(inst: &Instance, options: &BenchOptions) -> Vec<Record> {
    let g = &inst.graph;
    let exact = if inst.with_exact {
        exact_association_with_budget(g, options.exact_budget).ok().map(|(_, k)| k)
    } else {
        None
    };
    let algorithms: &[Algorithm] = if inst.with_exact {
        &Algorithm::ALL
    } else {
        &[Algorithm::Reduce25, Algorithm::Naive3]
    };
    algorithms
        .iter()
        .map(|&algorithm| {
            let start = Instant::now();
            let outcome = run_algorithm(g, algorithm, options.exact_budget);
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let wall_ms = if options.deterministic { 0.0 } else { elapsed };
            let (size, valid, lb, error) = match outcome {
                Ok(sol) => {
                    let valid = validate_solution(g, &sol.deleted, Mode::Association)
                        .map(|v| v.valid)
                        .unwrap_or(false);
                    (sol.size(), valid, sol.lower_bound, None)
                }
                Err(e) => (0, false, None, Some(e.to_string())),
            };
            let ratio = exact.map(|e| match (size, e) {
                (0, 0) => 1.0,
                (_, 0) => f64::INFINITY,
                _ => size as f64 / e as f64,
            });
            let lower_bound_ratio = lb.filter(|_| algorithm != Algorithm::Exact).map(|lb| {
                if size == 0 {
                    1.0
                } else if lb <= 0.0 {
                    f64::INFINITY
                } else {
                    size as f64 / lb
                }
            });
            Record {
                id: inst.id.clone(),
                n: g.n(),
                m: g.m(),
                seed: inst.seed,
                algorithm,
                size,
                valid,
                exact,
                ratio,
                lower_bound_ratio,
                wall_ms,
                error,
            }
        })
        .collect()
}

fn thread_count(options: &BenchOptions) -> Option<usize> {
    options.threads.or_else(|| {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|s| s.parse().ok())
            .filter(|&t| t > 0)
    })
}

/// Evaluates every instance of `suite`; records come back ordered by
/// instance, then algorithm, regardless of scheduling.
pub fn run_suite(suite: Suite, options: &BenchOptions) -> Result<BenchReport> {
    let instances = suite_instances(suite, options);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = thread_count(options) {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Error::InvalidSpec(e.to_string()))?;
    let records: Vec<Record> = pool.install(|| {
        instances
            .par_iter()
            .map(|inst| evaluate(inst, options))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    });
    Ok(report(suite, records))
}

pub fn report(suite: Suite, records: Vec<Record>) -> BenchReport {
    let summaries: Vec<Summary> = Algorithm::ALL
        .into_iter()
        .filter_map(|algorithm| {
            let rs: Vec<&Record> = records.iter().filter(|r| r.algorithm == algorithm).collect();
            if rs.is_empty() {
                return None;
            }
            let ratios: Vec<f64> = rs.iter().filter_map(|r| r.ratio).collect();
            Some(Summary {
                algorithm,
                instances: rs.len(),
                max_ratio: ratios.iter().copied().reduce(f64::max),
                mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
                failures: rs.iter().filter(|r| r.failed()).count(),
                total_ms: rs.iter().map(|r| r.wall_ms).sum(),
            })
        })
        .collect();
    let failures = summaries.iter().map(|s| s.failures).sum();
    BenchReport {
        suite,
        records,
        summaries,
        failures,
    }
}
