//! Command-line front end: `solve`, `exact`, `verify`, `gen` and `bench`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use clusterkit::bench::{run_algorithm, run_suite, Algorithm, BenchOptions, Suite};
use clusterkit::generate::{generate, GenSpec, Model};
use clusterkit::io::{apply_weights, parse_weights, read_graph, read_to_string, serialize_graph, write_string};
use clusterkit::{
    approx_dissociation_2, exact_association, exact_dissociation, validate_solution, Error, Graph, Mode, Result,
    VertexSet,
};

#[derive(Parser)]
#[command(name = "clusterkit", version, about = "Approximate cluster vertex deletion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an approximate deletion set.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "reduce25", value_parser = parse_algorithm)]
        algorithm: Algorithm,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute a minimum deletion set (small graphs only).
    Exact {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a deletion set given as whitespace-separated vertex labels.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        solution: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generate a seeded random graph in edge-list format.
    Gen {
        #[arg(long, value_enum, default_value = "gnp")]
        model: GenModel,
        /// Vertex count for `gnp`.
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Edge probability for `gnp` and `bipartite`.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Comma-separated clique sizes for `planted`.
        #[arg(long, value_delimiter = ',', default_value = "4,4,4")]
        clusters: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        noise_vertices: usize,
        #[arg(long, default_value_t = 0.3)]
        noise_p: f64,
        #[arg(long, default_value_t = 5)]
        left: usize,
        #[arg(long, default_value_t = 5)]
        right: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a benchmark suite; exits non-zero if any record fails.
    Bench {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        /// Seeds per (n, p) cell of `random-medium`.
        #[arg(long, default_value_t = 500)]
        seeds: u64,
        /// Instances per size of `scaling`.
        #[arg(long, default_value_t = 1)]
        scaling_seeds: u64,
        #[arg(long)]
        threads: Option<usize>,
        /// Zero all timings so reports are byte-identical.
        #[arg(long)]
        deterministic: bool,
        #[arg(long, default_value_t = clusterkit::association::EXACT_DEFAULT_BUDGET)]
        exact_budget: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list graph file.
    #[arg(long)]
    input: PathBuf,
    /// Weight file with `<vertex> <number>` lines.
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "association")]
    problem: Problem,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit one JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Write to this file instead of standard output (`bench` always
    /// writes its JSON report here).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Association,
    Dissociation,
}

impl Problem {
    fn mode(self) -> Mode {
        match self {
            Problem::Association => Mode::Association,
            Problem::Dissociation => Mode::Dissociation,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenModel {
    Gnp,
    Planted,
    Bipartite,
}

fn parse_algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn load(input: &InputArgs) -> Result<Graph> {
    let g = read_graph(&input.input)?;
    match &input.weights {
        Some(path) => apply_weights(g, &parse_weights(&read_to_string(path)?)?),
        None => Ok(g),
    }
}

fn emit(output: &OutputArgs, text: String, doc: Value) -> Result<()> {
    let body = if output.json {
        serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
    } else {
        text
    };
    match &output.out {
        Some(path) => write_string(path, &body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn labels(g: &Graph, s: &VertexSet) -> Vec<String> {
    s.iter().map(|v| g.label(v).to_string()).collect()
}

/// Validates independently of the producing solver and renders the result.
fn report_set(g: &Graph, problem: Problem, set: &VertexSet, mut doc: Value, output: &OutputArgs) -> Result<bool> {
    let check = validate_solution(g, set, problem.mode())?;
    let names = labels(g, set);
    let weight = g.total_weight(set);
    doc["n"] = json!(g.n());
    doc["m"] = json!(g.m());
    doc["deleted"] = json!(names);
    doc["size"] = json!(set.len());
    doc["weight"] = json!(weight);
    doc["valid"] = json!(check.valid);
    let mut text = format!("size {} weight {weight} valid {}\ndeleted {}\n", set.len(), check.valid, names.join(" "));
    if let Some(w) = check.witness {
        let p3: Vec<&str> = w.iter().map(|&v| g.label(v)).collect();
        text += &format!("violation {}\n", p3.join(" "));
        doc["violation"] = json!(p3);
    }
    emit(output, text, doc)?;
    Ok(check.valid)
}

fn solve_cmd(input: &InputArgs, algorithm: Algorithm, output: &OutputArgs) -> Result<bool> {
    let g = load(input)?;
    match input.problem {
        Problem::Association => {
            let sol = run_algorithm(&g, algorithm, clusterkit::association::EXACT_DEFAULT_BUDGET)?;
            let provenance: serde_json::Map<String, Value> = sol
                .provenance
                .iter()
                .map(|(&v, rule)| (g.label(v).to_string(), json!(rule.to_string())))
                .collect();
            let witnesses: Vec<Value> = sol
                .witnesses
                .iter()
                .map(|w| json!({"kind": w.kind.to_string(), "vertices": w.vertices.iter().map(|&v| g.label(v)).collect::<Vec<_>>()}))
                .collect();
            let doc = json!({
                "problem": "association",
                "algorithm": algorithm.to_string(),
                "lower_bound": sol.lower_bound,
                "provenance": provenance,
                "witnesses": witnesses,
            });
            report_set(&g, input.problem, &sol.deleted, doc, output)
        }
        Problem::Dissociation => {
            let r = approx_dissociation_2(&g);
            let doc = json!({"problem": "dissociation", "algorithm": "local-ratio", "lower_bound": r.lower_bound});
            report_set(&g, input.problem, &r.deleted, doc, output)
        }
    }
}

fn exact_cmd(input: &InputArgs, output: &OutputArgs) -> Result<bool> {
    let g = load(input)?;
    let set = match input.problem {
        Problem::Association => exact_association(&g)?.0,
        Problem::Dissociation => exact_dissociation(&g)?.0,
    };
    let problem = match input.problem {
        Problem::Association => "association",
        Problem::Dissociation => "dissociation",
    };
    report_set(&g, input.problem, &set, json!({"problem": problem, "algorithm": "exact"}), output)
}

fn verify_cmd(input: &InputArgs, solution: &Path, output: &OutputArgs) -> Result<bool> {
    let g = load(input)?;
    let text = read_to_string(solution)?;
    let set = text
        .split_whitespace()
        .map(|label| {
            g.id_of(label)
                .ok_or_else(|| Error::InvalidSpec(format!("unknown vertex `{label}` in solution")))
        })
        .collect::<Result<VertexSet>>()?;
    report_set(&g, input.problem, &set, json!({"verified": solution.display().to_string()}), output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve { input, algorithm, output } => solve_cmd(input, *algorithm, output),
        Command::Exact { input, output } => exact_cmd(input, output),
        Command::Verify { input, solution, output } => verify_cmd(input, solution, output),
        Command::Gen {
            model,
            n,
            p,
            clusters,
            noise_vertices,
            noise_p,
            left,
            right,
            seed,
            output,
        } => {
            let model = match model {
                GenModel::Gnp => Model::Gnp { n: *n, p: *p },
                GenModel::Planted => Model::Planted {
                    cluster_sizes: clusters.clone(),
                    noise_vertices: *noise_vertices,
                    noise_p: *noise_p,
                },
                GenModel::Bipartite => Model::Bipartite { left: *left, right: *right, p: *p },
            };
            let spec = GenSpec { model, seed: *seed };
            generate(&spec).and_then(|gen| {
                let noise = gen.noise.as_ref().map(|s| labels(&gen.graph, s));
                let mut text = format!("# {}\n", serde_json::to_string(&spec).expect("specs serialize"));
                if let Some(noise) = &noise {
                    text += &format!("# noise {}\n", noise.join(" "));
                }
                text += &serialize_graph(&gen.graph);
                let doc = json!({"spec": spec, "graph": serialize_graph(&gen.graph), "noise": noise});
                emit(output, text, doc).map(|_| true)
            })
        }
        Command::Bench {
            suite,
            seeds,
            scaling_seeds,
            threads,
            deterministic,
            exact_budget,
            output,
        } => {
            let options = BenchOptions {
                seeds: *seeds,
                scaling_seeds: *scaling_seeds,
                deterministic: *deterministic,
                threads: *threads,
                exact_budget: *exact_budget,
            };
            run_suite(*suite, &options).and_then(|report| {
                // a report file is always JSON; the terminal gets the summary
                match &output.out {
                    Some(path) => {
                        write_string(path, &report.to_json())?;
                        print!("{}", report.text_summary());
                    }
                    None if output.json => println!("{}", report.to_json()),
                    None => print!("{}", report.text_summary()),
                }
                Ok(report.failures == 0)
            })
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
