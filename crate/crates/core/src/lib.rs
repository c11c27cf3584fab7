//! Approximate cluster vertex deletion.
//!
//! An *association set* of a graph is a vertex set whose removal leaves a
//! disjoint union of cliques. [`solve`] finds one of size at most 2.5 times
//! the minimum and proves it: every run carries a lower bound assembled from
//! vertex-disjoint forbidden patterns, exactly solved special cases and a
//! local-ratio bound, and checks `|deleted| <= 2.5 * lower_bound`.
//!
//! The pieces are usable on their own:
//!
//! * [`graph`]: immutable labelled graphs with the structural predicates.
//! * [`md`]: modular decomposition, quotients and a brute-force oracle.
//! * [`witness`]: the forbidden patterns (C4, bull, dart, fox, gem, plus P3
//!   and P4), canonical ordering and certifying trivially-perfect checks.
//! * [`dissociation`]: a weighted 2-approximation for dissociation sets and
//!   an exact solver.
//! * [`association`]: the reduction, the driver, the naive 3-approximation
//!   and exact solvers.
//! * [`io`], [`generate`], [`bench`]: file format, seeded instances and the
//!   benchmark harness behind the `clusterkit` binary.
//!
//! Runnable examples live in `examples/`: `quickstart`, `modular_decomposition`,
//! `witnesses`, `dissociation`, `reduce`, `exact_vs_approx`, `planted_clusters`,
//! `edge_list_io` and `benchmark`.
//!
//! ```
//! use clusterkit::{build_graph, solve, validate_solution, Mode};
//!
//! let g = build_graph(&[("a", "b"), ("b", "c"), ("c", "d")], None)?;
//! let sol = solve(&g)?;
//! assert!(validate_solution(&g, &sol.deleted, Mode::Association)?.valid);
//! assert_eq!(sol.size(), 1);
//! # Ok::<(), clusterkit::Error>(())
//! ```

pub mod association;
pub mod bench;
pub mod dissociation;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod md;
pub mod witness;

pub use association::{
    contract_to_weighted_quotient, exact_association, lift_quotient_solution, module_neighbor_step,
    naive_3_approx, reduce, reduced_form_violation, solve, two_cliques_solution, Reduction, Rule, Solution, Step,
};
pub use dissociation::{approx_dissociation_2, exact_dissociation, DissociationResult};
pub use error::{Error, Result};
pub use graph::{build_graph, validate_solution, Graph, GraphBuilder, Induced, Mode, Validation, VertexSet};
pub use md::{md_tree, maximal_strong_modules, quotient_of, strong_modules_oracle, MdKind, MdNode, QuotientGraph};
pub use witness::{classify, find_forbidden_bruteforce, find_p3, tp_check, Kind, TpCheck, Witness};
