//! Multiobjective NK-landscapes with tunable objective correlation.
//!
//! The crate generates landscape instances whose per-bit fitness components
//! are correlated uniforms (a Gaussian copula fixes the pairwise Pearson
//! correlation `rho` across the `m` objectives), evaluates bit-string
//! solutions, exhaustively enumerates Pareto local optima and the Pareto
//! optimal set at enumerable sizes, and estimates multimodality at large
//! sizes through Pareto hill-climbing walks.
//!
//! All numeric code is generic over the scalar type via [`scalar::Real`]
//! (`f32` or `f64`); the `*64` aliases below cover the common case.

pub mod correlation;
pub mod dominance;
pub mod enumeration;
pub mod error;
pub mod format;
pub mod grid;
pub mod landscape;
pub mod scalar;
pub mod seed;
pub mod stats;
pub mod walk;

pub use correlation::{validate_rho, CopulaSampler, CorrelationMatrix};
pub use dominance::{compare, dominates, dominating_neighbors, neighbors, nondominated_filter, Comparison};
pub use enumeration::{
    enumerate_pareto_set, enumerate_pareto_set_with, enumerate_plo, enumerate_plo_with,
    is_pareto_local_optimum, EnumerationMode, EnumerationOptions, PloSummary,
    DEFAULT_ENUMERATION_LIMIT,
};
pub use error::{Error, Result};
pub use format::{read_instance, read_instance_file, write_instance, write_instance_file};
pub use grid::{
    empirical_objective_correlation, read_csv, run_grid, summarize_cells, write_csv, CellSummary,
    GridConfig, GridRow, CSV_HEADER,
};
pub use landscape::{ComponentTables, EpistasisLinks, Evaluator, Instance, ObjectiveVector, Solution};
pub use scalar::Real;
pub use stats::{fit_linear, fit_linlog, fit_loglog, pearson, spearman, RegressionFit, RegressionModel};
pub use walk::{estimate_log_plo, phc_walk, phc_walk_traced, walk_campaign, WalkRecord, WalkStats};

/// Double-precision instance, the recommended default.
pub type Instance64 = Instance<f64>;
/// Single-precision instance.
pub type Instance32 = Instance<f32>;
/// Double-precision objective vector.
pub type ObjectiveVector64 = ObjectiveVector<f64>;
/// Double-precision sampler.
pub type CopulaSampler64 = CopulaSampler<f64>;
/// Double-precision grid configuration.
pub type GridConfig64 = GridConfig<f64>;
/// Double-precision regression fit.
pub type RegressionFit64 = RegressionFit<f64>;
