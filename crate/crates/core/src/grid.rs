//! Experiment grid: per-instance measurements over a parameter grid and the
//! CSV schema used to exchange them.
//!
//! Each grid cell is an admissible `(n, k, m, rho)` combination; every cell
//! is measured on `instances_per_cell` independently generated instances.
//! All randomness derives from the master seed, per cell and instance, so a
//! grid run is reproducible byte-for-byte at any concurrency degree.

use std::io::{BufRead, Write};

use rayon::prelude::*;

use crate::correlation::validate_rho;
use crate::enumeration::{enumerate_plo_with, EnumerationOptions};
use crate::error::{Error, Result};
use crate::landscape::{Evaluator, Instance, Solution};
use crate::scalar::Real;
use crate::seed::{child_seed, rng_from, CORRELATION_STREAM, WALK_STREAM};
use crate::stats::pearson;
use crate::walk::walk_campaign;

/// CSV header of grid results.
pub const CSV_HEADER: &str =
    "N,K,M,rho,instance_id,n_plo,plo_fraction,n_pareto,mean_walk,sd_walk,empirical_rho,error";

/// Parameter grid and measurement budget.
#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig<F> {
    pub n_values: Vec<usize>,
    pub k_values: Vec<usize>,
    pub m_values: Vec<usize>,
    pub rho_values: Vec<F>,
    pub instances_per_cell: usize,
    pub walks_per_instance: usize,
    /// Enumerate PLO / Pareto sets where the space fits the limit.
    pub enumerate: bool,
    pub enumeration_limit: usize,
    /// Uniform solution samples for the empirical objective correlation.
    pub correlation_samples: usize,
    pub master_seed: u64,
}

impl<F: Real> Default for GridConfig<F> {
    /// The desk-scale grid: `n = 18`, `k` in {2,4,6,8,10}, `m` in {2,3,5},
    /// nine correlation levels filtered per `m`, 30 instances per cell and
    /// 1000 walks per instance.
    fn default() -> Self {
        Self {
            n_values: vec![18],
            k_values: vec![2, 4, 6, 8, 10],
            m_values: vec![2, 3, 5],
            rho_values: [-0.9, -0.7, -0.4, -0.2, 0.0, 0.2, 0.4, 0.7, 0.9]
                .iter()
                .map(|&r| F::from_f64_lossy(r))
                .collect(),
            instances_per_cell: 30,
            walks_per_instance: 1000,
            enumerate: true,
            enumeration_limit: crate::enumeration::DEFAULT_ENUMERATION_LIMIT,
            correlation_samples: 10_000,
            master_seed: 0,
        }
    }
}

impl<F: Real> GridConfig<F> {
    /// Admissible `(n, k, m, rho)` cells in deterministic order: inadmissible
    /// `(m, rho)` pairs are filtered out.
    pub fn cells(&self) -> Vec<(usize, usize, usize, F)> {
        let mut out = Vec::new();
        for &n in &self.n_values {
            for &k in &self.k_values {
                for &m in &self.m_values {
                    for &rho in &self.rho_values {
                        if validate_rho(m, rho).is_ok() {
                            out.push((n, k, m, rho));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Measurements for one instance of one grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct GridRow<F> {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub rho: F,
    pub instance_id: usize,
    /// Present iff enumeration ran for this instance.
    pub n_plo: Option<u64>,
    pub plo_fraction: Option<f64>,
    pub n_pareto: Option<u64>,
    pub mean_walk: f64,
    pub sd_walk: f64,
    /// Mean off-diagonal of the empirical objective correlation matrix.
    pub empirical_rho: f64,
    pub error: Option<String>,
}

/// Runs the full grid; one row per (cell, instance).
///
/// Enumeration is skipped silently for spaces over the limit (the optional
/// fields stay empty); any unexpected per-instance failure is recorded in
/// the row instead of aborting the run.
pub fn run_grid<F: Real>(config: &GridConfig<F>) -> Vec<GridRow<F>> {
    let jobs: Vec<(usize, usize, usize, F, usize)> = config
        .cells()
        .into_iter()
        .flat_map(|(n, k, m, rho)| {
            (0..config.instances_per_cell).map(move |id| (n, k, m, rho, id))
        })
        .collect();
    jobs.par_iter()
        .map(|&(n, k, m, rho, instance_id)| measure_instance(config, n, k, m, rho, instance_id))
        .collect()
}

fn measure_instance<F: Real>(
    config: &GridConfig<F>,
    n: usize,
    k: usize,
    m: usize,
    rho: F,
    instance_id: usize,
) -> GridRow<F> {
    let mut row = GridRow {
        n,
        k,
        m,
        rho,
        instance_id,
        n_plo: None,
        plo_fraction: None,
        n_pareto: None,
        mean_walk: 0.0,
        sd_walk: 0.0,
        empirical_rho: 0.0,
        error: None,
    };
    let instance_seed = child_seed(
        config.master_seed,
        &[
            n as u64,
            k as u64,
            m as u64,
            rho.to_f64_lossy().to_bits(),
            instance_id as u64,
        ],
    );
    let instance = match Instance::generate(n, k, m, rho, instance_seed) {
        Ok(instance) => instance,
        Err(e) => {
            row.error = Some(e.to_string().replace(',', ";"));
            return row;
        }
    };

    if config.enumerate && n <= config.enumeration_limit.min(63) {
        match enumerate_plo_with(
            &instance,
            &EnumerationOptions {
                keep_lists: false,
                limit: config.enumeration_limit,
                ..Default::default()
            },
        ) {
            Ok(summary) => {
                row.n_plo = Some(summary.n_plo);
                row.plo_fraction = Some(summary.plo_fraction);
                row.n_pareto = Some(summary.n_pareto);
            }
            Err(e) => row.error = Some(e.to_string().replace(',', ";")),
        }
    }

    match walk_campaign(
        &instance,
        config.walks_per_instance,
        child_seed(instance_seed, &[WALK_STREAM]),
    ) {
        Ok(stats) => {
            row.mean_walk = stats.mean_length;
            row.sd_walk = stats.sd_length;
        }
        Err(e) => row.error = Some(e.to_string().replace(',', ";")),
    }

    let mut rng = rng_from(child_seed(instance_seed, &[CORRELATION_STREAM]));
    let matrix = empirical_objective_correlation(&instance, config.correlation_samples, &mut rng);
    row.empirical_rho = mean_off_diagonal(&matrix, m).to_f64_lossy();
    row
}

/// Pearson correlation matrix (row-major `m x m`) of the objective values
/// over uniform random solutions.
///
/// Off-diagonal entries of constant objectives are reported as zero.
pub fn empirical_objective_correlation<F: Real, R: rand::Rng + ?Sized>(
    instance: &Instance<F>,
    n_samples: usize,
    rng: &mut R,
) -> Vec<F> {
    assert!(n_samples >= 2, "need at least two samples");
    let n = instance.n();
    let m = instance.m();
    let evaluator = Evaluator::new(instance);
    let mut columns = vec![Vec::with_capacity(n_samples); m];
    let mut rows = vec![0u32; n];
    let mut objectives = vec![F::zero(); m];
    for _ in 0..n_samples {
        let x = Solution::random(n, rng);
        evaluator.rows_into(x.bits(), &mut rows);
        evaluator.objectives_from_rows(&rows, &mut objectives);
        for (column, &value) in columns.iter_mut().zip(&objectives) {
            column.push(value);
        }
    }
    let mut matrix = vec![F::zero(); m * m];
    for i in 0..m {
        matrix[i * m + i] = F::one();
        for j in (i + 1)..m {
            let r = match pearson(&columns[i], &columns[j]) {
                Ok(r) => r,
                Err(Error::ZeroVariance) => F::zero(),
                Err(e) => unreachable!("pearson on equal-length samples: {e}"),
            };
            matrix[i * m + j] = r;
            matrix[j * m + i] = r;
        }
    }
    matrix
}

/// Mean of the off-diagonal entries of a row-major `m x m` matrix.
pub fn mean_off_diagonal<F: Real>(matrix: &[F], m: usize) -> F {
    debug_assert_eq!(matrix.len(), m * m);
    let mut sum = F::zero();
    let mut count = 0usize;
    for i in 0..m {
        for j in 0..m {
            if i != j {
                sum += matrix[i * m + j];
                count += 1;
            }
        }
    }
    sum / F::from_usize(count).unwrap()
}

fn format_opt<T: std::fmt::Display>(value: &Option<T>) -> String {
    value.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

/// Writes rows in the stable CSV schema (UTF-8, LF, `.` decimal separator).
pub fn write_csv<F: Real, W: Write>(rows: &[GridRow<F>], sink: &mut W) -> Result<()> {
    writeln!(sink, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(
            sink,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            row.n,
            row.k,
            row.m,
            row.rho.to_f64_lossy(),
            row.instance_id,
            format_opt(&row.n_plo),
            format_opt(&row.plo_fraction),
            format_opt(&row.n_pareto),
            row.mean_walk,
            row.sd_walk,
            row.empirical_rho,
            row.error.as_deref().unwrap_or(""),
        )?;
    }
    Ok(())
}

/// Reads rows written by [`write_csv`].
pub fn read_csv<R: BufRead>(source: R) -> Result<Vec<GridRow<f64>>> {
    let mut rows = Vec::new();
    for (index, line) in source.lines().enumerate() {
        let line = line?;
        let number = index + 1;
        if number == 1 {
            if line.trim_end() != CSV_HEADER {
                return Err(Error::Format {
                    line: number,
                    message: format!("unexpected CSV header {line:?}"),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            return Err(Error::Format {
                line: number,
                message: format!("expected 12 fields, found {}", fields.len()),
            });
        }
        let parse_field = |text: &str, what: &str| -> Result<f64> {
            text.parse().map_err(|_| Error::Format {
                line: number,
                message: format!("invalid {what}: {text:?}"),
            })
        };
        let parse_opt = |text: &str, what: &str| -> Result<Option<f64>> {
            if text.is_empty() {
                Ok(None)
            } else {
                parse_field(text, what).map(Some)
            }
        };
        rows.push(GridRow {
            n: parse_field(fields[0], "N")? as usize,
            k: parse_field(fields[1], "K")? as usize,
            m: parse_field(fields[2], "M")? as usize,
            rho: parse_field(fields[3], "rho")?,
            instance_id: parse_field(fields[4], "instance_id")? as usize,
            n_plo: parse_opt(fields[5], "n_plo")?.map(|v| v as u64),
            plo_fraction: parse_opt(fields[6], "plo_fraction")?,
            n_pareto: parse_opt(fields[7], "n_pareto")?.map(|v| v as u64),
            mean_walk: parse_field(fields[8], "mean_walk")?,
            sd_walk: parse_field(fields[9], "sd_walk")?,
            empirical_rho: parse_field(fields[10], "empirical_rho")?,
            error: (!fields[11].is_empty()).then(|| fields[11].to_string()),
        });
    }
    Ok(rows)
}

/// Per-cell means over the instances of one `(n, k, m, rho)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub rho: f64,
    pub instances: usize,
    pub mean_n_plo: Option<f64>,
    pub mean_plo_fraction: Option<f64>,
    pub mean_n_pareto: Option<f64>,
    pub mean_walk: f64,
    pub mean_empirical_rho: f64,
}

/// Groups rows by cell (first-appearance order) and averages the
/// per-instance measurements.
pub fn summarize_cells<F: Real>(rows: &[GridRow<F>]) -> Vec<CellSummary> {
    let mut order: Vec<(usize, usize, usize, u64)> = Vec::new();
    let mut summaries: Vec<CellSummary> = Vec::new();
    for row in rows {
        let key = (row.n, row.k, row.m, row.rho.to_f64_lossy().to_bits());
        let position = match order.iter().position(|k| *k == key) {
            Some(p) => p,
            None => {
                order.push(key);
                summaries.push(CellSummary {
                    n: row.n,
                    k: row.k,
                    m: row.m,
                    rho: row.rho.to_f64_lossy(),
                    instances: 0,
                    mean_n_plo: None,
                    mean_plo_fraction: None,
                    mean_n_pareto: None,
                    mean_walk: 0.0,
                    mean_empirical_rho: 0.0,
                });
                order.len() - 1
            }
        };
        let cell = &mut summaries[position];
        cell.instances += 1;
        cell.mean_walk += row.mean_walk;
        cell.mean_empirical_rho += row.empirical_rho;
        if let Some(v) = row.n_plo {
            *cell.mean_n_plo.get_or_insert(0.0) += v as f64;
        }
        if let Some(v) = row.plo_fraction {
            *cell.mean_plo_fraction.get_or_insert(0.0) += v;
        }
        if let Some(v) = row.n_pareto {
            *cell.mean_n_pareto.get_or_insert(0.0) += v as f64;
        }
    }
    for cell in &mut summaries {
        let count = cell.instances as f64;
        cell.mean_walk /= count;
        cell.mean_empirical_rho /= count;
        for field in [
            &mut cell.mean_n_plo,
            &mut cell.mean_plo_fraction,
            &mut cell.mean_n_pareto,
        ] {
            if let Some(v) = field.as_mut() {
                *v /= count;
            }
        }
    }
    summaries
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn tiny_config() -> GridConfig<f64> {
        GridConfig {
            n_values: vec![8],
            k_values: vec![1, 2],
            m_values: vec![2],
            rho_values: vec![-0.2, 0.4],
            instances_per_cell: 2,
            walks_per_instance: 20,
            enumerate: true,
            correlation_samples: 200,
            master_seed: 11,
            ..GridConfig::default()
        }
    }

    #[test]
    fn default_grid_has_110_cells() {
        let config = GridConfig::<f64>::default();
        assert_eq!(config.cells().len(), 110);
        // per m: 9 + 7 + 6 rho levels, times 5 k values
        let m2 = config.cells().iter().filter(|c| c.2 == 2).count();
        let m3 = config.cells().iter().filter(|c| c.2 == 3).count();
        let m5 = config.cells().iter().filter(|c| c.2 == 5).count();
        assert_eq!((m2, m3, m5), (45, 35, 30));
    }

    #[test]
    fn rows_follow_cell_and_instance_order() {
        let config = tiny_config();
        let rows = run_grid(&config);
        assert_eq!(rows.len(), 8);
        assert_eq!(rows[0].k, 1);
        assert_eq!((rows[0].instance_id, rows[1].instance_id), (0, 1));
        assert!((rows[0].rho + 0.2).abs() < 1e-12);
        assert!((rows[2].rho - 0.4).abs() < 1e-12);
        for row in &rows {
            assert!(row.error.is_none());
            assert!(row.n_plo.is_some());
            assert!(row.n_pareto.unwrap() <= row.n_plo.unwrap());
            assert!(row.empirical_rho.abs() <= 1.0);
        }
    }

    #[test]
    fn reruns_are_byte_identical() {
        let config = tiny_config();
        let mut first = Vec::new();
        write_csv(&run_grid(&config), &mut first).unwrap();
        let mut second = Vec::new();
        write_csv(&run_grid(&config), &mut second).unwrap();
        assert_eq!(first, second);
        assert!(!first.is_empty());
    }

    #[test]
    fn thread_count_does_not_change_bytes() {
        let config = tiny_config();
        let mut outputs = Vec::new();
        for threads in [1usize, 4] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let rows = pool.install(|| run_grid(&config));
            let mut bytes = Vec::new();
            write_csv(&rows, &mut bytes).unwrap();
            outputs.push(bytes);
        }
        assert_eq!(outputs[0], outputs[1]);
    }

    #[test]
    fn enumeration_is_skipped_beyond_limit() {
        let config = GridConfig {
            n_values: vec![26],
            k_values: vec![1],
            m_values: vec![2],
            rho_values: vec![0.0],
            instances_per_cell: 1,
            walks_per_instance: 5,
            enumerate: true,
            correlation_samples: 50,
            master_seed: 1,
            ..GridConfig::default()
        };
        let rows = run_grid(&config);
        assert_eq!(rows.len(), 1);
        assert!(rows[0].n_plo.is_none());
        assert!(rows[0].error.is_none());
        assert!(rows[0].mean_walk > 0.0);
    }

    #[test]
    fn csv_round_trip() {
        let rows = run_grid(&tiny_config());
        let mut bytes = Vec::new();
        write_csv(&rows, &mut bytes).unwrap();
        let restored = read_csv(Cursor::new(&bytes)).unwrap();
        assert_eq!(rows, restored);
    }

    #[test]
    fn csv_rejects_wrong_header() {
        let result = read_csv(Cursor::new("a,b,c\n"));
        assert!(matches!(result, Err(Error::Format { line: 1, .. })));
    }

    #[test]
    fn empirical_correlation_tracks_rho() {
        // the realized correlation of one instance scatters around rho with
        // the finite table size, so average the matrices of five instances
        for &(m, rho) in &[(2usize, 0.9f64), (2, 0.0), (5, -0.2)] {
            let mut mean = vec![0.0f64; m * m];
            for seed in 0..5u64 {
                let instance = Instance::<f64>::generate(18, 4, m, rho, 140 + seed).unwrap();
                let mut rng = rng_from(900 + seed);
                let matrix = empirical_objective_correlation(&instance, 10_000, &mut rng);
                for i in 0..m {
                    assert!((matrix[i * m + i] - 1.0).abs() < 1e-12);
                    for j in 0..m {
                        assert!((matrix[i * m + j] - matrix[j * m + i]).abs() < 1e-12);
                    }
                }
                for (acc, v) in mean.iter_mut().zip(matrix) {
                    *acc += v / 5.0;
                }
            }
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        assert!(
                            (mean[i * m + j] - rho).abs() < 0.05,
                            "m={m} rho={rho}: entry ({i},{j}) = {}",
                            mean[i * m + j]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cell_summaries_average_per_instance_values() {
        let rows = vec![
            GridRow {
                n: 8,
                k: 1,
                m: 2,
                rho: 0.0,
                instance_id: 0,
                n_plo: Some(10),
                plo_fraction: Some(10.0 / 256.0),
                n_pareto: Some(4),
                mean_walk: 2.0,
                sd_walk: 0.5,
                empirical_rho: 0.1,
                error: None,
            },
            GridRow {
                n: 8,
                k: 1,
                m: 2,
                rho: 0.0,
                instance_id: 1,
                n_plo: Some(20),
                plo_fraction: Some(20.0 / 256.0),
                n_pareto: Some(8),
                mean_walk: 4.0,
                sd_walk: 0.7,
                empirical_rho: -0.1,
                error: None,
            },
        ];
        let cells = summarize_cells(&rows);
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].instances, 2);
        assert_eq!(cells[0].mean_n_plo, Some(15.0));
        assert_eq!(cells[0].mean_n_pareto, Some(6.0));
        assert!((cells[0].mean_walk - 3.0).abs() < 1e-15);
        assert!(cells[0].mean_empirical_rho.abs() < 1e-15);
    }
}
