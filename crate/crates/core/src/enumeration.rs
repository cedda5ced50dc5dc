//! Exhaustive census of Pareto local optima and the Pareto optimal set.
//!
//! Feasible up to `n = 24` by default. Two internal modes share the same
//! canonical evaluation path and produce identical results:
//!
//! * cached (`n <= 20`): all `2^n` objective vectors are materialized once
//!   (a few MB), neighbors are then plain index lookups;
//! * streaming: each point and its neighbors are evaluated on the fly with
//!   memory bounded by the nondominated archive.
//!
//! The search space is partitioned into index ranges; partial counts and
//! archives merge associatively, so results are independent of the partition
//! count and merge order.

use rayon::prelude::*;

use crate::dominance::{dominates_unchecked, dominating_neighbors};
use crate::error::{Error, Result};
use crate::landscape::{Evaluator, Instance, Solution};
use crate::scalar::Real;

/// Largest `n` enumerated without an explicit override.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 24;

/// Largest `n` for which all objective vectors are cached in memory.
const CACHED_LIMIT: usize = 20;

const RANGE_CHUNK: u64 = 1 << 16;

/// Internal traversal mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnumerationMode {
    /// Cached for `n <= 20`, streaming beyond.
    #[default]
    Auto,
    Cached,
    Streaming,
}

/// Knobs for the exhaustive passes.
#[derive(Debug, Clone)]
pub struct EnumerationOptions {
    /// Retain the solution lists in the summary, not only the counts.
    pub keep_lists: bool,
    /// Refuse spaces larger than `2^limit`.
    pub limit: usize,
    pub mode: EnumerationMode,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            keep_lists: false,
            limit: DEFAULT_ENUMERATION_LIMIT,
            mode: EnumerationMode::Auto,
        }
    }
}

/// Result of a full enumeration pass.
#[derive(Debug, Clone, PartialEq)]
pub struct PloSummary {
    /// Number of Pareto local optima.
    pub n_plo: u64,
    /// Number of Pareto optimal solutions.
    pub n_pareto: u64,
    /// `2^n`.
    pub space_size: u64,
    /// `n_plo / 2^n`.
    pub plo_fraction: f64,
    pub plo_list: Option<Vec<Solution>>,
    pub pareto_list: Option<Vec<Solution>>,
}

/// `true` iff no neighbor of `x` dominates `x`.
pub fn is_pareto_local_optimum<F: Real>(instance: &Instance<F>, x: &Solution) -> Result<bool> {
    Ok(dominating_neighbors(instance, x)?.is_empty())
}

/// Counts all Pareto local optima and Pareto optimal solutions by complete
/// enumeration, using the default options.
pub fn enumerate_plo<F: Real>(instance: &Instance<F>, keep_lists: bool) -> Result<PloSummary> {
    enumerate_plo_with(
        instance,
        &EnumerationOptions {
            keep_lists,
            ..EnumerationOptions::default()
        },
    )
}

/// [`enumerate_plo`] with explicit options.
pub fn enumerate_plo_with<F: Real>(
    instance: &Instance<F>,
    options: &EnumerationOptions,
) -> Result<PloSummary> {
    let census = census(instance, options)?;
    let n = instance.n();
    let space_size = 1u64 << n;
    let n_plo = census.plo_indices.len() as u64;
    let n_pareto = census.pareto_indices.len() as u64;
    let to_solutions =
        |indices: &[u64]| indices.iter().map(|&i| Solution::from_index(i, n)).collect();
    Ok(PloSummary {
        n_plo,
        n_pareto,
        space_size,
        plo_fraction: n_plo as f64 / space_size as f64,
        plo_list: options.keep_lists.then(|| to_solutions(&census.plo_indices)),
        pareto_list: options.keep_lists.then(|| to_solutions(&census.pareto_indices)),
    })
}

/// The Pareto optimal set: the nondominated subset of all `2^n` points, in
/// ascending index order.
pub fn enumerate_pareto_set<F: Real>(instance: &Instance<F>) -> Result<Vec<Solution>> {
    enumerate_pareto_set_with(instance, &EnumerationOptions::default())
}

/// [`enumerate_pareto_set`] with explicit options.
pub fn enumerate_pareto_set_with<F: Real>(
    instance: &Instance<F>,
    options: &EnumerationOptions,
) -> Result<Vec<Solution>> {
    let census = census(instance, options)?;
    let n = instance.n();
    Ok(census
        .pareto_indices
        .iter()
        .map(|&i| Solution::from_index(i, n))
        .collect())
}

struct Census {
    plo_indices: Vec<u64>,
    pareto_indices: Vec<u64>,
}

fn census<F: Real>(instance: &Instance<F>, options: &EnumerationOptions) -> Result<Census> {
    let n = instance.n();
    let limit = options.limit.min(63);
    if n > limit {
        return Err(Error::SpaceTooLarge { n, limit });
    }
    let cached = match options.mode {
        EnumerationMode::Auto => n <= CACHED_LIMIT,
        EnumerationMode::Cached => true,
        EnumerationMode::Streaming => false,
    };
    let evaluator = Evaluator::new(instance);
    if cached {
        Ok(census_cached(&evaluator))
    } else {
        Ok(census_streaming(&evaluator))
    }
}

/// One nondominated-archive entry: point index, objective vector, and the
/// floating sum of the objectives used as a pre-screen.
struct ArchiveEntry<F> {
    index: u64,
    objectives: Box<[F]>,
    sum: F,
}

/// Inserts a candidate into a nondominated archive.
///
/// A dominator always has a strictly larger real objective sum, hence a
/// floating sum at least as large; the reverse screen therefore only needs
/// to run on entries whose sums compare equal.
fn archive_insert<F: Real>(entries: &mut Vec<ArchiveEntry<F>>, index: u64, objectives: &[F], sum: F) {
    let mut removals: Vec<usize> = Vec::new();
    for (pos, entry) in entries.iter().enumerate() {
        if dominates_unchecked(&entry.objectives, objectives) {
            return;
        }
        if entry.sum <= sum && dominates_unchecked(objectives, &entry.objectives) {
            removals.push(pos);
        }
    }
    for &pos in removals.iter().rev() {
        entries.swap_remove(pos);
    }
    entries.push(ArchiveEntry {
        index,
        objectives: objectives.to_vec().into_boxed_slice(),
        sum,
    });
}

fn merge_archives<F: Real>(
    mut a: Vec<ArchiveEntry<F>>,
    b: Vec<ArchiveEntry<F>>,
) -> Vec<ArchiveEntry<F>> {
    if a.len() < b.len() {
        return merge_archives(b, a);
    }
    for entry in b {
        archive_insert(&mut a, entry.index, &entry.objectives, entry.sum);
    }
    a
}

fn index_ranges(space: u64) -> Vec<(u64, u64)> {
    let mut ranges = Vec::new();
    let mut start = 0;
    while start < space {
        let end = (start + RANGE_CHUNK).min(space);
        ranges.push((start, end));
        start = end;
    }
    ranges
}

fn census_cached<F: Real>(evaluator: &Evaluator<'_, F>) -> Census {
    let instance = evaluator.instance();
    let n = instance.n();
    let m = instance.m();
    let space = 1u64 << n;

    // Gray-code sweep: one bit flip per step keeps the table-row vector
    // current; every point still gets a canonical fresh objective sum.
    let mut cache = vec![F::zero(); space as usize * m];
    let mut rows = vec![0u32; n];
    evaluator.rows_into(Solution::zeros(n).bits(), &mut rows);
    evaluator.objectives_from_rows(&rows, &mut cache[0..m]);
    for t in 1..space {
        let flipped = t.trailing_zeros() as usize;
        evaluator.apply_flip(&mut rows, flipped);
        let point = (t ^ (t >> 1)) as usize;
        evaluator.objectives_from_rows(&rows, &mut cache[point * m..(point + 1) * m]);
    }

    let objectives = |x: u64| &cache[x as usize * m..(x as usize + 1) * m];

    let ranges = index_ranges(space);
    let plo_indices: Vec<u64> = ranges
        .par_iter()
        .map(|&(start, end)| {
            let mut local = Vec::new();
            'point: for x in start..end {
                let fx = objectives(x);
                for j in 0..n {
                    if dominates_unchecked(objectives(x ^ (1 << j)), fx) {
                        continue 'point;
                    }
                }
                local.push(x);
            }
            local
        })
        .reduce(Vec::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });

    // Pareto pass over indices presorted by descending objective sum: a
    // dominator can then never appear after the point it dominates, which
    // keeps archive removals exceptional.
    let mut order: Vec<(u64, F)> = (0..space)
        .map(|x| (x, objectives(x).iter().copied().sum()))
        .collect();
    order.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));

    let archive = order
        .par_chunks(RANGE_CHUNK as usize)
        .map(|chunk| {
            let mut entries: Vec<ArchiveEntry<F>> = Vec::new();
            for &(x, sum) in chunk {
                archive_insert(&mut entries, x, objectives(x), sum);
            }
            entries
        })
        .reduce(Vec::new, merge_archives);

    let mut pareto_indices: Vec<u64> = archive.iter().map(|e| e.index).collect();
    pareto_indices.sort_unstable();

    let mut plo_indices = plo_indices;
    plo_indices.sort_unstable();
    Census {
        plo_indices,
        pareto_indices,
    }
}

fn census_streaming<F: Real>(evaluator: &Evaluator<'_, F>) -> Census {
    let instance = evaluator.instance();
    let n = instance.n();
    let m = instance.m();
    let space = 1u64 << n;
    let ranges = index_ranges(space);

    let (plo_parts, archive) = ranges
        .par_iter()
        .map(|&(start, end)| {
            let mut plo_local = Vec::new();
            let mut archive_local: Vec<ArchiveEntry<F>> = Vec::new();
            let mut bits = vec![false; n];
            let mut rows = vec![0u32; n];
            let mut scratch = vec![0u32; n];
            let mut fx = vec![F::zero(); m];
            let mut fy = vec![F::zero(); m];
            for x in start..end {
                for (i, bit) in bits.iter_mut().enumerate() {
                    *bit = (x >> i) & 1 == 1;
                }
                evaluator.rows_into(&bits, &mut rows);
                evaluator.objectives_from_rows(&rows, &mut fx);
                let mut plo = true;
                for j in 0..n {
                    evaluator.neighbor_objectives_from_rows(&rows, j, &mut scratch, &mut fy);
                    if dominates_unchecked(&fy, &fx) {
                        plo = false;
                        break;
                    }
                }
                if plo {
                    plo_local.push(x);
                }
                let sum = fx.iter().copied().sum();
                archive_insert(&mut archive_local, x, &fx, sum);
            }
            (plo_local, archive_local)
        })
        .reduce(
            || (Vec::new(), Vec::new()),
            |(mut plo_a, arch_a), (mut plo_b, arch_b)| {
                plo_a.append(&mut plo_b);
                (plo_a, merge_archives(arch_a, arch_b))
            },
        );

    let mut plo_indices = plo_parts;
    plo_indices.sort_unstable();
    let mut pareto_indices: Vec<u64> = archive.iter().map(|e| e.index).collect();
    pareto_indices.sort_unstable();
    Census {
        plo_indices,
        pareto_indices,
    }
}
