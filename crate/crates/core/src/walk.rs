//! Pareto hill-climbing walks and walk campaigns.
//!
//! A walk starts from a random solution and repeatedly jumps to a uniformly
//! chosen dominating neighbor until none exists; the number of accepted
//! moves is the walk length. Mean lengths over many walks estimate the
//! logarithm of the Pareto-local-optima count at sizes where enumeration is
//! out of reach.

use rand::Rng;
use rayon::prelude::*;

use crate::dominance::dominates_unchecked;
use crate::error::{Error, Result};
use crate::landscape::{Evaluator, Instance, ObjectiveVector, Solution};
use crate::scalar::Real;
use crate::seed::{child_seed, rng_from, WALK_STREAM};
use crate::stats::{RegressionFit, RegressionModel};

/// Outcome of one Pareto hill-climbing run.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkRecord<F> {
    pub start: Solution,
    pub final_solution: Solution,
    /// Number of accepted moves.
    pub steps: u32,
    pub final_objectives: ObjectiveVector<F>,
}

/// Aggregated lengths of a walk campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkStats {
    pub n_walks: usize,
    pub mean_length: f64,
    /// Sample standard deviation (n - 1 denominator); zero for a single walk.
    pub sd_length: f64,
    pub lengths: Option<Vec<u32>>,
}

/// Runs one Pareto hill-climbing walk from `start`.
///
/// Each iteration computes the full set of dominating neighbors and moves to
/// a uniformly random member; the loop ends on a Pareto local optimum. Every
/// accepted move strictly improves at least one objective without worsening
/// any, so the walk cannot revisit a solution and always terminates.
pub fn phc_walk<F: Real, R: Rng + ?Sized>(
    instance: &Instance<F>,
    start: Solution,
    rng: &mut R,
) -> Result<WalkRecord<F>> {
    let (record, _) = walk_internal(instance, &Evaluator::new(instance), start, rng, false)?;
    Ok(record)
}

/// [`phc_walk`] that also returns every accepted solution, starting point
/// included.
pub fn phc_walk_traced<F: Real, R: Rng + ?Sized>(
    instance: &Instance<F>,
    start: Solution,
    rng: &mut R,
) -> Result<(WalkRecord<F>, Vec<Solution>)> {
    let (record, trace) = walk_internal(instance, &Evaluator::new(instance), start, rng, true)?;
    Ok((record, trace.expect("trace requested")))
}

fn walk_internal<F: Real, R: Rng + ?Sized>(
    instance: &Instance<F>,
    evaluator: &Evaluator<'_, F>,
    start: Solution,
    rng: &mut R,
    traced: bool,
) -> Result<(WalkRecord<F>, Option<Vec<Solution>>)> {
    let n = instance.n();
    let m = instance.m();
    if start.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: start.len(),
        });
    }

    let mut current = start.clone();
    let mut rows = vec![0u32; n];
    evaluator.rows_into(current.bits(), &mut rows);
    let mut objectives = vec![F::zero(); m];
    evaluator.objectives_from_rows(&rows, &mut objectives);

    let mut trace = traced.then(|| vec![current.clone()]);
    let mut steps = 0u32;
    let mut deltas = vec![F::zero(); m];
    let mut scratch_rows = vec![0u32; n];
    let mut candidate_objs = vec![F::zero(); m];
    let mut dominating: Vec<usize> = Vec::with_capacity(n);

    loop {
        // Fast screen in unnormalized sum space: flipping bit j dominates the
        // current point iff no per-objective delta is negative and at least
        // one is positive.
        dominating.clear();
        for j in 0..n {
            evaluator.flip_deltas(&rows, j, &mut deltas);
            if dominates_deltas(&deltas) {
                dominating.push(j);
            }
        }

        let chosen = loop {
            if dominating.is_empty() {
                break None;
            }
            let pick = dominating[rng.random_range(0..dominating.len())];
            // confirm against the canonical evaluation used everywhere else
            evaluator.neighbor_objectives_from_rows(&rows, pick, &mut scratch_rows, &mut candidate_objs);
            if dominates_unchecked(&candidate_objs, &objectives) {
                break Some(pick);
            }
            // screen and canonical evaluation disagree on a rounding tie;
            // rebuild the candidate set canonically
            dominating.clear();
            for j in 0..n {
                evaluator.neighbor_objectives_from_rows(&rows, j, &mut scratch_rows, &mut candidate_objs);
                if dominates_unchecked(&candidate_objs, &objectives) {
                    dominating.push(j);
                }
            }
        };

        let Some(j) = chosen else {
            // verify termination canonically before declaring a local optimum
            let mut confirmed = true;
            for j in 0..n {
                evaluator.neighbor_objectives_from_rows(&rows, j, &mut scratch_rows, &mut candidate_objs);
                if dominates_unchecked(&candidate_objs, &objectives) {
                    confirmed = false;
                    dominating.push(j);
                }
            }
            if confirmed {
                break;
            }
            let pick = dominating[rng.random_range(0..dominating.len())];
            accept_move(evaluator, &mut current, &mut rows, &mut objectives, pick);
            steps += 1;
            if let Some(t) = trace.as_mut() {
                t.push(current.clone());
            }
            continue;
        };

        accept_move(evaluator, &mut current, &mut rows, &mut objectives, j);
        steps += 1;
        if let Some(t) = trace.as_mut() {
            t.push(current.clone());
        }
        debug_assert!(u128::from(steps) <= 1u128 << n.min(127));
    }

    let record = WalkRecord {
        start,
        final_solution: current,
        steps,
        final_objectives: ObjectiveVector::new(objectives),
    };
    Ok((record, trace))
}

fn accept_move<F: Real>(
    evaluator: &Evaluator<'_, F>,
    current: &mut Solution,
    rows: &mut [u32],
    objectives: &mut [F],
    j: usize,
) {
    current.flip_in_place(j);
    evaluator.apply_flip(rows, j);
    evaluator.objectives_from_rows(rows, objectives);
}

fn dominates_deltas<F: Real>(deltas: &[F]) -> bool {
    let mut strict = false;
    for &d in deltas {
        if d < F::zero() {
            return false;
        }
        if d > F::zero() {
            strict = true;
        }
    }
    strict
}

/// Runs `n_walks` independent walks from fresh uniform starts.
///
/// Walk `i` draws from a stream derived from `(master_seed, i)`, so the
/// aggregate is independent of execution order and concurrency.
pub fn walk_campaign<F: Real>(
    instance: &Instance<F>,
    n_walks: usize,
    master_seed: u64,
) -> Result<WalkStats> {
    if n_walks == 0 {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let evaluator = Evaluator::new(instance);
    let lengths: Vec<u32> = (0..n_walks)
        .into_par_iter()
        .map(|walk| {
            let mut rng = rng_from(child_seed(master_seed, &[WALK_STREAM, walk as u64]));
            let start = Solution::random(instance.n(), &mut rng);
            walk_internal(instance, &evaluator, start, &mut rng, false)
                .map(|(record, _)| record.steps)
        })
        .collect::<Result<_>>()?;
    Ok(summarize(lengths))
}

fn summarize(lengths: Vec<u32>) -> WalkStats {
    let n = lengths.len();
    let mean = lengths.iter().map(|&l| l as f64).sum::<f64>() / n as f64;
    let sd = if n > 1 {
        let ss: f64 = lengths.iter().map(|&l| (l as f64 - mean).powi(2)).sum();
        (ss / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    WalkStats {
        n_walks: n,
        mean_length: mean,
        sd_length: sd,
        lengths: Some(lengths),
    }
}

/// Predicted natural-log count of Pareto local optima for a mean walk
/// length, under a lin-log fit trained at the same bit-string length.
///
/// The coefficients are length-specific; a fit trained at one `n` does not
/// transfer to another.
pub fn estimate_log_plo<F: Real>(mean_length: F, fit: &RegressionFit<F>) -> F {
    debug_assert_eq!(fit.model, RegressionModel::LinLog);
    fit.slope * mean_length + fit.intercept
}
