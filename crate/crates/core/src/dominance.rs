//! Pareto dominance, nondominated filtering and the one-bit-flip
//! neighborhood.
//!
//! Maximization throughout: `a` dominates `b` iff `a` is at least as good in
//! every objective and strictly better in at least one. Equal vectors are
//! mutually nondominating.

use crate::error::{Error, Result};
use crate::landscape::{Instance, ObjectiveVector, Solution};
use crate::scalar::Real;

/// Outcome of comparing two objective vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    FirstDominates,
    SecondDominates,
    Incomparable,
    Equal,
}

impl Comparison {
    /// Comparison seen from the swapped argument order.
    pub fn mirrored(self) -> Self {
        match self {
            Comparison::FirstDominates => Comparison::SecondDominates,
            Comparison::SecondDominates => Comparison::FirstDominates,
            other => other,
        }
    }
}

fn check_same_length<F>(a: &[F], b: &[F]) -> Result<()> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        })
    }
}

/// `true` iff `a` dominates `b`.
pub fn dominates<F: Real>(a: &[F], b: &[F]) -> Result<bool> {
    check_same_length(a, b)?;
    Ok(dominates_unchecked(a, b))
}

/// Dominance check without the length guard; used on hot paths where the
/// lengths are equal by construction.
#[inline]
pub(crate) fn dominates_unchecked<F: Real>(a: &[F], b: &[F]) -> bool {
    let mut strict = false;
    for (&x, &y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        if x > y {
            strict = true;
        }
    }
    strict
}

/// Full pairwise comparison of two objective vectors.
pub fn compare<F: Real>(a: &[F], b: &[F]) -> Result<Comparison> {
    check_same_length(a, b)?;
    let mut a_better = false;
    let mut b_better = false;
    for (&x, &y) in a.iter().zip(b) {
        if x > y {
            a_better = true;
        } else if y > x {
            b_better = true;
        }
        if a_better && b_better {
            return Ok(Comparison::Incomparable);
        }
    }
    Ok(match (a_better, b_better) {
        (true, false) => Comparison::FirstDominates,
        (false, true) => Comparison::SecondDominates,
        (false, false) => Comparison::Equal,
        (true, true) => unreachable!("early return above"),
    })
}

/// Keeps exactly the entries not dominated by any other entry.
///
/// Duplicated (equal) vectors are all kept and the input order of survivors
/// is preserved.
pub fn nondominated_filter<F: Real, T: Clone>(
    entries: &[(T, ObjectiveVector<F>)],
) -> Vec<(T, ObjectiveVector<F>)> {
    let mut survivors = Vec::new();
    'outer: for (i, (payload, objectives)) in entries.iter().enumerate() {
        for (j, (_, other)) in entries.iter().enumerate() {
            if i != j && dominates_unchecked(other, objectives) {
                continue 'outer;
            }
        }
        survivors.push((payload.clone(), objectives.clone()));
    }
    survivors
}

/// The `n` solutions at Hamming distance one, in bit-index order.
pub fn neighbors(x: &Solution) -> Vec<Solution> {
    (0..x.len()).map(|j| x.flipped(j)).collect()
}

/// Neighbors of `x` whose objective vector dominates that of `x`.
pub fn dominating_neighbors<F: Real>(
    instance: &Instance<F>,
    x: &Solution,
) -> Result<Vec<Solution>> {
    let fx = instance.evaluate(x)?;
    let mut out = Vec::new();
    for j in 0..x.len() {
        let y = x.flipped(j);
        let fy = instance.evaluate(&y)?;
        if dominates_unchecked(&fy, &fx) {
            out.push(y);
        }
    }
    Ok(out)
}
