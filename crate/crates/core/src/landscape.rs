//! Landscape instances: construction, evaluation and fast neighbor probes.
//!
//! An instance is defined by the bit-string length `n`, the epistasis degree
//! `k` (each bit interacts with `k` random other bits, shared across all
//! objectives), the objective count `m` and the pairwise objective
//! correlation `rho`. Every bit `i` owns a lookup table with `2^(k+1)` rows;
//! each row holds one value per objective, drawn from the correlated uniform
//! sampler. An objective value is the mean of the `n` per-bit table lookups.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use rand::Rng;

use crate::correlation::{validate_rho, CopulaSampler, CorrelationMatrix};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::seed::{child_seed, rng_from, LINKS_STREAM, TABLES_STREAM};

/// Fixed-length bit vector; the decision-space point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    bits: Vec<bool>,
}

impl Solution {
    /// All-zero solution of length `n`.
    pub fn zeros(n: usize) -> Self {
        Self {
            bits: vec![false; n],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Uniform random solution drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self {
            bits: (0..n).map(|_| rng.random::<bool>()).collect(),
        }
    }

    /// Canonical integer encoding for `n <= 64`: bit `i` of the integer is
    /// variable `i`.
    pub fn from_index(index: u64, n: usize) -> Self {
        debug_assert!(n <= 64);
        Self {
            bits: (0..n).map(|i| (index >> i) & 1 == 1).collect(),
        }
    }

    /// Inverse of [`from_index`](Self::from_index); `None` for `n > 64`.
    pub fn to_index(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        let mut index = 0u64;
        for (i, &bit) in self.bits.iter().enumerate() {
            if bit {
                index |= 1 << i;
            }
        }
        Some(index)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Copy with bit `i` flipped.
    pub fn flipped(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.bits[i] = !out.bits[i];
        out
    }

    pub fn flip_in_place(&mut self, i: usize) {
        self.bits[i] = !self.bits[i];
    }

    pub fn hamming_distance(&self, other: &Solution) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Solution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Format {
                    line: 1,
                    message: format!("invalid bit character {other:?}"),
                }),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(Self { bits })
    }
}

/// Image of a solution in objective space; every component lies in `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveVector<F> {
    values: Vec<F>,
}

impl<F: Real> ObjectiveVector<F> {
    pub fn new(values: Vec<F>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }
}

impl<F> Deref for ObjectiveVector<F> {
    type Target = [F];

    fn deref(&self) -> &[F] {
        &self.values
    }
}

/// Epistatic interaction structure: for every bit, the `k` distinct other
/// bits its fitness component depends on. Shared by all objectives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistasisLinks {
    n: usize,
    k: usize,
    links: Vec<u32>,
}

impl EpistasisLinks {
    pub fn from_rows(n: usize, k: usize, links: Vec<u32>) -> Result<Self> {
        if links.len() != n * k {
            return Err(Error::LengthMismatch {
                expected: n * k,
                actual: links.len(),
            });
        }
        let out = Self { n, k, links };
        for i in 0..n {
            let row = out.row(i);
            for (t, &j) in row.iter().enumerate() {
                if j as usize >= n || j as usize == i || row[..t].contains(&j) {
                    return Err(Error::Format {
                        line: 0,
                        message: format!("invalid link {j} in row {i}"),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Links of bit `i`, in draw order.
    pub fn row(&self, i: usize) -> &[u32] {
        &self.links[i * self.k..(i + 1) * self.k]
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Per-bit lookup tables: `2^(k+1)` rows per bit, one value per objective.
///
/// The row index is the integer formed by the bits `(x_i, x_{i_1}, ...,
/// x_{i_k})` with the owning bit `x_i` as the most significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentTables<F> {
    n: usize,
    k: usize,
    m: usize,
    values: Vec<F>,
}

impl<F: Real> ComponentTables<F> {
    pub fn from_values(n: usize, k: usize, m: usize, values: Vec<F>) -> Result<Self> {
        let rows = 1usize << (k + 1);
        if values.len() != n * rows * m {
            return Err(Error::LengthMismatch {
                expected: n * rows * m,
                actual: values.len(),
            });
        }
        if values.iter().any(|v| *v < F::zero() || *v >= F::one()) {
            return Err(Error::Format {
                line: 0,
                message: "table value outside [0, 1)".to_string(),
            });
        }
        Ok(Self { n, k, m, values })
    }

    pub fn rows_per_bit(&self) -> usize {
        1 << (self.k + 1)
    }

    /// Row `row` of bit `i`: one value per objective.
    pub fn row(&self, i: usize, row: usize) -> &[F] {
        let rows = self.rows_per_bit();
        let base = (i * rows + row) * self.m;
        &self.values[base..base + self.m]
    }

    pub fn value(&self, i: usize, row: usize, objective: usize) -> F {
        self.row(i, row)[objective]
    }
}

/// A fully materialized landscape instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<F> {
    n: usize,
    k: usize,
    m: usize,
    rho: F,
    seed: u64,
    links: EpistasisLinks,
    tables: ComponentTables<F>,
}

impl<F: Real> Instance<F> {
    /// Generates an instance from its four parameters and a seed.
    ///
    /// Links and tables are drawn from independent substreams of `seed`, so
    /// the link structure of a given seed never depends on `m` or `rho`.
    pub fn generate(n: usize, k: usize, m: usize, rho: F, seed: u64) -> Result<Self> {
        validate_rho(m, rho)?;
        if n == 0 || k + 1 > n {
            return Err(Error::InvalidK { k, n });
        }
        let sampler = CopulaSampler::new(&CorrelationMatrix::new(m, rho)?)?;

        let mut links_rng = rng_from(child_seed(seed, &[LINKS_STREAM]));
        let mut links = Vec::with_capacity(n * k);
        for i in 0..n {
            // partial Fisher-Yates over {0..n-1} \ {i}
            let mut candidates: Vec<u32> =
                (0..n as u32).filter(|&j| j as usize != i).collect();
            for t in 0..k {
                let swap_with = links_rng.random_range(t..candidates.len());
                candidates.swap(t, swap_with);
            }
            links.extend_from_slice(&candidates[..k]);
        }

        let mut tables_rng = rng_from(child_seed(seed, &[TABLES_STREAM]));
        let rows = 1usize << (k + 1);
        let mut values = vec![F::zero(); n * rows * m];
        let mut z = vec![0.0; m];
        for chunk in values.chunks_mut(m) {
            sampler.draw_into(&mut tables_rng, &mut z, chunk);
        }

        Self::from_parts(
            n,
            k,
            m,
            rho,
            seed,
            EpistasisLinks { n, k, links },
            ComponentTables { n, k, m, values },
        )
    }

    /// Assembles an instance from explicit parts, validating every invariant.
    pub fn from_parts(
        n: usize,
        k: usize,
        m: usize,
        rho: F,
        seed: u64,
        links: EpistasisLinks,
        tables: ComponentTables<F>,
    ) -> Result<Self> {
        validate_rho(m, rho)?;
        if n == 0 || k + 1 > n {
            return Err(Error::InvalidK { k, n });
        }
        let links = EpistasisLinks::from_rows(n, k, links.links)?;
        let tables = ComponentTables::from_values(n, k, m, tables.values)?;
        Ok(Self {
            n,
            k,
            m,
            rho,
            seed,
            links,
            tables,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rho(&self) -> F {
        self.rho
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn links(&self) -> &EpistasisLinks {
        &self.links
    }

    pub fn tables(&self) -> &ComponentTables<F> {
        &self.tables
    }

    /// Objective vector of `x`: per objective, the mean of the `n` table
    /// lookups selected by the bit patterns of `x`.
    pub fn evaluate(&self, x: &Solution) -> Result<ObjectiveVector<F>> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        let evaluator = Evaluator::new(self);
        let mut rows = vec![0u32; self.n];
        evaluator.rows_into(x.bits(), &mut rows);
        let mut out = vec![F::zero(); self.m];
        evaluator.objectives_from_rows(&rows, &mut out);
        Ok(ObjectiveVector::new(out))
    }
}

/// Precomputed lookup structure for repeated evaluation on one instance.
///
/// Keeps, for every bit `j`, the list of components whose table row changes
/// when `j` flips, together with the row-index xor mask of that change. All
/// methods take `&self`; the evaluator can be shared across threads.
pub struct Evaluator<'a, F> {
    instance: &'a Instance<F>,
    /// Per bit `j`: `(component, row xor mask)` pairs affected by flipping `j`.
    flip_masks: Vec<Vec<(u32, u32)>>,
    inv_n: F,
}

impl<'a, F: Real> Evaluator<'a, F> {
    pub fn new(instance: &'a Instance<F>) -> Self {
        let n = instance.n;
        let k = instance.k;
        let mut flip_masks = vec![Vec::new(); n];
        for i in 0..n {
            flip_masks[i].push((i as u32, 1u32 << k));
            for (t, &link) in instance.links.row(i).iter().enumerate() {
                flip_masks[link as usize].push((i as u32, 1u32 << (k - 1 - t)));
            }
        }
        Self {
            instance,
            flip_masks,
            inv_n: F::one() / F::from_usize(n).unwrap(),
        }
    }

    pub fn instance(&self) -> &'a Instance<F> {
        self.instance
    }

    /// Table row index of every component under the given bits.
    pub fn rows_into(&self, bits: &[bool], rows: &mut [u32]) {
        let inst = self.instance;
        for i in 0..inst.n {
            let mut row = bits[i] as u32;
            for &link in inst.links.row(i) {
                row = (row << 1) | bits[link as usize] as u32;
            }
            rows[i] = row;
        }
    }

    /// Canonical objective values for known rows: ascending-component sums
    /// scaled by `1/n`. Every evaluation path in the crate funnels through
    /// this function so cached, streaming and walk evaluations agree
    /// bit-for-bit.
    pub fn objectives_from_rows(&self, rows: &[u32], out: &mut [F]) {
        let inst = self.instance;
        out.fill(F::zero());
        for (i, &row) in rows.iter().enumerate() {
            let values = inst.tables.row(i, row as usize);
            for (acc, &v) in out.iter_mut().zip(values) {
                *acc += v;
            }
        }
        for acc in out.iter_mut() {
            *acc *= self.inv_n;
        }
    }

    /// Canonical objectives of the neighbor of `rows` obtained by flipping
    /// bit `j`; `scratch` must have length `n`.
    pub fn neighbor_objectives_from_rows(
        &self,
        rows: &[u32],
        j: usize,
        scratch: &mut [u32],
        out: &mut [F],
    ) {
        scratch.copy_from_slice(rows);
        for &(component, mask) in &self.flip_masks[j] {
            scratch[component as usize] ^= mask;
        }
        self.objectives_from_rows(scratch, out);
    }

    /// Unnormalized per-objective sums for known rows.
    pub fn sums_from_rows(&self, rows: &[u32], out: &mut [F]) {
        let inst = self.instance;
        out.fill(F::zero());
        for (i, &row) in rows.iter().enumerate() {
            let values = inst.tables.row(i, row as usize);
            for (acc, &v) in out.iter_mut().zip(values) {
                *acc += v;
            }
        }
    }

    /// Per-objective sum deltas caused by flipping bit `j`, written to `out`.
    ///
    /// Exact for dominance screening: flipping `j` strictly improves
    /// objective `t` iff `out[t] > 0` in unnormalized sum space.
    pub fn flip_deltas(&self, rows: &[u32], j: usize, out: &mut [F]) {
        let inst = self.instance;
        out.fill(F::zero());
        for &(component, mask) in &self.flip_masks[j] {
            let i = component as usize;
            let old = inst.tables.row(i, rows[i] as usize);
            let new = inst.tables.row(i, (rows[i] ^ mask) as usize);
            for ((acc, &nv), &ov) in out.iter_mut().zip(new).zip(old) {
                *acc += nv - ov;
            }
        }
    }

    /// Applies the flip of bit `j` to a row vector in place.
    pub fn apply_flip(&self, rows: &mut [u32], j: usize) {
        for &(component, mask) in &self.flip_masks[j] {
            rows[component as usize] ^= mask;
        }
    }

    /// `(component, mask)` pairs affected by flipping bit `j`.
    pub fn flip_mask(&self, j: usize) -> &[(u32, u32)] {
        &self.flip_masks[j]
    }
}
