//! Versioned text format for landscape instances.
//!
//! ```text
//! rmnk-format 1
//! N K M RHO SEED
//! link i j_1 ... j_K          (N lines)
//! y i row v_1 ... v_M         (N * 2^(K+1) lines, ascending (i, row))
//! ```
//!
//! Values are written with 17 significant digits, which round-trips IEEE
//! doubles exactly; `read_instance(write_instance(inst)) == inst`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::landscape::{ComponentTables, EpistasisLinks, Instance};
use crate::scalar::Real;

const HEADER: &str = "rmnk-format 1";

/// Writes an instance in the versioned text format.
pub fn write_instance<F: Real, W: Write>(instance: &Instance<F>, sink: &mut W) -> Result<()> {
    writeln!(sink, "{HEADER}")?;
    writeln!(
        sink,
        "{} {} {} {} {}",
        instance.n(),
        instance.k(),
        instance.m(),
        instance.rho().to_f64_lossy(),
        instance.seed()
    )?;
    for i in 0..instance.n() {
        write!(sink, "link {i}")?;
        for &j in instance.links().row(i) {
            write!(sink, " {j}")?;
        }
        writeln!(sink)?;
    }
    let rows = instance.tables().rows_per_bit();
    for i in 0..instance.n() {
        for row in 0..rows {
            write!(sink, "y {i} {row}")?;
            for &v in instance.tables().row(i, row) {
                write!(sink, " {:.16e}", v.to_f64_lossy())?;
            }
            writeln!(sink)?;
        }
    }
    Ok(())
}

/// Writes an instance to a file path.
pub fn write_instance_file<F: Real>(instance: &Instance<F>, path: &Path) -> Result<()> {
    let mut writer = BufWriter::new(File::create(path)?);
    write_instance(instance, &mut writer)?;
    writer.flush()?;
    Ok(())
}

struct Lines<R> {
    source: R,
    number: usize,
}

impl<R: BufRead> Lines<R> {
    fn next_line(&mut self) -> Result<String> {
        let mut line = String::new();
        self.number += 1;
        let read = self.source.read_line(&mut line)?;
        if read == 0 {
            return Err(Error::Format {
                line: self.number,
                message: "unexpected end of file".to_string(),
            });
        }
        Ok(line.trim_end().to_string())
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Format {
            line: self.number,
            message: message.into(),
        }
    }
}

fn parse<T: std::str::FromStr>(token: Option<&str>, lines: &Lines<impl BufRead>, what: &str) -> Result<T> {
    token
        .ok_or_else(|| lines.error(format!("missing {what}")))?
        .parse()
        .map_err(|_| lines.error(format!("invalid {what}")))
}

/// Reads an instance written by [`write_instance`], validating every
/// structural invariant.
pub fn read_instance<F: Real, R: BufRead>(source: R) -> Result<Instance<F>> {
    let mut lines = Lines { source, number: 0 };

    let header = lines.next_line()?;
    if header != HEADER {
        return Err(Error::Version { found: header });
    }

    let params = lines.next_line()?;
    let mut tokens = params.split_whitespace();
    let n: usize = parse(tokens.next(), &lines, "N")?;
    let k: usize = parse(tokens.next(), &lines, "K")?;
    let m: usize = parse(tokens.next(), &lines, "M")?;
    let rho: f64 = parse(tokens.next(), &lines, "RHO")?;
    let seed: u64 = parse(tokens.next(), &lines, "SEED")?;
    if tokens.next().is_some() {
        return Err(lines.error("trailing tokens after SEED"));
    }
    if n == 0 || k + 1 > n {
        return Err(lines.error(format!("K = {k} requires 0 <= K <= N-1 with N = {n}")));
    }
    if m < 2 {
        return Err(lines.error(format!("M = {m} must be at least 2")));
    }
    crate::correlation::validate_rho(m, rho)?;

    let mut links = Vec::with_capacity(n * k);
    for i in 0..n {
        let line = lines.next_line()?;
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("link") {
            return Err(lines.error("expected a link line"));
        }
        let index: usize = parse(tokens.next(), &lines, "link index")?;
        if index != i {
            return Err(lines.error(format!("expected link row {i}, found {index}")));
        }
        for _ in 0..k {
            let j: u32 = parse(tokens.next(), &lines, "link target")?;
            links.push(j);
        }
        if tokens.next().is_some() {
            return Err(lines.error("too many link targets"));
        }
    }

    let rows = 1usize << (k + 1);
    let mut values = Vec::with_capacity(n * rows * m);
    for i in 0..n {
        for row in 0..rows {
            let line = lines.next_line()?;
            let mut tokens = line.split_whitespace();
            if tokens.next() != Some("y") {
                return Err(lines.error("expected a y line"));
            }
            let bit: usize = parse(tokens.next(), &lines, "bit index")?;
            let row_index: usize = parse(tokens.next(), &lines, "row index")?;
            if bit != i || row_index != row {
                return Err(lines.error(format!(
                    "expected y row ({i}, {row}), found ({bit}, {row_index})"
                )));
            }
            for _ in 0..m {
                let v: f64 = parse(tokens.next(), &lines, "table value")?;
                if !(0.0..1.0).contains(&v) {
                    return Err(lines.error(format!("table value {v} outside [0, 1)")));
                }
                values.push(F::from_f64_lossy(v));
            }
            if tokens.next().is_some() {
                return Err(lines.error("too many table values"));
            }
        }
    }

    let line_of_invariant = lines.number;
    let links = EpistasisLinks::from_rows(n, k, links).map_err(|e| match e {
        Error::Format { message, .. } => Error::Format {
            line: line_of_invariant,
            message,
        },
        other => other,
    })?;
    let tables = ComponentTables::from_values(n, k, m, values)?;
    Instance::from_parts(n, k, m, F::from_f64_lossy(rho), seed, links, tables)
}

/// Reads an instance from a file path.
pub fn read_instance_file<F: Real>(path: &Path) -> Result<Instance<F>> {
    read_instance(BufReader::new(File::open(path)?))
}
