use std::io::{BufRead, Write};

use super::cubic::IntegerCubicForm;
use crate::{Error, Result};

/// One `SL₂(ℤ)`-orbit: its canonical representative, discriminant and
/// stabiliser order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    pub representative: IntegerCubicForm,
    pub disc: i64,
    pub stab_order: u32,
}

/// Class counts at a single `|n|`. Weighted counts are stored as
/// numerators over 3, so `w₊(n) = w3_plus / 3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub h_plus: u64,
    pub h_minus: u64,
    pub w3_plus: u64,
    pub w3_minus: u64,
}

impl ClassCounts {
    pub fn is_empty(&self) -> bool {
        self.h_plus == 0 && self.h_minus == 0
    }
}

/// Which Dirichlet series to read off a [`ClassTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientVariant {
    Plus,
    Minus,
    Add,
    Sub,
}

/// Class counts for all `0 < |n| ≤ bound`, plus the class records when the
/// table was built by enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTable {
    bound: u64,
    counts: Vec<ClassCounts>,
    records: Vec<ClassRecord>,
}

pub const CSV_HEADER: &str = "n,h_plus,h_minus,w_plus_num,w_minus_num,denominator=3";

impl ClassTable {
    pub fn empty(bound: u64) -> Self {
        ClassTable { bound, counts: vec![ClassCounts::default(); bound as usize + 1], records: Vec::new() }
    }

    /// Build a table from class records; records are sorted into a canonical
    /// order (by `|disc|`, then sign, then representative).
    pub fn from_records(bound: u64, mut records: Vec<ClassRecord>) -> Result<Self> {
        records.sort_by(|x, y| {
            (x.disc.unsigned_abs(), x.disc < 0, &x.representative).cmp(&(
                y.disc.unsigned_abs(),
                y.disc < 0,
                &y.representative,
            ))
        });
        let mut t = ClassTable::empty(bound);
        for r in &records {
            let n = r.disc.unsigned_abs();
            if n == 0 || n > bound {
                return Err(Error::InvalidInput(format!("record with disc {} outside (0, {bound}]", r.disc)));
            }
            if r.stab_order != 1 && r.stab_order != 3 {
                return Err(Error::InvalidInput(format!("stabiliser order {}", r.stab_order)));
            }
            let c = &mut t.counts[n as usize];
            let w = 3 / r.stab_order as u64;
            if r.disc > 0 {
                c.h_plus += 1;
                c.w3_plus += w;
            } else {
                c.h_minus += 1;
                c.w3_minus += w;
            }
        }
        t.records = records;
        Ok(t)
    }

    /// Build a table from counts alone (no representatives).
    pub fn from_counts(bound: u64, rows: impl IntoIterator<Item = (u64, ClassCounts)>) -> Result<Self> {
        let mut t = ClassTable::empty(bound);
        for (n, c) in rows {
            if n == 0 || n > bound {
                return Err(Error::InvalidInput(format!("row n = {n} outside (0, {bound}]")));
            }
            let ok = |h: u64, w3: u64| h <= w3 && w3 <= 3 * h;
            if !ok(c.h_plus, c.w3_plus) || !ok(c.h_minus, c.w3_minus) {
                return Err(Error::InvalidInput(format!("inconsistent weighted counts at n = {n}")));
            }
            t.counts[n as usize] = c;
        }
        Ok(t)
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn counts(&self, n: u64) -> ClassCounts {
        self.counts.get(n as usize).copied().unwrap_or_default()
    }

    pub fn records(&self) -> &[ClassRecord] {
        &self.records
    }

    pub fn has_records(&self) -> bool {
        !self.records.is_empty() || self.counts.iter().all(|c| c.is_empty())
    }

    pub fn h_plus(&self, n: u64) -> u64 {
        self.counts(n).h_plus
    }

    pub fn h_minus(&self, n: u64) -> u64 {
        self.counts(n).h_minus
    }

    pub fn w_plus(&self, n: u64) -> f64 {
        self.counts(n).w3_plus as f64 / 3.0
    }

    pub fn w_minus(&self, n: u64) -> f64 {
        self.counts(n).w3_minus as f64 / 3.0
    }

    /// `Σ_{0<|n|≤x} (h₊(n) + h₋(n))`.
    pub fn total_classes(&self, x: u64) -> u64 {
        (1..=x.min(self.bound)).map(|n| self.h_plus(n) + self.h_minus(n)).sum()
    }

    /// The sub-table with `|n| ≤ x`.
    pub fn restrict(&self, x: u64) -> ClassTable {
        let x = x.min(self.bound);
        ClassTable {
            bound: x,
            counts: self.counts[..=x as usize].to_vec(),
            records: self.records.iter().filter(|r| r.disc.unsigned_abs() <= x).cloned().collect(),
        }
    }

    /// Equality of bounds and counts, ignoring records.
    pub fn same_counts(&self, other: &ClassTable) -> bool {
        self.bound == other.bound && self.counts == other.counts
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        for (n, c) in self.counts.iter().enumerate().skip(1) {
            if !c.is_empty() {
                writeln!(w, "{n},{},{},{},{},3", c.h_plus, c.h_minus, c.w3_plus, c.w3_minus)?;
            }
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut v = Vec::new();
        self.write_csv(&mut v).expect("writing to a Vec cannot fail");
        String::from_utf8(v).expect("CSV is ASCII")
    }

    /// Read a table written by [`ClassTable::write_csv`]. The bound is taken
    /// from `bound` if given, otherwise from the largest row.
    pub fn read_csv<R: BufRead>(r: R, path: &str, bound: Option<u64>) -> Result<Self> {
        let mut rows = Vec::new();
        let perr = |line: usize, msg: String| Error::Parse { path: path.to_string(), line, msg };
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let ln = i + 1;
            if i == 0 {
                if line.trim() != CSV_HEADER {
                    return Err(perr(ln, format!("expected header `{CSV_HEADER}`")));
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 6 {
                return Err(perr(ln, format!("expected 6 fields, got {}", f.len())));
            }
            let p = |s: &str| s.trim().parse::<u64>().map_err(|e| perr(ln, format!("{s:?}: {e}")));
            if p(f[5])? != 3 {
                return Err(perr(ln, "denominator must be 3".into()));
            }
            rows.push((
                p(f[0])?,
                ClassCounts { h_plus: p(f[1])?, h_minus: p(f[2])?, w3_plus: p(f[3])?, w3_minus: p(f[4])? },
            ));
        }
        let b = bound.unwrap_or_else(|| rows.iter().map(|r| r.0).max().unwrap_or(0));
        ClassTable::from_counts(b, rows)
    }
}

/// Dirichlet coefficients `a(n)` for `0 ≤ n ≤ bound` (with `a(0) = 0`):
/// `a⁺ = w₊`, `a⁻ = w₋`, `a^add = √3·w₊ + w₋`, `a^sub = √3·w₊ − w₋`.
pub fn dirichlet_coefficients(table: &ClassTable, variant: CoefficientVariant) -> Vec<f64> {
    let s3 = 3f64.sqrt();
    (0..=table.bound())
        .map(|n| {
            if n == 0 {
                return 0.0;
            }
            let (wp, wm) = (table.w_plus(n), table.w_minus(n));
            match variant {
                CoefficientVariant::Plus => wp,
                CoefficientVariant::Minus => wm,
                CoefficientVariant::Add => s3 * wp + wm,
                CoefficientVariant::Sub => s3 * wp - wm,
            }
        })
        .collect()
}
