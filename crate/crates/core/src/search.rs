//! Exhaustive sweep over canonical block-row shift patterns and the
//! Delta-bounded filter.
//!
//! Each block row of the base exponent matrix contributes one canonical
//! pattern per distinct exponent; a pattern id picks one pattern per row and
//! the sweep evaluates the reduction metrics of every stack in lexicographic
//! id order.

use std::fmt;

use crate::error::Result;
use crate::qc::{canonical_row_patterns, ExponentMatrix};
use crate::reduce::{double_reduce, reciprocal_then_reduce};

/// 1-based pattern selection, one index per block row.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternId(pub Vec<usize>);

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRecord {
    pub id: PatternId,
    /// OCL after row/column reduction of the pattern stack.
    pub mu: usize,
    /// OCL after reducing the reciprocal dual of the pattern stack.
    pub eta: usize,
    /// OCL after reducing the reciprocal of the reduced stack.
    pub mu_prime: usize,
    /// `mu - mu_prime`.
    pub delta_mu: i64,
    /// Per-column max minus min of the raw pattern stack.
    pub spreads: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub records: Vec<SweepRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Mu,
    Eta,
    DeltaMu,
}

impl Metric {
    pub fn of(self, rec: &SweepRecord) -> i64 {
        match self {
            Metric::Mu => rec.mu as i64,
            Metric::Eta => rec.eta as i64,
            Metric::DeltaMu => rec.delta_mu,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Mu => "mu",
            Metric::Eta => "eta",
            Metric::DeltaMu => "delta_mu",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "mu" => Some(Metric::Mu),
            "eta" => Some(Metric::Eta),
            "delta_mu" => Some(Metric::DeltaMu),
            _ => None,
        }
    }
}

/// All pattern stacks of the base matrix in lexicographic id order.
pub fn enumerate_patterns(base: &ExponentMatrix) -> Vec<(PatternId, ExponentMatrix)> {
    let per_row: Vec<Vec<Vec<usize>>> = (0..base.rows())
        .map(|i| canonical_row_patterns(base.row(i), base.m()))
        .collect();
    let mut out = Vec::new();
    let mut indices = vec![0usize; per_row.len()];
    loop {
        let rows: Vec<Vec<usize>> = indices
            .iter()
            .enumerate()
            .map(|(i, &k)| per_row[i][k].clone())
            .collect();
        let id = PatternId(indices.iter().map(|&k| k + 1).collect());
        let stack = ExponentMatrix::from_rows(base.m(), rows).expect("pattern rows are valid");
        out.push((id, stack));
        // odometer increment, most significant digit first
        let mut pos = indices.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < per_row[pos].len() {
                break;
            }
            indices[pos] = 0;
        }
    }
}

/// Evaluates every pattern stack. Deterministic: records come out in
/// lexicographic id order regardless of evaluation strategy.
pub fn sweep(base: &ExponentMatrix) -> Result<SweepReport> {
    let mut records = Vec::new();
    for (id, stack) in enumerate_patterns(base) {
        let spreads: Vec<usize> = (0..stack.cols())
            .map(|j| {
                let col: Vec<usize> = (0..stack.rows()).map(|i| stack.exp(i, j)).collect();
                col.iter().max().unwrap() - col.iter().min().unwrap()
            })
            .collect();
        let poly = stack.to_poly();
        let d = double_reduce(&poly)?;
        let eta = reciprocal_then_reduce(&poly)?.ocl;
        records.push(SweepRecord {
            id,
            mu: d.mu,
            eta,
            mu_prime: d.mu_prime,
            delta_mu: d.mu as i64 - d.mu_prime as i64,
            spreads,
        });
    }
    Ok(SweepReport { records })
}

impl SweepReport {
    pub fn min_max(&self, metric: Metric) -> Option<(i64, i64)> {
        let mut it = self.records.iter().map(|r| metric.of(r));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
    }

    pub fn find(&self, id: &[usize]) -> Option<&SweepRecord> {
        self.records.iter().find(|r| r.id.0 == id)
    }
}

/// Records whose every column spread is at most `delta`, order preserved.
pub fn delta_filter(report: &SweepReport, delta: usize) -> Vec<&SweepRecord> {
    report
        .records
        .iter()
        .filter(|r| r.spreads.iter().all(|&s| s <= delta))
        .collect()
}

/// Ascending (value, count) pairs over all records; zero-count values are
/// omitted and counts sum to the record count.
pub fn histogram(report: &SweepReport, metric: Metric) -> Vec<(i64, usize)> {
    let mut values: Vec<i64> = report.records.iter().map(|r| metric.of(r)).collect();
    values.sort_unstable();
    let mut out: Vec<(i64, usize)> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some((last, count)) if *last == v => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}
