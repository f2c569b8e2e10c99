//! Row/column D-factor reduction to a delay-normal fixpoint, reciprocal-dual
//! pipelines, and the shift ledger that maps error and syndrome sequences
//! between the original and reduced matrices.
//!
//! Factoring `D^{l_i}` out of row `i` delays syndrome subsequence `i` by
//! `l_i`; factoring `D^{l_j}` out of column `j` delays error subsequence `j`
//! by `l_j`. The ledger records the accumulated totals so sequences can be
//! mapped across the reduction.

use crate::error::{Axis, Error, Result};
use crate::matrix::Gf2PolyMatrix;
use crate::seq::BitSymbolSequence;

/// Accumulated per-row and per-column delays, plus a flag marking that a
/// reciprocal transform intervened (in which case the sequence contracts are
/// stated on time-reversed sequences).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftLedger {
    pub row_delays: Vec<usize>,
    pub col_delays: Vec<usize>,
    pub reversed: bool,
}

impl ShiftLedger {
    pub fn empty(rows: usize, cols: usize) -> Self {
        ShiftLedger {
            row_delays: vec![0; rows],
            col_delays: vec![0; cols],
            reversed: false,
        }
    }

    pub fn is_trivial(&self) -> bool {
        !self.reversed
            && self.row_delays.iter().all(|&l| l == 0)
            && self.col_delays.iter().all(|&l| l == 0)
    }
}

/// A matrix at the delay-normal fixpoint (every row and column valuation is
/// zero) together with its ledger and cached overall constraint length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedMatrix {
    pub matrix: Gf2PolyMatrix,
    pub ledger: ShiftLedger,
    pub ocl: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    Error,
    Syndrome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    ToReduced,
    ToOriginal,
}

/// Alternately factors each row's valuation out of that row and each
/// column's valuation out of that column (row pass first) until every row
/// and column is delay free.
pub fn reduce(m: &Gf2PolyMatrix) -> Result<ReducedMatrix> {
    let mut mat = m.clone();
    let mut ledger = ShiftLedger::empty(m.rows(), m.cols());
    loop {
        let mut changed = false;
        for i in 0..mat.rows() {
            let l = mat.row_valuation(i);
            if l > 0 {
                mat = mat.shift_line(Axis::Row, i + 1, l as i64)?;
                ledger.row_delays[i] += l;
                changed = true;
            }
        }
        for j in 0..mat.cols() {
            let l = mat
                .col_valuation(j)
                .ok_or(Error::DegenerateMatrix { axis: Axis::Column, index: j + 1 })?;
            if l > 0 {
                mat = mat.shift_line(Axis::Column, j + 1, l as i64)?;
                ledger.col_delays[j] += l;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let ocl = mat.overall_constraint_length();
    Ok(ReducedMatrix { matrix: mat, ledger, ocl })
}

/// Reduces the reciprocal dual form: the OCL of the result is the eta metric.
pub fn reciprocal_then_reduce(m: &Gf2PolyMatrix) -> Result<ReducedMatrix> {
    let mut out = reduce(&m.reciprocal_rows())?;
    out.ledger.reversed = true;
    Ok(out)
}

/// Outcome of the two-stage reduction: `mu` after the first reduce, and
/// `mu_prime` after reducing the reciprocal of the reduced matrix.
#[derive(Clone, Debug)]
pub struct DoubleReduction {
    pub mu: usize,
    pub mu_prime: usize,
    pub first: ReducedMatrix,
    pub final_matrix: ReducedMatrix,
}

pub fn double_reduce(m: &Gf2PolyMatrix) -> Result<DoubleReduction> {
    let first = reduce(m)?;
    let mut second = reduce(&first.matrix.reciprocal_rows())?;
    second.ledger.reversed = true;
    Ok(DoubleReduction {
        mu: first.ocl,
        mu_prime: second.ocl,
        first,
        final_matrix: second,
    })
}

/// Maps a sequence across the ledger. Error subsequences are delayed per
/// column going to the reduced matrix; syndrome subsequences are delayed per
/// row going back to the original. The opposite directions advance and fail
/// with `AdvanceUnderflow` when nonzero content would move before time 1.
/// When `reversed` is set the contract holds on time-reversed sequences; the
/// caller reverses first.
pub fn apply_ledger(
    ledger: &ShiftLedger,
    seq: &BitSymbolSequence,
    kind: SequenceKind,
    direction: Direction,
) -> Result<BitSymbolSequence> {
    let delays = match kind {
        SequenceKind::Error => &ledger.col_delays,
        SequenceKind::Syndrome => &ledger.row_delays,
    };
    if seq.width() != delays.len() {
        return Err(Error::WidthMismatch { expected: delays.len(), got: seq.width() });
    }
    let delay = matches!(
        (kind, direction),
        (SequenceKind::Error, Direction::ToReduced) | (SequenceKind::Syndrome, Direction::ToOriginal)
    );
    let mut out = seq.clone();
    for (j, &l) in delays.iter().enumerate() {
        if l == 0 {
            continue;
        }
        out = if delay {
            out.delay_component(j, l)
        } else {
            out.advance_component(j, l)?
        };
    }
    Ok(out)
}
