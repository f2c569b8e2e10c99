//! Rectangular matrices of GF(2) polynomials: the home of H(D) and friends.

use std::fmt;

use crate::error::{Axis, Error, Result};
use crate::poly::Gf2Poly;
use crate::seq::BitSymbolSequence;

#[derive(Clone, PartialEq, Eq)]
pub struct Gf2PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Gf2Poly>,
}

impl Gf2PolyMatrix {
    /// Builds a matrix from rows. Rejects empty or ragged input and any
    /// all-zero row.
    pub fn new(rows: Vec<Vec<Gf2Poly>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Dimension("matrix must have at least one row and column".into()));
        }
        let cols = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    cols
                )));
            }
            if row.iter().all(Gf2Poly::is_zero) {
                return Err(Error::DegenerateMatrix { axis: Axis::Row, index: i + 1 });
            }
        }
        let nrows = rows.len();
        let entries = rows.into_iter().flatten().collect();
        Ok(Gf2PolyMatrix { rows: nrows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Gf2Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Gf2Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Max entry degree in row `i` (the row's canonical memory).
    pub fn row_constraint_length(&self, i: usize) -> usize {
        self.row(i)
            .iter()
            .filter_map(Gf2Poly::degree)
            .max()
            .expect("no all-zero rows by invariant")
    }

    /// Sum of row constraint lengths: log2 of the error-trellis state count
    /// under the adjoint-obvious syndrome-former realization.
    pub fn overall_constraint_length(&self) -> usize {
        (0..self.rows).map(|i| self.row_constraint_length(i)).sum()
    }

    /// Min valuation over the nonzero entries of row `i`.
    pub fn row_valuation(&self, i: usize) -> usize {
        self.row(i)
            .iter()
            .filter_map(Gf2Poly::valuation)
            .min()
            .expect("no all-zero rows by invariant")
    }

    /// Min valuation over the nonzero entries of column `j`; `None` when the
    /// column is all zero.
    pub fn col_valuation(&self, j: usize) -> Option<usize> {
        (0..self.rows)
            .filter_map(|i| self.entry(i, j).valuation())
            .min()
    }

    /// Multiplies every entry of the selected line by `D^(-l)`: positive `l`
    /// factors `D^l` out (a row/column operation), negative `l` multiplies the
    /// factor back in. `index` is 1-based, matching the usual notation.
    pub fn shift_line(&self, axis: Axis, index: usize, l: i64) -> Result<Self> {
        let count = match axis {
            Axis::Row => self.rows,
            Axis::Column => self.cols,
        };
        if index == 0 || index > count {
            return Err(Error::Dimension(format!("{} index {} out of range 1..={}", axis, index, count)));
        }
        if l > 0 {
            let l = l as usize;
            let available = match axis {
                Axis::Row => self.row_valuation(index - 1),
                Axis::Column => self.col_valuation(index - 1).unwrap_or(usize::MAX),
            };
            if available < l {
                return Err(Error::FactorTooLarge { axis, index, requested: l, available });
            }
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let on_line = match axis {
                    Axis::Row => i == index - 1,
                    Axis::Column => j == index - 1,
                };
                if on_line {
                    let e = &mut out.entries[i * self.cols + j];
                    *e = if l >= 0 {
                        e.div_monomial(l as usize).expect("precondition checked above")
                    } else {
                        e.mul_monomial((-l) as usize)
                    };
                }
            }
        }
        Ok(out)
    }

    /// Per-row reversal within each row's constraint length: entry `p(D)`
    /// becomes `D^{nu_i} p(1/D)`. This is the reciprocal dual form.
    pub fn reciprocal_rows(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            let nu = self.row_constraint_length(i);
            for j in 0..self.cols {
                out.entries[i * self.cols + j] = self.entry(i, j).reciprocal(nu);
            }
        }
        out
    }

    /// Direct convolution `zeta_k = e_k H^T(D)` over GF(2), with `e_s = 0`
    /// for `s <= 0`. The output has width `rows` and the input's length.
    pub fn convolve_syndrome(&self, e: &BitSymbolSequence) -> Result<BitSymbolSequence> {
        if e.width() != self.cols {
            return Err(Error::WidthMismatch { expected: self.cols, got: e.width() });
        }
        let mut out = Vec::with_capacity(e.len());
        for k in 0..e.len() {
            let mut mask = 0u32;
            for i in 0..self.rows {
                let mut bit = false;
                for j in 0..self.cols {
                    for &t in self.entry(i, j).support() {
                        if t <= k && e.bit(k - t, j) {
                            bit = !bit;
                        }
                    }
                }
                if bit {
                    mask |= 1 << i;
                }
            }
            out.push(mask);
        }
        BitSymbolSequence::new(self.rows, out)
    }
}

impl fmt::Debug for Gf2PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}
