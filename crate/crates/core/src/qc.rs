//! Quasi-cyclic parity-check matrices built from shifted-identity circulants,
//! their scalar expansion, and the unwrapping to convolutional form.
//!
//! `I_x` is the m-by-m identity with rows cyclically shifted left by `x`, so
//! row `r` of `I_x` has its 1 in column `(r + x) mod m`. Unwrapping maps
//! `I_x` to the monomial `D^x`.

use crate::error::{Error, Result};
use crate::matrix::Gf2PolyMatrix;
use crate::poly::Gf2Poly;

/// Block grid of circulant shift indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QcMatrix {
    m: usize,
    block_rows: usize,
    block_cols: usize,
    blocks: Vec<usize>,
}

/// Monomial parity-check matrix stored as integer exponents mod `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMatrix {
    m: usize,
    rows: usize,
    cols: usize,
    exps: Vec<usize>,
}

/// One cyclic shift per block row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftVector {
    m: usize,
    shifts: Vec<usize>,
}

impl QcMatrix {
    pub fn new(m: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let (block_rows, block_cols, data) = check_grid(m, blocks)?;
        Ok(QcMatrix { m, block_rows, block_cols, blocks: data })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn block_rows(&self) -> usize {
        self.block_rows
    }

    pub fn block_cols(&self) -> usize {
        self.block_cols
    }

    pub fn block(&self, i: usize, j: usize) -> usize {
        self.blocks[i * self.block_cols + j]
    }

    /// Expands to the scalar binary matrix (`block_rows * m` by
    /// `block_cols * m`). Each block is a permutation matrix.
    pub fn expand_scalar(&self) -> Vec<Vec<u8>> {
        let rows = self.block_rows * self.m;
        let cols = self.block_cols * self.m;
        let mut out = vec![vec![0u8; cols]; rows];
        for bi in 0..self.block_rows {
            for bj in 0..self.block_cols {
                let x = self.block(bi, bj);
                for r in 0..self.m {
                    let c = (r + x) % self.m;
                    out[bi * self.m + r][bj * self.m + c] = 1;
                }
            }
        }
        out
    }

    /// Maps each circulant `I_x` to the exponent `x`.
    pub fn unwrap(&self) -> ExponentMatrix {
        ExponentMatrix {
            m: self.m,
            rows: self.block_rows,
            cols: self.block_cols,
            exps: self.blocks.clone(),
        }
    }

    /// Cyclically shifts block row `i` up by `s[i]` positions, which decreases
    /// every shift index in that block row by `s[i]` mod `m`.
    pub fn shift_block_rows(&self, s: &ShiftVector) -> Result<QcMatrix> {
        if s.m != self.m {
            return Err(Error::ModulusMismatch { left: self.m, right: s.m });
        }
        if s.shifts.len() != self.block_rows {
            return Err(Error::Dimension(format!(
                "shift vector has {} entries, expected {}",
                s.shifts.len(),
                self.block_rows
            )));
        }
        let mut out = self.clone();
        for i in 0..self.block_rows {
            for j in 0..self.block_cols {
                let idx = i * self.block_cols + j;
                out.blocks[idx] = (out.blocks[idx] + self.m - s.shifts[i]) % self.m;
            }
        }
        Ok(out)
    }
}

impl ExponentMatrix {
    pub fn new(m: usize, exps: Vec<Vec<usize>>) -> Result<Self> {
        let (rows, cols, data) = check_grid(m, exps)?;
        Ok(ExponentMatrix { m, rows, cols, exps: data })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn exp(&self, i: usize, j: usize) -> usize {
        self.exps[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.exps[i * self.cols..(i + 1) * self.cols]
    }

    /// Stacks the given rows into a new matrix over the same modulus.
    pub fn from_rows(m: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        ExponentMatrix::new(m, rows)
    }

    /// The monomial polynomial matrix with entry `D^{exps[i][j]}`.
    pub fn to_poly(&self) -> Gf2PolyMatrix {
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().map(|&e| Gf2Poly::monomial(e)).collect())
            .collect();
        Gf2PolyMatrix::new(rows).expect("monomial rows are never all-zero")
    }

    /// Extracts exponents from a monomial polynomial matrix.
    pub fn from_poly(mat: &Gf2PolyMatrix, m: usize) -> Result<Self> {
        let mut rows = Vec::with_capacity(mat.rows());
        for i in 0..mat.rows() {
            let mut row = Vec::with_capacity(mat.cols());
            for j in 0..mat.cols() {
                let p = mat.entry(i, j);
                if p.support().len() != 1 {
                    return Err(Error::NotMonomial { row: i + 1, col: j + 1 });
                }
                row.push(p.support()[0]);
            }
            rows.push(row);
        }
        // entries may exceed m after no reduction; keep them as stored
        let (r, c, data) = (rows.len(), rows[0].len(), rows.into_iter().flatten().collect());
        Ok(ExponentMatrix { m, rows: r, cols: c, exps: data })
    }
}

impl ShiftVector {
    pub fn new(m: usize, shifts: Vec<usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Dimension("modulus must be positive".into()));
        }
        Ok(ShiftVector {
            m,
            shifts: shifts.into_iter().map(|s| s % m).collect(),
        })
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shifts
    }
}

/// The canonical patterns of one block row: for each distinct value `v` in the
/// row, the row with `v` subtracted entrywise mod `m` (so the entry holding
/// `v` becomes zero). Patterns are ordered by the column position of the
/// zeroed entry; duplicate values collapse to a single pattern.
pub fn canonical_row_patterns(row: &[usize], m: usize) -> Vec<Vec<usize>> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for &v in row {
        if seen.contains(&v) {
            continue;
        }
        seen.push(v);
        out.push(row.iter().map(|&e| (e % m + m - v % m) % m).collect());
    }
    out
}

fn check_grid(m: usize, grid: Vec<Vec<usize>>) -> Result<(usize, usize, Vec<usize>)> {
    if m == 0 {
        return Err(Error::Dimension("modulus must be positive".into()));
    }
    if grid.is_empty() || grid[0].is_empty() {
        return Err(Error::Dimension("grid must have at least one row and column".into()));
    }
    let cols = grid[0].len();
    for (i, row) in grid.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Dimension(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                cols
            )));
        }
        if let Some(&e) = row.iter().find(|&&e| e >= m) {
            return Err(Error::Dimension(format!("entry {} not reduced mod {}", e, m)));
        }
    }
    let rows = grid.len();
    Ok((rows, cols, grid.into_iter().flatten().collect()))
}
