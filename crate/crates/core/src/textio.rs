//! Text file formats: polynomial matrices, exponent/QC grids, reduction
//! reports and sweep CSVs. All output is UTF-8 with LF line endings and
//! round-trip stable.

use crate::error::{Error, Result};
use crate::matrix::Gf2PolyMatrix;
use crate::poly::Gf2Poly;
use crate::qc::{ExponentMatrix, QcMatrix};
use crate::reduce::ReducedMatrix;
use crate::search::SweepRecord;

/// A parsed integer-grid file: `qc` files carry circulant shift indices,
/// `exp` files carry monomial exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridFile {
    Qc(QcMatrix),
    Exp(ExponentMatrix),
}

/// Parses `poly rows=<R> cols=<C>` followed by R lines of C comma-separated
/// polynomials.
pub fn parse_poly_matrix(text: &str) -> Result<Gf2PolyMatrix> {
    let mut lines = non_empty_lines(text);
    let (header, hpos) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("poly") {
        return Err(parse_err(hpos, "expected 'poly' header"));
    }
    let rows = keyed_value(fields.next(), "rows", hpos)?;
    let cols = keyed_value(fields.next(), "cols", hpos)?;
    let mut data = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (line, lpos) = lines
            .next()
            .ok_or_else(|| parse_err(text.len(), format!("expected {} matrix rows", rows)))?;
        let entries: Vec<&str> = line.split(',').collect();
        if entries.len() != cols {
            return Err(parse_err(lpos, format!("expected {} entries, found {}", cols, entries.len())));
        }
        let row: Result<Vec<Gf2Poly>> = entries.iter().map(|e| e.trim().parse()).collect();
        data.push(row?);
    }
    Gf2PolyMatrix::new(data)
}

pub fn format_poly_matrix(m: &Gf2PolyMatrix) -> String {
    let mut out = format!("poly rows={} cols={}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|p| p.to_string()).collect();
        out.push_str(&row.join(", "));
        out.push('\n');
    }
    out
}

/// Parses `qc m=<m> rows=<b> cols=<c>` or `exp m=<m> rows=<b> cols=<c>`
/// followed by b lines of c space-separated integers.
pub fn parse_grid(text: &str) -> Result<GridFile> {
    let mut lines = non_empty_lines(text);
    let (header, hpos) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let mut fields = header.split_whitespace();
    let kind = fields.next().ok_or_else(|| parse_err(hpos, "missing header keyword"))?;
    if kind != "qc" && kind != "exp" {
        return Err(parse_err(hpos, format!("expected 'qc' or 'exp' header, found '{}'", kind)));
    }
    let m = keyed_value(fields.next(), "m", hpos)?;
    let rows = keyed_value(fields.next(), "rows", hpos)?;
    let cols = keyed_value(fields.next(), "cols", hpos)?;
    let mut data = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (line, lpos) = lines
            .next()
            .ok_or_else(|| parse_err(text.len(), format!("expected {} grid rows", rows)))?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(lpos, format!("bad integer '{}'", t))))
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(parse_err(lpos, format!("expected {} entries, found {}", cols, row.len())));
        }
        data.push(row);
    }
    Ok(match kind {
        "qc" => GridFile::Qc(QcMatrix::new(m, data)?),
        _ => GridFile::Exp(ExponentMatrix::new(m, data)?),
    })
}

pub fn format_qc(q: &QcMatrix) -> String {
    let mut out = format!("qc m={} rows={} cols={}\n", q.m(), q.block_rows(), q.block_cols());
    for i in 0..q.block_rows() {
        let row: Vec<String> = (0..q.block_cols()).map(|j| q.block(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn format_exp(e: &ExponentMatrix) -> String {
    let mut out = format!("exp m={} rows={} cols={}\n", e.m(), e.rows(), e.cols());
    for i in 0..e.rows() {
        let row: Vec<String> = e.row(i).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// How the matrix block of a reduction report is rendered.
#[derive(Clone, Copy, Debug)]
pub enum ReportStyle {
    Poly,
    /// Exponent form over the given modulus; only valid for monomial
    /// matrices.
    Exp { m: usize },
}

pub fn format_reduction_report(r: &ReducedMatrix, style: ReportStyle) -> Result<String> {
    let matrix_block = match style {
        ReportStyle::Poly => format_poly_matrix(&r.matrix),
        ReportStyle::Exp { m } => format_exp(&ExponentMatrix::from_poly(&r.matrix, m)?),
    };
    let join = |v: &[usize]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    Ok(format!(
        "{}row_delays: {}\ncol_delays: {}\nreversed: {}\nocl: {}\n",
        matrix_block,
        join(&r.ledger.row_delays),
        join(&r.ledger.col_delays),
        r.ledger.reversed,
        r.ocl
    ))
}

/// Per-pattern CSV. For a 3-block-row base the index columns are `i,j,k`;
/// otherwise `i1..ib`.
pub fn per_pattern_csv<'a, I>(records: I, block_rows: usize) -> String
where
    I: IntoIterator<Item = &'a SweepRecord>,
{
    let mut out = String::new();
    if block_rows == 3 {
        out.push_str("i,j,k,");
    } else {
        for b in 1..=block_rows {
            out.push_str(&format!("i{},", b));
        }
    }
    out.push_str("mu,eta,mu_prime,delta_mu,spreads\n");
    for rec in records {
        for idx in &rec.id.0 {
            out.push_str(&format!("{},", idx));
        }
        let spreads: Vec<String> = rec.spreads.iter().map(|s| s.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            rec.mu,
            rec.eta,
            rec.mu_prime,
            rec.delta_mu,
            spreads.join(";")
        ));
    }
    out
}

pub fn histogram_csv(pairs: &[(i64, usize)]) -> String {
    let mut out = String::from("value,count\n");
    for (value, count) in pairs {
        out.push_str(&format!("{},{}\n", value, count));
    }
    out
}

fn non_empty_lines(text: &str) -> impl Iterator<Item = (&str, usize)> {
    let mut pos = 0;
    text.lines().filter_map(move |line| {
        let start = pos;
        pos += line.len() + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((trimmed, start))
        }
    })
}

fn keyed_value(field: Option<&str>, key: &str, pos: usize) -> Result<usize> {
    let field = field.ok_or_else(|| parse_err(pos, format!("missing '{}='", key)))?;
    let value = field
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| parse_err(pos, format!("expected '{}=<n>', found '{}'", key, field)))?;
    value
        .parse()
        .map_err(|_| parse_err(pos, format!("bad value in '{}'", field)))
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}
