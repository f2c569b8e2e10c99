//! Constraint-length reduction and error-trellis construction for LDPC
//! convolutional codes derived from quasi-cyclic block codes.
//!
//! The pipeline: a QC parity-check matrix of shifted-identity circulants is
//! unwrapped into a monomial polynomial matrix H(D); cyclic block-row shifts
//! enumerate the canonical shift patterns; row/column D-factor operations
//! reduce each pattern's overall constraint length (OCL); and the syndrome
//! former of a small reduced matrix drives error-trellis construction and
//! admissible-path search.

pub mod error;
pub mod matrix;
pub mod poly;
pub mod qc;
pub mod reduce;
pub mod search;
pub mod seq;
pub mod textio;
pub mod trellis;

pub use error::{Axis, Error, Result};
pub use matrix::Gf2PolyMatrix;
pub use poly::Gf2Poly;
pub use qc::{canonical_row_patterns, ExponentMatrix, QcMatrix, ShiftVector};
pub use reduce::{
    apply_ledger, double_reduce, reduce, reciprocal_then_reduce, Direction, ReducedMatrix,
    SequenceKind, ShiftLedger,
};
pub use search::{delta_filter, enumerate_patterns, histogram, sweep, Metric, PatternId, SweepReport};
pub use seq::BitSymbolSequence;
pub use trellis::{
    build_error_trellis, enumerate_paths, min_weight_path, reverse_path, ErrorTrellis,
    SyndromeFormer, TrellisOptions,
};
