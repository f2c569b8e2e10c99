//! Time-indexed sequences of fixed-width bit symbols.
//!
//! A sequence holds symbols for times 1..=T; everything before time 1 is
//! implicitly zero. Component `j` (1-based in the usual notation) of a symbol
//! is stored in bit `j - 1` of the mask, so the leftmost character of the
//! text form `010` is component 1.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_WIDTH: usize = 32;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSymbolSequence {
    width: usize,
    symbols: Vec<u32>,
}

impl BitSymbolSequence {
    pub fn new(width: usize, symbols: Vec<u32>) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::WidthMismatch { expected: MAX_WIDTH, got: width });
        }
        let mask = mask_for(width);
        if let Some(s) = symbols.iter().find(|s| **s & !mask != 0) {
            return Err(Error::WidthMismatch { expected: width, got: 32 - s.leading_zeros() as usize });
        }
        Ok(BitSymbolSequence { width, symbols })
    }

    pub fn zeros(width: usize, len: usize) -> Result<Self> {
        BitSymbolSequence::new(width, vec![0; len])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol at 0-based index `k` (time `k + 1`).
    pub fn symbol(&self, k: usize) -> u32 {
        self.symbols[k]
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// Bit of component `j` (0-based) at 0-based index `k`.
    pub fn bit(&self, k: usize, j: usize) -> bool {
        (self.symbols[k] >> j) & 1 == 1
    }

    pub fn weight(&self) -> usize {
        self.symbols.iter().map(|s| s.count_ones() as usize).sum()
    }

    /// Symbol order reversed; weight is preserved.
    pub fn reversed(&self) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        BitSymbolSequence { width: self.width, symbols }
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.width != other.width || self.len() != other.len() {
            return Err(Error::WidthMismatch { expected: self.width, got: other.width });
        }
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BitSymbolSequence { width: self.width, symbols })
    }

    /// Delays component `j` by `l` time units: out_k = in_{k-l}, zeros shifted
    /// in at the front. Symbols pushed past the horizon are dropped.
    pub fn delay_component(&self, j: usize, l: usize) -> Self {
        let mut symbols = self.symbols.clone();
        let bit = 1u32 << j;
        for k in (0..symbols.len()).rev() {
            let src = if k >= l { self.symbols[k - l] & bit } else { 0 };
            symbols[k] = (symbols[k] & !bit) | src;
        }
        BitSymbolSequence { width: self.width, symbols }
    }

    /// Advances component `j` by `l` time units: out_k = in_{k+l}. Content that
    /// would move before time 1 must be zero.
    pub fn advance_component(&self, j: usize, l: usize) -> Result<Self> {
        let bit = 1u32 << j;
        for k in 0..l.min(self.symbols.len()) {
            if self.symbols[k] & bit != 0 {
                return Err(Error::AdvanceUnderflow { delay: l, time: k + 1 });
            }
        }
        let mut symbols = self.symbols.clone();
        for k in 0..symbols.len() {
            let src = self
                .symbols
                .get(k + l)
                .map(|s| s & bit)
                .unwrap_or(0);
            symbols[k] = (symbols[k] & !bit) | src;
        }
        Ok(BitSymbolSequence { width: self.width, symbols })
    }

    /// Parses `010 011 000`; the width comes from the first group.
    pub fn parse(text: &str) -> Result<Self> {
        let mut width = 0;
        let mut symbols = Vec::new();
        let mut pos = 0;
        for group in text.split_whitespace() {
            let gpos = text[pos..].find(group).map(|o| pos + o).unwrap_or(pos);
            if width == 0 {
                width = group.len();
                if width == 0 || width > MAX_WIDTH {
                    return Err(Error::Parse {
                        position: gpos,
                        message: format!("symbol width {} out of range", width),
                    });
                }
            } else if group.len() != width {
                return Err(Error::Parse {
                    position: gpos,
                    message: format!("symbol '{}' does not have width {}", group, width),
                });
            }
            let mut mask = 0u32;
            for (j, ch) in group.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => mask |= 1 << j,
                    _ => {
                        return Err(Error::Parse {
                            position: gpos + j,
                            message: format!("unexpected character '{}'", ch),
                        })
                    }
                }
            }
            symbols.push(mask);
            pos = gpos + group.len();
        }
        if symbols.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "empty symbol sequence".into(),
            });
        }
        Ok(BitSymbolSequence { width, symbols })
    }
}

pub fn format_symbol(mask: u32, width: usize) -> String {
    (0..width)
        .map(|j| if (mask >> j) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn mask_for(width: usize) -> u32 {
    if width == 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

impl fmt::Display for BitSymbolSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.symbols.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", format_symbol(*s, self.width))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitSymbolSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSymbolSequence({})", self)
    }
}

/// Orders sequences by their text form (component 1 is most significant).
impl Ord for BitSymbolSequence {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |s: &BitSymbolSequence, k: usize| s.symbols[k].reverse_bits() >> (32 - s.width);
        for k in 0..self.len().min(other.len()) {
            match key(self, k).cmp(&key(other, k)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.len().cmp(&other.len())
    }
}

impl PartialOrd for BitSymbolSequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
