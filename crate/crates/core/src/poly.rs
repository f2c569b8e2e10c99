//! Polynomials over GF(2) in the delay variable `D`.
//!
//! A polynomial is stored as its support: the ascending list of exponents
//! whose coefficient is 1. The zero polynomial stores nothing, and its
//! degree and valuation are `None` rather than integer sentinels.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    support: Vec<usize>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { support: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly::monomial(0)
    }

    /// The single term `D^d`.
    pub fn monomial(d: usize) -> Self {
        Gf2Poly { support: vec![d] }
    }

    /// Builds a polynomial from an exponent list. Exponents appearing an even
    /// number of times cancel (GF(2) addition).
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut support: Vec<usize> = exps.into_iter().collect();
        support.sort_unstable();
        let mut out = Vec::with_capacity(support.len());
        for e in support {
            if out.last() == Some(&e) {
                out.pop();
            } else {
                out.push(e);
            }
        }
        Gf2Poly { support: out }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Largest exponent with coefficient 1; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.support.last().copied()
    }

    /// Smallest exponent with coefficient 1; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.support.first().copied()
    }

    pub fn coeff(&self, t: usize) -> bool {
        self.support.binary_search(&t).is_ok()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Multiplies by `D^l`.
    pub fn mul_monomial(&self, l: usize) -> Self {
        Gf2Poly {
            support: self.support.iter().map(|e| e + l).collect(),
        }
    }

    /// Divides by `D^l`; `None` when the valuation is smaller than `l`.
    /// Dividing the zero polynomial is always allowed.
    pub fn div_monomial(&self, l: usize) -> Option<Self> {
        if l == 0 || self.is_zero() {
            return Some(self.clone());
        }
        if self.valuation()? < l {
            return None;
        }
        Some(Gf2Poly {
            support: self.support.iter().map(|e| e - l).collect(),
        })
    }

    /// The reciprocal within span `nu`: `p(D) -> D^nu p(1/D)`.
    /// Requires `degree(p) <= nu`.
    pub fn reciprocal(&self, nu: usize) -> Self {
        debug_assert!(self.degree().map_or(true, |d| d <= nu));
        Gf2Poly::from_exponents(self.support.iter().map(|e| nu - e))
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        for (i, e) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match e {
                0 => write!(f, "1")?,
                1 => write!(f, "D")?,
                _ => write!(f, "D^{}", e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({})", self)
    }
}

impl FromStr for Gf2Poly {
    type Err = Error;

    /// Grammar: `0` | term(+term)*, term := `1` | `D` | `D^k` with k >= 2.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let base = s.len() - s.trim_start().len();
        if trimmed.is_empty() {
            return Err(Error::Parse {
                position: base,
                message: "empty polynomial".into(),
            });
        }
        if trimmed == "0" {
            return Ok(Gf2Poly::zero());
        }
        let mut exps = Vec::new();
        let mut pos = base;
        for term in trimmed.split('+') {
            let t = term.trim();
            let tpos = pos + (term.len() - term.trim_start().len());
            if t == "1" {
                exps.push(0);
            } else if t == "D" {
                exps.push(1);
            } else if let Some(rest) = t.strip_prefix("D^") {
                let k: usize = rest.parse().map_err(|_| Error::Parse {
                    position: tpos + 2,
                    message: format!("bad exponent '{}'", rest),
                })?;
                if k < 2 {
                    return Err(Error::Parse {
                        position: tpos + 2,
                        message: format!("exponent {} must be written as '1' or 'D'", k),
                    });
                }
                exps.push(k);
            } else {
                return Err(Error::Parse {
                    position: tpos,
                    message: format!("unexpected term '{}'", t),
                });
            }
            pos += term.len() + 1;
        }
        Ok(Gf2Poly::from_exponents(exps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn degree_and_valuation() {
        assert_eq!(p("1+D+D^2").degree(), Some(2));
        assert_eq!(p("1+D+D^2").valuation(), Some(0));
        assert_eq!(p("D^3+D^4").degree(), Some(4));
        assert_eq!(p("D^3+D^4").valuation(), Some(3));
        assert_eq!(Gf2Poly::zero().degree(), None);
        assert_eq!(Gf2Poly::zero().valuation(), None);
    }

    #[test]
    fn valuation_at_most_degree() {
        for s in ["1", "D", "D^16", "1+D^7", "D^2+D^5+D^9"] {
            let q = p(s);
            assert!(q.valuation().unwrap() <= q.degree().unwrap());
        }
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "1", "D", "D^16", "1+D+D^2", "D^3+D^4"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn parse_duplicates_cancel() {
        assert_eq!(p("1+1"), Gf2Poly::zero());
        assert_eq!(p("D+1+D"), Gf2Poly::one());
    }

    #[test]
    fn parse_errors_carry_position() {
        match "1+X".parse::<Gf2Poly>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!("".parse::<Gf2Poly>().is_err());
        assert!("D^1".parse::<Gf2Poly>().is_err());
        assert!("D^x".parse::<Gf2Poly>().is_err());
    }

    #[test]
    fn monomial_shifts() {
        assert_eq!(p("D^3+D^4").div_monomial(3).unwrap(), p("1+D"));
        assert_eq!(p("1+D").div_monomial(1), None);
        assert_eq!(p("1+D").mul_monomial(2), p("D^2+D^3"));
        assert_eq!(Gf2Poly::zero().div_monomial(5).unwrap(), Gf2Poly::zero());
    }

    #[test]
    fn reciprocal_within_span() {
        assert_eq!(p("1+D+D^2").reciprocal(2), p("1+D+D^2"));
        assert_eq!(p("D^2").reciprocal(2), Gf2Poly::one());
        assert_eq!(p("1").reciprocal(2), p("D^2"));
    }
}
