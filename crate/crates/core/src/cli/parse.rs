//! Series grammar and ring specifications.
//!
//! ```text
//! series   := term (('+' | '-') term)*
//! term     := [coeff '*'] 't' '^' exponent | coeff
//! coeff    := integer            (reduced mod p)
//! exponent := integer
//! ```
//!
//! Whitespace is ignored between tokens. Generator lists separate series by commas.

use serde::{Deserialize, Serialize};

use crate::coeffcore::PrimeField;
use crate::error::{Error, Result};
use crate::ideals::{Elem, LocalRing};
use crate::ulrich::{SearchOptions, DEFAULT_BUDGET};

/// A parsed element together with the warnings the parse produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

fn position(text: &str, byte: usize) -> (usize, usize) {
    let before = &text[..byte.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        let (line, column) = position(self.text, at);
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.end {
            let c = self.text[self.pos..].chars().next().unwrap_or(' ');
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        if self.pos >= self.end {
            return None;
        }
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.text[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn integer(&mut self, what: &str) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.end && self.text.as_bytes()[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            let found = self.text[start..self.end].chars().next();
            return Err(self.error(
                start,
                match found {
                    Some(c) => format!("expected {what}, found '{c}'"),
                    None => format!("expected {what}, found end of input"),
                },
            ));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error(start, format!("{what} is too large")))
    }
}

/// Parses `text[start..end]` as one series; positions refer to the whole of `text`.
fn series_in(
    text: &str,
    start: usize,
    end: usize,
    field: PrimeField,
    max_exponent: Option<usize>,
) -> Result<Parsed<Elem>> {
    let mut cur = Cursor {
        text,
        pos: start,
        end,
    };
    let mut warnings = Vec::new();
    let mut terms: Vec<(u64, u32)> = Vec::new();
    let mut negative = false;
    if cur.peek() == Some('-') {
        negative = true;
        cur.bump();
    }
    loop {
        let term_start = {
            cur.skip_ws();
            cur.pos
        };
        let (coeff, exp) = match cur.peek() {
            Some('t') => (1, None),
            Some(c) if c.is_ascii_digit() => {
                let c = cur.integer("a coefficient")?;
                if cur.peek() == Some('*') {
                    cur.bump();
                    if cur.peek() != Some('t') {
                        return Err(cur.error(cur.pos, "expected 't' after '*'"));
                    }
                    (c, None)
                } else {
                    (c, Some(0))
                }
            }
            Some(c) => return Err(cur.error(cur.pos, format!("expected a term, found '{c}'"))),
            None => return Err(cur.error(cur.pos, "expected a term, found end of input")),
        };
        let exp = match exp {
            Some(e) => e,
            None => {
                cur.bump();
                if cur.peek() != Some('^') {
                    return Err(cur.error(cur.pos, "expected '^' after 't'"));
                }
                cur.bump();
                cur.integer("an exponent")?
            }
        };
        if let Some(n) = max_exponent {
            if exp >= n as u64 {
                return Err(cur.error(
                    term_start,
                    format!("exponent {exp} is not below the truncation {n}"),
                ));
            }
        }
        let reduced = field.reduce((coeff % field.modulus() as u64) as i64);
        let reduced = if negative {
            field.neg(reduced)
        } else {
            reduced
        };
        if reduced == 0 {
            let (line, column) = position(text, term_start);
            warnings.push(format!(
                "line {line}, column {column}: coefficient {coeff} vanishes mod {}",
                field.modulus()
            ));
        }
        terms.push((exp, reduced));
        match cur.peek() {
            None => break,
            Some('+') => negative = false,
            Some('-') => negative = true,
            Some(c) => return Err(cur.error(cur.pos, format!("expected '+' or '-', found '{c}'"))),
        }
        cur.bump();
    }
    let top = terms.iter().map(|t| t.0).max().unwrap_or(0) as usize;
    let mut coeffs = vec![0u32; top + 1];
    for (e, c) in terms {
        coeffs[e as usize] = field.add(coeffs[e as usize], c);
    }
    Ok(Parsed {
        value: Elem::new(0, coeffs),
        warnings,
    })
}

/// Parses a single series over `field`.
pub fn parse_series(
    text: &str,
    field: PrimeField,
    max_exponent: Option<usize>,
) -> Result<Parsed<Elem>> {
    series_in(text, 0, text.len(), field, max_exponent)
}

/// Parses a comma-separated list of series.
pub fn parse_generators(
    text: &str,
    field: PrimeField,
    max_exponent: Option<usize>,
) -> Result<Parsed<Vec<Elem>>> {
    let mut value = Vec::new();
    let mut warnings = Vec::new();
    let mut start = 0;
    for piece in text.split(',') {
        let end = start + piece.len();
        let p = series_in(text, start, end, field, max_exponent)?;
        value.push(p.value);
        warnings.extend(p.warnings);
        start = end + 1;
    }
    Ok(Parsed { value, warnings })
}

/// Ring specification as read from JSON or assembled from flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub field: u32,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl RingSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.field)
    }

    pub fn search_options(&self, threads: Option<usize>) -> SearchOptions {
        SearchOptions {
            budget: self.budget.unwrap_or(DEFAULT_BUDGET),
            threads,
        }
    }

    /// Builds the ring; generator parse errors report the generator's index.
    pub fn build(&self) -> Result<Parsed<LocalRing>> {
        let field = self.field()?;
        if self.generators.is_empty() {
            return Err(Error::Config("a ring needs at least one generator".into()));
        }
        let mut gens = Vec::new();
        let mut warnings = Vec::new();
        for (k, g) in self.generators.iter().enumerate() {
            let p = parse_series(g, field, self.trunc).map_err(|e| match e {
                Error::Parse {
                    line,
                    column,
                    message,
                } => Error::Parse {
                    line,
                    column,
                    message: format!("generator {}: {message}", k + 1),
                },
                other => other,
            })?;
            if p.value.order().is_none_or(|o| o < 1) {
                return Err(Error::Domain(format!(
                    "generator {} ({g}) must have order at least 1",
                    k + 1
                )));
            }
            warnings.extend(p.warnings);
            gens.push(p.value);
        }
        let series = gens
            .iter()
            .map(|g| g.to_series(field, g.end() as usize + 1))
            .collect::<Result<Vec<_>>>()?;
        let ring = LocalRing::from_generators(field, &series, self.trunc)?;
        Ok(Parsed {
            value: ring,
            warnings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn modular_reduction_of_negative_terms() {
        let p = parse_series("t^6 - 1*t^7", f(5), None).unwrap();
        assert_eq!(p.value.coeff(6), 1);
        assert_eq!(p.value.coeff(7), 4);
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn whitespace_and_constants() {
        let p = parse_series("  2 * t ^ 3+ 4 -t^3 ", f(3), None).unwrap();
        assert_eq!(p.value.coeff(0), 1);
        assert_eq!(p.value.coeff(3), 1);
    }

    #[test]
    fn vanishing_coefficient_warns() {
        let p = parse_series("t^2 + 3*t^5", f(3), None).unwrap();
        assert_eq!(p.value.coeff(5), 0);
        assert_eq!(p.warnings.len(), 1);
        assert!(p.warnings[0].contains("column 7"));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_series("t^3 + *t^4", f(2), None) {
            Err(Error::Parse {
                line: 1, column: 7, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse_generators("t^6,\n t^7 + t", f(2), None) {
            Err(Error::Parse {
                line: 2,
                column: 9,
                message,
            }) => assert!(message.contains('^')),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exponent_bound() {
        assert!(matches!(
            parse_series("t^3 + t^40", f(2), Some(40)),
            Err(Error::Parse { column: 7, .. })
        ));
    }

    #[test]
    fn order_zero_generator_rejected() {
        let spec = RingSpec {
            field: 2,
            generators: vec!["t^0".into()],
            trunc: None,
            budget: None,
        };
        assert!(matches!(spec.build(), Err(Error::Domain(_))));
    }

    #[test]
    fn spec_json() {
        let spec = RingSpec::from_json(r#"{"field":2, "generators":["t^3","t^7"]}"#).unwrap();
        let ring = spec.build().unwrap().value;
        assert_eq!(ring.value_semigroup().generators(), &[3, 7]);
        assert!(matches!(
            RingSpec::from_json("{\"field\":2,\n \"gens\":[]}"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
