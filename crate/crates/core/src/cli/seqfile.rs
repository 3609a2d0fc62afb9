//! Sequence definition files.
//!
//! ```text
//! # Fibonacci numbers
//! name = F
//! rec = 1 1
//! init = 0 1
//! ```
//!
//! `rec` lists `c_1 ... c_d` of `a(n) = c_1 a(n-1) + ... + c_d a(n-d)`;
//! entries are integers or `p/q`. Text after `#` is ignored.

use thiserror::Error;

use crate::algebra::Rational;
use crate::cfinite::{CFiniteSeq, SeqError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeqFileError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing `{0} =` line")]
    Missing(&'static str),
    #[error("invalid sequence: {0}")]
    Invalid(#[from] SeqError),
}

#[derive(Clone, Debug)]
pub struct SeqDef {
    pub name: String,
    pub seq: CFiniteSeq,
}

fn parse_rational(token: &str) -> Option<Rational> {
    match token.split_once('/') {
        Some((p, q)) => {
            let q: num_bigint::BigInt = q.parse().ok()?;
            if q == 0.into() {
                return None;
            }
            Some(Rational::new(p.parse().ok()?, q))
        }
        None => Some(Rational::from_integer(token.parse().ok()?)),
    }
}

pub fn parse_seq_def(text: &str) -> Result<SeqDef, SeqFileError> {
    let mut name = None;
    let mut rec = None;
    let mut init = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| SeqFileError::Line { line, message };
        let Some((key, value)) = content.split_once('=') else {
            return Err(err(format!("expected `key = value`, got {content:?}")));
        };
        let (key, value) = (key.trim(), value.trim());
        let list = || -> Result<Vec<Rational>, SeqFileError> {
            value
                .split_whitespace()
                .map(|t| {
                    parse_rational(t).ok_or_else(|| err(format!("{key}: {t:?} is not a rational")))
                })
                .collect()
        };
        let slot_taken = match key {
            "name" => {
                if value.is_empty() || value.contains(char::is_whitespace) {
                    return Err(err("name must be a single token".into()));
                }
                name.replace(value.to_string()).is_some()
            }
            "rec" => rec.replace(list()?).is_some(),
            "init" => init.replace(list()?).is_some(),
            other => return Err(err(format!("unknown key {other:?}"))),
        };
        if slot_taken {
            return Err(err(format!("duplicate key {key:?}")));
        }
    }
    let seq = CFiniteSeq::new(
        rec.ok_or(SeqFileError::Missing("rec"))?,
        init.ok_or(SeqFileError::Missing("init"))?,
    )?;
    Ok(SeqDef {
        name: name.ok_or(SeqFileError::Missing("name"))?,
        seq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    #[test]
    fn fibonacci_file() {
        let d =
            parse_seq_def("# Fibonacci\nname = F\nrec = 1 1   # c_1 c_2\ninit = 0 1\n").unwrap();
        assert_eq!(d.name, "F");
        assert_eq!(d.seq.terms(6), [0, 1, 1, 2, 3, 5].map(rat));
    }

    #[test]
    fn rational_entries() {
        let d = parse_seq_def("name = h\nrec = 1/2\ninit = -3/4").unwrap();
        assert_eq!(d.seq.terms(2), vec![ratio(-3, 4), ratio(-3, 8)]);
    }

    #[test]
    fn errors_carry_context() {
        assert_eq!(
            parse_seq_def("name = F\nrec = 1 x\ninit = 0 1").unwrap_err(),
            SeqFileError::Line {
                line: 2,
                message: "rec: \"x\" is not a rational".into()
            }
        );
        assert_eq!(
            parse_seq_def("name = F\nrec = 1 1/0\ninit = 0 1").unwrap_err(),
            SeqFileError::Line {
                line: 2,
                message: "rec: \"1/0\" is not a rational".into()
            }
        );
        assert_eq!(
            parse_seq_def("name = F\nrec = 1 1").unwrap_err(),
            SeqFileError::Missing("init")
        );
        assert!(matches!(
            parse_seq_def("name = F\nname = G").unwrap_err(),
            SeqFileError::Line { line: 2, .. }
        ));
        assert!(matches!(
            parse_seq_def("colour = red").unwrap_err(),
            SeqFileError::Line { line: 1, .. }
        ));
        assert!(matches!(
            parse_seq_def("name = F\nrec = 1 1\ninit = 0").unwrap_err(),
            SeqFileError::Invalid(_)
        ));
    }
}
