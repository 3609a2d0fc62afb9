//! OEIS b-files: parsing, prefix comparison, and an opt-in fetch.
//!
//! A b-file is a list of `index value` lines with optional `#` comments.
//! Nothing here touches the network unless [`FetchOptions::network`] is set.

use std::fmt::Write as _;
use std::time::Duration;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::Rational;
use crate::cfinite::CFiniteSeq;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OeisError {
    #[error("line {line}: expected `index value`, got {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: index {index} does not exceed the previous index {previous}")]
    NonMonotone {
        line: usize,
        index: i64,
        previous: i64,
    },
    #[error("invalid OEIS identifier {0:?}; expected `A` followed by six digits")]
    InvalidId(String),
    #[error("network access is disabled; pass the network flag to fetch")]
    NetworkDisabled,
    #[error("network failure: {0}")]
    Network(String),
    #[error("server answered with HTTP status {0}")]
    HttpStatus(u16),
    #[error("fetched b-file is malformed: {0}")]
    FetchedMalformed(Box<OeisError>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    /// Identifier such as `A000045`, when known.
    pub id: Option<String>,
    pub entries: Vec<(i64, BigInt)>,
}

pub fn validate_id(id: &str) -> Result<(), OeisError> {
    let ok = id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(OeisError::InvalidId(id.to_string()))
    }
}

/// Parses b-file text. The identifier is taken from the first comment
/// token of the form `A` plus six digits, if present.
pub fn parse_bfile(text: &str) -> Result<BFile, OeisError> {
    let mut id = None;
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let number = i + 1;
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if id.is_none() {
                id = comment
                    .split(|c: char| !c.is_ascii_alphanumeric())
                    .find(|w| validate_id(w).is_ok())
                    .map(str::to_string);
            }
            continue;
        }
        let malformed = || OeisError::Malformed {
            line: number,
            content: raw.to_string(),
        };
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed());
        };
        let index: i64 = index.parse().map_err(|_| malformed())?;
        let value: BigInt = value.parse().map_err(|_| malformed())?;
        if let Some(&(previous, _)) = entries.last() {
            if index <= previous {
                return Err(OeisError::NonMonotone {
                    line: number,
                    index,
                    previous,
                });
            }
        }
        entries.push((index, value));
    }
    Ok(BFile { id, entries })
}

impl BFile {
    /// The data lines, one `index value` pair per line.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (i, v) in &self.entries {
            writeln!(out, "{i} {v}").expect("writing to a String");
        }
        out
    }

    pub fn values(&self) -> impl Iterator<Item = &BigInt> {
        self.entries.iter().map(|(_, v)| v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// b-file index.
    pub index: i64,
    pub expected: BigInt,
    /// Sequence value at that position, as printed.
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixReport {
    /// Length of the agreeing prefix.
    pub matched: usize,
    /// Number of b-file entries at or after the offset.
    pub available: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl PrefixReport {
    pub fn full_match(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares `values[t]` with the b-file entry at index `t + offset`.
///
/// Entries before `offset` are ignored. The match stops at the first
/// disagreement or at the first gap in the b-file indices.
pub fn compare_values(values: &[Rational], b: &BFile, offset: i64) -> PrefixReport {
    let aligned: Vec<&(i64, BigInt)> = b.entries.iter().filter(|(i, _)| *i >= offset).collect();
    let mut matched = 0;
    let mut first_mismatch = None;
    for (index, expected) in aligned.iter().map(|(i, v)| (*i, v)) {
        let t = (index - offset) as usize;
        if t != matched || t >= values.len() {
            break;
        }
        let found = &values[t];
        if !found.is_integer() || found.numer() != expected {
            first_mismatch = Some(Mismatch {
                index,
                expected: expected.clone(),
                found: crate::algebra::fmt_rational(found),
            });
            break;
        }
        matched += 1;
    }
    PrefixReport {
        matched,
        available: aligned.len(),
        first_mismatch,
    }
}

/// Term `t` of `seq` against b-file index `t + offset`.
pub fn compare_prefix(seq: &CFiniteSeq, b: &BFile, offset: i64) -> PrefixReport {
    let needed = b
        .entries
        .last()
        .map_or(0, |(i, _)| (i - offset + 1).max(0) as usize);
    compare_values(&seq.terms(needed), b, offset)
}

#[derive(Clone, Debug)]
pub struct FetchOptions {
    /// Must be set explicitly; without it no request is made.
    pub network: bool,
    pub timeout: Duration,
    pub base_url: String,
}

impl Default for FetchOptions {
    fn default() -> Self {
        FetchOptions {
            network: false,
            timeout: Duration::from_secs(30),
            base_url: "https://oeis.org".to_string(),
        }
    }
}

/// `<base>/A000045/b000045.txt`.
pub fn bfile_url(base: &str, id: &str) -> String {
    format!("{}/{id}/b{}.txt", base.trim_end_matches('/'), &id[1..])
}

/// Downloads and parses the b-file for `id` with a single request.
pub fn fetch_bfile(id: &str, opts: &FetchOptions) -> Result<BFile, OeisError> {
    validate_id(id)?;
    if !opts.network {
        return Err(OeisError::NetworkDisabled);
    }
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(opts.timeout))
        .build()
        .into();
    let mut response = agent
        .get(&bfile_url(&opts.base_url, id))
        .call()
        .map_err(|e| match e {
            ureq::Error::StatusCode(code) => OeisError::HttpStatus(code),
            other => OeisError::Network(other.to_string()),
        })?;
    let text = response
        .body_mut()
        .read_to_string()
        .map_err(|e| OeisError::Network(e.to_string()))?;
    let mut b = parse_bfile(&text).map_err(|e| OeisError::FetchedMalformed(Box::new(e)))?;
    b.id = Some(id.to_string());
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    #[test]
    fn parses_pairs() {
        let b = parse_bfile("1 1\n2 3\n3 4").unwrap();
        assert_eq!(b.entries, vec![(1, 1.into()), (2, 3.into()), (3, 4.into())]);
        assert_eq!(b.id, None);
    }

    #[test]
    fn skips_comments_and_reads_id() {
        let b = parse_bfile("# A000045 Fibonacci\n0 0\n\n1 1\n").unwrap();
        assert_eq!(b.entries, vec![(0, 0.into()), (1, 1.into())]);
        assert_eq!(b.id.as_deref(), Some("A000045"));
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(
            parse_bfile("1 x").unwrap_err(),
            OeisError::Malformed {
                line: 1,
                content: "1 x".into()
            }
        );
        assert!(matches!(
            parse_bfile("0 1\n1 2 3").unwrap_err(),
            OeisError::Malformed { line: 2, .. }
        ));
        assert_eq!(
            parse_bfile("0 1\n# c\n0 2").unwrap_err(),
            OeisError::NonMonotone {
                line: 3,
                index: 0,
                previous: 0
            }
        );
    }

    #[test]
    fn big_values() {
        let b = parse_bfile("100 354224848179261915075").unwrap();
        let fib = CFiniteSeq::from_i64(&[1, 1], &[0, 1]).unwrap();
        assert_eq!(compare_prefix(&fib, &b, 0).matched, 0);
        assert_eq!(b.entries[0].1.to_string(), fib.term(100).to_string());
    }

    #[test]
    fn prefix_comparison() {
        let lucas_tail = parse_bfile("1 1\n2 3\n3 4\n4 7\n5 11\n6 18").unwrap();
        let lucas = CFiniteSeq::from_i64(&[1, 1], &[1, 3]).unwrap();
        let r = compare_prefix(&lucas, &lucas_tail, 1);
        assert_eq!((r.matched, r.available), (6, 6));
        assert!(r.full_match());

        let fib = CFiniteSeq::from_i64(&[1, 1], &[0, 1]).unwrap();
        let r = compare_prefix(&fib, &lucas_tail, 1);
        assert_eq!(r.matched, 0);
        assert_eq!(
            r.first_mismatch,
            Some(Mismatch {
                index: 1,
                expected: 1.into(),
                found: "0".into()
            })
        );
    }

    #[test]
    fn empty_bfile_matches_nothing() {
        let fib = CFiniteSeq::from_i64(&[1, 1], &[0, 1]).unwrap();
        let r = compare_prefix(&fib, &parse_bfile("").unwrap(), 0);
        assert_eq!((r.matched, r.available), (0, 0));
    }

    #[test]
    fn fractions_never_match() {
        let b = parse_bfile("0 1").unwrap();
        let r = compare_values(&[crate::algebra::ratio(1, 2)], &b, 0);
        assert_eq!(r.first_mismatch.unwrap().found, "1/2");
        assert_eq!(compare_values(&[rat(1)], &b, 0).matched, 1);
    }

    #[test]
    fn fetch_guards() {
        let opts = FetchOptions::default();
        assert_eq!(
            fetch_bfile("45", &opts).unwrap_err(),
            OeisError::InvalidId("45".into())
        );
        assert_eq!(
            fetch_bfile("A000045", &opts).unwrap_err(),
            OeisError::NetworkDisabled
        );
        assert_eq!(
            bfile_url("https://oeis.org/", "A000045"),
            "https://oeis.org/A000045/b000045.txt"
        );
    }

    proptest! {
        #[test]
        fn serialize_round_trips(
            start in -5i64..5,
            steps in prop::collection::vec(1i64..4, 0..30),
            values in prop::collection::vec(any::<i64>(), 30),
        ) {
            let mut index = start;
            let entries: Vec<(i64, BigInt)> = steps
                .iter()
                .zip(&values)
                .map(|(s, v)| { index += s; (index, BigInt::from(*v)) })
                .collect();
            let b = BFile { id: None, entries };
            let text = b.serialize();
            prop_assert_eq!(parse_bfile(&text).unwrap(), b.clone());
            prop_assert_eq!(parse_bfile(&text).unwrap().serialize(), text);
        }
    }
}
