//! Line-oriented text formats for complexes and chain maps.
//!
//! ```text
//! # a two-step complex
//! complex twostep3
//! gen a 1
//! gen b 0
//! d a b U^3
//! ```
//!
//! ```text
//! map id
//! source twostep3
//! target twostep3
//! degree 0
//! f a a 1
//! f b b 1
//! ```
//!
//! Polynomials may contain spaces around `+`; everything after the two ids on
//! a `d`/`f` line is the polynomial.

use std::fmt::Write as _;
use std::sync::Arc;

use super::{ChainMap, Generator, GradedComplex};
use crate::error::{Error, Result};
use crate::scalar_ring::Polynomial;

fn parse_error(line: usize, token: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        token: token.to_string(),
        message: message.into(),
    }
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_poly(line: usize, s: &str) -> Result<Polynomial> {
    s.parse::<Polynomial>().map_err(|e| match e {
        Error::Parse { token, message, .. } => Error::Parse {
            line,
            token,
            message,
        },
        other => other,
    })
}

fn parse_int(line: usize, s: &str) -> Result<i64> {
    s.parse()
        .map_err(|_| parse_error(line, s, "expected an integer"))
}

/// Splits `keyword id1 id2 poly...` into its parts.
fn entry_fields(line: usize, rest: &str) -> Result<(String, String, Polynomial)> {
    let mut it = rest.splitn(3, char::is_whitespace);
    let s = it.next().filter(|s| !s.is_empty());
    let t = it.next().filter(|s| !s.is_empty());
    let poly = it.next().map(str::trim).filter(|s| !s.is_empty());
    match (s, t, poly) {
        (Some(s), Some(t), Some(poly)) => {
            Ok((s.to_string(), t.to_string(), parse_poly(line, poly)?))
        }
        _ => Err(parse_error(
            line,
            rest,
            "expected `<source> <target> <polynomial>`",
        )),
    }
}

fn split_keyword(line: &str) -> (&str, &str) {
    match line.split_once(char::is_whitespace) {
        Some((k, rest)) => (k, rest.trim()),
        None => (line, ""),
    }
}

fn single_token(line: usize, rest: &str, what: &str) -> Result<String> {
    let mut it = rest.split_whitespace();
    match (it.next(), it.next()) {
        (Some(tok), None) => Ok(tok.to_string()),
        _ => Err(parse_error(line, rest, format!("expected a single {what}"))),
    }
}

/// Parses the complex text format and validates the result.
pub fn parse_complex(text: &str) -> Result<GradedComplex> {
    let mut name: Option<String> = None;
    let mut generators = Vec::new();
    let mut entries = Vec::new();
    for (line, content) in content_lines(text) {
        let (keyword, rest) = split_keyword(content);
        match keyword {
            "complex" => {
                if name.is_some() {
                    return Err(parse_error(line, content, "second `complex` header"));
                }
                name = Some(single_token(line, rest, "complex name")?);
            }
            _ if name.is_none() => {
                return Err(parse_error(
                    line,
                    keyword,
                    "expected `complex <name>` first",
                ));
            }
            "gen" => {
                let mut it = rest.split_whitespace();
                match (it.next(), it.next(), it.next()) {
                    (Some(id), Some(gr), None) => {
                        generators.push(Generator::new(id, parse_int(line, gr)?))
                    }
                    _ => return Err(parse_error(line, rest, "expected `gen <id> <grading>`")),
                }
            }
            "d" => entries.push(entry_fields(line, rest)?),
            _ => return Err(parse_error(line, keyword, "unknown keyword")),
        }
    }
    let name = name.ok_or_else(|| parse_error(0, "", "missing `complex <name>` header"))?;
    GradedComplex::build(name, generators, entries)
}

/// Parses the chain-map text format against already loaded complexes; the
/// `source`/`target` names must match theirs.
pub fn parse_chain_map(
    text: &str,
    source: Arc<GradedComplex>,
    target: Arc<GradedComplex>,
) -> Result<ChainMap> {
    let mut name = None;
    let mut degree = None;
    let mut entries = Vec::new();
    for (line, content) in content_lines(text) {
        let (keyword, rest) = split_keyword(content);
        match keyword {
            "map" => name = Some(single_token(line, rest, "map name")?),
            _ if name.is_none() => {
                return Err(parse_error(line, keyword, "expected `map <name>` first"));
            }
            "source" | "target" => {
                let named = single_token(line, rest, "complex name")?;
                let expected = if keyword == "source" {
                    &source
                } else {
                    &target
                };
                if named != expected.name() {
                    return Err(Error::ComplexMismatch(format!(
                        "line {line}: map {keyword} is `{named}` but the supplied complex is `{}`",
                        expected.name()
                    )));
                }
            }
            "degree" => degree = Some(parse_int(line, &single_token(line, rest, "degree")?)?),
            "f" => entries.push(entry_fields(line, rest)?),
            _ => return Err(parse_error(line, keyword, "unknown keyword")),
        }
    }
    let name = name.ok_or_else(|| parse_error(0, "", "missing `map <name>` header"))?;
    ChainMap::build(name, source, target, entries, degree.unwrap_or(0))
}

pub fn complex_to_text(c: &GradedComplex) -> String {
    let mut out = format!("complex {}\n", c.name());
    for g in c.generators() {
        let _ = writeln!(out, "gen {} {}", g.id, g.grading);
    }
    for (t, s, p) in c.differential().entries() {
        let _ = writeln!(
            out,
            "d {} {} {}",
            c.generators()[s].id,
            c.generators()[t].id,
            p
        );
    }
    out
}

pub fn chain_map_to_text(f: &ChainMap) -> String {
    let mut out = format!(
        "map {}\nsource {}\ntarget {}\ndegree {}\n",
        f.name(),
        f.source().name(),
        f.target().name(),
        f.degree()
    );
    let (src, tgt) = (f.source().generators(), f.target().generators());
    for (t, s, p) in f.matrix().entries() {
        let _ = writeln!(out, "f {} {} {}", src[s].id, tgt[t].id, p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_STEP: &str = "# model\ncomplex twostep3\ngen a 1\ngen b 0\nd a b U^3\n";

    #[test]
    fn parses_complex_and_map() {
        let c = Arc::new(parse_complex(TWO_STEP).unwrap());
        assert_eq!(c.name(), "twostep3");
        assert_eq!(c.entry(1, 0).to_string(), "U^3");
        let f = parse_chain_map(
            "map id\nsource twostep3\ntarget twostep3\ndegree 0\nf a a 1\nf b b 1 # identity\n",
            c.clone(),
            c.clone(),
        )
        .unwrap();
        assert_eq!(f, ChainMap::identity(c));
    }

    #[test]
    fn polynomial_with_spaces() {
        let c = parse_complex("complex x\ngen a 1\ngen b 0\nd a b U^2 + U^3\n").unwrap();
        assert_eq!(c.entry(1, 0).to_string(), "U^2+U^3");
    }

    #[test]
    fn reports_line_and_token() {
        let err = parse_complex("complex x\ngen a 1\ngen b zero\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                token: "zero".into(),
                message: "expected an integer".into()
            }
        );
        let err = parse_complex("complex x\ngen a 1\ngen b 0\nd a b U^^2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = parse_complex("gen a 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn round_trip() {
        let c = parse_complex(TWO_STEP).unwrap();
        let again = parse_complex(&complex_to_text(&c)).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.name(), c.name());
        let c = Arc::new(c);
        let f = ChainMap::scalar(c.clone(), &"1+U".parse().unwrap()).with_name("p");
        let g = parse_chain_map(&chain_map_to_text(&f), c.clone(), c).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn map_names_must_match() {
        let c = Arc::new(parse_complex(TWO_STEP).unwrap());
        let err = parse_chain_map("map f\nsource other\n", c.clone(), c).unwrap_err();
        assert!(matches!(err, Error::ComplexMismatch(_)));
    }
}
