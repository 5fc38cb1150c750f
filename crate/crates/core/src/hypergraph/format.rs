//! Text and JSON encodings of [`Hypergraph`].
//!
//! Text: `r=<int> n=<int>` followed by `;`-separated edges, each a
//! space-separated vertex list. Lines starting with `#` are comments.
//! JSON: `{"r": int, "n": int, "edges": [[int, ...], ...]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{bits, Hypergraph, HypergraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header {found:?}, expected \"r=<int> n=<int>\"")]
    Header { line: usize, found: String },
    #[error("line {line}: bad vertex label {token:?}")]
    Token { line: usize, token: String },
    #[error("line {line}: edge arity {got} != {expected}")]
    Arity {
        line: usize,
        got: usize,
        expected: usize,
    },
    #[error("line {line}: vertex {vertex} >= n = {n}")]
    VertexRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {edge:?}")]
    Duplicate { line: usize, edge: Vec<usize> },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        source: HypergraphError,
    },
    #[error("invalid JSON hypergraph: {0}")]
    Json(String),
    #[error("empty input")]
    Empty,
}

#[derive(Serialize, Deserialize)]
struct JsonHypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Parse either encoding; input starting with `{` is read as JSON.
    pub fn parse(text: &str) -> Result<Hypergraph, ParseError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            parse_text(text)
        }
    }

    /// Canonical text form: edges in lexicographic order.
    pub fn serialize(&self) -> String {
        let mut out = format!("r={} n={}", self.r, self.n);
        if self.edges.is_empty() {
            out.push(';');
        }
        for &m in &self.edges {
            out.push(';');
            for v in bits(m) {
                out.push(' ');
                out.push_str(&v.to_string());
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(JsonHypergraph {
            r: self.r,
            n: self.n,
            edges: self.edges().collect(),
        })
        .expect("hypergraph JSON is always representable")
    }

    pub fn from_json(text: &str) -> Result<Hypergraph, ParseError> {
        let raw: JsonHypergraph =
            serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
        Hypergraph::new(raw.r, raw.n, raw.edges).map_err(|e| ParseError::Json(e.to_string()))
    }
}

fn parse_text(text: &str) -> Result<Hypergraph, ParseError> {
    // (line number, segment text) for every ';'-separated piece.
    let mut segments: Vec<(usize, String)> = Vec::new();
    let mut current = String::new();
    let mut current_line = None;
    for (lineno, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l)) {
        if line.trim_start().starts_with('#') {
            continue;
        }
        for ch in line.chars() {
            if ch == ';' {
                segments.push((current_line.unwrap_or(lineno), std::mem::take(&mut current)));
                current_line = None;
            } else {
                if current_line.is_none() && !ch.is_whitespace() {
                    current_line = Some(lineno);
                }
                current.push(ch);
            }
        }
        current.push(' ');
    }
    if !current.trim().is_empty() {
        segments.push((current_line.unwrap_or(1), current));
    }

    let mut segments = segments.into_iter();
    let (header_line, header) = segments.next().ok_or(ParseError::Empty)?;
    if header.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let (r, n) = parse_header(&header).ok_or_else(|| ParseError::Header {
        line: header_line,
        found: header.trim().to_string(),
    })?;
    let mut h = Hypergraph::empty(r, n).map_err(|source| ParseError::Invalid {
        line: header_line,
        source,
    })?;

    for (line, seg) in segments {
        if seg.trim().is_empty() {
            continue;
        }
        let mut mask = 0u64;
        let mut count = 0;
        for tok in seg.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| ParseError::Token {
                line,
                token: tok.to_string(),
            })?;
            if v >= n {
                return Err(ParseError::VertexRange { line, vertex: v, n });
            }
            mask |= 1 << v;
            count += 1;
        }
        if count != r || mask.count_ones() as usize != r {
            return Err(ParseError::Arity {
                line,
                got: mask.count_ones() as usize,
                expected: r,
            });
        }
        if h.edges.contains(&mask) {
            return Err(ParseError::Duplicate {
                line,
                edge: bits(mask).collect(),
            });
        }
        h.edges.push(mask);
    }
    Ok(Hypergraph::from_masks(r, n, h.edges))
}

fn parse_header(header: &str) -> Option<(usize, usize)> {
    let mut r = None;
    let mut n = None;
    for tok in header.split_whitespace() {
        let (key, value) = tok.split_once('=')?;
        let value: usize = value.parse().ok()?;
        match key {
            "r" if r.is_none() => r = Some(value),
            "n" if n.is_none() => n = Some(value),
            _ => return None,
        }
    }
    Some((r?, n?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let h = Hypergraph::parse("r=2 n=3; 0 1; 1 2; 0 2").unwrap();
        assert_eq!(h, Hypergraph::complete(2, 3).unwrap());
        assert_eq!(h.serialize(), "r=2 n=3; 0 1; 0 2; 1 2");
    }

    #[test]
    fn edgeless_serializes_with_trailing_semicolon() {
        let h = Hypergraph::empty(2, 2).unwrap();
        assert_eq!(h.serialize(), "r=2 n=2;");
        assert_eq!(Hypergraph::parse("r=2 n=2;").unwrap(), h);
        assert_eq!(Hypergraph::parse("r=2 n=2").unwrap(), h);
    }

    #[test]
    fn arity_error_names_line() {
        let err = Hypergraph::parse("r=3 n=3; 0 1").unwrap_err();
        assert_eq!(
            err,
            ParseError::Arity {
                line: 1,
                got: 2,
                expected: 3
            }
        );
        assert_eq!(err.to_string(), "line 1: edge arity 2 != 3");
    }

    #[test]
    fn multiline_with_comments() {
        let text = "# a path\nr=2 n=3;\n0 1;\n# middle\n1 2\n";
        let h = Hypergraph::parse(text).unwrap();
        assert_eq!(h, Hypergraph::path(3).unwrap());
        let bad = "r=2 n=3;\n0 1;\n\n1 7\n";
        assert_eq!(
            Hypergraph::parse(bad).unwrap_err(),
            ParseError::VertexRange {
                line: 4,
                vertex: 7,
                n: 3
            }
        );
    }

    #[test]
    fn header_and_duplicate_errors() {
        assert!(matches!(
            Hypergraph::parse("x=2 n=3; 0 1"),
            Err(ParseError::Header { line: 1, .. })
        ));
        assert!(matches!(
            Hypergraph::parse("r=2 n=3;\n0 1;\n1 0"),
            Err(ParseError::Duplicate { line: 3, .. })
        ));
        assert!(matches!(
            Hypergraph::parse("r=2 n=3; 0 a"),
            Err(ParseError::Token { .. })
        ));
        assert!(matches!(Hypergraph::parse("  \n# only\n"), Err(ParseError::Empty)));
    }

    #[test]
    fn json_mirror() {
        let h = Hypergraph::complete(3, 4).unwrap();
        let text = h.to_json().to_string();
        assert_eq!(text, r#"{"edges":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]],"n":4,"r":3}"#);
        assert_eq!(Hypergraph::parse(&text).unwrap(), h);
        assert!(Hypergraph::parse(r#"{"r":2,"n":2,"edges":[[0,2]]}"#).is_err());
    }
}
