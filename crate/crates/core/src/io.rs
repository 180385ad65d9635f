//! Plain-text file formats.
//!
//! Edge list:
//! ```text
//! # comment
//! n m
//! u v        (m lines, 0-based vertex ids; edge ids follow line order)
//! ```
//! Assignment: header `r m`, then one `edge_id forest_index` line per edge.
//! Certificate: `VIOLATION r=<r>`, the ascending vertex ids, then
//! `e(X)=<count> bound=<r*(|X|-1)>`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::decompose::{Certificate, Decomposition};
use crate::graph::{restriction_edge_count, Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header")]
    MissingHeader,
    #[error("malformed header, expected two non-negative integers")]
    BadHeader,
    #[error("malformed line, expected two non-negative integers")]
    BadLine,
    #[error("vertex id {id} out of range for {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("edge id {id} out of range for {m} edges")]
    EdgeOutOfRange { id: usize, m: usize },
    #[error("forest index {index} outside 1..={r}")]
    ForestOutOfRange { index: usize, r: usize },
    #[error("edge {0} assigned twice")]
    DuplicateEdge(usize),
    #[error("expected {expected} data lines, found {found}")]
    WrongLineCount { expected: usize, found: usize },
    #[error("malformed certificate: {0}")]
    BadCertificate(&'static str),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

/// A data line with its 1-based line number.
type Row<'t> = (usize, &'t str);

/// Header pair plus the numbered data lines that follow it.
fn header_and_rows(text: &str) -> Result<((usize, usize), Vec<Row<'_>>), ParseError> {
    let mut lines = data_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| err(text.lines().count().max(1), ParseErrorKind::MissingHeader))?;
    let header = pair(header).ok_or_else(|| err(line, ParseErrorKind::BadHeader))?;
    Ok((header, lines.collect()))
}

fn check_count(text: &str, rows: &[(usize, &str)], expected: usize) -> Result<(), ParseError> {
    if rows.len() != expected {
        let line = match rows.get(expected) {
            Some(&(line, _)) => line,
            None => text.lines().count().max(1),
        };
        return Err(err(
            line,
            ParseErrorKind::WrongLineCount {
                expected,
                found: rows.len(),
            },
        ));
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let ((n, m), rows) = header_and_rows(text)?;
    check_count(text, &rows, m)?;
    let mut edges = Vec::with_capacity(m);
    for &(line, row) in &rows {
        let (u, v) = pair(row).ok_or_else(|| err(line, ParseErrorKind::BadLine))?;
        if let Some(id) = [u, v].into_iter().find(|&id| id >= n) {
            return Err(err(line, ParseErrorKind::VertexOutOfRange { id, n }));
        }
        edges.push((u, v));
    }
    Ok(Graph::new(n, edges).expect("endpoints validated above"))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_assignment(text: &str) -> Result<Decomposition, ParseError> {
    let ((r, m), rows) = header_and_rows(text)?;
    check_count(text, &rows, m)?;
    let mut assign = vec![0; m];
    for &(line, row) in &rows {
        let (e, i) = pair(row).ok_or_else(|| err(line, ParseErrorKind::BadLine))?;
        if e >= m {
            return Err(err(line, ParseErrorKind::EdgeOutOfRange { id: e, m }));
        }
        if i == 0 || i > r {
            return Err(err(line, ParseErrorKind::ForestOutOfRange { index: i, r }));
        }
        if assign[e] != 0 {
            return Err(err(line, ParseErrorKind::DuplicateEdge(e)));
        }
        assign[e] = i;
    }
    Ok(Decomposition::new(r, assign).expect("indices validated above"))
}

pub fn write_assignment(d: &Decomposition) -> String {
    let mut out = format!("{} {}\n", d.forests(), d.edge_count());
    for (e, i) in d.assignment().iter().enumerate() {
        writeln!(out, "{e} {i}").unwrap();
    }
    out
}

pub fn write_certificate(g: &Graph, cert: &Certificate) -> String {
    let ids: Vec<String> = cert.vertices().iter().map(|v| v.to_string()).collect();
    format!(
        "VIOLATION r={}\n{}\ne(X)={} bound={}\n",
        cert.forests(),
        ids.join(" "),
        restriction_edge_count(g, cert.vertices()),
        cert.bound()
    )
}

/// Parses a certificate file. The recorded counts are not trusted; callers
/// re-verify the vertex set against the graph.
pub fn parse_certificate(text: &str) -> Result<Certificate, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let bad = |line, what| err(line, ParseErrorKind::BadCertificate(what));

    let (line, head) = lines.next().ok_or_else(|| bad(1, "empty file"))?;
    let r = head
        .strip_prefix("VIOLATION r=")
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| bad(line, "expected `VIOLATION r=<r>`"))?;

    let (line, ids) = lines.next().ok_or_else(|| bad(line + 1, "missing vertex line"))?;
    let parsed: Result<Vec<usize>, _> = ids.split_whitespace().map(str::parse).collect();
    let ids = parsed.map_err(|_| bad(line, "vertex ids must be non-negative integers"))?;
    if ids.is_empty() {
        return Err(bad(line, "empty vertex set"));
    }
    if ids.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad(line, "vertex ids must be strictly ascending"));
    }

    let (line, counts) = lines.next().ok_or_else(|| bad(line + 1, "missing count line"))?;
    let well_formed = counts
        .strip_prefix("e(X)=")
        .and_then(|rest| rest.split_once(" bound="))
        .is_some_and(|(c, b)| c.parse::<usize>().is_ok() && b.parse::<usize>().is_ok());
    if !well_formed {
        return Err(bad(line, "expected `e(X)=<count> bound=<bound>`"));
    }
    Ok(Certificate::new(r, ids.into_iter().collect::<VertexSet>()))
}

/// Brewer `set1` palette, 8 entries; forest `i` uses entry `((i - 1) mod 8) + 1`.
pub const PALETTE_SIZE: usize = 8;

pub fn export_dot(g: &Graph, d: &Decomposition) -> String {
    let mut out = String::from("graph forests {\n");
    if g.vertex_count() > 0 {
        out.push_str("  edge [colorscheme=set18];\n");
    }
    for v in 0..g.vertex_count() {
        writeln!(out, "  {v};").unwrap();
    }
    for (e, (u, v)) in g.edges().enumerate() {
        let i = d.forest_of(e);
        let color = (i - 1) % PALETTE_SIZE + 1;
        writeln!(out, "  {u} -- {v} [color={color}, label=\"F{i}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}
