//! Text formats: a plain edge list and graph6.
//!
//! Edge list: the first non-blank line is the vertex count, every following
//! non-blank line is `u v` with zero-based labels. Lines starting with `#` are
//! comments. The canonical emitted form lists each edge once as `u v` with
//! `u < v`, in lexicographic order.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing vertex count"))?;
    let n: usize =
        header.parse().map_err(|_| parse_err(first_line, format!("expected a vertex count, found {header:?}")))?;
    let mut g = Graph::empty(n).map_err(|e| parse_err(first_line, e.to_string()))?;
    for (line, l) in lines {
        let mut parts = l.split_whitespace();
        let mut next = |what: &str| -> Result<usize> {
            let tok = parts.next().ok_or_else(|| parse_err(line, format!("missing {what} endpoint")))?;
            tok.parse().map_err(|_| parse_err(line, format!("bad vertex label {tok:?}")))
        };
        let u = next("first")?;
        let v = next("second")?;
        if parts.next().is_some() {
            return Err(parse_err(line, "trailing tokens after edge"));
        }
        g.add_edge(u, v).map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(g)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, format!("byte {b:#x} is not valid graph6")));
    }
    let (n, body) = match bytes {
        [] => return Err(parse_err(1, "empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(parse_err(1, "truncated graph6 size"));
            }
            (rest[..6].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(1, "truncated graph6 size"));
            }
            (rest[..3].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize), &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    if body.len() != expected {
        return Err(parse_err(1, format!("graph6 body has {} bytes, expected {expected} for n = {n}", body.len())));
    }
    let mut g = Graph::empty(n).map_err(|e| parse_err(1, e.to_string()))?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j).expect("indices are in range");
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Reads either format: a leading integer line selects the edge list.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.parse::<usize>().is_ok() => parse_edge_list(text),
        Some(_) => parse_graph6(first.unwrap()),
        None => Err(parse_err(1, "empty input")),
    }
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}
