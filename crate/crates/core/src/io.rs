//! Text formats for graphs.
//!
//! Edge list: first line `n m`, then `m` lines `u v`; 0-based ids,
//! whitespace separated, `#` starts a comment.
//!
//! DIMACS-like: `p <n> <m>` (an optional word such as `edge` may follow
//! `p`), then `e u v` lines with 0-based ids; `c` and `#` lines are comments.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(Format::EdgeList),
            "dimacs" => Ok(Format::Dimacs),
            _ => Err(Error::Invalid(format!("unknown graph format '{s}'"))),
        }
    }
}

impl Format {
    /// Guesses the format from the first meaningful line.
    pub fn detect(text: &str) -> Format {
        for line in text.lines() {
            let t = strip_comment(line).trim();
            if t.is_empty() || t.starts_with('c') {
                continue;
            }
            return if t.starts_with('p') { Format::Dimacs } else { Format::EdgeList };
        }
        Format::EdgeList
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| err(line, format!("bad {what} '{tok}'")))
}

pub fn parse(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

pub fn serialize(g: &Graph, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::EdgeList => {
            let _ = writeln!(out, "{} {}", g.n(), g.m());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        Format::Dimacs => {
            let _ = writeln!(out, "p {} {}", g.n(), g.m());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "e {u} {v}");
            }
        }
    }
    out
}

fn check_pair(u: usize, v: usize, n: usize, line: usize) -> Result<()> {
    if u >= n || v >= n {
        return Err(err(line, format!("edge ({u}, {v}) out of range for n = {n}")));
    }
    if u == v {
        return Err(err(line, format!("self-loop on {u}")));
    }
    Ok(())
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let t = strip_comment(raw).trim();
        if t.is_empty() {
            continue;
        }
        let mut toks = t.split_whitespace();
        let a = num(toks.next(), line, "integer")?;
        let b = num(toks.next(), line, "integer")?;
        if toks.next().is_some() {
            return Err(err(line, "expected exactly two integers"));
        }
        match header {
            None => header = Some((a, b)),
            Some((n, m)) => {
                check_pair(a, b, n, line)?;
                if edges.len() == m {
                    return Err(err(line, format!("more than the {m} declared edges")));
                }
                edges.push((a, b));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| err(1, "missing 'n m' header"))?;
    if edges.len() != m {
        return Err(err(last, format!("declared {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges)
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let t = strip_comment(raw).trim();
        if t.is_empty() {
            continue;
        }
        let mut toks = t.split_whitespace();
        match toks.next() {
            Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(err(line, "duplicate 'p' line"));
                }
                let mut rest: Vec<&str> = toks.collect();
                if rest.len() == 3 && rest[0].parse::<usize>().is_err() {
                    rest.remove(0);
                }
                if rest.len() != 2 {
                    return Err(err(line, "expected 'p <n> <m>'"));
                }
                let n = num(Some(rest[0]), line, "vertex count")?;
                let m = num(Some(rest[1]), line, "edge count")?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| err(line, "'e' line before 'p' line"))?;
                let u = num(toks.next(), line, "endpoint")?;
                let v = num(toks.next(), line, "endpoint")?;
                if toks.next().is_some() {
                    return Err(err(line, "trailing tokens"));
                }
                check_pair(u, v, n, line)?;
                edges.push((u, v));
            }
            Some(other) => return Err(err(line, format!("unknown line type '{other}'"))),
            None => unreachable!(),
        }
    }
    let (n, m) = header.ok_or_else(|| err(last.max(1), "missing 'p' line"))?;
    if edges.len() != m {
        return Err(err(last, format!("declared {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_k2() {
        let g = parse("p 2 1\ne 0 1\n", Format::Dimacs).unwrap();
        assert_eq!(g, Graph::complete(2));
        let g = parse("c hello\np edge 2 1\ne 0 1\n", Format::Dimacs).unwrap();
        assert_eq!(g, Graph::complete(2));
    }

    #[test]
    fn out_of_range_reports_line() {
        let e = parse("p 2 1\ne 0 5\n", Format::Dimacs).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
        let e = parse("2 1\n# c\n0 5\n", Format::EdgeList).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
    }

    #[test]
    fn edge_list_with_comments() {
        let g = parse("# c4\n4 4\n0 1\n1 2 # mid\n2 3\n3 0\n", Format::EdgeList).unwrap();
        assert_eq!(g.m(), 4);
        assert_eq!(serialize(&g, Format::EdgeList), "4 4\n0 1\n0 3\n1 2\n2 3\n");
    }

    #[test]
    fn malformed_lines() {
        assert!(parse("3 1\n0 x\n", Format::EdgeList).is_err());
        assert!(parse("3 2\n0 1\n", Format::EdgeList).is_err());
        assert!(parse("e 0 1\n", Format::Dimacs).is_err());
        assert!(parse("", Format::EdgeList).is_err());
    }

    #[test]
    fn detect() {
        assert_eq!(Format::detect("c x\np 3 0\n"), Format::Dimacs);
        assert_eq!(Format::detect("# x\n3 0\n"), Format::EdgeList);
    }
}
