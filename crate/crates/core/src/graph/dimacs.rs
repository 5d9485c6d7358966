//! DIMACS-style edge lists: `p edge <n> <m>` followed by `e <u> <v>` lines
//! with 1-indexed vertices. Lines starting with `c` are comments.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut builder: Option<GraphBuilder> = None;
    let mut seen = BTreeSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line_no, "second problem line"));
                }
                if fields.len() != 4 || (fields[1] != "edge" && fields[1] != "col") {
                    return Err(parse_err(line_no, "expected `p edge <n> <m>`"));
                }
                let n = parse_count(fields[2], line_no)?;
                let m = parse_count(fields[3], line_no)?;
                header = Some((n, m));
                builder = Some(GraphBuilder::new(n));
            }
            "e" => {
                let (n, _) =
                    header.ok_or_else(|| parse_err(line_no, "edge before problem line"))?;
                if fields.len() != 3 {
                    return Err(parse_err(line_no, "expected `e <u> <v>`"));
                }
                let u = parse_vertex(fields[1], n, line_no)?;
                let v = parse_vertex(fields[2], n, line_no)?;
                if u == v {
                    return Err(parse_err(line_no, format!("self-loop at vertex {}", u + 1)));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(parse_err(
                        line_no,
                        format!("duplicate edge {} {}", u + 1, v + 1),
                    ));
                }
                builder.as_mut().unwrap().add_edge(u, v);
            }
            other => {
                return Err(parse_err(line_no, format!("unknown line type `{other}`")));
            }
        }
    }
    let (_, m) = header.ok_or_else(|| parse_err(last_line.max(1), "missing problem line"))?;
    if seen.len() != m {
        return Err(parse_err(
            last_line.max(1),
            format!("header announces {m} edges, found {}", seen.len()),
        ));
    }
    Ok(builder.unwrap().build())
}

fn parse_count(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("`{tok}` is not a non-negative integer")))
}

fn parse_vertex(tok: &str, n: usize, line: usize) -> Result<usize> {
    let v: usize = parse_count(tok, line)?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

pub fn read_file(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn write(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}
