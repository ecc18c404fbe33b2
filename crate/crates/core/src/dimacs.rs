//! DIMACS `.col` reading and writing.
//!
//! Accepted input: `c` comment lines, blank lines, exactly one
//! `p edge <n> <e>` line, and `e <u> <v>` lines with `1 <= u, v <= n`.
//! The edge count on the `p` line is informational; repeated `e` lines
//! collapse. Output is canonical: `p edge n e` followed by sorted `e u v`
//! lines with `u < v`, LF-terminated.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_col(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        let mut fields = line.split_whitespace();
        match fields.next() {
            None | Some("c") => continue,
            Some("p") => {
                if n.is_some() {
                    return Err(Error::parse(line_no, "duplicate problem line"));
                }
                match fields.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(Error::parse(
                            line_no,
                            format!("expected `p edge`, found format {other:?}"),
                        ))
                    }
                }
                let vertices = parse_count(fields.next(), line_no, "vertex count")?;
                parse_count(fields.next(), line_no, "edge count")?;
                expect_end(fields.next(), line_no)?;
                n = Some(vertices);
            }
            Some("e") => {
                let n = n.ok_or_else(|| Error::parse(line_no, "edge line before the problem line"))?;
                let u = parse_vertex(fields.next(), n, line_no)?;
                let v = parse_vertex(fields.next(), n, line_no)?;
                expect_end(fields.next(), line_no)?;
                if u == v {
                    return Err(Error::parse(line_no, format!("self-loop on vertex {}", u + 1)));
                }
                edges.push((u, v));
            }
            Some(other) => {
                return Err(Error::parse(line_no, format!("unexpected line kind `{other}`")))
            }
        }
    }

    let n = n.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing problem line"))?;
    Graph::new(n, edges)
}

fn parse_count(field: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let field = field.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{field}`")))
}

fn parse_vertex(field: Option<&str>, n: usize, line: usize) -> Result<usize> {
    let v = parse_count(field, line, "vertex index")?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

fn expect_end(field: Option<&str>, line: usize) -> Result<()> {
    match field {
        None => Ok(()),
        Some(extra) => Err(Error::parse(line, format!("trailing token `{extra}`"))),
    }
}

pub fn emit_col(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.edge_count());
    let _ = writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}
