//! Coloring witness files: one `v <vertex> <color>` line per vertex, vertex
//! 1-indexed, color 0-indexed. `c` lines and blank lines are ignored.

use std::fmt::Write as _;

use colreduce::Coloring;

pub fn emit(c: &Coloring) -> String {
    let mut out = String::new();
    for (v, color) in c.colors().iter().enumerate() {
        let _ = writeln!(out, "v {} {}", v + 1, color);
    }
    out
}

/// Returns one color per vertex of an `n`-vertex graph.
pub fn parse(text: &str, n: usize) -> Result<Vec<usize>, String> {
    let mut colors: Vec<Option<usize>> = vec![None; n];
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.as_slice() {
            [] | ["c", ..] => continue,
            ["v", vertex, color] => {
                let vertex: usize = vertex
                    .parse()
                    .map_err(|_| format!("line {line_no}: invalid vertex `{vertex}`"))?;
                let color: usize = color
                    .parse()
                    .map_err(|_| format!("line {line_no}: invalid color `{color}`"))?;
                if vertex == 0 || vertex > n {
                    return Err(format!("line {line_no}: vertex {vertex} outside 1..={n}"));
                }
                if colors[vertex - 1].replace(color).is_some() {
                    return Err(format!("line {line_no}: vertex {vertex} colored twice"));
                }
            }
            _ => return Err(format!("line {line_no}: expected `v <vertex> <color>`")),
        }
    }
    colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| format!("vertex {} has no color", v + 1)))
        .collect()
}
