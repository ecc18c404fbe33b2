//! The detour baseline: k-coloring to CNF, then CNF to 3-coloring.
//!
//! The CNF side is the direct encoding with one variable per
//! (vertex, color) pair and pairwise at-most-one clauses. The graph side is
//! the textbook construction: a palette triangle `T, F, B`; per variable a
//! literal pair forming a triangle with `B`; per clause of width `w >= 2`
//! a chain of `w - 1` copy gadgets feeding an output vertex joined to `F`
//! and `B`. A unit clause joins its literal vertex to `F` and `B` directly.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadget::attach_chain_gadget;
use crate::graph::{Graph, GraphBuilder};
use crate::reduction::reduce;
use crate::solver::decide;

/// A literal: variable index (1-based) with a sign, as in DIMACS.
pub type Literal = i64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub var_count: usize,
    pub clauses: Vec<Vec<Literal>>,
    /// For direct coloring encodings, `annotation[var - 1] = (vertex, color)`.
    pub annotation: Option<Vec<(usize, usize)>>,
}

impl CnfFormula {
    pub fn new(var_count: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (idx, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::Argument(format!("clause {} is empty", idx + 1)));
            }
            if let Some(&lit) = clause
                .iter()
                .find(|&&lit| lit == 0 || lit.unsigned_abs() as usize > var_count)
            {
                return Err(Error::Argument(format!(
                    "literal {lit} in clause {} is outside 1..={var_count}",
                    idx + 1
                )));
            }
        }
        Ok(CnfFormula {
            var_count,
            clauses,
            annotation: None,
        })
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// `assignment[v - 1]` is the value of variable `v`.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&lit| assignment[lit.unsigned_abs() as usize - 1] == (lit > 0))
        })
    }
}

fn color_var(k: usize, vertex: usize, color: usize) -> Literal {
    (vertex * k + color + 1) as Literal
}

/// Direct encoding: `kn` variables and `n + n*C(k,2) + ke` clauses.
pub fn encode_col_as_cnf(g: &Graph, k: usize) -> Result<CnfFormula> {
    if k < 2 {
        return Err(Error::Argument(format!("palette size must be at least 2, got {k}")));
    }
    let n = g.vertex_count();
    let mut clauses = Vec::with_capacity(n + n * k * (k - 1) / 2 + k * g.edge_count());
    for i in 0..n {
        clauses.push((0..k).map(|j| color_var(k, i, j)).collect());
    }
    for i in 0..n {
        for j1 in 0..k {
            for j2 in j1 + 1..k {
                clauses.push(vec![-color_var(k, i, j1), -color_var(k, i, j2)]);
            }
        }
    }
    for &(u, v) in g.edges() {
        for c in 0..k {
            clauses.push(vec![-color_var(k, u, c), -color_var(k, v, c)]);
        }
    }
    let mut formula = CnfFormula::new(k * n, clauses)?;
    formula.annotation = Some((0..n).flat_map(|i| (0..k).map(move |j| (i, j))).collect());
    Ok(formula)
}

/// Where the pieces of a CNF formula live in its 3-coloring graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfGraphMap {
    pub t_vertex: usize,
    pub f_vertex: usize,
    pub b_vertex: usize,
    /// `literal_vertices[v - 1] = (positive, negative)`.
    pub literal_vertices: Vec<(usize, usize)>,
    /// Vertex forced to the true color for each clause.
    pub clause_outputs: Vec<usize>,
}

impl CnfGraphMap {
    pub fn literal_vertex(&self, lit: Literal) -> usize {
        let (pos, neg) = self.literal_vertices[lit.unsigned_abs() as usize - 1];
        if lit > 0 {
            pos
        } else {
            neg
        }
    }
}

pub fn encode_cnf_as_3col(f: &CnfFormula) -> Result<(Graph, CnfGraphMap)> {
    let mut b = GraphBuilder::new();
    let t = b.add_labeled_vertex("T");
    let fv = b.add_labeled_vertex("F");
    let base = b.add_labeled_vertex("B");
    for (u, v) in [(t, fv), (t, base), (fv, base)] {
        b.add_edge(u, v)?;
    }

    let mut literal_vertices = Vec::with_capacity(f.var_count);
    for var in 1..=f.var_count {
        let pos = b.add_labeled_vertex(format!("x{var}"));
        let neg = b.add_labeled_vertex(format!("!x{var}"));
        for (u, v) in [(pos, neg), (pos, base), (neg, base)] {
            b.add_edge(u, v)?;
        }
        literal_vertices.push((pos, neg));
    }
    let mut map = CnfGraphMap {
        t_vertex: t,
        f_vertex: fv,
        b_vertex: base,
        literal_vertices,
        clause_outputs: Vec::with_capacity(f.clause_count()),
    };

    for (idx, clause) in f.clauses.iter().enumerate() {
        if clause.is_empty() {
            return Err(Error::Argument(format!("clause {} is empty", idx + 1)));
        }
        // Repeated literals would give the chain gadget repeated inputs.
        let mut inputs: Vec<usize> = Vec::with_capacity(clause.len());
        for &lit in clause {
            if lit == 0 || lit.unsigned_abs() as usize > f.var_count {
                return Err(Error::Argument(format!("literal {lit} out of range")));
            }
            let v = map.literal_vertex(lit);
            if !inputs.contains(&v) {
                inputs.push(v);
            }
        }
        let out = if inputs.len() == 1 {
            inputs[0]
        } else {
            let out = b.add_vertex();
            attach_chain_gadget(&mut b, &inputs, out)?;
            out
        };
        b.add_edge(out, fv)?;
        b.add_edge(out, base)?;
        map.clause_outputs.push(out);
    }
    Ok((b.build(), map))
}

/// Satisfiability by trying all `2^var_count` assignments.
pub fn is_satisfiable_exhaustive(f: &CnfFormula) -> Result<bool> {
    if f.var_count > 24 {
        return Err(Error::Argument(format!(
            "{} variables is too many for exhaustive enumeration",
            f.var_count
        )));
    }
    let mut assignment = vec![false; f.var_count];
    Ok((0u32..1 << f.var_count).any(|bits| {
        for (i, value) in assignment.iter_mut().enumerate() {
            *value = bits >> i & 1 == 1;
        }
        f.is_satisfied_by(&assignment)
    }))
}

pub fn emit_dimacs_cnf(f: &CnfFormula) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", f.var_count, f.clause_count());
    for clause in &f.clauses {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

/// Parses DIMACS CNF. Clauses may span lines; each ends at a `0`. The clause
/// count on the header must match.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line == "%" {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate problem line"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(Error::parse(line_no, "expected `p cnf <vars> <clauses>`"));
            }
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("invalid count `{s}`")))
            };
            header = Some((parse(fields[2])?, parse(fields[3])?));
            continue;
        }
        let (vars, _) = header.ok_or_else(|| Error::parse(line_no, "clause before the problem line"))?;
        for token in line.split_whitespace() {
            let lit: Literal = token
                .parse()
                .map_err(|_| Error::parse(line_no, format!("invalid literal `{token}`")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(Error::parse(line_no, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(Error::parse(line_no, format!("literal {lit} exceeds {vars} variables")));
            } else {
                current.push(lit);
            }
        }
    }

    let (vars, declared) = header.ok_or_else(|| Error::parse(last_line.max(1), "missing problem line"))?;
    if !current.is_empty() {
        return Err(Error::parse(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != declared {
        return Err(Error::parse(
            last_line.max(1),
            format!("header declares {declared} clauses but {} were read", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RouteSize {
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SatRouteSize {
    pub vars: usize,
    pub clauses: usize,
    pub vertices: usize,
    pub edges: usize,
}

/// SAT route divided by direct route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ratios {
    pub vertices: f64,
    pub edges: f64,
}

/// `None` when that side was not decided (no budget given, or timed out).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decisions {
    pub source: Option<bool>,
    pub sane: Option<bool>,
    pub sat_route: Option<bool>,
}

impl Decisions {
    /// False only if two sides reached different decisions.
    pub fn consistent(&self) -> bool {
        let known: Vec<bool> = [self.source, self.sane, self.sat_route].into_iter().flatten().collect();
        known.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteComparison {
    pub n: usize,
    pub e: usize,
    pub k: usize,
    pub sane: RouteSize,
    pub sat_route: SatRouteSize,
    pub ratios: Ratios,
    pub decisions: Decisions,
}

impl RouteComparison {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("comparison serializes");
        out.push('\n');
        out
    }
}

/// Builds both routes and, if `budget` is given, decides all three
/// instances (source at `k`, both outputs at 3) with that budget each.
pub fn compare_routes(g: &Graph, k: usize, budget: Option<Duration>) -> Result<RouteComparison> {
    let (sane_graph, _) = reduce(g, k)?;
    let cnf = encode_col_as_cnf(g, k)?;
    let (sat_graph, _) = encode_cnf_as_3col(&cnf)?;

    let sane = RouteSize {
        vertices: sane_graph.vertex_count(),
        edges: sane_graph.edge_count(),
    };
    let sat_route = SatRouteSize {
        vars: cnf.var_count,
        clauses: cnf.clause_count(),
        vertices: sat_graph.vertex_count(),
        edges: sat_graph.edge_count(),
    };
    let decisions = match budget {
        Some(budget) => Decisions {
            source: decide(g, k, budget).ok(),
            sane: decide(&sane_graph, 3, budget).ok(),
            sat_route: decide(&sat_graph, 3, budget).ok(),
        },
        None => Decisions {
            source: None,
            sane: None,
            sat_route: None,
        },
    };
    Ok(RouteComparison {
        n: g.vertex_count(),
        e: g.edge_count(),
        k,
        sane,
        sat_route,
        ratios: Ratios {
            vertices: sat_route.vertices as f64 / sane.vertices as f64,
            edges: sat_route.edges as f64 / sane.edges as f64,
        },
        decisions,
    })
}
