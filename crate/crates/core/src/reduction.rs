//! The direct reduction from k-colorability to 3-colorability.
//!
//! `G'` is built in a fixed order so vertex numbering is reproducible:
//!
//! 1. palette triangle `T, F, R` (vertices 0, 1, 2);
//! 2. indicator vertices `v_ij` row-major, each adjacent to `R`;
//! 3. per source vertex `i`, the chain gadget `GAD(v_i0, .., v_i(k-1), T)`
//!    (at least one color);
//! 4. per source vertex `i` and colors `j1 < j2`, `GAD(v_ij1, v_ij2, F)`
//!    (at most one color);
//! 5. per source edge `(u, v)` and color `c`, `GAD(v_uc, v_vc, F)`.
//!
//! An indicator colored like `T` means "source vertex `i` has color `j`".

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadget::{attach_base_gadget, attach_chain_gadget, extend_coloring, GadgetInstance};
use crate::graph::{is_proper_coloring, Coloring, Graph, GraphBuilder};

/// Colors given to `T`, `F`, `R` by [`lift_witness`].
pub const TRUE_COLOR: usize = 0;
pub const FALSE_COLOR: usize = 1;
pub const RESERVED_COLOR: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GadgetTag {
    AtLeastOne { vertex: usize },
    AtMostOne { vertex: usize, colors: [usize; 2] },
    EdgeConflict { edge: [usize; 2], color: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedGadget {
    pub tag: GadgetTag,
    pub instance: GadgetInstance,
}

/// Bookkeeping from `G'` back to the source graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    pub k: usize,
    pub n: usize,
    pub e: usize,
    pub t_vertex: usize,
    pub f_vertex: usize,
    pub r_vertex: usize,
    /// `indicator[i][j]` is the vertex of `G'` standing for "vertex `i` has color `j`".
    pub indicator: Vec<Vec<usize>>,
    pub gadget_log: Vec<TaggedGadget>,
}

pub fn reduce(g: &Graph, k: usize) -> Result<(Graph, ReductionMap)> {
    if k < 2 {
        return Err(Error::Argument(format!("palette size must be at least 2, got {k}")));
    }
    let n = g.vertex_count();
    let mut b = GraphBuilder::new();

    let t = b.add_labeled_vertex("T");
    let f = b.add_labeled_vertex("F");
    let r = b.add_labeled_vertex("R");
    for (u, v) in [(t, f), (t, r), (f, r)] {
        b.add_edge(u, v)?;
    }

    let mut indicator = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            let v = b.add_labeled_vertex(format!("v{}_{}", i + 1, j + 1));
            b.add_edge(v, r)?;
            row.push(v);
        }
        indicator.push(row);
    }

    let mut gadget_log = Vec::new();
    for (i, row) in indicator.iter().enumerate() {
        let instance = attach_chain_gadget(&mut b, row, t)?;
        gadget_log.push(TaggedGadget {
            tag: GadgetTag::AtLeastOne { vertex: i },
            instance,
        });
    }
    for (i, row) in indicator.iter().enumerate() {
        for j1 in 0..k {
            for j2 in j1 + 1..k {
                let instance = attach_base_gadget(&mut b, row[j1], row[j2], f)?;
                gadget_log.push(TaggedGadget {
                    tag: GadgetTag::AtMostOne {
                        vertex: i,
                        colors: [j1, j2],
                    },
                    instance,
                });
            }
        }
    }
    for &(u, v) in g.edges() {
        for (c, (&x, &y)) in indicator[u].iter().zip(&indicator[v]).enumerate() {
            let instance = attach_base_gadget(&mut b, x, y, f)?;
            gadget_log.push(TaggedGadget {
                tag: GadgetTag::EdgeConflict { edge: [u, v], color: c },
                instance,
            });
        }
    }

    let map = ReductionMap {
        k,
        n,
        e: g.edge_count(),
        t_vertex: t,
        f_vertex: f,
        r_vertex: r,
        indicator,
        gadget_log,
    };
    Ok((b.build(), map))
}

/// Turns a proper k-coloring of `g` into a proper 3-coloring of `g_prime`.
pub fn lift_witness(g: &Graph, c: &Coloring, g_prime: &Graph, map: &ReductionMap) -> Result<Coloring> {
    check_source(g, map)?;
    if c.palette() > map.k {
        return Err(Error::Argument(format!(
            "coloring uses a palette of {} but the reduction was built for {}",
            c.palette(),
            map.k
        )));
    }
    if !is_proper_coloring(g, c)? {
        return Err(Error::Argument("source coloring is not proper".into()));
    }

    let mut colors = vec![usize::MAX; g_prime.vertex_count()];
    colors[map.t_vertex] = TRUE_COLOR;
    colors[map.f_vertex] = FALSE_COLOR;
    colors[map.r_vertex] = RESERVED_COLOR;
    for (i, row) in map.indicator.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            colors[v] = if c.color(i) == j { TRUE_COLOR } else { FALSE_COLOR };
        }
    }
    for gadget in &map.gadget_log {
        let inst = &gadget.instance;
        let boundary: Vec<usize> = inst.boundary.iter().map(|&v| colors[v]).collect();
        let internal = extend_coloring(inst, &boundary).map_err(|err| {
            Error::Invariant(format!("gadget {:?} did not extend: {err}", gadget.tag))
        })?;
        colors[inst.internal.clone()].copy_from_slice(&internal);
    }
    if colors.contains(&usize::MAX) {
        return Err(Error::Invariant("reduction map does not cover every vertex".into()));
    }

    let lifted = Coloring::new(3, colors)?;
    if !is_proper_coloring(g_prime, &lifted)? {
        return Err(Error::Invariant("lifted coloring is not proper".into()));
    }
    Ok(lifted)
}

/// Reads a k-coloring of `g` off a proper 3-coloring of `g_prime`.
pub fn project_witness(
    g: &Graph,
    g_prime: &Graph,
    map: &ReductionMap,
    c3: &Coloring,
) -> Result<Coloring> {
    check_source(g, map)?;
    if c3.palette() > 3 {
        return Err(Error::Argument(format!("expected a 3-coloring, got palette {}", c3.palette())));
    }
    if !is_proper_coloring(g_prime, c3)? {
        return Err(Error::Argument("3-coloring of the reduced graph is not proper".into()));
    }

    let true_color = c3.color(map.t_vertex);
    let mut colors = Vec::with_capacity(map.n);
    for (i, row) in map.indicator.iter().enumerate() {
        let mut chosen = row
            .iter()
            .enumerate()
            .filter(|&(_, &v)| c3.color(v) == true_color)
            .map(|(j, _)| j);
        match (chosen.next(), chosen.next()) {
            (Some(j), None) => colors.push(j),
            (None, _) => {
                return Err(Error::Invariant(format!("vertex {i} has no indicator colored T")))
            }
            (Some(_), Some(_)) => {
                return Err(Error::Invariant(format!("vertex {i} has several indicators colored T")))
            }
        }
    }

    let projected = Coloring::new(map.k, colors)?;
    if !is_proper_coloring(g, &projected)? {
        return Err(Error::Invariant("projected coloring is not proper".into()));
    }
    Ok(projected)
}

fn check_source(g: &Graph, map: &ReductionMap) -> Result<()> {
    if g.vertex_count() != map.n || g.edge_count() != map.e {
        return Err(Error::Argument(format!(
            "graph has n={}, e={} but the reduction map was built for n={}, e={}",
            g.vertex_count(),
            g.edge_count(),
            map.n,
            map.e
        )));
    }
    Ok(())
}

/// Vertex count of `G'`: `3 + n(k^2 + 3k - 4) + 2ke`.
pub fn closed_form_vertices(n: usize, e: usize, k: usize) -> usize {
    3 + n * (k * k + 3 * k - 4) + 2 * k * e
}

/// Edge count of `G'`: `3 + n(2.5k^2 + 3.5k - 5) + 5ke`, kept in integers
/// as `5k(k-1)/2 + 6k - 5` per source vertex.
pub fn closed_form_edges(n: usize, e: usize, k: usize) -> usize {
    3 + n * (5 * k * (k - 1) / 2 + 6 * k - 5) + 5 * k * e
}

/// Published upper bound on the vertex count, `2k^2 n + 2ke`.
pub fn stated_vertex_bound(n: usize, e: usize, k: usize) -> usize {
    2 * k * k * n + 2 * k * e
}

/// Published upper bound on the edge count, `3k^2 n + 2ke`.
pub fn stated_edge_bound(n: usize, e: usize, k: usize) -> usize {
    3 * k * k * n + 2 * k * e
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeReport {
    pub n: usize,
    pub e: usize,
    pub k: usize,
    pub vertices: usize,
    pub edges: usize,
    pub formula_vertices: usize,
    pub formula_edges: usize,
    pub stated_bound_vertices: usize,
    pub stated_bound_edges: usize,
    pub vertex_bound_holds: bool,
    pub edge_bound_holds: bool,
}

impl SizeReport {
    pub fn from_reduction(g_prime: &Graph, map: &ReductionMap) -> Self {
        let (n, e, k) = (map.n, map.e, map.k);
        let vertices = g_prime.vertex_count();
        let edges = g_prime.edge_count();
        let stated_bound_vertices = stated_vertex_bound(n, e, k);
        let stated_bound_edges = stated_edge_bound(n, e, k);
        SizeReport {
            n,
            e,
            k,
            vertices,
            edges,
            formula_vertices: closed_form_vertices(n, e, k),
            formula_edges: closed_form_edges(n, e, k),
            stated_bound_vertices,
            stated_bound_edges,
            vertex_bound_holds: vertices <= stated_bound_vertices,
            edge_bound_holds: edges <= stated_bound_edges,
        }
    }

    pub fn matches_closed_form(&self) -> bool {
        self.vertices == self.formula_vertices && self.edges == self.formula_edges
    }
}

impl std::fmt::Display for SizeReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = |ok: bool| if ok { "holds" } else { "exceeded" };
        write!(
            f,
            "n={} e={} k={} -> vertices={} (closed form {}, bound {} {}) edges={} (closed form {}, bound {} {})",
            self.n,
            self.e,
            self.k,
            self.vertices,
            self.formula_vertices,
            self.stated_bound_vertices,
            mark(self.vertex_bound_holds),
            self.edges,
            self.formula_edges,
            self.stated_bound_edges,
            mark(self.edge_bound_holds),
        )
    }
}

pub fn size_report(g: &Graph, k: usize) -> Result<SizeReport> {
    let (g_prime, map) = reduce(g, k)?;
    Ok(SizeReport::from_reduction(&g_prime, &map))
}

#[derive(Serialize, Deserialize)]
struct GadgetRecord {
    tag: GadgetTag,
    boundary: Vec<usize>,
    internal_start: usize,
    internal_len: usize,
}

#[derive(Serialize, Deserialize)]
struct MapFile {
    k: usize,
    n: usize,
    e: usize,
    t: usize,
    f: usize,
    r: usize,
    indicator: Vec<Vec<usize>>,
    gadgets: Vec<GadgetRecord>,
}

impl ReductionMap {
    /// Sidecar document; keys appear in a fixed order.
    pub fn to_json(&self) -> String {
        let file = MapFile {
            k: self.k,
            n: self.n,
            e: self.e,
            t: self.t_vertex,
            f: self.f_vertex,
            r: self.r_vertex,
            indicator: self.indicator.clone(),
            gadgets: self
                .gadget_log
                .iter()
                .map(|g| GadgetRecord {
                    tag: g.tag,
                    boundary: g.instance.boundary.clone(),
                    internal_start: g.instance.internal.start,
                    internal_len: g.instance.internal.len(),
                })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("map serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MapFile = serde_json::from_str(text)
            .map_err(|err| Error::parse(err.line(), err.to_string()))?;
        if file.indicator.len() != file.n || file.indicator.iter().any(|row| row.len() != file.k) {
            return Err(Error::Argument("indicator table is not n x k".into()));
        }
        let gadget_log = file
            .gadgets
            .into_iter()
            .map(|rec| {
                Ok(TaggedGadget {
                    tag: rec.tag,
                    instance: GadgetInstance::rebuild(&rec.boundary, rec.internal_start, rec.internal_len)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(ReductionMap {
            k: file.k,
            n: file.n,
            e: file.e,
            t_vertex: file.t,
            f_vertex: file.f,
            r_vertex: file.r,
            indicator: file.indicator,
            gadget_log,
        })
    }
}
