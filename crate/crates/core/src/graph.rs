//! Simple undirected graphs and vertex colorings.
//!
//! Vertices are dense indices `0..n`. Edges are stored once, as `(u, v)` with
//! `u < v`, sorted lexicographically. DIMACS 1-indexing lives only in
//! [`crate::dimacs`].

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub type Edge = (usize, usize);

/// Equality compares structure only; labels are for display.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    /// Builds a graph from arbitrary edge pairs. Duplicates (in either
    /// orientation) collapse; self-loops and out-of-range endpoints are errors.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_canonical(n, set.into_iter().collect()))
    }

    /// `edges` must already be canonical: sorted, deduplicated, `u < v < n`.
    pub(crate) fn from_canonical(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v && v < n));
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adjacency,
            labels: BTreeMap::new(),
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Self {
        self.labels = labels;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

/// The complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_canonical(n, edges)
}

/// The cycle on `n >= 3` vertices.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Argument(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// A total assignment of colors `0..palette` to the vertices `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    palette: usize,
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(palette: usize, colors: Vec<usize>) -> Result<Self> {
        if palette == 0 {
            return Err(Error::Argument("palette size must be positive".into()));
        }
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= palette) {
            return Err(Error::ColorOutOfRange {
                vertex,
                color,
                palette,
            });
        }
        Ok(Coloring { palette, colors })
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }
}

/// True iff no edge of `g` is monochromatic under `c`.
pub fn is_proper_coloring(g: &Graph, c: &Coloring) -> Result<bool> {
    if c.len() != g.vertex_count() {
        return Err(Error::DomainMismatch {
            graph: g.vertex_count(),
            coloring: c.len(),
        });
    }
    Ok(g.edges().iter().all(|&(u, v)| c.color(u) != c.color(v)))
}

/// Incremental graph used by the gadget and reduction builders.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    n: usize,
    edges: BTreeSet<Edge>,
    labels: BTreeMap<usize, String>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        GraphBuilder {
            n,
            ..Self::default()
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_labeled_vertex(&mut self, label: impl Into<String>) -> usize {
        let v = self.add_vertex();
        self.labels.insert(v, label.into());
        v
    }

    /// Returns false if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop on vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) references a vertex that does not exist yet"
            )));
        }
        Ok(self.edges.insert((u.min(v), u.max(v))))
    }

    pub fn build(self) -> Graph {
        Graph::from_canonical(self.n, self.edges.into_iter().collect()).with_labels(self.labels)
    }
}
