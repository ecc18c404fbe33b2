//! The copy gadget `GAD(x, y, z)` and its left-to-right chain
//! `GAD(x1, .., xk, z)`.
//!
//! Base gadget wiring, with fresh internals `a` and `b`:
//!
//! ```text
//!   x       y
//!   |       |
//!   a ----- b
//!    \     /
//!       z
//! ```
//!
//! In any proper 3-coloring, `x = y = c` forces `{a, b}` onto the other two
//! colors and hence `z = c`. Any other boundary coloring extends.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph::{Edge, GraphBuilder};

/// A gadget attached to a graph under construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    /// Inputs `x1..xk`, then the output `z`.
    pub boundary: Vec<usize>,
    /// Freshly allocated vertices, in allocation order.
    pub internal: Range<usize>,
    pub added_edges: Vec<Edge>,
}

impl GadgetInstance {
    pub fn arity(&self) -> usize {
        self.boundary.len() - 1
    }

    pub fn inputs(&self) -> &[usize] {
        &self.boundary[..self.arity()]
    }

    pub fn output(&self) -> usize {
        self.boundary[self.arity()]
    }

    /// Reconstructs an instance from its boundary and internal range by
    /// replaying the construction on a scratch builder.
    pub fn rebuild(boundary: &[usize], internal_start: usize, internal_len: usize) -> Result<Self> {
        if boundary.len() < 3 {
            return Err(Error::Construction(format!(
                "a gadget boundary needs at least 3 vertices, got {}",
                boundary.len()
            )));
        }
        if boundary.iter().any(|&v| v >= internal_start) {
            return Err(Error::Construction(
                "boundary vertices must precede the internal range".into(),
            ));
        }
        let mut scratch = GraphBuilder::with_vertices(internal_start);
        let (inputs, z) = boundary.split_at(boundary.len() - 1);
        let instance = attach_chain_gadget(&mut scratch, inputs, z[0])?;
        if instance.internal.len() != internal_len {
            return Err(Error::Construction(format!(
                "arity {} gadget has {} internal vertices, not {internal_len}",
                inputs.len(),
                instance.internal.len()
            )));
        }
        Ok(instance)
    }
}

fn check_boundary(builder: &GraphBuilder, vertices: &[usize]) -> Result<()> {
    for (i, &v) in vertices.iter().enumerate() {
        if v >= builder.vertex_count() {
            return Err(Error::Construction(format!("vertex {v} does not exist")));
        }
        if vertices[..i].contains(&v) {
            return Err(Error::Construction(format!("boundary vertex {v} repeated")));
        }
    }
    Ok(())
}

/// Attaches `GAD(x, y, z)`: allocates `a`, `b` and adds
/// `x-a, y-b, a-b, a-z, b-z`.
pub fn attach_base_gadget(
    builder: &mut GraphBuilder,
    x: usize,
    y: usize,
    z: usize,
) -> Result<GadgetInstance> {
    check_boundary(builder, &[x, y, z])?;
    let a = builder.add_vertex();
    let b = builder.add_vertex();
    let added_edges: Vec<Edge> = [(x, a), (y, b), (a, b), (a, z), (b, z)]
        .into_iter()
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    for &(u, v) in &added_edges {
        builder.add_edge(u, v)?;
    }
    Ok(GadgetInstance {
        boundary: vec![x, y, z],
        internal: a..b + 1,
        added_edges,
    })
}

/// Attaches `GAD(x1, .., xk, z)` as the chain
/// `GAD(x1, x2, y1), GAD(y1, x3, y2), .., GAD(y_{k-2}, xk, z)`.
///
/// Allocation order is `y1, a, b, y2, a, b, .., a, b`, giving `3k - 4`
/// internal vertices and `5(k - 1)` edges.
pub fn attach_chain_gadget(
    builder: &mut GraphBuilder,
    inputs: &[usize],
    z: usize,
) -> Result<GadgetInstance> {
    let k = inputs.len();
    if k < 2 {
        return Err(Error::Construction(format!("chain gadget needs at least 2 inputs, got {k}")));
    }
    let mut boundary = inputs.to_vec();
    boundary.push(z);
    check_boundary(builder, &boundary)?;

    let start = builder.vertex_count();
    let mut added_edges = Vec::with_capacity(5 * (k - 1));
    let mut carry = inputs[0];
    for (step, &x) in inputs[1..].iter().enumerate() {
        let out = if step + 2 == k { z } else { builder.add_vertex() };
        let base = attach_base_gadget(builder, carry, x, out)?;
        added_edges.extend(base.added_edges);
        carry = out;
    }
    Ok(GadgetInstance {
        boundary,
        internal: start..builder.vertex_count(),
        added_edges,
    })
}

/// Finds a proper coloring of the gadget's internals given boundary colors
/// (one per boundary vertex, inputs then output). Internals are assigned in
/// allocation order, lowest color first, with backtracking.
pub fn extend_coloring(instance: &GadgetInstance, boundary_colors: &[usize]) -> Result<Vec<usize>> {
    if boundary_colors.len() != instance.boundary.len() {
        return Err(Error::Argument(format!(
            "{} boundary colors for a boundary of {}",
            boundary_colors.len(),
            instance.boundary.len()
        )));
    }
    if boundary_colors.iter().any(|&c| c >= 3) {
        return Err(Error::Argument(format!("boundary colors {boundary_colors:?} exceed 3 colors")));
    }

    let start = instance.internal.start;
    let m = instance.internal.len();
    // For each internal vertex, constraints against earlier-decided vertices:
    // fixed boundary colors and lower-indexed internals.
    let mut fixed: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut earlier: Vec<Vec<usize>> = vec![Vec::new(); m];
    let boundary_color = |v: usize| {
        instance
            .boundary
            .iter()
            .position(|&b| b == v)
            .map(|i| boundary_colors[i])
    };
    for &(u, v) in &instance.added_edges {
        match (instance.internal.contains(&u), instance.internal.contains(&v)) {
            (true, true) => {
                let (lo, hi) = (u.min(v) - start, u.max(v) - start);
                earlier[hi].push(lo);
            }
            (true, false) | (false, true) => {
                let (inner, outer) = if instance.internal.contains(&u) { (u, v) } else { (v, u) };
                let c = boundary_color(outer).ok_or_else(|| {
                    Error::Invariant(format!("gadget edge touches foreign vertex {outer}"))
                })?;
                fixed[inner - start].push(c);
            }
            (false, false) => {
                let (cu, cv) = (boundary_color(u), boundary_color(v));
                if cu.is_some() && cu == cv {
                    return Err(Error::NotExtendable(boundary_colors.to_vec()));
                }
            }
        }
    }

    let mut colors = vec![0usize; m];
    let mut i = 0usize;
    let mut next = vec![0usize; m];
    while i < m {
        let mut placed = false;
        while next[i] < 3 {
            let c = next[i];
            next[i] += 1;
            if !fixed[i].contains(&c) && earlier[i].iter().all(|&j| colors[j] != c) {
                colors[i] = c;
                placed = true;
                break;
            }
        }
        if placed {
            i += 1;
        } else {
            next[i] = 0;
            if i == 0 {
                return Err(Error::NotExtendable(boundary_colors.to_vec()));
            }
            i -= 1;
        }
    }
    Ok(colors)
}

/// Exhaustive boundary semantics of the arity-`k` chain gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSemantics {
    pub arity: usize,
    /// Indexed by the boundary coloring read as a base-3 number, first
    /// boundary vertex most significant. Length `3^(k+1)`.
    pub table: Vec<bool>,
}

impl GadgetSemantics {
    pub fn boundary_colorings(arity: usize) -> impl Iterator<Item = Vec<usize>> {
        let width = arity + 1;
        (0..3usize.pow(width as u32)).map(move |idx| decode_base3(idx, width))
    }

    pub fn is_extendable(&self, boundary: &[usize]) -> bool {
        self.table[encode_base3(boundary)]
    }
}

fn decode_base3(mut idx: usize, width: usize) -> Vec<usize> {
    let mut digits = vec![0; width];
    for d in digits.iter_mut().rev() {
        *d = idx % 3;
        idx /= 3;
    }
    digits
}

fn encode_base3(digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * 3 + d)
}

/// Decides, for every boundary coloring of a standalone arity-`k` chain
/// gadget, whether some coloring of the internals is proper. Search is a
/// depth-first enumeration in reverse allocation order, pruning on edges
/// whose endpoints are both decided; it shares no code with
/// [`extend_coloring`].
pub fn semantics_by_brute_force(k: usize) -> Result<GadgetSemantics> {
    if !(2..=6).contains(&k) {
        return Err(Error::ArityRange(k));
    }
    let mut builder = GraphBuilder::with_vertices(k + 1);
    let inputs: Vec<usize> = (0..k).collect();
    let instance = attach_chain_gadget(&mut builder, &inputs, k)?;
    let graph = builder.build();
    let total = graph.vertex_count();

    // Vertices in decision order: boundary first, then internals last-to-first.
    let order: Vec<usize> = (0..=k).chain(instance.internal.clone().rev()).collect();
    let mut position = vec![0; total];
    for (pos, &v) in order.iter().enumerate() {
        position[v] = pos;
    }
    let back_neighbors: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| {
            graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| position[w] < position[v])
                .collect()
        })
        .collect();

    fn search(pos: usize, order: &[usize], back: &[Vec<usize>], colors: &mut [usize]) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        (0..3).any(|c| {
            if back[pos].iter().any(|&w| colors[w] == c) {
                return false;
            }
            colors[v] = c;
            search(pos + 1, order, back, colors)
        })
    }

    let table = GadgetSemantics::boundary_colorings(k)
        .map(|boundary| {
            let mut colors = vec![usize::MAX; total];
            colors[..=k].copy_from_slice(&boundary);
            // Boundary vertices are pairwise non-adjacent, so only internals
            // need searching.
            search(k + 1, &order, &back_neighbors, &mut colors)
        })
        .collect();
    Ok(GadgetSemantics { arity: k, table })
}
