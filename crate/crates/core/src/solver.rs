//! Exact k-colorability by backtracking.
//!
//! Branching picks the uncolored vertex with the fewest remaining colors
//! (ties to the lowest index). Assigning a color strikes it from every
//! uncolored neighbor and fails as soon as a neighbor runs out. Colors are
//! introduced in ascending order: a vertex may take any color already in use
//! or the next unused one. Once the uncolored vertices split into
//! independent components, each component is searched on its own.

use std::time::{Duration, Instant};

use crate::graph::{Coloring, Graph};

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(10);

/// How often (in expanded nodes) the clock is read.
const CLOCK_INTERVAL: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    Colorable(Coloring),
    Uncolorable,
    Timeout,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub stats: SolveStats,
}

impl SolveOutcome {
    pub fn witness(&self) -> Option<&Coloring> {
        match &self.status {
            SolveStatus::Colorable(c) => Some(c),
            _ => None,
        }
    }

    pub fn decision(&self) -> Result<bool, Indeterminate> {
        match self.status {
            SolveStatus::Colorable(_) => Ok(true),
            SolveStatus::Uncolorable => Ok(false),
            SolveStatus::Timeout => Err(Indeterminate),
        }
    }
}

/// The search ran out of budget before reaching a decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("search budget exhausted before a decision was reached")]
pub struct Indeterminate;

pub fn solve(g: &Graph, k: usize, budget: Duration) -> SolveOutcome {
    let start = Instant::now();
    let n = g.vertex_count();
    let mut nodes = 0;
    let status = if n == 0 {
        SolveStatus::Colorable(Coloring::new(k.max(1), Vec::new()).expect("empty coloring"))
    } else if k == 0 {
        SolveStatus::Uncolorable
    } else {
        // Symmetry breaking never needs more than n colors.
        let mut search = Search::new(g, k.min(n), start, budget);
        let result = search.run();
        nodes = search.nodes;
        match result {
            Ok(true) => SolveStatus::Colorable(
                Coloring::new(k, search.color).expect("search colors stay below k"),
            ),
            Ok(false) => SolveStatus::Uncolorable,
            Err(Indeterminate) => SolveStatus::Timeout,
        }
    };
    SolveOutcome {
        status,
        stats: SolveStats {
            nodes,
            elapsed: start.elapsed(),
        },
    }
}

/// Decision wrapper around [`solve`]; a timeout is reported as
/// [`Indeterminate`], never as a boolean.
pub fn decide(g: &Graph, k: usize, budget: Duration) -> Result<bool, Indeterminate> {
    solve(g, k, budget).decision()
}

const UNCOLORED: usize = usize::MAX;

struct Search<'a> {
    g: &'a Graph,
    palette: usize,
    words: usize,
    /// Remaining colors per vertex, `words` bitset words each.
    domains: Vec<u64>,
    color: Vec<usize>,
    trail: Vec<(usize, u64)>,
    assigned: Vec<usize>,
    stamp: Vec<u64>,
    epoch: u64,
    nodes: u64,
    start: Instant,
    budget: Duration,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, palette: usize, start: Instant, budget: Duration) -> Self {
        let n = g.vertex_count();
        let words = palette.div_ceil(64);
        let mut full = vec![u64::MAX; words];
        if !palette.is_multiple_of(64) {
            full[words - 1] = (1u64 << (palette % 64)) - 1;
        }
        Search {
            g,
            palette,
            words,
            domains: full.iter().copied().cycle().take(n * words).collect(),
            color: vec![UNCOLORED; n],
            trail: Vec::new(),
            assigned: Vec::new(),
            stamp: vec![0; n],
            epoch: 0,
            nodes: 0,
            start,
            budget,
        }
    }

    fn run(&mut self) -> Result<bool, Indeterminate> {
        let all: Vec<usize> = (0..self.g.vertex_count()).collect();
        for component in self.components(&all) {
            if !self.solve_component(&component, None)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn domain_size(&self, v: usize) -> u32 {
        self.domains[v * self.words..(v + 1) * self.words]
            .iter()
            .map(|w| w.count_ones())
            .sum()
    }

    fn has_color(&self, v: usize, c: usize) -> bool {
        self.domains[v * self.words + c / 64] & (1 << (c % 64)) != 0
    }

    /// Colors `v` with `c` and prunes neighbors; false on a wipe-out.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = c;
        self.assigned.push(v);
        let g = self.g;
        for &u in g.neighbors(v) {
            if self.color[u] != UNCOLORED || !self.has_color(u, c) {
                continue;
            }
            let idx = u * self.words + c / 64;
            self.trail.push((idx, self.domains[idx]));
            self.domains[idx] &= !(1 << (c % 64));
            if self.domain_size(u) == 0 {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, trail_len: usize, assigned_len: usize) {
        while self.trail.len() > trail_len {
            let (idx, word) = self.trail.pop().expect("trail entry");
            self.domains[idx] = word;
        }
        while self.assigned.len() > assigned_len {
            let v = self.assigned.pop().expect("assigned vertex");
            self.color[v] = UNCOLORED;
        }
    }

    /// Connected components of the uncolored vertices in `set`, each sorted,
    /// ordered by smallest vertex. `set` must be sorted.
    fn components(&mut self, set: &[usize]) -> Vec<Vec<usize>> {
        self.epoch += 2;
        let (member, seen) = (self.epoch, self.epoch + 1);
        for &v in set {
            if self.color[v] == UNCOLORED {
                self.stamp[v] = member;
            }
        }
        let mut out = Vec::new();
        for &root in set {
            if self.stamp[root] != member {
                continue;
            }
            self.stamp[root] = seen;
            let mut component = vec![root];
            let mut head = 0;
            while head < component.len() {
                let v = component[head];
                head += 1;
                for &u in self.g.neighbors(v) {
                    if self.stamp[u] == member {
                        self.stamp[u] = seen;
                        component.push(u);
                    }
                }
            }
            component.sort_unstable();
            out.push(component);
        }
        out
    }

    fn solve_component(&mut self, set: &[usize], max_used: Option<usize>) -> Result<bool, Indeterminate> {
        self.nodes += 1;
        if self.nodes % CLOCK_INTERVAL == 1 && self.start.elapsed() >= self.budget {
            return Err(Indeterminate);
        }
        let Some(v) = set
            .iter()
            .copied()
            .filter(|&v| self.color[v] == UNCOLORED)
            .min_by_key(|&v| (self.domain_size(v), v))
        else {
            return Ok(true);
        };

        let limit = max_used.map_or(0, |m| m + 1).min(self.palette - 1);
        for c in 0..=limit {
            if !self.has_color(v, c) {
                continue;
            }
            let (trail_len, assigned_len) = (self.trail.len(), self.assigned.len());
            if self.assign(v, c) {
                let next_max = Some(max_used.map_or(c, |m| m.max(c)));
                let mut ok = true;
                for component in self.components(set) {
                    if !self.solve_component(&component, next_max)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(true);
                }
            }
            self.undo(trail_len, assigned_len);
        }
        Ok(false)
    }
}
