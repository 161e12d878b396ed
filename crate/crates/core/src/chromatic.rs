//! Exact weak chromatic number by backtracking with forward checking.
//!
//! The search decides `c`-colorability for `c = lower, lower + 1, ...`. Each
//! decision problem picks the uncolored vertex with the fewest admissible
//! colors (ties broken by degree), lets it open at most one fresh color, and
//! removes a color from a vertex's domain as soon as the other `r - 1`
//! vertices of one of its hyperedges all carry that color.

use crate::error::{Error, Result};
use crate::kneser::{Coloring, Hypergraph};

/// Default node budget for one call to [`chromatic_number_exact`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest color count the bitmask domains support.
pub const MAX_COLORS: usize = 64;

#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// Total node budget across all decision problems.
    pub budget: u64,
    /// Proven lower bound to start the upward scan from. When `None` the scan
    /// starts from the structural bound (0, 1 or 2).
    pub lower_bound: Option<usize>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            budget: DEFAULT_BUDGET,
            lower_bound: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    pub chi: usize,
    /// An optimal proper coloring with colors `1..=chi`.
    pub coloring: Coloring,
    /// Search nodes spent over the whole scan.
    pub nodes: u64,
}

/// Minimum number of colors with no monochromatic hyperedge.
///
/// Returns 0 for a vertex-free hypergraph and 1 when there are vertices but no
/// hyperedges.
pub fn chromatic_number_exact(h: &Hypergraph, budget: u64) -> Result<usize> {
    solve(
        h,
        &SolverOptions {
            budget,
            lower_bound: None,
        },
    )
    .map(|r| r.chi)
}

pub fn solve(h: &Hypergraph, opts: &SolverOptions) -> Result<ChromaticResult> {
    let n = h.num_vertices();
    if n == 0 {
        return Ok(ChromaticResult {
            chi: 0,
            coloring: Coloring::new(vec![]),
            nodes: 0,
        });
    }
    if h.hyperedges().is_empty() {
        return Ok(ChromaticResult {
            chi: 1,
            coloring: Coloring::new(vec![1; n]),
            nodes: 0,
        });
    }
    let upper_coloring = first_fit(h);
    let upper = upper_coloring.num_colors();
    let mut lower = opts.lower_bound.unwrap_or(2).max(2);
    let mut remaining = opts.budget;
    let mut nodes = 0;
    let mut search = Search::new(h);
    while lower < upper {
        if lower > MAX_COLORS {
            return Err(Error::SizeLimit(format!("more than {MAX_COLORS} colors needed")));
        }
        match search.colorable(lower, remaining) {
            Outcome::Colorable(col, spent) => {
                nodes += spent;
                return Ok(ChromaticResult {
                    chi: lower,
                    coloring: col,
                    nodes,
                });
            }
            Outcome::Infeasible(spent) => {
                nodes += spent;
                remaining -= spent;
                lower += 1;
            }
            Outcome::Exhausted => {
                return Err(Error::BudgetExceeded { lower, upper });
            }
        }
    }
    Ok(ChromaticResult {
        chi: upper,
        coloring: upper_coloring,
        nodes,
    })
}

/// Decide `c`-colorability within `budget` nodes. `Ok(None)` means infeasible.
pub fn find_coloring(h: &Hypergraph, c: usize, budget: u64) -> Result<Option<Coloring>> {
    if c > MAX_COLORS {
        return Err(Error::SizeLimit(format!("more than {MAX_COLORS} colors requested")));
    }
    if h.num_vertices() == 0 {
        return Ok(Some(Coloring::new(vec![])));
    }
    if c == 0 {
        return Ok(None);
    }
    match Search::new(h).colorable(c, budget) {
        Outcome::Colorable(col, _) => Ok(Some(col)),
        Outcome::Infeasible(_) => Ok(None),
        Outcome::Exhausted => Err(Error::BudgetExceeded {
            lower: c,
            upper: first_fit(h).num_colors(),
        }),
    }
}

/// First-fit coloring in order of decreasing degree.
pub fn first_fit(h: &Hypergraph) -> Coloring {
    let n = h.num_vertices();
    let inc = h.incidence();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(inc[v].len()));
    let mut colors = vec![0usize; n];
    for v in order {
        let mut c = 1;
        loop {
            let clash = inc[v].iter().any(|&e| {
                h.hyperedges()[e]
                    .iter()
                    .all(|&u| u == v || colors[u] == c)
            });
            if !clash {
                break;
            }
            c += 1;
        }
        colors[v] = c;
    }
    Coloring::new(colors)
}

enum Outcome {
    Colorable(Coloring, u64),
    Infeasible(u64),
    Exhausted,
}

const MIXED: u8 = u8::MAX;
const NONE: u8 = u8::MAX - 1;

struct Search<'a> {
    h: &'a Hypergraph,
    inc: Vec<Vec<usize>>,
    degree: Vec<usize>,
    colors: usize,
    color: Vec<u8>,
    domain: Vec<u64>,
    edge_count: Vec<u32>,
    edge_common: Vec<u8>,
    trail: Vec<Undo>,
    nodes: u64,
    budget: u64,
}

enum Undo {
    Edge(usize, u32, u8),
    Domain(usize, u64),
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        let inc = h.incidence();
        let degree = inc.iter().map(Vec::len).collect();
        let n = h.num_vertices();
        let m = h.hyperedges().len();
        Search {
            h,
            inc,
            degree,
            colors: 0,
            color: vec![NONE; n],
            domain: vec![0; n],
            edge_count: vec![0; m],
            edge_common: vec![NONE; m],
            trail: Vec::new(),
            nodes: 0,
            budget: 0,
        }
    }

    fn reset(&mut self, c: usize, budget: u64) {
        self.colors = c;
        let full = if c == 64 { u64::MAX } else { (1u64 << c) - 1 };
        self.color.iter_mut().for_each(|x| *x = NONE);
        self.domain.iter_mut().for_each(|d| *d = full);
        self.edge_count.iter_mut().for_each(|x| *x = 0);
        self.edge_common.iter_mut().for_each(|x| *x = NONE);
        self.trail.clear();
        self.nodes = 0;
        self.budget = budget;
    }

    fn colorable(&mut self, c: usize, budget: u64) -> Outcome {
        self.reset(c, budget);
        match self.dfs(0, 0) {
            Some(true) => {
                let col = self.color.iter().map(|&x| x as usize + 1).collect();
                Outcome::Colorable(Coloring::new(col), self.nodes)
            }
            Some(false) => Outcome::Infeasible(self.nodes),
            None => Outcome::Exhausted,
        }
    }

    /// `used` is the number of colors opened so far; `depth` the number colored.
    fn dfs(&mut self, depth: usize, used: usize) -> Option<bool> {
        if depth == self.color.len() {
            return Some(true);
        }
        let open = if used < self.colors {
            (1u64 << (used + 1)) - 1
        } else if self.colors == 64 {
            u64::MAX
        } else {
            (1u64 << self.colors) - 1
        };
        let v = self.pick(open);
        let mut choices = self.domain[v] & open;
        while choices != 0 {
            let col = choices.trailing_zeros() as usize;
            choices &= choices - 1;
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let mark = self.trail.len();
            if self.assign(v, col) {
                let next_used = used.max(col + 1);
                match self.dfs(depth + 1, next_used) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
            }
            self.undo(mark);
            self.color[v] = NONE;
        }
        Some(false)
    }

    fn pick(&self, open: u64) -> usize {
        let mut best = usize::MAX;
        let mut best_key = (u32::MAX, 0usize);
        for v in 0..self.color.len() {
            if self.color[v] != NONE {
                continue;
            }
            let size = (self.domain[v] & open).count_ones();
            let key = (size, self.degree[v]);
            if size < best_key.0 || (size == best_key.0 && key.1 > best_key.1) {
                best_key = key;
                best = v;
                if size == 0 {
                    break;
                }
            }
        }
        best
    }

    /// Color `v` and propagate; false on a wipe-out.
    fn assign(&mut self, v: usize, col: usize) -> bool {
        let r = self.h.r() as u32;
        let c8 = col as u8;
        self.color[v] = c8;
        let mut ok = true;
        for i in 0..self.inc[v].len() {
            let e = self.inc[v][i];
            let count = self.edge_count[e];
            let common = self.edge_common[e];
            self.trail.push(Undo::Edge(e, count, common));
            let new_common = if count == 0 || common == c8 {
                c8
            } else {
                MIXED
            };
            self.edge_count[e] = count + 1;
            self.edge_common[e] = new_common;
            if new_common == MIXED || !ok {
                continue;
            }
            if count + 1 == r {
                ok = false;
            } else if count + 1 == r - 1 {
                let u = self.h.hyperedges()[e]
                    .iter()
                    .copied()
                    .find(|&u| self.color[u] == NONE)
                    .expect("one uncolored vertex remains");
                let bit = 1u64 << col;
                if self.domain[u] & bit != 0 {
                    self.trail.push(Undo::Domain(u, self.domain[u]));
                    self.domain[u] &= !bit;
                    if self.domain[u] == 0 {
                        ok = false;
                    }
                }
            }
        }
        ok
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("nonempty trail") {
                Undo::Edge(e, count, common) => {
                    self.edge_count[e] = count;
                    self.edge_common[e] = common;
                }
                Undo::Domain(u, d) => self.domain[u] = d,
            }
        }
    }
}
