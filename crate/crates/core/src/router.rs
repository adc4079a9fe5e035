// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Three-round grid routing.
//!
//! A grid route moves every token in three rounds: along its column to an
//! intermediate row, along that row to its destination column, and along the
//! destination column to its destination row. Rounds are batches of
//! independent odd-even path routings, so each round costs at most the length
//! of the lines it routes. The intermediate rows come from a decomposition of
//! the column multigraph into perfect matchings; the locality-aware router
//! picks matchings that stay close to their rows and assigns them to rows by
//! bottleneck matching on [`delta`].

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::grid::{Grid, Permutation, Vertex};
use crate::matching::{
    build_column_graph, delta, mcbbm, peel_all_matchings, ColumnPerfectMatching,
    MatchingAssignment,
};
use crate::path::PathScratch;
use crate::schedule::{compact_schedule, Swap, SwapSchedule};

/// One row permutation per column: `sigma_j(i)` is the row the token starting
/// at `(i, j)` moves to in the first round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnPermutationSet {
    m: usize,
    // sigma[j - 1][i - 1], 1-based rows
    sigma: Vec<Vec<usize>>,
}

impl ColumnPermutationSet {
    /// `sigma[j - 1][i - 1]` is the 1-based intermediate row of token `(i, j)`.
    pub fn new(m: usize, sigma: Vec<Vec<usize>>) -> Result<Self> {
        for (j, col) in sigma.iter().enumerate() {
            let mut seen = vec![false; m];
            let bijective = col.len() == m
                && col
                    .iter()
                    .all(|&r| (1..=m).contains(&r) && !std::mem::replace(&mut seen[r - 1], true));
            if !bijective {
                return Err(Error::InvalidSigma(format!(
                    "column {} maps rows to {col:?}, not a bijection on 1..={m}",
                    j + 1
                )));
            }
        }
        Ok(ColumnPermutationSet { m, sigma })
    }

    pub fn identity(grid: Grid) -> Self {
        ColumnPermutationSet {
            m: grid.rows(),
            sigma: vec![(1..=grid.rows()).collect(); grid.cols()],
        }
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn columns(&self) -> usize {
        self.sigma.len()
    }

    /// `sigma_j(i)`.
    pub fn row_of(&self, i: usize, j: usize) -> usize {
        self.sigma[j - 1][i - 1]
    }
}

/// Checks that after the first round every row holds tokens with pairwise
/// distinct destination columns.
pub fn check_hall(pi: &Permutation, sigmas: &ColumnPermutationSet) -> Result<()> {
    let grid = pi.grid();
    if sigmas.rows() != grid.rows() || sigmas.columns() != grid.cols() {
        return Err(Error::InvalidSigma(format!(
            "{}x{} permutation set does not fit the {grid} grid",
            sigmas.rows(),
            sigmas.columns()
        )));
    }
    let mut seen = vec![usize::MAX; grid.len()];
    for v in grid.vertices() {
        let r = sigmas.row_of(v.row, v.col);
        let dest_col = pi.dest(v).col;
        let slot = &mut seen[(r - 1) * grid.cols() + (dest_col - 1)];
        if *slot != usize::MAX {
            return Err(Error::HallViolation { row: r, col: dest_col });
        }
        *slot = grid.index(v);
    }
    Ok(())
}

/// The three rounds of a grid route, kept apart for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRounds {
    /// Column routing to the intermediate rows.
    pub first: SwapSchedule,
    /// Row routing to the destination columns.
    pub second: SwapSchedule,
    /// Column routing to the destination rows.
    pub third: SwapSchedule,
}

impl GridRounds {
    pub fn depth(&self) -> usize {
        self.first.depth() + self.second.depth() + self.third.depth()
    }

    pub fn into_schedule(self) -> SwapSchedule {
        let mut s = self.first;
        s.extend(self.second);
        s.extend(self.third);
        s
    }
}

#[derive(Clone, Copy)]
enum Lines {
    Columns,
    Rows,
}

/// Routes every row (or column) in parallel; `target(token)` is the 1-based
/// position along its line the token must reach. `occ[v]` is updated in place.
fn route_lines(grid: Grid, lines: Lines, occ: &mut [usize], target: impl Fn(usize) -> usize) -> SwapSchedule {
    let (count, len) = match lines {
        Lines::Columns => (grid.cols(), grid.rows()),
        Lines::Rows => (grid.rows(), grid.cols()),
    };
    let at = |line: usize, pos: usize| match lines {
        Lines::Columns => Vertex::new(pos + 1, line + 1),
        Lines::Rows => Vertex::new(line + 1, pos + 1),
    };
    let mut layers: Vec<Vec<Swap>> = Vec::new();
    let mut keys = vec![0; len];
    let mut tokens = vec![0; len];
    let mut scratch = PathScratch::default();
    for line in 0..count {
        for pos in 0..len {
            tokens[pos] = occ[grid.index(at(line, pos))];
            keys[pos] = target(tokens[pos]) - 1;
        }
        for &(round, p) in scratch.route(&keys) {
            if layers.len() <= round {
                layers.resize_with(round + 1, Vec::new);
            }
            layers[round].push(Swap::new(at(line, p), at(line, p + 1)));
        }
        for pos in 0..len {
            occ[grid.index(at(line, keys[pos]))] = tokens[pos];
        }
    }
    SwapSchedule::new(layers)
}

/// Runs the three rounds and returns them separately.
pub fn grid_route_rounds(pi: &Permutation, sigmas: &ColumnPermutationSet) -> Result<GridRounds> {
    check_hall(pi, sigmas)?;
    let grid = pi.grid();
    let mut occ: Vec<usize> = (0..grid.len()).collect();
    let first = route_lines(grid, Lines::Columns, &mut occ, |t| {
        let v = grid.vertex(t);
        sigmas.row_of(v.row, v.col)
    });
    let second = route_lines(grid, Lines::Rows, &mut occ, |t| grid.vertex(pi.dest_index(t)).col);
    let third = route_lines(grid, Lines::Columns, &mut occ, |t| grid.vertex(pi.dest_index(t)).row);
    debug_assert!((0..grid.len()).all(|t| occ[pi.dest_index(t)] == t));
    Ok(GridRounds { first, second, third })
}

/// Column-row-column routing of `pi` through the intermediate rows `sigmas`.
pub fn grid_route(pi: &Permutation, sigmas: &ColumnPermutationSet) -> Result<SwapSchedule> {
    grid_route_rounds(pi, sigmas).map(GridRounds::into_schedule)
}

fn sigmas_from(grid: Grid, matchings: &[ColumnPerfectMatching], rows: &[usize]) -> ColumnPermutationSet {
    let mut sigma = vec![vec![0; grid.rows()]; grid.cols()];
    for (matching, &r) in matchings.iter().zip(rows) {
        for e in matching.edges() {
            sigma[e.source.col - 1][e.source.row - 1] = r;
        }
    }
    ColumnPermutationSet::new(grid.rows(), sigma).expect("matchings partition the tokens")
}

/// Result of the doubling window search.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Perfect matchings in discovery order.
    pub matchings: Vec<ColumnPerfectMatching>,
    /// Window size `w` of every sweep that was run.
    pub sweeps: Vec<usize>,
}

/// Decomposes the full column multigraph into perfect matchings, preferring
/// matchings whose edges all start in a narrow band of rows.
///
/// Windows `[r, min(r + w, m)]` are swept for `r = 1, 1 + (w + 1), ...` and
/// every window's residual subgraph is peeled. The window size starts at 0
/// and then doubles from 1 until `m` matchings have been found.
pub fn doubling_decomposition(pi: &Permutation) -> Decomposition {
    let m = pi.grid().rows();
    let mut residual = build_column_graph(pi, 1, m).expect("full window is valid");
    let mut matchings = Vec::with_capacity(m);
    let mut sweeps = Vec::new();
    let mut w = 0;
    while matchings.len() < m {
        sweeps.push(w);
        let mut r = 1;
        for _ in 0..=m / (w + 1) {
            if r > m {
                break;
            }
            while let Some(matching) = residual.find_matching_in(r..=(r + w).min(m)) {
                residual.remove_matching(&matching);
                matchings.push(matching);
            }
            r += w + 1;
        }
        w = if w == 0 { 1 } else { 2 * w };
    }
    debug_assert!(residual.is_empty());
    Decomposition { matchings, sweeps }
}

/// Everything the locality-aware router decides before routing.
#[derive(Debug, Clone)]
pub struct LocalPlan {
    pub decomposition: Decomposition,
    /// `weights[k][r - 1] = delta(matching k, r)`.
    pub weights: Vec<Vec<u64>>,
    pub assignment: MatchingAssignment,
    pub sigmas: ColumnPermutationSet,
}

pub fn local_plan(pi: &Permutation) -> LocalPlan {
    let grid = pi.grid();
    let decomposition = doubling_decomposition(pi);
    let weights: Vec<Vec<u64>> = decomposition
        .matchings
        .iter()
        .map(|mt| (1..=grid.rows()).map(|r| delta(mt, r)).collect())
        .collect();
    let assignment = mcbbm(&weights).expect("one matching per row");
    let sigmas = sigmas_from(grid, &decomposition.matchings, &assignment.rows);
    LocalPlan {
        decomposition,
        weights,
        assignment,
        sigmas,
    }
}

/// Intermediate rows for the naive router: matchings peeled from the full
/// column multigraph, the `k`-th one parked in row `k`.
pub fn naive_sigmas(pi: &Permutation) -> ColumnPermutationSet {
    let grid = pi.grid();
    let full = build_column_graph(pi, 1, grid.rows()).expect("full window is valid");
    let matchings = peel_all_matchings(&full);
    let rows: Vec<usize> = (1..=matchings.len()).collect();
    sigmas_from(grid, &matchings, &rows)
}

/// Locality-aware grid routing in column-row-column order.
pub fn local_grid_route(pi: &Permutation) -> SwapSchedule {
    grid_route(pi, &local_plan(pi).sigmas).expect("perfect matchings satisfy the Hall property")
}

/// Grid routing with intermediate rows taken in discovery order.
pub fn naive_grid_route(pi: &Permutation) -> SwapSchedule {
    grid_route(pi, &naive_sigmas(pi)).expect("perfect matchings satisfy the Hall property")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridRouter {
    Local,
    Naive,
}

impl GridRouter {
    pub fn name(self) -> &'static str {
        match self {
            GridRouter::Local => "local",
            GridRouter::Naive => "naive",
        }
    }

    fn run(self, pi: &Permutation) -> SwapSchedule {
        match self {
            GridRouter::Local => local_grid_route(pi),
            GridRouter::Naive => naive_grid_route(pi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RouteOptions {
    /// Also route `(G^T, pi^T)` in row-column-row order.
    pub use_transpose: bool,
    /// Also run the naive router and keep it if it is shallower.
    pub naive_fallback: bool,
    /// Compact the chosen schedule before returning it.
    pub compact: bool,
}

impl Default for RouteOptions {
    fn default() -> Self {
        RouteOptions {
            use_transpose: true,
            naive_fallback: true,
            compact: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Routed {
    pub schedule: SwapSchedule,
    pub router: GridRouter,
    pub transposed: bool,
    /// Depth of the concatenated rounds, before any compaction.
    pub rounds_depth: usize,
    pub depth: usize,
    pub size: usize,
    pub elapsed: Duration,
}

/// Routes `pi`, keeping the shallowest of the enabled candidates.
///
/// Candidates are tried in the order local, naive, transposed local,
/// transposed naive; the first one of minimum depth wins.
pub fn route(pi: &Permutation, options: RouteOptions) -> Routed {
    let start = Instant::now();
    let mut candidates = vec![(GridRouter::Local, false)];
    if options.naive_fallback {
        candidates.push((GridRouter::Naive, false));
    }
    if options.use_transpose {
        candidates.push((GridRouter::Local, true));
        if options.naive_fallback {
            candidates.push((GridRouter::Naive, true));
        }
    }
    let pi_t = options.use_transpose.then(|| pi.transposed());

    let mut best: Option<(SwapSchedule, GridRouter, bool)> = None;
    for (router, transposed) in candidates {
        let schedule = match (transposed, &pi_t) {
            (true, Some(pt)) => router.run(pt).transposed(),
            _ => router.run(pi),
        };
        if best.as_ref().is_none_or(|(b, _, _)| schedule.depth() < b.depth()) {
            best = Some((schedule, router, transposed));
        }
    }
    let (schedule, router, transposed) = best.expect("at least one candidate");
    let rounds_depth = schedule.depth();
    let schedule = if options.compact {
        compact_schedule(&schedule)
    } else {
        schedule
    };
    Routed {
        depth: schedule.depth(),
        size: schedule.size(),
        rounds_depth,
        schedule,
        router,
        transposed,
        elapsed: start.elapsed(),
    }
}
