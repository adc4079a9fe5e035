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

//! Column multigraphs, perfect-matching peeling and bottleneck assignment.
//!
//! For a permutation `pi` on an `m x n` grid and a row window `[a, b]`, the
//! column multigraph has the `n` columns on each side and one edge per source
//! vertex `(i, j)` with `a <= i <= b`: it joins left column `j` to right column
//! `j'` and carries the row label `(i, i')`, where `pi(i, j) = (i', j')`.
//! Over the full window `[1, m]` the graph is `m`-regular, so it splits into
//! `m` perfect matchings. Each such matching can be parked in one row during
//! the first routing round.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::grid::{Permutation, Vertex};

/// One edge of a [`ColumnMultigraph`], identified by the token it carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnEdge {
    pub source: Vertex,
    pub dest: Vertex,
}

impl ColumnEdge {
    pub fn left(&self) -> usize {
        self.source.col
    }

    pub fn right(&self) -> usize {
        self.dest.col
    }

    /// `(source row, destination row)`.
    pub fn label(&self) -> (usize, usize) {
        (self.source.row, self.dest.row)
    }
}

/// Bipartite multigraph on columns with row-labelled edges.
#[derive(Debug, Clone)]
pub struct ColumnMultigraph {
    n: usize,
    // labels of the parallel edges left -> right, sorted; index (left-1)*n + (right-1)
    buckets: Vec<Vec<(usize, usize)>>,
    // by_row[i - 1] = (left, right, dest row) of the edges with source row i
    by_row: Vec<Vec<(usize, usize, usize)>>,
    edge_count: usize,
}

impl ColumnMultigraph {
    /// An edgeless graph on `n` columns.
    pub fn empty(n: usize) -> Self {
        ColumnMultigraph {
            n,
            buckets: vec![Vec::new(); n * n],
            by_row: Vec::new(),
            edge_count: 0,
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = ColumnEdge>) -> Self {
        let mut g = Self::empty(n);
        for e in edges {
            g.insert(e);
        }
        g
    }

    fn bucket_index(&self, left: usize, right: usize) -> usize {
        (left - 1) * self.n + (right - 1)
    }

    pub fn insert(&mut self, e: ColumnEdge) {
        let k = self.bucket_index(e.left(), e.right());
        let bucket = &mut self.buckets[k];
        let at = bucket.binary_search(&e.label()).unwrap_or_else(|at| at);
        bucket.insert(at, e.label());
        let (i, i2) = e.label();
        if self.by_row.len() < i {
            self.by_row.resize_with(i, Vec::new);
        }
        self.by_row[i - 1].push((e.left(), e.right(), i2));
        self.edge_count += 1;
    }

    /// Removes `e`; returns whether it was present.
    pub fn remove(&mut self, e: &ColumnEdge) -> bool {
        let k = self.bucket_index(e.left(), e.right());
        match self.buckets[k].binary_search(&e.label()) {
            Ok(at) => {
                self.buckets[k].remove(at);
                let row = &mut self.by_row[e.source.row - 1];
                let key = (e.left(), e.right(), e.dest.row);
                let pos = row.iter().position(|&x| x == key).expect("indexed by row");
                row.swap_remove(pos);
                self.edge_count -= 1;
                true
            }
            Err(_) => false,
        }
    }

    /// Removes every edge of `matching`.
    pub fn remove_matching(&mut self, matching: &ColumnPerfectMatching) {
        for e in matching.edges() {
            let removed = self.remove(e);
            debug_assert!(removed, "edge {e:?} not in graph");
        }
    }

    /// Number of columns on each side.
    pub fn columns(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count == 0
    }

    /// Labels of the parallel edges `left -> right`, in ascending order.
    pub fn parallel_edges(&self, left: usize, right: usize) -> &[(usize, usize)] {
        &self.buckets[self.bucket_index(left, right)]
    }

    pub fn edges(&self) -> impl Iterator<Item = ColumnEdge> + '_ {
        (1..=self.n).flat_map(move |l| {
            (1..=self.n).flat_map(move |r| {
                self.parallel_edges(l, r).iter().map(move |&(i, i2)| ColumnEdge {
                    source: Vertex::new(i, l),
                    dest: Vertex::new(i2, r),
                })
            })
        })
    }

    pub fn left_degree(&self, left: usize) -> usize {
        (1..=self.n).map(|r| self.parallel_edges(left, r).len()).sum()
    }

    pub fn right_degree(&self, right: usize) -> usize {
        (1..=self.n).map(|l| self.parallel_edges(l, right).len()).sum()
    }

    /// `Some(d)` if every column has degree `d` on both sides.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.left_degree(1);
        (1..=self.n)
            .all(|c| self.left_degree(c) == d && self.right_degree(c) == d)
            .then_some(d)
    }

    /// The subgraph of edges whose source row lies in `[a, b]`.
    pub fn window(&self, a: usize, b: usize) -> ColumnMultigraph {
        let mut g = ColumnMultigraph::empty(self.n);
        for (i, row) in self.by_row.iter().enumerate().skip(a.saturating_sub(1)).take_while(|(i, _)| *i < b) {
            for &(l, r, i2) in row {
                g.insert(ColumnEdge {
                    source: Vertex::new(i + 1, l),
                    dest: Vertex::new(i2, r),
                });
            }
        }
        g
    }
}

impl PartialEq for ColumnMultigraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.buckets == other.buckets
    }
}

impl Eq for ColumnMultigraph {}

/// Builds the column multigraph of `pi` restricted to source rows `[a, b]`.
pub fn build_column_graph(pi: &Permutation, a: usize, b: usize) -> Result<ColumnMultigraph> {
    let grid = pi.grid();
    if a < 1 || a > b || b > grid.rows() {
        return Err(Error::WindowOutOfRange { a, b, m: grid.rows() });
    }
    let edges = (a..=b).flat_map(|i| {
        (1..=grid.cols()).map(move |j| {
            let source = Vertex::new(i, j);
            ColumnEdge {
                source,
                dest: pi.dest(source),
            }
        })
    });
    Ok(ColumnMultigraph::from_edges(grid.cols(), edges))
}

/// A perfect matching of a column multigraph: exactly one edge leaves every
/// left column and one edge enters every right column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColumnPerfectMatching {
    // sorted by left column, so edges[j - 1].left() == j
    edges: Vec<ColumnEdge>,
}

impl ColumnPerfectMatching {
    pub fn edges(&self) -> &[ColumnEdge] {
        &self.edges
    }

    /// The edge leaving left column `j`.
    pub fn edge_at(&self, j: usize) -> &ColumnEdge {
        &self.edges[j - 1]
    }

    pub fn labels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(ColumnEdge::label)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Maximum bipartite matching by augmenting paths over a dense adjacency
/// matrix (`adj[l * n_right + r]`), scanning left vertices and their
/// neighbours in ascending order.
///
/// Returns `mate[l] = Some(r)` for matched left vertices.
pub(crate) fn max_bipartite_matching(n_left: usize, n_right: usize, adj: &[bool]) -> Vec<Option<usize>> {
    struct Search<'a> {
        n_right: usize,
        adj: &'a [bool],
        seen: Vec<bool>,
        mate_of_right: Vec<Option<usize>>,
        mate_of_left: Vec<Option<usize>>,
    }

    impl Search<'_> {
        fn augment(&mut self, l: usize) -> bool {
            for r in 0..self.n_right {
                if !self.adj[l * self.n_right + r] || std::mem::replace(&mut self.seen[r], true) {
                    continue;
                }
                let free = match self.mate_of_right[r] {
                    None => true,
                    Some(other) => self.augment(other),
                };
                if free {
                    self.mate_of_right[r] = Some(l);
                    self.mate_of_left[l] = Some(r);
                    return true;
                }
            }
            false
        }
    }

    let mut search = Search {
        n_right,
        adj,
        seen: vec![false; n_right],
        mate_of_right: vec![None; n_right],
        mate_of_left: vec![None; n_left],
    };
    for l in 0..n_left {
        search.seen.iter_mut().for_each(|s| *s = false);
        search.augment(l);
    }
    search.mate_of_left
}

impl ColumnMultigraph {
    /// Perfect matching among the edges whose source row lies in `rows`,
    /// taking the smallest label among parallel candidates.
    pub(crate) fn find_matching_in(&self, rows: RangeInclusive<usize>) -> Option<ColumnPerfectMatching> {
        let n = self.n;
        let lo = rows.start().saturating_sub(1);
        let hi = (*rows.end()).min(self.by_row.len());
        if lo >= hi {
            return None;
        }
        let mut first: Vec<Option<(usize, usize)>> = vec![None; n * n];
        let (mut left_seen, mut right_seen) = (vec![false; n], vec![false; n]);
        for (i, row) in self.by_row[lo..hi].iter().enumerate() {
            let i = lo + i + 1;
            for &(l, r, i2) in row {
                let slot = &mut first[(l - 1) * n + (r - 1)];
                if slot.is_none_or(|cur| (i, i2) < cur) {
                    *slot = Some((i, i2));
                }
                left_seen[l - 1] = true;
                right_seen[r - 1] = true;
            }
        }
        if !left_seen.iter().chain(&right_seen).all(|&x| x) {
            return None;
        }
        let adj: Vec<bool> = first.iter().map(Option::is_some).collect();
        let edges = max_bipartite_matching(n, n, &adj)
            .into_iter()
            .enumerate()
            .map(|(l, r)| {
                let r = r?;
                let (i, i2) = first[l * n + r].expect("adjacent");
                Some(ColumnEdge {
                    source: Vertex::new(i, l + 1),
                    dest: Vertex::new(i2, r + 1),
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(ColumnPerfectMatching { edges })
    }
}

/// Finds a perfect matching if one exists. Among parallel edges the one with
/// the lexicographically smallest label is used.
pub fn find_perfect_matching(g: &ColumnMultigraph) -> Option<ColumnPerfectMatching> {
    if g.edge_count < g.n {
        return None;
    }
    g.find_matching_in(1..=usize::MAX)
}

/// Repeatedly extracts perfect matchings from `g`, deleting their edges, until
/// none is left. Returns the matchings and the residual graph.
pub fn peel_matchings(mut g: ColumnMultigraph) -> (Vec<ColumnPerfectMatching>, ColumnMultigraph) {
    let mut found = Vec::new();
    while let Some(m) = find_perfect_matching(&g) {
        g.remove_matching(&m);
        found.push(m);
    }
    (found, g)
}

/// Peels every perfect matching out of a copy of `g`. On a `d`-regular graph
/// this yields exactly `d` matchings that partition the edges.
pub fn peel_all_matchings(g: &ColumnMultigraph) -> Vec<ColumnPerfectMatching> {
    peel_matchings(g.clone()).0
}

/// Distance of a matching from row `r`: the sum of `|i - r| + |i' - r|` over
/// its labels `(i, i')`.
pub fn delta(matching: &ColumnPerfectMatching, r: usize) -> u64 {
    matching
        .labels()
        .map(|(i, i2)| (i.abs_diff(r) + i2.abs_diff(r)) as u64)
        .sum()
}

/// A pairing of matchings with grid rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingAssignment {
    /// `rows[k]` is the 1-based grid row given to the `k`-th matching.
    pub rows: Vec<usize>,
    /// Largest weight used by the pairing.
    pub bottleneck: u64,
}

/// Bottleneck assignment on a square weight matrix (`weights[k][r]` is the
/// cost of giving row `r + 1` to matching `k`).
///
/// Binary-searches the sorted distinct weights for the smallest threshold that
/// still admits a perfect pairing, then returns the pairing found at that
/// threshold by the ascending augmenting-path search.
pub fn mcbbm(weights: &[Vec<u64>]) -> Result<MatchingAssignment> {
    let size = weights.len();
    if let Some(bad) = weights.iter().find(|row| row.len() != size) {
        return Err(Error::NonSquareInput {
            rows: size,
            cols: bad.len(),
        });
    }
    if size == 0 {
        return Ok(MatchingAssignment {
            rows: Vec::new(),
            bottleneck: 0,
        });
    }

    let mut thresholds: Vec<u64> = weights.iter().flatten().copied().collect();
    thresholds.sort_unstable();
    thresholds.dedup();

    let pairing_under = |t: u64| -> Option<Vec<usize>> {
        let adj: Vec<bool> = weights.iter().flatten().map(|&w| w <= t).collect();
        max_bipartite_matching(size, size, &adj).into_iter().collect()
    };

    // the largest threshold admits every pairing of a complete graph
    let (mut lo, mut hi) = (0, thresholds.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if pairing_under(thresholds[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let pairing = pairing_under(thresholds[lo]).expect("feasible threshold");
    let bottleneck = pairing
        .iter()
        .enumerate()
        .map(|(k, &c)| weights[k][c])
        .max()
        .unwrap_or(0);
    debug_assert_eq!(bottleneck, thresholds[lo]);
    Ok(MatchingAssignment {
        rows: pairing.into_iter().map(|c| c + 1).collect(),
        bottleneck,
    })
}
