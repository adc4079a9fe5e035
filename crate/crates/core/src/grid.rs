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

//! Grid coupling graphs and permutations of their vertices.
//!
//! Coordinates are 1-based: vertex `(i, j)` sits in row `i` (`1..=m`) and
//! column `j` (`1..=n`). Vertices are also addressed by a dense 0-based
//! row-major index, which is what [`Permutation`] stores internally.

use std::fmt;

use crate::error::{Error, Result};

/// A grid vertex `(row, col)`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub row: usize,
    pub col: usize,
}

impl Vertex {
    pub const fn new(row: usize, col: usize) -> Self {
        Vertex { row, col }
    }

    /// Manhattan distance, which is also the shortest-path distance in a grid.
    pub fn distance(self, other: Vertex) -> usize {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }

    pub const fn transposed(self) -> Self {
        Vertex {
            row: self.col,
            col: self.row,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl From<(usize, usize)> for Vertex {
    fn from((row, col): (usize, usize)) -> Self {
        Vertex { row, col }
    }
}

/// The `m x n` grid graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grid {
    m: usize,
    n: usize,
}

impl Grid {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidGrid { m, n });
        }
        Ok(Grid { m, n })
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.m
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.n
    }

    /// Number of vertices, `m * n`.
    pub fn len(&self) -> usize {
        self.m * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (1..=self.m).contains(&v.row) && (1..=self.n).contains(&v.col)
    }

    /// Row-major 0-based index of `v`. `v` must lie on the grid.
    pub fn index(&self, v: Vertex) -> usize {
        debug_assert!(self.contains(v), "{v} is not on a {}x{} grid", self.m, self.n);
        (v.row - 1) * self.n + (v.col - 1)
    }

    pub fn checked_index(&self, v: Vertex) -> Result<usize> {
        if self.contains(v) {
            Ok(self.index(v))
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        debug_assert!(index < self.len());
        Vertex::new(index / self.n + 1, index % self.n + 1)
    }

    /// Vertices in row-major order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.len()).map(move |k| self.vertex(k))
    }

    pub fn is_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.contains(a) && self.contains(b) && a.distance(b) == 1
    }

    /// Neighbours of `v` in lexicographic `(row, col)` order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let candidates = [
            (v.row.wrapping_sub(1), v.col),
            (v.row, v.col.wrapping_sub(1)),
            (v.row, v.col + 1),
            (v.row + 1, v.col),
        ];
        candidates
            .into_iter()
            .map(Vertex::from)
            .filter(move |u| self.contains(*u))
    }

    /// The `n x m` grid obtained by the automorphism `(i, j) -> (j, i)`.
    pub fn transposed(&self) -> Grid {
        Grid {
            m: self.n,
            n: self.m,
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

/// A bijection on the vertices of a grid: the token starting at `v` must end
/// at `dest(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    grid: Grid,
    dest: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from row-major destination indices.
    pub fn from_indices(grid: Grid, dest: Vec<usize>) -> Result<Self> {
        if dest.len() != grid.len() {
            return Err(Error::InvalidPermutation(format!(
                "expected {} entries for a {grid} grid, got {}",
                grid.len(),
                dest.len()
            )));
        }
        let mut seen = vec![false; grid.len()];
        for (k, &d) in dest.iter().enumerate() {
            if d >= grid.len() {
                return Err(Error::InvalidPermutation(format!(
                    "entry {k} maps to index {d}, outside 0..{}",
                    grid.len()
                )));
            }
            if std::mem::replace(&mut seen[d], true) {
                return Err(Error::InvalidPermutation(format!(
                    "index {d} is the image of more than one vertex"
                )));
            }
        }
        Ok(Permutation { grid, dest })
    }

    /// Builds a permutation from a vertex map.
    pub fn from_fn(grid: Grid, mut f: impl FnMut(Vertex) -> Vertex) -> Result<Self> {
        let dest = grid
            .vertices()
            .map(|v| grid.checked_index(f(v)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(grid, dest)
    }

    pub fn identity(grid: Grid) -> Self {
        Permutation {
            grid,
            dest: (0..grid.len()).collect(),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn dest(&self, v: Vertex) -> Vertex {
        self.grid.vertex(self.dest[self.grid.index(v)])
    }

    pub fn dest_index(&self, k: usize) -> usize {
        self.dest[k]
    }

    /// Row-major destination indices.
    pub fn as_indices(&self) -> &[usize] {
        &self.dest
    }

    pub fn is_identity(&self) -> bool {
        self.dest.iter().enumerate().all(|(k, &d)| k == d)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.dest.len()];
        for (k, &d) in self.dest.iter().enumerate() {
            inv[d] = k;
        }
        Permutation {
            grid: self.grid,
            dest: inv,
        }
    }

    /// Sum over all tokens of the grid distance to their destination.
    pub fn total_distance(&self) -> usize {
        self.grid
            .vertices()
            .map(|v| v.distance(self.dest(v)))
            .sum()
    }

    /// `pi^T(j, i) = (j', i')` whenever `pi(i, j) = (i', j')`.
    pub fn transposed(&self) -> Permutation {
        let grid_t = self.grid.transposed();
        let mut dest = vec![0; self.dest.len()];
        for v in self.grid.vertices() {
            let d = self.dest(v);
            dest[grid_t.index(v.transposed())] = grid_t.index(d.transposed());
        }
        Permutation { grid: grid_t, dest }
    }
}

/// Transposes a grid together with a permutation on it.
pub fn transpose(grid: Grid, pi: &Permutation) -> (Grid, Permutation) {
    debug_assert_eq!(grid, pi.grid());
    (grid.transposed(), pi.transposed())
}
