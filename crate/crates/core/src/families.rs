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

//! Seeded permutation families for benchmarks.
//!
//! All families draw from ChaCha8 seeded with the 64-bit seed, so a
//! `(grid, spec)` pair always yields the same permutation.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{Grid, Permutation};

/// Name of the generator behind every family, for reports.
pub const RNG_NAME: &str = "chacha8";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Identity,
    /// Uniformly random over all vertices.
    Uniform,
    /// Shuffles within disjoint `h x w` tiles; edge tiles may be smaller.
    BlockLocal { h: usize, w: usize },
    /// Composes shuffles of an `h x w` window slid by `stride` in row-major
    /// order; cycles may straddle neighbouring windows.
    OverlappingBlock { h: usize, w: usize, stride: usize },
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyKind::Identity => write!(f, "identity"),
            FamilyKind::Uniform => write!(f, "uniform"),
            FamilyKind::BlockLocal { h, w } => write!(f, "block_local:{h}x{w}"),
            FamilyKind::OverlappingBlock { h, w, stride } => {
                write!(f, "overlapping_block:{h}x{w}:{stride}")
            }
        }
    }
}

fn parse_dims(s: &str) -> Option<(usize, usize)> {
    let (h, w) = s.split_once(['x', 'X'])?;
    Some((h.trim().parse().ok()?, w.trim().parse().ok()?))
}

impl FromStr for FamilyKind {
    type Err = Error;

    /// `identity`, `uniform`, `block_local:HxW` or `overlapping_block:HxW:S`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("unrecognized family `{s}`"));
        let mut parts = s.trim().split(':');
        let kind = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some("identity"), None, _, _) => FamilyKind::Identity,
            (Some("uniform"), None, _, _) => FamilyKind::Uniform,
            (Some("block_local"), Some(dims), None, _) => {
                let (h, w) = parse_dims(dims).ok_or_else(bad)?;
                FamilyKind::BlockLocal { h, w }
            }
            (Some("overlapping_block"), Some(dims), Some(stride), None) => {
                let (h, w) = parse_dims(dims).ok_or_else(bad)?;
                let stride = stride.trim().parse().map_err(|_| bad())?;
                FamilyKind::OverlappingBlock { h, w, stride }
            }
            _ => return Err(bad()),
        };
        Ok(kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub seed: u64,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, seed: u64) -> Self {
        FamilySpec { kind, seed }
    }

    pub fn validate(&self, grid: Grid) -> Result<()> {
        let check_block = |h: usize, w: usize| {
            if h == 0 || w == 0 || h > grid.rows() || w > grid.cols() {
                Err(Error::InvalidSpec(format!("{h}x{w} blocks do not fit a {grid} grid")))
            } else {
                Ok(())
            }
        };
        match self.kind {
            FamilyKind::Identity | FamilyKind::Uniform => Ok(()),
            FamilyKind::BlockLocal { h, w } => check_block(h, w),
            FamilyKind::OverlappingBlock { h, w, stride } => {
                check_block(h, w)?;
                if stride == 0 || stride > h.min(w) {
                    return Err(Error::InvalidSpec(format!(
                        "stride {stride} must lie in 1..={} for {h}x{w} blocks",
                        h.min(w)
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Window offsets `0, stride, 2*stride, ...` along a line of `len`, always
/// ending with the window flush against the far edge.
fn window_starts(len: usize, size: usize, stride: usize) -> Vec<usize> {
    let last = len - size;
    let mut starts: Vec<usize> = (0..=last).step_by(stride).collect();
    if starts.last() != Some(&last) {
        starts.push(last);
    }
    starts
}

fn tile(grid: Grid, top: usize, left: usize, h: usize, w: usize) -> Vec<usize> {
    let rows = top..(top + h).min(grid.rows());
    rows.flat_map(|r| {
        (left..(left + w).min(grid.cols())).map(move |c| r * grid.cols() + c)
    })
    .collect()
}

/// Draws a permutation of `grid` from the family described by `spec`.
pub fn generate(grid: Grid, spec: &FamilySpec) -> Result<Permutation> {
    spec.validate(grid)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let dest = match spec.kind {
        FamilyKind::Identity => (0..grid.len()).collect(),
        FamilyKind::Uniform => {
            let mut dest: Vec<usize> = (0..grid.len()).collect();
            dest.shuffle(&mut rng);
            dest
        }
        FamilyKind::BlockLocal { h, w } => {
            let mut dest: Vec<usize> = (0..grid.len()).collect();
            for top in (0..grid.rows()).step_by(h) {
                for left in (0..grid.cols()).step_by(w) {
                    let cells = tile(grid, top, left, h, w);
                    let mut images = cells.clone();
                    images.shuffle(&mut rng);
                    for (&c, &img) in cells.iter().zip(&images) {
                        dest[c] = img;
                    }
                }
            }
            dest
        }
        FamilyKind::OverlappingBlock { h, w, stride } => {
            // occ[v] = token currently at v; each window permutes its occupants
            let mut occ: Vec<usize> = (0..grid.len()).collect();
            for &top in &window_starts(grid.rows(), h, stride) {
                for &left in &window_starts(grid.cols(), w, stride) {
                    let cells = tile(grid, top, left, h, w);
                    let mut tokens: Vec<usize> = cells.iter().map(|&c| occ[c]).collect();
                    tokens.shuffle(&mut rng);
                    for (&c, &t) in cells.iter().zip(&tokens) {
                        occ[c] = t;
                    }
                }
            }
            let mut dest = vec![0; grid.len()];
            for (v, &t) in occ.iter().enumerate() {
                dest[t] = v;
            }
            dest
        }
    };
    Permutation::from_indices(grid, dest)
}
