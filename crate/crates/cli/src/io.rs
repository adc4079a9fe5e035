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

//! File formats at the command-line boundary.
//!
//! Files use 0-based coordinates. A permutation file is
//! `{"rows": m, "cols": n, "perm": [d_0, ..., d_{mn-1}]}` where entry
//! `k = i * n + j` holds the row-major index of the destination of `(i, j)`.
//! A schedule file lists layers of swaps as `[[i, j], [i2, j2]]` pairs.

use std::fs;
use std::path::Path;

use gridroute::{Grid, Permutation, Swap, SwapSchedule, Vertex};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    InvalidPermutation(String),
}

impl InputError {
    pub fn exit_code(&self) -> u8 {
        match self {
            InputError::Malformed(_) => 2,
            InputError::InvalidPermutation(_) => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermFile {
    pub rows: usize,
    pub cols: usize,
    pub perm: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleFile {
    pub rows: usize,
    pub cols: usize,
    pub algorithm: String,
    pub layers: Vec<Vec<[[usize; 2]; 2]>>,
    pub depth: usize,
    pub swaps: usize,
}

/// Parses `MxN`.
pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let (m, n) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("grid `{s}` is not of the form MxN"))?;
    let m = m.trim().parse().map_err(|_| format!("bad row count in `{s}`"))?;
    let n = n.trim().parse().map_err(|_| format!("bad column count in `{s}`"))?;
    Grid::new(m, n).map_err(|e| e.to_string())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| InputError::Malformed(format!("cannot parse {}: {e}", path.display())))
}

fn check_dims(what: &str, rows: usize, cols: usize, grid: Grid) -> Result<(), InputError> {
    if (rows, cols) != (grid.rows(), grid.cols()) {
        return Err(InputError::Malformed(format!(
            "{what} is for a {rows}x{cols} grid, expected {grid}"
        )));
    }
    Ok(())
}

impl PermFile {
    pub fn from_permutation(pi: &Permutation) -> Self {
        PermFile {
            rows: pi.grid().rows(),
            cols: pi.grid().cols(),
            perm: pi.as_indices().to_vec(),
        }
    }

    pub fn to_permutation(&self, grid: Grid) -> Result<Permutation, InputError> {
        check_dims("permutation", self.rows, self.cols, grid)?;
        Permutation::from_indices(grid, self.perm.clone())
            .map_err(|e| InputError::InvalidPermutation(e.to_string()))
    }
}

pub fn read_permutation(path: &Path, grid: Grid) -> Result<Permutation, InputError> {
    read_json::<PermFile>(path)?.to_permutation(grid)
}

fn external(v: Vertex) -> [usize; 2] {
    [v.row - 1, v.col - 1]
}

impl ScheduleFile {
    pub fn new(grid: Grid, algorithm: &str, schedule: &SwapSchedule) -> Self {
        let layers = schedule
            .layers()
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|s| {
                        let (a, b) = s.endpoints();
                        [external(a), external(b)]
                    })
                    .collect()
            })
            .collect();
        ScheduleFile {
            rows: grid.rows(),
            cols: grid.cols(),
            algorithm: algorithm.to_string(),
            layers,
            depth: schedule.depth(),
            swaps: schedule.size(),
        }
    }

    /// Converts back to internal coordinates. Layer validity is left to
    /// verification.
    pub fn to_schedule(&self, grid: Grid) -> Result<SwapSchedule, InputError> {
        check_dims("schedule", self.rows, self.cols, grid)?;
        let layers = self
            .layers
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|&[[i, j], [i2, j2]]| Swap::new(Vertex::new(i + 1, j + 1), Vertex::new(i2 + 1, j2 + 1)))
                    .collect()
            })
            .collect();
        Ok(SwapSchedule::new(layers))
    }
}

pub fn read_schedule(path: &Path, grid: Grid) -> Result<SwapSchedule, InputError> {
    read_json::<ScheduleFile>(path)?.to_schedule(grid)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let text = serde_json::to_string(value).map_err(std::io::Error::other)?;
    fs::write(path, text)
}
