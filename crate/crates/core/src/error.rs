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

use thiserror::Error;

use crate::grid::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid grid dimensions {m}x{n}: both must be at least 1")]
    InvalidGrid { m: usize, n: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid layer {layer}: {reason}")]
    InvalidLayer { layer: usize, reason: String },
    #[error("row window [{a}, {b}] is out of range for a grid with {m} rows")]
    WindowOutOfRange { a: usize, b: usize, m: usize },
    #[error("bottleneck assignment needs a square matrix, got {rows}x{cols}")]
    NonSquareInput { rows: usize, cols: usize },
    #[error("column permutations violate the Hall property at row {row}: destination column {col} repeats")]
    HallViolation { row: usize, col: usize },
    #[error("invalid column permutation set: {0}")]
    InvalidSigma(String),
    #[error("invalid permutation family spec: {0}")]
    InvalidSpec(String),
    #[error("vertex {0} is outside the grid")]
    VertexOutOfRange(Vertex),
}
