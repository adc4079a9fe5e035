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

//! Swap schedules: sequences of layers of vertex-disjoint swaps.

use crate::error::{Error, Result};
use crate::grid::{Grid, Permutation, Vertex};

/// An unordered pair of vertices, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Swap(Vertex, Vertex);

impl Swap {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Swap(a, b)
        } else {
            Swap(b, a)
        }
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    pub fn transposed(self) -> Self {
        Swap::new(self.0.transposed(), self.1.transposed())
    }
}

impl From<((usize, usize), (usize, usize))> for Swap {
    fn from((a, b): ((usize, usize), (usize, usize))) -> Self {
        Swap::new(a.into(), b.into())
    }
}

/// Ordered layers of swaps. Each layer is meant to be a matching of the grid;
/// [`SwapSchedule::validate`] checks that against a concrete grid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SwapSchedule {
    layers: Vec<Vec<Swap>>,
}

impl SwapSchedule {
    pub fn new(layers: Vec<Vec<Swap>>) -> Self {
        SwapSchedule { layers }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn layers(&self) -> &[Vec<Swap>] {
        &self.layers
    }

    pub fn into_layers(self) -> Vec<Vec<Swap>> {
        self.layers
    }

    /// Number of layers.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Total number of swaps.
    pub fn size(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn swaps(&self) -> impl Iterator<Item = Swap> + '_ {
        self.layers.iter().flatten().copied()
    }

    pub fn push_layer(&mut self, layer: Vec<Swap>) {
        self.layers.push(layer);
    }

    /// Appends the layers of `other`.
    pub fn extend(&mut self, other: SwapSchedule) {
        self.layers.extend(other.layers);
    }

    /// Maps every swap through the transpose automorphism.
    pub fn transposed(&self) -> SwapSchedule {
        SwapSchedule {
            layers: self
                .layers
                .iter()
                .map(|l| l.iter().map(|s| s.transposed()).collect())
                .collect(),
        }
    }

    /// Checks that every swap is a grid edge and no layer reuses a vertex.
    pub fn validate(&self, grid: Grid) -> Result<()> {
        let mut stamp = vec![usize::MAX; grid.len()];
        for (l, layer) in self.layers.iter().enumerate() {
            for &Swap(a, b) in layer {
                if !grid.is_edge(a, b) {
                    return Err(Error::InvalidLayer {
                        layer: l,
                        reason: format!("{a}-{b} is not an edge of the {grid} grid"),
                    });
                }
                for v in [a, b] {
                    let k = grid.index(v);
                    if stamp[k] == l {
                        return Err(Error::InvalidLayer {
                            layer: l,
                            reason: format!("vertex {v} is used by two swaps"),
                        });
                    }
                    stamp[k] = l;
                }
            }
        }
        Ok(())
    }
}

/// Positions of tokens: `pos[t]` is the row-major index of the vertex holding
/// token `t`. Tokens are named by the row-major index of their start vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pos: Vec<usize>,
}

impl Placement {
    pub fn identity(grid: Grid) -> Self {
        Placement {
            pos: (0..grid.len()).collect(),
        }
    }

    pub fn from_positions(grid: Grid, pos: Vec<usize>) -> Result<Self> {
        // a placement is exactly a bijection token -> vertex
        Permutation::from_indices(grid, pos.clone())?;
        Ok(Placement { pos })
    }

    pub fn position(&self, token: usize) -> usize {
        self.pos[token]
    }

    pub fn positions(&self) -> &[usize] {
        &self.pos
    }

    /// `occupant[v]` is the token sitting at vertex `v`.
    pub fn occupants(&self) -> Vec<usize> {
        let mut occ = vec![0; self.pos.len()];
        for (t, &p) in self.pos.iter().enumerate() {
            occ[p] = t;
        }
        occ
    }
}

/// Applies `schedule` to `start`, exchanging the tokens at both ends of every
/// swap, layer by layer.
pub fn apply_schedule(grid: Grid, schedule: &SwapSchedule, start: &Placement) -> Result<Placement> {
    if start.pos.len() != grid.len() {
        return Err(Error::InvalidPermutation(format!(
            "placement has {} tokens, grid {grid} has {} vertices",
            start.pos.len(),
            grid.len()
        )));
    }
    schedule.validate(grid)?;
    let mut occ = start.occupants();
    for layer in schedule.layers() {
        for &Swap(a, b) in layer {
            occ.swap(grid.index(a), grid.index(b));
        }
    }
    let mut pos = vec![0; occ.len()];
    for (v, &t) in occ.iter().enumerate() {
        pos[t] = v;
    }
    Ok(Placement { pos })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    /// First vertex (row-major) whose token did not arrive at its destination.
    pub first_failure: Option<Vertex>,
}

/// Checks that `schedule`, applied from the identity placement, delivers the
/// token of every vertex `v` to `pi(v)`.
pub fn verify_schedule(grid: Grid, pi: &Permutation, schedule: &SwapSchedule) -> Result<Verification> {
    if pi.grid() != grid {
        return Err(Error::InvalidPermutation(format!(
            "permutation is over a {} grid, expected {grid}",
            pi.grid()
        )));
    }
    let end = apply_schedule(grid, schedule, &Placement::identity(grid))?;
    let first_failure = (0..grid.len())
        .find(|&t| end.position(t) != pi.dest_index(t))
        .map(|t| grid.vertex(t));
    Ok(Verification {
        ok: first_failure.is_none(),
        first_failure,
    })
}

/// ASAP list scheduling of a serial swap sequence: every swap lands one layer
/// after the last layer touching either of its endpoints.
pub fn asap_layers(swaps: impl IntoIterator<Item = Swap>) -> SwapSchedule {
    use std::collections::HashMap;

    let mut next_free: HashMap<Vertex, usize> = HashMap::new();
    let mut layers: Vec<Vec<Swap>> = Vec::new();
    for s in swaps {
        let (a, b) = s.endpoints();
        let at = next_free
            .get(&a)
            .copied()
            .unwrap_or(0)
            .max(next_free.get(&b).copied().unwrap_or(0));
        if at == layers.len() {
            layers.push(Vec::new());
        }
        layers[at].push(s);
        next_free.insert(a, at + 1);
        next_free.insert(b, at + 1);
    }
    SwapSchedule { layers }
}

/// Removes empty layers and hoists every swap as early as its endpoints allow.
/// Swaps that share a vertex keep their relative order, so the induced
/// placement map is unchanged and the depth never grows.
pub fn compact_schedule(schedule: &SwapSchedule) -> SwapSchedule {
    asap_layers(schedule.swaps())
}
