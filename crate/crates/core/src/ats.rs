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

//! Approximate token swapping, the serial baseline.
//!
//! Every vertex holding a misplaced token points at its first neighbour (in
//! `(row, col)` order) that is strictly closer to the token's destination.
//! While this desire graph has a cycle, the tokens on it are rotated one step
//! forward, which moves each of them closer. Otherwise the walk from the
//! first misplaced token ends at a vertex whose token is already home, and
//! the last edge of that walk is swapped: one token gets closer, the settled
//! one steps aside.

use crate::grid::{Grid, Permutation};
use crate::schedule::{asap_layers, Swap, SwapSchedule};

/// Serial swap sequence on grid edges.
pub type SwapSequence = Vec<Swap>;

struct Desire {
    // next[v] = the vertex the token at v wants to move to
    next: Vec<Option<usize>>,
}

impl Desire {
    fn build(grid: Grid, pi: &Permutation, occ: &[usize]) -> Self {
        let next = (0..grid.len())
            .map(|v| {
                let target = pi.dest_index(occ[v]);
                if target == v {
                    return None;
                }
                let (here, goal) = (grid.vertex(v), grid.vertex(target));
                let d = here.distance(goal);
                grid.neighbors(here)
                    .find(|u| u.distance(goal) < d)
                    .map(|u| grid.index(u))
            })
            .collect();
        Desire { next }
    }

    fn first_unhappy(&self) -> Option<usize> {
        self.next.iter().position(Option::is_some)
    }

    /// First cycle found scanning start vertices in ascending order, listed so
    /// that `cycle[i]` points at `cycle[i + 1]` and the last at the first.
    fn find_cycle(&self) -> Option<Vec<usize>> {
        const FRESH: usize = usize::MAX;
        const DONE: usize = usize::MAX - 1;
        let mut mark = vec![FRESH; self.next.len()];
        let mut walk = Vec::new();
        for start in 0..self.next.len() {
            if mark[start] != FRESH || self.next[start].is_none() {
                continue;
            }
            walk.clear();
            let mut v = start;
            loop {
                if mark[v] == start {
                    let at = walk.iter().position(|&x| x == v).expect("on walk");
                    return Some(walk.split_off(at));
                }
                if mark[v] == DONE {
                    break;
                }
                mark[v] = start;
                walk.push(v);
                match self.next[v] {
                    Some(u) => v = u,
                    None => break,
                }
            }
            for &x in &walk {
                mark[x] = DONE;
            }
        }
        None
    }

    fn walk_from(&self, start: usize) -> Vec<usize> {
        let mut path = vec![start];
        let mut v = start;
        while let Some(u) = self.next[v] {
            path.push(u);
            v = u;
        }
        path
    }
}

/// Computes a serial swap sequence realizing `pi`.
pub fn token_swap(pi: &Permutation) -> SwapSequence {
    let grid = pi.grid();
    let mut occ: Vec<usize> = (0..grid.len()).collect();
    let mut swaps = Vec::new();
    let limit = 4 * grid.len() * grid.len() + 16;
    let apply = |occ: &mut Vec<usize>, swaps: &mut Vec<Swap>, a: usize, b: usize| {
        occ.swap(a, b);
        swaps.push(Swap::new(grid.vertex(a), grid.vertex(b)));
    };

    for _ in 0..limit {
        let desire = Desire::build(grid, pi, &occ);
        let Some(start) = desire.first_unhappy() else {
            return swaps;
        };
        if let Some(cycle) = desire.find_cycle() {
            for pair in cycle.windows(2).rev() {
                apply(&mut occ, &mut swaps, pair[0], pair[1]);
            }
        } else {
            // without cycles every walk ends at a settled token
            let path = desire.walk_from(start);
            let k = path.len();
            apply(&mut occ, &mut swaps, path[k - 2], path[k - 1]);
        }
    }
    panic!("token swapping did not converge within {limit} steps on a {grid} grid");
}

/// ASAP layering of a serial sequence: each swap goes one layer after the
/// latest layer touching either endpoint.
pub fn layerize(seq: &[Swap]) -> SwapSchedule {
    asap_layers(seq.iter().copied())
}
