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

//! Independent oracles for small instances. Nothing here calls the routers.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use gridroute::{Grid, Permutation};
use itertools::Itertools;

fn edges(grid: Grid) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..grid.len() {
        for b in a + 1..grid.len() {
            if grid.is_edge(grid.vertex(a), grid.vertex(b)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// All non-empty matchings of the grid, as lists of index pairs.
fn matchings(grid: Grid) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        es: &[(usize, usize)],
        at: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if at == es.len() {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        rec(es, at + 1, used, cur, out);
        let (a, b) = es[at];
        if !used[a] && !used[b] {
            used[a] = true;
            used[b] = true;
            cur.push((a, b));
            rec(es, at + 1, used, cur, out);
            cur.pop();
            used[a] = false;
            used[b] = false;
        }
    }
    let es = edges(grid);
    let mut out = Vec::new();
    rec(&es, 0, &mut vec![false; grid.len()], &mut Vec::new(), &mut out);
    out
}

/// BFS distance from the identity arrangement to the arrangement where every
/// token `t` sits at `pi(t)`, with the given move set.
fn bfs(grid: Grid, pi: &Permutation, moves: &[Vec<(usize, usize)>]) -> usize {
    // state[v] = token at v
    let start: Vec<u8> = (0..grid.len() as u8).collect();
    let mut goal = vec![0u8; grid.len()];
    for t in 0..grid.len() {
        goal[pi.dest_index(t)] = t as u8;
    }
    let mut dist: HashMap<Vec<u8>, usize> = HashMap::new();
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let d = dist[&s];
        if s == goal {
            return d;
        }
        for mv in moves {
            let mut next = s.clone();
            for &(a, b) in mv {
                next.swap(a, b);
            }
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    unreachable!("grid graphs are connected")
}

/// Minimum number of matching layers realizing `pi`.
pub fn optimal_parallel_depth(pi: &Permutation) -> usize {
    let grid = pi.grid();
    bfs(grid, pi, &matchings(grid))
}

/// Minimum number of single swaps realizing `pi`.
pub fn optimal_swap_count(pi: &Permutation) -> usize {
    let grid = pi.grid();
    let singles: Vec<Vec<(usize, usize)>> = edges(grid).into_iter().map(|e| vec![e]).collect();
    bfs(grid, pi, &singles)
}

/// Smallest achievable maximum weight over all perfect pairings.
pub fn brute_bottleneck(weights: &[Vec<u64>]) -> u64 {
    let n = weights.len();
    (0..n)
        .permutations(n)
        .map(|p| p.iter().enumerate().map(|(k, &c)| weights[k][c]).max().unwrap_or(0))
        .min()
        .unwrap_or(0)
}

/// Every permutation of a grid, in lexicographic order of destination indices.
pub fn all_permutations(grid: Grid) -> Vec<Permutation> {
    (0..grid.len())
        .permutations(grid.len())
        .map(|d| Permutation::from_indices(grid, d).unwrap())
        .collect()
}

/// `ceil(sum of distances / 2)`: each swap moves two tokens by one step.
pub fn swap_lower_bound(pi: &Permutation) -> usize {
    pi.total_distance().div_ceil(2)
}
