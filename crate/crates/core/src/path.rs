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

//! Odd-even transposition routing on a path.
//!
//! Every round of a grid route is a batch of independent path routings, one
//! per row or column. Tokens are compared by their target position, so the
//! sort realizes an arbitrary permutation of the path.

use crate::error::{Error, Result};

/// Route the token at position `p` to `target(p)` on a path `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathRoutingProblem {
    target: Vec<usize>,
}

impl PathRoutingProblem {
    /// `target[p - 1]` is the 1-based destination of the token at position `p`.
    pub fn new(target: Vec<usize>) -> Result<Self> {
        let k = target.len();
        if k == 0 {
            return Err(Error::InvalidPermutation("path must have at least one vertex".into()));
        }
        let mut seen = vec![false; k];
        for &t in &target {
            if !(1..=k).contains(&t) || std::mem::replace(&mut seen[t - 1], true) {
                return Err(Error::InvalidPermutation(format!(
                    "path target {target:?} is not a bijection on 1..={k}"
                )));
            }
        }
        Ok(PathRoutingProblem { target })
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    pub fn target(&self, p: usize) -> usize {
        self.target[p - 1]
    }
}

/// Routes a path permutation with odd-even transposition.
///
/// Each returned round lists the 1-based left endpoints `p` of the edges
/// `(p, p + 1)` swapped in that round. Both start parities are tried and the
/// shorter schedule wins, odd edges first on ties.
pub fn odd_even_route(problem: &PathRoutingProblem) -> Vec<Vec<usize>> {
    let keys: Vec<usize> = problem.target.iter().map(|t| t - 1).collect();
    let mut scratch = PathScratch::default();
    let swaps = scratch.route(&keys);
    let mut rounds: Vec<Vec<usize>> = Vec::new();
    for &(round, p) in swaps {
        if rounds.len() <= round {
            rounds.resize_with(round + 1, Vec::new);
        }
        rounds[round].push(p + 1);
    }
    rounds
}

/// Buffers reused across many path routings.
#[derive(Debug, Default)]
pub(crate) struct PathScratch {
    work: Vec<usize>,
    odd: Vec<(usize, usize)>,
    even: Vec<(usize, usize)>,
}

impl PathScratch {
    /// 0-based core of [`odd_even_route`]: `keys[p]` is the target of the
    /// token at position `p`. Returns `(round, left endpoint)` pairs, ordered
    /// by round, both 0-based.
    pub(crate) fn route(&mut self, keys: &[usize]) -> &[(usize, usize)] {
        let odd_rounds = transposition_rounds(keys, 0, &mut self.work, &mut self.odd);
        if odd_rounds == 0 {
            return &self.odd;
        }
        let even_rounds = transposition_rounds(keys, 1, &mut self.work, &mut self.even);
        if even_rounds < odd_rounds {
            &self.even
        } else {
            &self.odd
        }
    }
}

/// Writes the swaps into `out` and returns the number of rounds, leading idle
/// rounds dropped.
fn transposition_rounds(
    keys: &[usize],
    first_offset: usize,
    work: &mut Vec<usize>,
    out: &mut Vec<(usize, usize)>,
) -> usize {
    let k = keys.len();
    work.clear();
    work.extend_from_slice(keys);
    out.clear();
    let mut offset = first_offset;
    let mut round = 0;
    let mut idle = 0;
    // two consecutive idle rounds means both parities are in order
    while idle < 2 {
        let before = out.len();
        let mut p = offset;
        while p + 1 < k {
            if work[p] > work[p + 1] {
                work.swap(p, p + 1);
                out.push((round, p));
            }
            p += 2;
        }
        idle = if out.len() == before { idle + 1 } else { 0 };
        round += 1;
        offset ^= 1;
    }
    debug_assert!(work.windows(2).all(|w| w[0] < w[1]));
    let Some(&(lead, _)) = out.first() else {
        return 0;
    };
    for swap in out.iter_mut() {
        swap.0 -= lead;
    }
    let rounds = out.last().map_or(0, |&(r, _)| r + 1);
    debug_assert!(rounds + lead <= k);
    rounds
}
