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

//! Uniform entry point over the three routers.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use gridroute::{compact_schedule, layerize, naive_grid_route, route, token_swap, Permutation, RouteOptions, SwapSchedule};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Local,
    Naive,
    Ats,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Local => "local",
            Algo::Naive => "naive",
            Algo::Ats => "ats",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "local" => Ok(Algo::Local),
            "naive" => Ok(Algo::Naive),
            "ats" => Ok(Algo::Ats),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Run {
    pub schedule: SwapSchedule,
    /// Which grid router and orientation produced the schedule, for `local`.
    pub variant: Option<String>,
    pub elapsed: Duration,
}

/// Runs `algo`. `options` only affects `local`, except that `compact`
/// applies to `naive` as well.
pub fn run(algo: Algo, pi: &Permutation, options: RouteOptions) -> Run {
    let start = Instant::now();
    let (schedule, variant) = match algo {
        Algo::Local => {
            let r = route(pi, options);
            let orient = if r.transposed { "transposed" } else { "direct" };
            (r.schedule, Some(format!("{}/{orient}", r.router.name())))
        }
        Algo::Naive => {
            let s = naive_grid_route(pi);
            (if options.compact { compact_schedule(&s) } else { s }, None)
        }
        Algo::Ats => (layerize(&token_swap(pi)), None),
    };
    Run { schedule, variant, elapsed: start.elapsed() }
}
