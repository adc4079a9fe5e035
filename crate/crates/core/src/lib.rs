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

//! Permutation routing on grid coupling graphs.
//!
//! A permutation of the grid's vertices is realized as a schedule of layers,
//! each layer a set of vertex-disjoint swaps along grid edges. The main
//! router ([`route`]) works in three rounds (columns, rows, columns) and
//! chooses the intermediate rows of the first round by locality. A naive
//! grid router and an approximate token-swapping baseline ([`token_swap`])
//! are included for comparison.

pub mod ats;
pub mod error;
pub mod families;
pub mod grid;
pub mod matching;
pub mod path;
pub mod router;
pub mod schedule;

pub use ats::{layerize, token_swap, SwapSequence};
pub use error::{Error, Result};
pub use families::{generate, FamilyKind, FamilySpec};
pub use grid::{transpose, Grid, Permutation, Vertex};
pub use path::{odd_even_route, PathRoutingProblem};
pub use router::{
    grid_route, local_grid_route, naive_grid_route, route, ColumnPermutationSet, GridRouter,
    RouteOptions, Routed,
};
pub use schedule::{
    apply_schedule, compact_schedule, verify_schedule, Placement, Swap, SwapSchedule, Verification,
};
