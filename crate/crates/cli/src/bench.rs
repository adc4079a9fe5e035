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

//! Benchmark sweeps over grids, families, seeds and algorithms.

use std::path::Path;

use anyhow::{bail, Context};
use gridroute::{compact_schedule, generate, verify_schedule, FamilyKind, FamilySpec, Grid, RouteOptions};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algo::{self, Algo};
use crate::io::parse_grid;

/// Optional settings read from a TOML file. Command-line flags win.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub grids: Option<Vec<String>>,
    pub families: Option<Vec<String>>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub algos: Option<Vec<Algo>>,
}

impl BenchConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchPlan {
    pub grids: Vec<Grid>,
    pub families: Vec<FamilyKind>,
    pub trials: u64,
    pub seed: u64,
    pub algos: Vec<Algo>,
}

impl BenchPlan {
    /// Parses and validates every setting before any work starts.
    pub fn from_parts(grids: &[String], families: &[String], trials: u64, seed: u64, algos: Vec<Algo>) -> anyhow::Result<Self> {
        let grids = grids
            .iter()
            .map(|g| parse_grid(g).map_err(anyhow::Error::msg))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let families = families
            .iter()
            .map(|f| f.parse::<FamilyKind>().map_err(|e| anyhow::anyhow!("{e}")))
            .collect::<anyhow::Result<Vec<_>>>()?;
        if grids.is_empty() || families.is_empty() || algos.is_empty() {
            bail!("grids, families and algorithms must all be non-empty");
        }
        if trials == 0 {
            bail!("trials must be positive");
        }
        for &grid in &grids {
            for &kind in &families {
                FamilySpec::new(kind, seed)
                    .validate(grid)
                    .with_context(|| format!("family {kind} on grid {grid}"))?;
            }
        }
        Ok(BenchPlan { grids, families, trials, seed, algos })
    }

    pub fn len(&self) -> usize {
        self.grids.len() * self.families.len() * self.trials as usize * self.algos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub grid_m: usize,
    pub grid_n: usize,
    pub family: String,
    pub seed: u64,
    pub algorithm: String,
    pub depth: usize,
    pub depth_compacted: usize,
    pub swaps: usize,
    pub time_us: u64,
}

pub const CSV_HEADER: &str = "grid_m,grid_n,family,seed,algorithm,depth,depth_compacted,swaps,time_us";

#[derive(Debug, Clone, Copy)]
struct Job {
    grid: usize,
    family: usize,
    trial: u64,
    algo: usize,
}

/// Runs the sweep on `threads` workers (all cores if `None`). Rows come back
/// ordered by grid, family, seed and algorithm, in plan order.
pub fn run(plan: &BenchPlan, threads: Option<usize>) -> anyhow::Result<Vec<BenchmarkRow>> {
    let mut jobs = Vec::with_capacity(plan.len());
    for grid in 0..plan.grids.len() {
        for family in 0..plan.families.len() {
            for trial in 0..plan.trials {
                for algo in 0..plan.algos.len() {
                    jobs.push(Job { grid, family, trial, algo });
                }
            }
        }
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder.build().context("cannot start worker pool")?;
    let mut rows = pool.install(|| {
        jobs.par_iter()
            .map(|&job| run_job(plan, job).map(|row| (job, row)))
            .collect::<anyhow::Result<Vec<_>>>()
    })?;
    rows.sort_by_key(|(j, _)| (j.grid, j.family, j.trial, j.algo));
    Ok(rows.into_iter().map(|(_, r)| r).collect())
}

fn run_job(plan: &BenchPlan, job: Job) -> anyhow::Result<BenchmarkRow> {
    let grid = plan.grids[job.grid];
    let kind = plan.families[job.family];
    let algo = plan.algos[job.algo];
    let seed = plan.seed.wrapping_add(job.trial);
    let pi = generate(grid, &FamilySpec::new(kind, seed))?;
    let out = algo::run(algo, &pi, RouteOptions::default());
    let check = verify_schedule(grid, &pi, &out.schedule)?;
    if !check.ok {
        bail!("{algo} produced an incorrect schedule for {kind} seed {seed} on {grid}");
    }
    Ok(BenchmarkRow {
        grid_m: grid.rows(),
        grid_n: grid.cols(),
        family: kind.to_string(),
        seed,
        algorithm: algo.name().to_string(),
        depth: out.schedule.depth(),
        depth_compacted: compact_schedule(&out.schedule).depth(),
        swaps: out.schedule.size(),
        time_us: out.elapsed.as_micros() as u64,
    })
}

/// Writes the CSV through a temporary file in the same directory so readers
/// never see a partial file.
pub fn write_csv(rows: &[BenchmarkRow], path: &Path) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("cannot create a file in {}", dir.display()))?;
    {
        let mut w = csv::Writer::from_writer(tmp.as_file());
        if rows.is_empty() {
            w.write_record(CSV_HEADER.split(','))?;
        }
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
    }
    tmp.persist(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

pub fn read_csv(path: &Path) -> anyhow::Result<Vec<BenchmarkRow>> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize().map(|row| row.map_err(Into::into)).collect()
}

pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty());
    values.sort_by(f64::total_cmp);
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        (values[k / 2 - 1] + values[k / 2]) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(families: &[&str], trials: u64) -> BenchPlan {
        let families: Vec<String> = families.iter().map(|s| s.to_string()).collect();
        BenchPlan::from_parts(&["3x3".into(), "4x2".into()], &families, trials, 7, vec![Algo::Local, Algo::Ats]).unwrap()
    }

    #[test]
    fn rows_are_ordered_and_seeded_by_trial() {
        let p = plan(&["uniform", "identity"], 3);
        let rows = run(&p, Some(3)).unwrap();
        assert_eq!(rows.len(), p.len());
        assert_eq!(rows[0].seed, 7);
        assert_eq!(rows[2].seed, 8);
        assert_eq!((rows[0].algorithm.as_str(), rows[1].algorithm.as_str()), ("local", "ats"));
        assert!(rows.iter().filter(|r| r.family == "identity").all(|r| r.depth == 0 && r.swaps == 0));
        assert_eq!(rows.last().unwrap().grid_m, 4);
    }

    #[test]
    fn invalid_plans_are_rejected() {
        let bad = |g: &str, f: &str, t| BenchPlan::from_parts(&[g.into()], &[f.into()], t, 0, vec![Algo::Local]);
        assert!(bad("4x4", "uniform", 0).is_err());
        assert!(bad("4y4", "uniform", 1).is_err());
        assert!(bad("4x4", "zigzag", 1).is_err());
        assert!(bad("2x2", "block_local:3x3", 1).is_err());
        assert!(bad("4x4", "overlapping_block:2x2:3", 1).is_err());
        assert!(bad("4x4", "overlapping_block:2x2:1", 1).is_ok());
    }

    #[test]
    fn csv_round_trip_and_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let rows = run(&plan(&["uniform"], 2), None).unwrap();
        write_csv(&rows, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(read_csv(&path).unwrap(), rows);
    }

    #[test]
    fn config_parses_partial_settings() {
        let c: BenchConfig = toml::from_str("grids = [\"4x4\"]\nalgos = [\"ats\"]\ntrials = 5\n").unwrap();
        assert_eq!(c.algos, Some(vec![Algo::Ats]));
        assert_eq!(c.seed, None);
        assert!(toml::from_str::<BenchConfig>("colour = 1").is_err());
    }

    #[test]
    fn medians() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
