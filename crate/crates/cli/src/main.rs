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

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gridroute::{verify_schedule, Grid, RouteOptions};
use gridroute_cli::algo::{self, Algo};
use gridroute_cli::bench::{self, BenchConfig, BenchPlan};
use gridroute_cli::io::{self, parse_grid, InputError, ScheduleFile};
use gridroute_cli::plot;

#[derive(Parser)]
#[command(name = "gridroute", version, about = "Route permutations of qubits on a grid with parallel swaps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a swap schedule for one permutation.
    Route(RouteArgs),
    /// Check that a schedule realizes a permutation.
    Verify(VerifyArgs),
    /// Run a benchmark sweep and write a CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct RouteArgs {
    #[arg(long, value_parser = parse_grid)]
    grid: Grid,
    #[arg(long)]
    perm: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Local)]
    algo: Algo,
    /// Do not try the transposed instance.
    #[arg(long)]
    no_transpose: bool,
    /// Do not fall back to the naive router.
    #[arg(long)]
    no_fallback: bool,
    /// Merge layers greedily after routing.
    #[arg(long)]
    compact: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_grid)]
    grid: Grid,
    #[arg(long)]
    perm: PathBuf,
    #[arg(long)]
    schedule: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated grid sizes, e.g. 8x8,16x16.
    #[arg(long, value_delimiter = ',')]
    grids: Option<Vec<String>>,
    /// Comma-separated families, e.g. uniform,block_local:4x4.
    #[arg(long, value_delimiter = ',')]
    families: Option<Vec<String>>,
    #[arg(long)]
    trials: Option<u64>,
    /// Base seed; trial k uses seed + k.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    algos: Option<Vec<Algo>>,
    /// TOML file with any of the settings above.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Directory for depth.svg and time.svg.
    #[arg(long)]
    plot: Option<PathBuf>,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn input_fail(e: InputError) -> ExitCode {
    fail(e.exit_code(), e)
}

fn cmd_route(a: RouteArgs) -> ExitCode {
    let pi = match io::read_permutation(&a.perm, a.grid) {
        Ok(p) => p,
        Err(e) => return input_fail(e),
    };
    let options = RouteOptions {
        use_transpose: !a.no_transpose,
        naive_fallback: !a.no_fallback,
        compact: a.compact,
    };
    let run = algo::run(a.algo, &pi, options);
    match verify_schedule(a.grid, &pi, &run.schedule) {
        Ok(v) if v.ok => {}
        _ => return fail(1, "internal error: computed schedule does not realize the permutation"),
    }
    let file = ScheduleFile::new(a.grid, a.algo.name(), &run.schedule);
    if let Err(e) = io::write_json(&a.out, &file) {
        return fail(1, format!("cannot write {}: {e}", a.out.display()));
    }
    let variant = run.variant.map(|v| format!(" ({v})")).unwrap_or_default();
    println!(
        "algorithm={}{variant} depth={} swaps={} time_us={}",
        a.algo,
        run.schedule.depth(),
        run.schedule.size(),
        run.elapsed.as_micros()
    );
    ExitCode::SUCCESS
}

fn cmd_verify(a: VerifyArgs) -> ExitCode {
    let pi = match io::read_permutation(&a.perm, a.grid) {
        Ok(p) => p,
        Err(e) => return input_fail(e),
    };
    let schedule = match io::read_schedule(&a.schedule, a.grid) {
        Ok(s) => s,
        Err(e) => return input_fail(e),
    };
    match verify_schedule(a.grid, &pi, &schedule) {
        Ok(v) if v.ok => {
            println!("ok depth={} swaps={}", schedule.depth(), schedule.size());
            ExitCode::SUCCESS
        }
        Ok(v) => {
            let at = v.first_failure.map(|p| format!("({},{})", p.row - 1, p.col - 1)).unwrap_or_default();
            println!("mismatch at {at}");
            ExitCode::from(1)
        }
        Err(e) => {
            println!("invalid schedule: {e}");
            ExitCode::from(1)
        }
    }
}

fn bench_plan(a: &BenchArgs) -> anyhow::Result<BenchPlan> {
    let cfg = match &a.config {
        Some(p) => BenchConfig::load(p)?,
        None => BenchConfig::default(),
    };
    let grids = a.grids.clone().or(cfg.grids).ok_or_else(|| anyhow::anyhow!("no grids given"))?;
    let families = a.families.clone().or(cfg.families).unwrap_or_else(|| vec!["uniform".into()]);
    let trials = a.trials.or(cfg.trials).unwrap_or(10);
    let seed = a.seed.or(cfg.seed).unwrap_or(0);
    let algos = a.algos.clone().or(cfg.algos).unwrap_or_else(|| vec![Algo::Local, Algo::Naive, Algo::Ats]);
    BenchPlan::from_parts(&grids, &families, trials, seed, algos)
}

fn threads() -> anyhow::Result<Option<usize>> {
    match std::env::var("GRIDROUTE_THREADS") {
        Ok(v) => Ok(Some(v.trim().parse().map_err(|_| anyhow::anyhow!("GRIDROUTE_THREADS must be a number, got `{v}`"))?)),
        Err(_) => Ok(None),
    }
}

fn cmd_bench(a: BenchArgs) -> ExitCode {
    let (plan, threads) = match bench_plan(&a).and_then(|p| Ok((p, threads()?))) {
        Ok(x) => x,
        Err(e) => return fail(2, format!("{e:#}")),
    };
    let rows = match bench::run(&plan, threads) {
        Ok(r) => r,
        Err(e) => return fail(1, format!("{e:#}")),
    };
    if let Err(e) = bench::write_csv(&rows, &a.out) {
        return fail(1, format!("{e:#}"));
    }
    if let Some(dir) = &a.plot {
        if let Err(e) = plot::write_plots(&rows, dir, plan.seed) {
            return fail(1, format!("{e:#}"));
        }
    }
    println!(
        "rows={} trials={} seed={} rng={} out={}",
        rows.len(),
        plan.trials,
        plan.seed,
        gridroute::families::RNG_NAME,
        a.out.display()
    );
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Route(a) => cmd_route(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
    }
}
