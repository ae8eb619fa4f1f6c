//! File loading, single solves and directory benchmarks for both puzzle
//! kinds.

use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{Context, Result};
use rayon::prelude::*;

use drfeas::nonogram::{solve_nonogram_ordered, Canvas, LineOrder, NonogramSpec};
use drfeas::sudoku::{encode_binary, solve_binary, solve_integer, PuzzleGrid};
use drfeas::{SolveReport, SolverConfig};

use crate::csv::{Csv, Num};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SudokuModel {
    #[default]
    Binary,
    Integer,
}

/// A failure to read or parse an input file; reported with exit status 2.
#[derive(Debug)]
pub struct InputError(pub anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(|e| InputError(e).into())
}

pub fn load_sudoku(path: &Path) -> Result<PuzzleGrid> {
    let text = read(path)?;
    PuzzleGrid::parse(&text).map_err(|e| InputError(anyhow::Error::new(e).context(path.display().to_string())).into())
}

pub fn load_nonogram(path: &Path) -> Result<NonogramSpec> {
    let text = read(path)?;
    NonogramSpec::parse(&text).map_err(|e| InputError(anyhow::Error::new(e).context(path.display().to_string())).into())
}

/// Regular files of `dir` in name order, hidden files skipped.
pub fn list_dir(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    let entries =
        std::fs::read_dir(dir).with_context(|| format!("cannot list {}", dir.display())).map_err(InputError)?;
    for e in entries {
        let e = e.map_err(|e| InputError(e.into()))?;
        let hidden = e.file_name().to_string_lossy().starts_with('.');
        if !hidden && e.path().is_file() {
            out.push(e.path());
        }
    }
    out.sort();
    Ok(out)
}

pub fn solve_sudoku(g: &PuzzleGrid, cfg: &SolverConfig, model: SudokuModel) -> Result<SolveReport<PuzzleGrid>> {
    Ok(match model {
        SudokuModel::Binary => solve_binary(g, cfg)?,
        SudokuModel::Integer => solve_integer(g, cfg)?,
    })
}

/// Normalized shadow distances to the solution a run found, obtained by
/// replaying the same seeded run with that solution as reference. Only the
/// binary model is supported.
pub fn sudoku_trace(g: &PuzzleGrid, cfg: &SolverConfig, solution: &PuzzleGrid) -> Result<Csv> {
    let mut cfg = cfg.clone();
    cfg.trace_reference = Some(encode_binary(solution).into_values());
    let report = solve_binary(g, &cfg)?;
    Ok(distance_csv(&report))
}

pub fn nonogram_trace(spec: &NonogramSpec, cfg: &SolverConfig, order: LineOrder, solution: &Canvas) -> Result<Csv> {
    let mut cfg = cfg.clone();
    cfg.trace_reference = Some(solution.cells().to_vec());
    let report = solve_nonogram_ordered(spec, &cfg, order)?;
    Ok(distance_csv(&report))
}

fn distance_csv<T>(report: &SolveReport<T>) -> Csv {
    let raw = report.distances.clone().unwrap_or_default();
    let normalized = drfeas::solver::normalize_distances(&raw);
    let mut csv = Csv::new(&["iteration", "distance", "normalized"]);
    for (n, (d, m)) in raw.iter().zip(&normalized).enumerate() {
        csv.row([n.to_string(), Num(*d).to_string(), Num(*m).to_string()]);
    }
    csv
}

/// One-line summary printed after a single solve.
pub fn report_line<T>(r: &SolveReport<T>) -> String {
    format!(
        "solved={} iterations={} restarts={} total_iterations={} seconds={:.3}",
        r.solved,
        r.iterations,
        r.restarts,
        r.total_iterations,
        r.elapsed.as_secs_f64()
    )
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub runs: usize,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub solved: bool,
    pub restarts: usize,
    pub iterations: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct BenchResult {
    pub rows: Vec<BenchRow>,
}

impl BenchResult {
    pub fn solved(&self) -> usize {
        self.rows.iter().filter(|r| r.solved).count()
    }

    pub fn csv(&self, timing: bool) -> Csv {
        let mut csv = Csv::new(&["instance", "solved", "restarts", "iterations", "seconds"]);
        for r in &self.rows {
            let secs = if timing { format!("{:.6}", r.elapsed.as_secs_f64()) } else { "-".to_string() };
            csv.row([r.instance.clone(), r.solved.to_string(), r.restarts.to_string(), r.iterations.to_string(), secs]);
        }
        csv
    }

    pub fn summary(&self) -> String {
        let n = self.rows.len().max(1);
        let secs: Vec<f64> = self.rows.iter().map(|r| r.elapsed.as_secs_f64()).collect();
        let mean = secs.iter().sum::<f64>() / n as f64;
        let max = secs.iter().copied().fold(0.0, f64::max);
        format!(
            "solved {}/{} ({:.1}%), mean {:.3} s, max {:.3} s",
            self.solved(),
            self.rows.len(),
            100.0 * self.solved() as f64 / n as f64,
            mean,
            max
        )
    }
}

fn bench<P, T, F>(instances: &[(String, P)], cfg: &SolverConfig, opts: &BenchOptions, solve: F) -> Result<BenchResult>
where
    P: Sync,
    F: Fn(&P, &SolverConfig) -> Result<SolveReport<T>> + Sync,
{
    let jobs: Vec<(String, &P, u64)> = instances
        .iter()
        .flat_map(|(name, p)| {
            (0..opts.runs.max(1)).map(move |r| {
                let label = if opts.runs > 1 { format!("{name}#{r}") } else { name.clone() };
                (label, p, cfg.seed.wrapping_add(r as u64))
            })
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build()?;
    let rows = pool.install(|| {
        jobs.par_iter()
            .map(|(label, p, seed)| {
                let mut cfg = cfg.clone();
                cfg.seed = *seed;
                let r = solve(p, &cfg)?;
                Ok(BenchRow {
                    instance: label.clone(),
                    solved: r.solved,
                    restarts: r.restarts,
                    iterations: r.iterations,
                    elapsed: r.elapsed,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(BenchResult { rows })
}

fn stem(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

pub fn bench_sudoku(dir: &Path, cfg: &SolverConfig, model: SudokuModel, opts: &BenchOptions) -> Result<BenchResult> {
    let instances = list_dir(dir)?.iter().map(|p| Ok((stem(p), load_sudoku(p)?))).collect::<Result<Vec<_>>>()?;
    bench(&instances, cfg, opts, |g, cfg| solve_sudoku(g, cfg, model))
}

pub fn bench_nonogram(dir: &Path, cfg: &SolverConfig, order: LineOrder, opts: &BenchOptions) -> Result<BenchResult> {
    let instances = list_dir(dir)?.iter().map(|p| Ok((stem(p), load_nonogram(p)?))).collect::<Result<Vec<_>>>()?;
    bench(&instances, cfg, opts, |s, cfg| Ok(solve_nonogram_ordered(s, cfg, order)?))
}
