use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

use drfeas::nonogram::LineOrder;
use drfeas::{SolverConfig, Variant};
use drfeas_cli::csv::Csv;
use drfeas_cli::demos::{self, EllipseSpec};
use drfeas_cli::puzzles::{self, BenchOptions, BenchResult, SudokuModel};

#[derive(Parser)]
#[command(name = "drfeas", version, about = "Douglas-Rachford feasibility demos and puzzle solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two-dimensional experiments printed as CSV.
    #[command(subcommand)]
    Demo(Demo),
    #[command(subcommand)]
    Sudoku(PuzzleCmd<SudokuOpts>),
    #[command(subcommand)]
    Nonogram(PuzzleCmd<NonogramOpts>),
}

#[derive(Subcommand)]
enum Demo {
    /// Three lines through the origin: three-set DR stalls, cyclic DR converges.
    Lines3 {
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        #[command(flatten)]
        out: DemoOut,
    },
    /// Unit circle against the line x2 = alpha.
    SphereLine {
        #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
        alpha: f64,
        #[arg(long, value_parser = parse_pair, default_value = "0.5,0.5", allow_hyphen_values = true)]
        x0: [f64; 2],
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
        #[command(flatten)]
        out: DemoOut,
    },
    /// Period-two orbits of the circle against a half-line and point sets.
    TwoCycle {
        #[arg(long, default_value_t = 0.8)]
        a: f64,
        #[command(flatten)]
        out: DemoOut,
    },
    /// Cyclic DR over ellipses; by default three filled ellipses meeting
    /// only at (0.5, 0.25).
    Ellipses {
        /// An ellipse as a,b,cx,cy,angle (repeat for each set).
        #[arg(long = "ellipse", allow_hyphen_values = true)]
        ellipses: Vec<EllipseSpec>,
        #[arg(long, value_parser = parse_pair, default_value = "-1,2", allow_hyphen_values = true)]
        x0: [f64; 2],
        #[arg(long, default_value_t = 2000)]
        max_iter: usize,
        /// Use the ellipse curves instead of the filled regions.
        #[arg(long)]
        boundary: bool,
        #[command(flatten)]
        out: DemoOut,
    },
}

#[derive(Args)]
struct DemoOut {
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Subcommand)]
enum PuzzleCmd<O: Args> {
    /// Solve one puzzle file and print the solution.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        opts: O,
        /// Write shadow distances to the found solution as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Solve every file in a directory and print one CSV row per run.
    Bench {
        dir: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        opts: O,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Runs per instance, with seeds seed, seed+1, ...
        #[arg(long, default_value_t = 1)]
        runs: usize,
        /// Print "-" for the seconds column so output is reproducible.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    #[arg(long, default_value_t = 0)]
    restarts: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::Dr)]
    variant: VariantArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Dr,
    DrProj,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        let variant = match self.variant {
            VariantArg::Dr => Variant::Dr,
            VariantArg::DrProj => Variant::DrProj,
        };
        SolverConfig::default()
            .with_seed(self.seed)
            .with_max_iter(self.max_iter)
            .with_restarts(self.restarts)
            .with_variant(variant)
    }
}

#[derive(Args)]
struct SudokuOpts {
    #[arg(long, value_enum, default_value_t = ModelArg::Binary)]
    model: ModelArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Binary,
    Integer,
}

impl From<ModelArg> for SudokuModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Binary => SudokuModel::Binary,
            ModelArg::Integer => SudokuModel::Integer,
        }
    }
}

#[derive(Args)]
struct NonogramOpts {
    /// Family reflected in first; its projection is the shadow.
    #[arg(long, value_enum, default_value_t = OrderArg::Rows)]
    order: OrderArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Rows,
    Cols,
}

impl From<OrderArg> for LineOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Rows => LineOrder::RowsFirst,
            OrderArg::Cols => LineOrder::ColsFirst,
        }
    }
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let v: Vec<f64> =
        s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    match v[..] {
        [a, b] => Ok([a, b]),
        _ => Err("expected two comma-separated numbers".into()),
    }
}

fn emit(csv: &Csv, out: &DemoOut) -> Result<()> {
    match &out.trace {
        Some(p) => write_file(p, csv.as_str()),
        None => {
            print!("{}", csv.as_str());
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))
}

/// Whether the last two rows of `x1,x2` (starting at column `col`) agree.
fn settled(csv: &Csv, col: usize, tol: f64) -> bool {
    let rows: Vec<Vec<f64>> = csv
        .as_str()
        .lines()
        .rev()
        .take(2)
        .map(|l| l.split(',').skip(col).take(2).filter_map(|t| t.parse().ok()).collect())
        .collect();
    rows.len() == 2
        && rows[0].len() == 2
        && rows[1].len() == 2
        && (rows[0][0] - rows[1][0]).hypot(rows[0][1] - rows[1][1]) <= tol
}

fn run_demo(demo: Demo) -> Result<bool> {
    match demo {
        Demo::Lines3 { max_iter, out } => {
            let csv = demos::lines3(max_iter)?;
            emit(&csv, &out)?;
            let end = demos::last_values(&csv, 2);
            Ok(end[0].hypot(end[1]) <= 1e-6)
        }
        Demo::SphereLine { alpha, x0, max_iter, out } => {
            let csv = demos::sphere_line(alpha, x0, max_iter)?;
            emit(&csv, &out)?;
            Ok(settled(&csv, 1, 1e-10))
        }
        Demo::TwoCycle { a, out } => {
            let (csv, periodic) = demos::two_cycle(a)?;
            emit(&csv, &out)?;
            eprintln!("period-2: {periodic}");
            Ok(periodic)
        }
        Demo::Ellipses { ellipses, x0, max_iter, boundary, out } => {
            let specs = if ellipses.is_empty() { demos::ellipses_through([0.5, 0.25]) } else { ellipses };
            let csv = demos::ellipses(&specs, x0, max_iter, boundary)?;
            emit(&csv, &out)?;
            Ok(settled(&csv, 1, 1e-10))
        }
    }
}

fn print_bench(result: &BenchResult, no_timing: bool) -> bool {
    print!("{}", result.csv(!no_timing).as_str());
    eprintln!("{}", result.summary());
    result.solved() == result.rows.len()
}

fn run_sudoku(cmd: PuzzleCmd<SudokuOpts>) -> Result<bool> {
    match cmd {
        PuzzleCmd::Solve { file, solver, opts, trace } => {
            let g = puzzles::load_sudoku(&file)?;
            let cfg = solver.config();
            let r = puzzles::solve_sudoku(&g, &cfg, opts.model.into())?;
            if let Some(s) = &r.solution {
                print!("{s}");
                if let Some(path) = &trace {
                    if matches!(opts.model, ModelArg::Integer) {
                        anyhow::bail!("--trace is only available for the binary model");
                    }
                    write_file(path, puzzles::sudoku_trace(&g, &cfg, s)?.as_str())?;
                }
            } else if trace.is_some() {
                eprintln!("no solution found, trace not written");
            }
            println!("{}", puzzles::report_line(&r));
            Ok(r.solved)
        }
        PuzzleCmd::Bench { dir, solver, opts, jobs, runs, no_timing } => {
            let bench = BenchOptions { runs, jobs };
            let result = puzzles::bench_sudoku(&dir, &solver.config(), opts.model.into(), &bench)?;
            Ok(print_bench(&result, no_timing))
        }
    }
}

fn run_nonogram(cmd: PuzzleCmd<NonogramOpts>) -> Result<bool> {
    match cmd {
        PuzzleCmd::Solve { file, solver, opts, trace } => {
            let spec = puzzles::load_nonogram(&file)?;
            let cfg = solver.config();
            let r = drfeas::nonogram::solve_nonogram_ordered(&spec, &cfg, opts.order.into())?;
            if let Some(c) = &r.solution {
                print!("{c}");
                if let Some(path) = &trace {
                    write_file(path, puzzles::nonogram_trace(&spec, &cfg, opts.order.into(), c)?.as_str())?;
                }
            } else if trace.is_some() {
                eprintln!("no solution found, trace not written");
            }
            println!("{}", puzzles::report_line(&r));
            Ok(r.solved)
        }
        PuzzleCmd::Bench { dir, solver, opts, jobs, runs, no_timing } => {
            let bench = BenchOptions { runs, jobs };
            let result = puzzles::bench_nonogram(&dir, &solver.config(), opts.order.into(), &bench)?;
            Ok(print_bench(&result, no_timing))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Demo(d) => run_demo(d),
        Command::Sudoku(c) => run_sudoku(c),
        Command::Nonogram(c) => run_nonogram(c),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
