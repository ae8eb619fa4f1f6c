//! Sudoku as a feasibility problem, in the 0/1 cube formulation and the
//! (much weaker) permutation formulation.

mod binary;
mod grid;
mod integer;

use std::time::Instant;

use rand_chacha::ChaCha8Rng;

pub use binary::{
    box_fibers, col_fibers, cube_index, decode, depth_fibers, encode_binary, row_fibers, BinaryModel, SudokuCube,
};
pub use grid::{verify, PuzzleGrid};
pub use integer::IntegerModel;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::product::{lift, ProductProblem, ProductSet};
use crate::set::ConstraintSet;
use crate::solver::{normalize_distances, run_restarted, uniform_point, LoopSpec, SolveReport, SolverConfig};

/// Rounds half up.
fn round_entry(v: f64) -> f64 {
    (v + 0.5).floor()
}

fn block0(p: Point, len: usize) -> Point {
    let mut v = p.into_vec();
    v.truncate(len);
    Point::new(v)
}

struct Lifted {
    problem: ProductProblem,
    factors: usize,
    dim: usize,
}

impl Lifted {
    fn new(factors: Vec<Box<dyn ConstraintSet>>) -> Result<Self> {
        let (n, dim) = (factors.len(), factors[0].dim());
        Ok(Lifted { problem: ProductProblem::new(ProductSet::new(factors)?), factors: n, dim })
    }

    fn run<T>(
        &self,
        cfg: &SolverConfig,
        start: Option<&[f64]>,
        lo: f64,
        hi: f64,
        accept: &dyn Fn(&Point) -> Option<T>,
    ) -> Result<SolveReport<T>> {
        let dim = self.dim;
        let step = |x: &Point| self.problem.step_with_shadow(x);
        let shadow = |x: &Point| self.problem.first_set().project(x);
        let read = |p: Point| block0(p, dim);
        let init = |rng: &mut ChaCha8Rng, first: bool| {
            let y = match start {
                Some(s) if first => Point::from_slice(s),
                _ => uniform_point(rng, dim, lo, hi),
            };
            lift(&y, self.factors).expect("factor count is positive").into_flat()
        };
        run_restarted(cfg, LoopSpec { step: &step, shadow: &shadow, read: &read, init: &init, accept })
    }
}

/// Solves with product-space DR over the five cube constraints.
///
/// A grid with no blanks is checked and returned at iteration 0.
pub fn solve_binary(g: &PuzzleGrid, cfg: &SolverConfig) -> Result<SolveReport<PuzzleGrid>> {
    solve_binary_inner(g, cfg, None)
}

/// As [`solve_binary`], but the first attempt starts from the lifted `start`
/// instead of a random cube.
pub fn solve_binary_from(g: &PuzzleGrid, cfg: &SolverConfig, start: &SudokuCube) -> Result<SolveReport<PuzzleGrid>> {
    if start.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: start.n() });
    }
    solve_binary_inner(g, cfg, Some(start.values()))
}

fn solve_binary_inner(g: &PuzzleGrid, cfg: &SolverConfig, start: Option<&[f64]>) -> Result<SolveReport<PuzzleGrid>> {
    cfg.validate()?;
    let t0 = Instant::now();
    if start.is_none() && g.is_complete() {
        return Ok(SolveReport::immediate(g.clone(), t0.elapsed()));
    }
    let n = g.n();
    let model = BinaryModel::new(g);
    let checker = BinaryModel::new(g);
    let lifted = Lifted::new(model.into_factors())?;
    let accept = |s: &Point| {
        let rounded: Vec<f64> = s.coords().iter().map(|&v| round_entry(v)).collect();
        if !checker.contains_all(&rounded) {
            return None;
        }
        let cube = SudokuCube::from_values(n, rounded, vec![]).ok()?;
        decode(&cube).ok().filter(|grid| verify(g, grid))
    };
    let mut report = lifted.run(cfg, start, 0.0, 1.0, &accept)?;
    report.elapsed = t0.elapsed();
    Ok(report)
}

/// Solves with product-space DR over the permutation formulation. Starts
/// are uniform on `[1, n]`.
pub fn solve_integer(g: &PuzzleGrid, cfg: &SolverConfig) -> Result<SolveReport<PuzzleGrid>> {
    cfg.validate()?;
    let t0 = Instant::now();
    if g.is_complete() {
        return Ok(SolveReport::immediate(g.clone(), t0.elapsed()));
    }
    let n = g.n();
    let checker = IntegerModel::new(g);
    let lifted = Lifted::new(IntegerModel::new(g).into_factors())?;
    let accept = |s: &Point| {
        let rounded: Vec<f64> = s.coords().iter().map(|&v| round_entry(v)).collect();
        if !checker.contains_all(&rounded) {
            return None;
        }
        let cells = rounded.iter().map(|&v| v as u8).collect();
        PuzzleGrid::new(n, cells).ok().filter(|grid| verify(g, grid))
    };
    let mut report = lifted.run(cfg, None, 1.0, n as f64, &accept)?;
    report.elapsed = t0.elapsed();
    Ok(report)
}

/// Configuration that records the distance from each binary-model shadow to
/// the encoded `known_solution`.
pub fn with_distance_trace(cfg: &SolverConfig, known_solution: &PuzzleGrid) -> SolverConfig {
    let mut cfg = cfg.clone();
    cfg.trace_reference = Some(encode_binary(known_solution).into_values());
    cfg
}

/// Distances `||P_D x_n - x*||` of the final attempt, divided by their
/// maximum. Errors if the run was not configured with a reference.
pub fn distance_trace<T>(report: &SolveReport<T>) -> Result<Vec<f64>> {
    report
        .distances
        .as_deref()
        .map(normalize_distances)
        .ok_or_else(|| Error::InvalidParameter("run was made without a reference solution".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Variant;

    const SOLVED_9: &str = "743829156518647932962351748624598371879134265351276489496715823287963514135482697";

    fn strip(s: &str, keep: impl Fn(usize) -> bool) -> PuzzleGrid {
        let line: String = s.chars().enumerate().map(|(i, c)| if keep(i) { c } else { '.' }).collect();
        PuzzleGrid::parse(&line).unwrap()
    }

    #[test]
    fn complete_grid_is_immediate() {
        let s = PuzzleGrid::parse(SOLVED_9).unwrap();
        for r in [solve_binary(&s, &SolverConfig::default()), solve_integer(&s, &SolverConfig::default())] {
            let r = r.unwrap();
            assert!(r.solved);
            assert_eq!(r.iterations, 0);
            assert_eq!(r.solution.unwrap(), s);
        }
    }

    #[test]
    fn easy_puzzle_solves() {
        // every third cell blanked
        let puzzle = strip(SOLVED_9, |i| i % 3 != 0);
        let r = solve_binary(&puzzle, &SolverConfig::default().with_seed(1).with_restarts(2)).unwrap();
        assert!(r.solved);
        assert!(verify(&puzzle, r.solution.as_ref().unwrap()));
        assert!(r.iterations <= 10_000);
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let puzzle = strip(SOLVED_9, |i| i % 2 == 0);
        for variant in [Variant::Dr, Variant::DrProj] {
            let cfg = SolverConfig::default().with_seed(42).with_max_iter(300).with_variant(variant);
            let a = solve_binary(&puzzle, &cfg).unwrap();
            let b = solve_binary(&puzzle, &cfg).unwrap();
            assert_eq!(
                (a.solved, a.iterations, a.restarts, a.total_iterations),
                (b.solved, b.iterations, b.restarts, b.total_iterations)
            );
            assert_eq!(a.solution, b.solution);
        }
    }

    #[test]
    fn trace_from_the_solution_is_zero() {
        let solution = PuzzleGrid::parse(SOLVED_9).unwrap();
        let puzzle = strip(SOLVED_9, |i| i % 4 == 0);
        let cfg = with_distance_trace(&SolverConfig::default(), &solution);
        let r = solve_binary_from(&puzzle, &cfg, &encode_binary(&solution)).unwrap();
        assert!(r.solved);
        assert_eq!(r.iterations, 0);
        assert!(distance_trace(&r).unwrap().iter().all(|&d| d == 0.0));
        assert!(distance_trace(&solve_binary(&puzzle, &SolverConfig::default().with_max_iter(2)).unwrap()).is_err());
    }

    #[test]
    fn normalized_trace_hits_one_and_ends_at_zero() {
        let solution = PuzzleGrid::parse(SOLVED_9).unwrap();
        let puzzle = strip(SOLVED_9, |i| i % 3 != 1);
        let cfg = with_distance_trace(&SolverConfig::default().with_seed(3).with_restarts(3), &solution);
        let r = solve_binary(&puzzle, &cfg).unwrap();
        assert!(r.solved);
        let d = distance_trace(&r).unwrap();
        assert_eq!(d.len(), r.iterations + 1);
        assert!(d.iter().all(|&v| (0.0..=1.0).contains(&v)));
        assert!(d.contains(&1.0));
        // unique solution, so the accepted shadow rounds to x*
        assert!(*d.last().unwrap() < 0.5);
    }

    #[test]
    fn rounding_is_half_up() {
        assert_eq!(round_entry(0.5), 1.0);
        assert_eq!(round_entry(0.49), 0.0);
        assert_eq!(round_entry(-0.2), 0.0);
        assert_eq!(round_entry(1.7), 2.0);
    }
}
