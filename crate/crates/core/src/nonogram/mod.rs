//! Black-and-white nonograms as a two-set feasibility problem: every row
//! must match its clues, and so must every column.

mod line;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;

pub use line::{enumerate_line, placement_count, run_lengths, LineFeasibleSet, MAX_PLACEMENTS};

use crate::error::{Error, Result};
use crate::ops::dr_step_with_shadow;
use crate::point::Point;
use crate::set::ConstraintSet;
use crate::sets::FiberFamily;
use crate::solver::{run_restarted, uniform_point, LoopSpec, SolveReport, SolverConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonogramSpec {
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

impl NonogramSpec {
    /// Checks that every clue sequence fits its line.
    pub fn new(rows: Vec<Vec<usize>>, cols: Vec<Vec<usize>>) -> Result<Self> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::InvalidParameter("nonogram needs at least one row and one column".into()));
        }
        for r in &rows {
            placement_count(cols.len(), r)?;
        }
        for c in &cols {
            placement_count(rows.len(), c)?;
        }
        Ok(NonogramSpec { rows, cols })
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.cols.len()
    }

    pub fn row_clues(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn col_clues(&self) -> &[Vec<usize>] {
        &self.cols
    }

    /// Parses a `rows:` block followed by a `cols:` block, one clue sequence
    /// per line with comma- or space-separated lengths.
    ///
    /// An empty line or a lone `0` is an empty sequence. Blank lines just
    /// before `cols:` or at the end of the file are ignored, as are lines
    /// starting with `%`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Option<Vec<(usize, &str)>> = None;
        let mut cols: Option<Vec<(usize, &str)>> = None;
        let mut current: Option<&mut Vec<(usize, &str)>> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let no = i + 1;
            if line.starts_with('%') {
                continue;
            }
            match line.to_ascii_lowercase().as_str() {
                "rows:" => {
                    if rows.is_some() {
                        return Err(Error::Parse { line: no, msg: "duplicate rows: block".into() });
                    }
                    current = Some(rows.insert(Vec::new()));
                }
                "cols:" | "columns:" => {
                    if rows.is_none() || cols.is_some() {
                        return Err(Error::Parse { line: no, msg: "cols: must follow a single rows: block".into() });
                    }
                    current = Some(cols.insert(Vec::new()));
                }
                _ => match current.as_mut() {
                    Some(block) => block.push((no, line)),
                    None if line.is_empty() => {}
                    None => return Err(Error::Parse { line: no, msg: "expected rows:".into() }),
                },
            }
        }
        let (Some(rows), Some(cols)) = (rows, cols) else {
            return Err(Error::Parse { line: text.lines().count().max(1), msg: "missing rows: or cols: block".into() });
        };
        NonogramSpec::new(parse_block(rows)?, parse_block(cols)?)
    }
}

fn parse_block(mut lines: Vec<(usize, &str)>) -> Result<Vec<Vec<usize>>> {
    while lines.last().is_some_and(|(_, l)| l.is_empty()) {
        lines.pop();
    }
    lines
        .into_iter()
        .map(|(no, line)| {
            let mut seq = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse { line: no, msg: format!("bad clue {t:?}") }))
                .collect::<Result<Vec<usize>>>()?;
            if seq == [0] {
                seq.clear();
            }
            if seq.contains(&0) {
                return Err(Error::Parse { line: no, msg: "zero-length cluster".into() });
            }
            Ok(seq)
        })
        .collect()
}

impl FromStr for NonogramSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NonogramSpec::parse(s)
    }
}

/// A relaxed `m x n` canvas, row-major; 1 is black, 0 is white.
#[derive(Debug, Clone, PartialEq)]
pub struct Canvas {
    height: usize,
    width: usize,
    cells: Vec<f64>,
}

impl Canvas {
    pub fn new(height: usize, width: usize, cells: Vec<f64>) -> Result<Self> {
        if cells.len() != height * width {
            return Err(Error::DimensionMismatch { expected: height * width, found: cells.len() });
        }
        if cells.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("canvas entries must be finite".into()));
        }
        Ok(Canvas { height, width, cells })
    }

    /// Reads `#` as black and `.` as white.
    pub fn from_art(art: &str) -> Result<Self> {
        let rows: Vec<&str> = art.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let width = rows.first().map_or(0, |r| r.chars().count());
        let mut cells = Vec::with_capacity(rows.len() * width);
        for (i, r) in rows.iter().enumerate() {
            if r.chars().count() != width {
                return Err(Error::Parse { line: i + 1, msg: "ragged canvas".into() });
            }
            for ch in r.chars() {
                cells.push(match ch {
                    '#' => 1.0,
                    '.' => 0.0,
                    _ => return Err(Error::Parse { line: i + 1, msg: format!("unexpected {ch:?}") }),
                });
            }
        }
        Canvas::new(rows.len(), width, cells)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.cells[r * self.width + c]
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.cells[r * self.width..(r + 1) * self.width]
    }

    pub fn col(&self, c: usize) -> Vec<f64> {
        (0..self.height).map(|r| self.get(r, c)).collect()
    }

    pub fn is_binary(&self) -> bool {
        self.cells.iter().all(|&v| v == 0.0 || v == 1.0)
    }
}

impl fmt::Display for Canvas {
    /// `#` for black, `.` for anything else.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.height {
            let line: String = self.row(r).iter().map(|&v| if v == 1.0 { '#' } else { '.' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// True iff the canvas is exactly 0/1 and every row and column has the
/// clue run lengths.
pub fn verify_nonogram(spec: &NonogramSpec, canvas: &Canvas) -> bool {
    canvas.height == spec.height()
        && canvas.width == spec.width()
        && canvas.is_binary()
        && (0..canvas.height).all(|r| run_lengths(canvas.row(r)) == spec.rows[r])
        && (0..canvas.width).all(|c| run_lengths(&canvas.col(c)) == spec.cols[c])
}

/// Which family DR reflects in first; its projection is the shadow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LineOrder {
    #[default]
    RowsFirst,
    ColsFirst,
}

/// The row family `C1` and column family `C2` over row-major canvases.
pub struct NonogramSets {
    pub rows: FiberFamily,
    pub cols: FiberFamily,
}

impl NonogramSets {
    pub fn new(spec: &NonogramSpec) -> Result<Self> {
        let (m, n) = (spec.height(), spec.width());
        let mut rows = FiberFamily::new(m * n);
        for (r, clues) in spec.rows.iter().enumerate() {
            let set: Arc<dyn ConstraintSet> = Arc::new(LineFeasibleSet::new(n, clues.clone())?);
            rows.push((0..n).map(|c| r * n + c).collect(), set)?;
        }
        let mut cols = FiberFamily::new(m * n);
        for (c, clues) in spec.cols.iter().enumerate() {
            let set: Arc<dyn ConstraintSet> = Arc::new(LineFeasibleSet::new(m, clues.clone())?);
            cols.push((0..m).map(|r| r * n + c).collect(), set)?;
        }
        Ok(NonogramSets { rows, cols })
    }

    pub fn project_rows(&self, a: &Canvas) -> Result<Canvas> {
        self.apply(&self.rows, a)
    }

    pub fn project_cols(&self, a: &Canvas) -> Result<Canvas> {
        self.apply(&self.cols, a)
    }

    fn apply(&self, set: &FiberFamily, a: &Canvas) -> Result<Canvas> {
        let mut out = vec![0.0; a.cells.len()];
        set.project_into(&a.cells, &mut out)?;
        Ok(Canvas { height: a.height, width: a.width, cells: out })
    }
}

pub fn solve_nonogram(spec: &NonogramSpec, cfg: &SolverConfig) -> Result<SolveReport<Canvas>> {
    solve_nonogram_ordered(spec, cfg, LineOrder::RowsFirst)
}

/// Two-set DR between the row and column families from uniform `[0, 1]`
/// canvases. Each iterate's shadow is rounded and accepted once it matches
/// every clue.
pub fn solve_nonogram_ordered(
    spec: &NonogramSpec,
    cfg: &SolverConfig,
    order: LineOrder,
) -> Result<SolveReport<Canvas>> {
    cfg.validate()?;
    let t0 = Instant::now();
    let sets = NonogramSets::new(spec)?;
    let (first, second): (&dyn ConstraintSet, &dyn ConstraintSet) = match order {
        LineOrder::RowsFirst => (&sets.rows, &sets.cols),
        LineOrder::ColsFirst => (&sets.cols, &sets.rows),
    };
    let (m, n) = (spec.height(), spec.width());
    let step = |x: &Point| dr_step_with_shadow(first, second, x);
    let shadow = |x: &Point| first.project(x);
    let init = |rng: &mut ChaCha8Rng, _| uniform_point(rng, m * n, 0.0, 1.0);
    let accept = |s: &Point| {
        let cells = s.coords().iter().map(|&v| (v + 0.5).floor()).collect();
        let canvas = Canvas { height: m, width: n, cells };
        verify_nonogram(spec, &canvas).then_some(canvas)
    };
    let mut report =
        run_restarted(cfg, LoopSpec { step: &step, shadow: &shadow, read: &|p| p, init: &init, accept: &accept })?;
    report.elapsed = t0.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    const TEN: &str =
        "rows:\n1,2\n2\n1\n1\n2\n2,4\n2,6\n8\n1,1\n2,2\ncols:\n2\n3\n1\n2,1\n5\n4\n1,4,1\n1,5\n2,2\n2,1\n";
    const TEN_SOLUTION: &str = "\
......#.##
........##
.......#..
.........#
.....##...
##..####..
##.######.
.########.
....#..#..
...##.##..";

    #[test]
    fn parse_blocks() {
        let spec = NonogramSpec::parse(TEN).unwrap();
        assert_eq!((spec.height(), spec.width()), (10, 10));
        assert_eq!(spec.row_clues()[6], vec![2, 6]);
        assert_eq!(spec.col_clues()[6], vec![1, 4, 1]);

        let spaced = NonogramSpec::parse("% comment\nrows:\n 2 \n\n0\n\ncols:\n1\n1\n\n").unwrap();
        assert_eq!(spaced.row_clues(), &[vec![2], vec![], vec![]]);
        assert_eq!(spaced.col_clues(), &[vec![1], vec![1]]);

        assert!(matches!(NonogramSpec::parse("cols:\n1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(NonogramSpec::parse("rows:\n1\ncols:\nx\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(NonogramSpec::parse("rows:\n3\ncols:\n1\n1\n"), Err(Error::InfeasibleLine { .. })));
    }

    #[test]
    fn verify_examples() {
        let spec = NonogramSpec::parse(TEN).unwrap();
        let sol = Canvas::from_art(TEN_SOLUTION).unwrap();
        assert!(verify_nonogram(&spec, &sol));
        assert_eq!(Canvas::from_art(&sol.to_string()).unwrap(), sol);
        assert!(!verify_nonogram(&spec, &Canvas::new(10, 10, vec![0.0; 100]).unwrap()));
        for i in [0, 17, 99] {
            let mut cells = sol.cells().to_vec();
            cells[i] = 1.0 - cells[i];
            assert!(!verify_nonogram(&spec, &Canvas::new(10, 10, cells).unwrap()));
        }
    }

    #[test]
    fn solution_is_fixed_by_both_families() {
        let spec = NonogramSpec::parse(TEN).unwrap();
        let sets = NonogramSets::new(&spec).unwrap();
        let sol = Canvas::from_art(TEN_SOLUTION).unwrap();
        assert_eq!(sets.project_rows(&sol).unwrap(), sol);
        assert_eq!(sets.project_cols(&sol).unwrap(), sol);
    }

    #[test]
    fn random_canvas_rows_match_clues() {
        let spec = NonogramSpec::parse(TEN).unwrap();
        let sets = NonogramSets::new(&spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = Canvas::new(10, 10, (0..100).map(|_| rng.gen::<f64>()).collect()).unwrap();
            let r = sets.project_rows(&a).unwrap();
            assert!((0..10).all(|i| run_lengths(r.row(i)) == spec.row_clues()[i]));
            let c = sets.project_cols(&a).unwrap();
            assert!((0..10).all(|j| run_lengths(&c.col(j)) == spec.col_clues()[j]));
        }
    }

    #[test]
    fn single_row_reduces_to_line_projection() {
        let spec = NonogramSpec::new(vec![vec![2, 1]], vec![vec![1], vec![1], vec![], vec![1], vec![]]).unwrap();
        let sets = NonogramSets::new(&spec).unwrap();
        let x = [0.1, 0.8, 0.7, 0.2, 0.9];
        let line = LineFeasibleSet::new(5, vec![2, 1]).unwrap();
        let expect = line.project(&Point::from_slice(&x)).unwrap();
        let got = sets.project_rows(&Canvas::new(1, 5, x.to_vec()).unwrap()).unwrap();
        assert_eq!(got.cells(), expect.coords());
    }

    #[test]
    fn forced_row_is_immediate() {
        let spec = NonogramSpec::new(vec![vec![5]], vec![vec![1]; 5]).unwrap();
        let r = solve_nonogram(&spec, &SolverConfig::default()).unwrap();
        assert!(r.solved);
        assert_eq!(r.iterations, 0);
        assert_eq!(r.solution.unwrap().to_string(), "#####\n");
    }

    #[test]
    fn both_orders_solve() {
        let spec = NonogramSpec::parse(TEN).unwrap();
        for order in [LineOrder::RowsFirst, LineOrder::ColsFirst] {
            let r =
                solve_nonogram_ordered(&spec, &SolverConfig::default().with_seed(9).with_restarts(3), order).unwrap();
            assert!(r.solved, "{order:?}");
            assert!(verify_nonogram(&spec, r.solution.as_ref().unwrap()));
        }
    }
}
