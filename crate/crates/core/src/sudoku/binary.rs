use std::sync::Arc;

use crate::error::{Error, Result};
use crate::set::ConstraintSet;
use crate::sets::{BasisVectorSet, FiberFamily, FixedEntries};

use super::grid::PuzzleGrid;

/// The 0/1 cube `B[i, j, k] = 1` iff cell `(i, j)` holds digit `k + 1`,
/// together with the given triples. Indices are zero-based.
#[derive(Debug, Clone, PartialEq)]
pub struct SudokuCube {
    n: usize,
    values: Vec<f64>,
    givens: Vec<(usize, usize, usize)>,
}

impl SudokuCube {
    pub fn from_values(n: usize, values: Vec<f64>, givens: Vec<(usize, usize, usize)>) -> Result<Self> {
        if values.len() != n * n * n {
            return Err(Error::DimensionMismatch { expected: n * n * n, found: values.len() });
        }
        Ok(SudokuCube { n, values, givens })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn givens(&self) -> &[(usize, usize, usize)] {
        &self.givens
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.values[cube_index(self.n, i, j, k)]
    }

    fn map_with(&self, set: &dyn ConstraintSet) -> SudokuCube {
        let mut out = vec![0.0; self.values.len()];
        set.project_into(&self.values, &mut out).expect("cube and family dimensions agree");
        SudokuCube { n: self.n, values: out, givens: self.givens.clone() }
    }
}

#[inline]
pub fn cube_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

pub fn encode_binary(g: &PuzzleGrid) -> SudokuCube {
    let n = g.n();
    let mut values = vec![0.0; n * n * n];
    let mut givens = Vec::with_capacity(g.given_count());
    for (i, j, v) in g.givens() {
        let k = v as usize - 1;
        values[cube_index(n, i, j, k)] = 1.0;
        givens.push((i, j, k));
    }
    SudokuCube { n, values, givens }
}

/// Reads digits off the depth fibers. A cell whose fiber is not exactly one
/// unit vector decodes as blank.
pub fn decode(cube: &SudokuCube) -> Result<PuzzleGrid> {
    let n = cube.n;
    let cells = cube
        .values
        .chunks(n)
        .map(|fiber| {
            let ones: Vec<usize> = (0..n).filter(|&k| fiber[k] == 1.0).collect();
            match ones.as_slice() {
                [k] if fiber.iter().all(|&v| v == 0.0 || v == 1.0) => *k as u8 + 1,
                _ => 0,
            }
        })
        .collect();
    PuzzleGrid::new(n, cells)
}

/// Row fibers `B[i, :, k]`.
pub fn row_fibers(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for k in 0..n {
            out.push((0..n).map(|j| cube_index(n, i, j, k)).collect());
        }
    }
    out
}

/// Column fibers `B[:, j, k]`.
pub fn col_fibers(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            out.push((0..n).map(|i| cube_index(n, i, j, k)).collect());
        }
    }
    out
}

/// Box fibers: the column-major vectorization of each `m x m` box at a
/// fixed digit.
pub fn box_fibers(n: usize) -> Vec<Vec<usize>> {
    let m = (n as f64).sqrt().round() as usize;
    let mut out = Vec::with_capacity(n * n);
    for b in 0..n {
        let (r0, c0) = (b / m * m, b % m * m);
        for k in 0..n {
            let mut fiber = Vec::with_capacity(n);
            for c in c0..c0 + m {
                for r in r0..r0 + m {
                    fiber.push(cube_index(n, r, c, k));
                }
            }
            out.push(fiber);
        }
    }
    out
}

/// Depth fibers `B[i, j, :]`.
pub fn depth_fibers(n: usize) -> Vec<Vec<usize>> {
    (0..n * n).map(|c| (c * n..(c + 1) * n).collect()).collect()
}

fn basis_family(n: usize, fibers: Vec<Vec<usize>>) -> FiberFamily {
    let e: Arc<dyn ConstraintSet> = Arc::new(BasisVectorSet::new(n).expect("n >= 1"));
    FiberFamily::with_fibers(n * n * n, fibers.into_iter().map(|f| (f, e.clone())))
        .expect("sudoku fibers are disjoint and in range")
}

/// The five constraint sets of the cube formulation.
pub struct BinaryModel {
    n: usize,
    rows: FiberFamily,
    cols: FiberFamily,
    boxes: FiberFamily,
    givens: FixedEntries,
    cells: FiberFamily,
}

impl BinaryModel {
    pub fn new(g: &PuzzleGrid) -> Self {
        let n = g.n();
        let cube = encode_binary(g);
        let fixed = cube.givens.iter().map(|&(i, j, k)| (cube_index(n, i, j, k), 1.0)).collect();
        BinaryModel {
            n,
            rows: basis_family(n, row_fibers(n)),
            cols: basis_family(n, col_fibers(n)),
            boxes: basis_family(n, box_fibers(n)),
            givens: FixedEntries::new(n * n * n, fixed).expect("given indices are in range"),
            cells: basis_family(n, depth_fibers(n)),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `C1, ..., C5` in order: rows, columns, boxes, givens, cells.
    pub fn sets(&self) -> [&dyn ConstraintSet; 5] {
        [&self.rows, &self.cols, &self.boxes, &self.givens, &self.cells]
    }

    pub fn contains_all(&self, values: &[f64]) -> bool {
        self.sets().iter().all(|s| s.contains(values, 0.0))
    }

    pub fn project_c1(&self, b: &SudokuCube) -> SudokuCube {
        b.map_with(&self.rows)
    }

    pub fn project_c2(&self, b: &SudokuCube) -> SudokuCube {
        b.map_with(&self.cols)
    }

    pub fn project_c3(&self, b: &SudokuCube) -> SudokuCube {
        b.map_with(&self.boxes)
    }

    pub fn project_c4(&self, b: &SudokuCube) -> SudokuCube {
        b.map_with(&self.givens)
    }

    pub fn project_c5(&self, b: &SudokuCube) -> SudokuCube {
        b.map_with(&self.cells)
    }

    /// Boxed copies of the five sets, for building a product space.
    pub(crate) fn into_factors(self) -> Vec<Box<dyn ConstraintSet>> {
        vec![
            Box::new(self.rows),
            Box::new(self.cols),
            Box::new(self.boxes),
            Box::new(self.givens),
            Box::new(self.cells),
        ]
    }
}
