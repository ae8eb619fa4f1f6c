use std::sync::Arc;

use crate::set::ConstraintSet;
use crate::sets::{FiberFamily, FixedEntries, PermutationSet};

use super::grid::PuzzleGrid;

/// The grid formulation: every row, column and box is a permutation of
/// `1..=n`, and the givens are fixed. Points are row-major grids in `R^{n²}`.
pub struct IntegerModel {
    n: usize,
    rows: FiberFamily,
    cols: FiberFamily,
    boxes: FiberFamily,
    givens: FixedEntries,
}

impl IntegerModel {
    pub fn new(g: &PuzzleGrid) -> Self {
        let n = g.n();
        let perm: Arc<dyn ConstraintSet> = Arc::new(PermutationSet::of_range(n).expect("n >= 1"));
        let units = g.units();
        let family = |us: &[Vec<usize>]| {
            FiberFamily::with_fibers(n * n, us.iter().map(|u| (u.clone(), perm.clone())))
                .expect("units of one kind are disjoint")
        };
        let fixed = g.givens().map(|(r, c, v)| (r * n + c, v as f64)).collect();
        IntegerModel {
            n,
            rows: family(&units[..n]),
            cols: family(&units[n..2 * n]),
            boxes: family(&units[2 * n..]),
            givens: FixedEntries::new(n * n, fixed).expect("given indices are in range"),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> [&dyn ConstraintSet; 4] {
        [&self.rows, &self.cols, &self.boxes, &self.givens]
    }

    pub fn contains_all(&self, values: &[f64]) -> bool {
        self.sets().iter().all(|s| s.contains(values, 0.0))
    }

    pub(crate) fn into_factors(self) -> Vec<Box<dyn ConstraintSet>> {
        vec![Box::new(self.rows), Box::new(self.cols), Box::new(self.boxes), Box::new(self.givens)]
    }
}
