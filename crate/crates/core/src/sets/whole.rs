use crate::error::Result;
use crate::set::ConstraintSet;

/// All of `R^n`; its projection is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WholeSpace {
    dim: usize,
}

impl WholeSpace {
    pub fn new(dim: usize) -> Self {
        WholeSpace { dim }
    }
}

impl ConstraintSet for WholeSpace {
    fn dim(&self) -> usize {
        self.dim
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        out.copy_from_slice(x);
        Ok(())
    }

    fn contains(&self, x: &[f64], _tol: f64) -> bool {
        x.iter().all(|v| v.is_finite())
    }
}
