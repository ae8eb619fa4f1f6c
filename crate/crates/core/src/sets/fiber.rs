use std::sync::Arc;

use crate::error::{Error, Result};
use crate::set::ConstraintSet;

struct Fiber {
    indices: Vec<usize>,
    set: Arc<dyn ConstraintSet>,
}

/// A set described by constraints on pairwise disjoint coordinate fibers.
///
/// Each fiber (an ordered list of coordinate indices) must lie in its own
/// set; coordinates outside every fiber are unconstrained. Because the
/// fibers are disjoint the projection is exact: project each gathered fiber
/// and scatter the result back.
pub struct FiberFamily {
    dim: usize,
    fibers: Vec<Fiber>,
    max_len: usize,
}

impl FiberFamily {
    pub fn new(dim: usize) -> Self {
        FiberFamily { dim, fibers: Vec::new(), max_len: 0 }
    }

    /// Adds a fiber; errors on out-of-range or already used indices.
    pub fn push(&mut self, indices: Vec<usize>, set: Arc<dyn ConstraintSet>) -> Result<()> {
        if set.dim() != indices.len() {
            return Err(Error::DimensionMismatch { expected: set.dim(), found: indices.len() });
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.dim) {
            return Err(Error::InvalidParameter(format!("fiber index {bad} out of range {}", self.dim)));
        }
        let mut seen = vec![false; self.dim];
        for f in &self.fibers {
            for &i in &f.indices {
                seen[i] = true;
            }
        }
        for &i in &indices {
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter(format!("fiber index {i} used twice")));
            }
        }
        self.max_len = self.max_len.max(indices.len());
        self.fibers.push(Fiber { indices, set });
        Ok(())
    }

    pub fn with_fibers<I>(dim: usize, fibers: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Arc<dyn ConstraintSet>)>,
    {
        let mut fam = FiberFamily::new(dim);
        for (indices, set) in fibers {
            fam.push(indices, set)?;
        }
        Ok(fam)
    }

    pub fn fiber_count(&self) -> usize {
        self.fibers.len()
    }

    pub fn fiber_indices(&self) -> impl Iterator<Item = &[usize]> {
        self.fibers.iter().map(|f| f.indices.as_slice())
    }
}

impl ConstraintSet for FiberFamily {
    fn dim(&self) -> usize {
        self.dim
    }

    fn is_convex(&self) -> bool {
        self.fibers.iter().all(|f| f.set.is_convex())
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        out.copy_from_slice(x);
        let mut gathered = vec![0.0; self.max_len];
        let mut projected = vec![0.0; self.max_len];
        for f in &self.fibers {
            let len = f.indices.len();
            for (g, &i) in gathered.iter_mut().zip(&f.indices) {
                *g = x[i];
            }
            f.set.project_into(&gathered[..len], &mut projected[..len])?;
            for (p, &i) in projected.iter().zip(&f.indices) {
                out[i] = *p;
            }
        }
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        let mut gathered = vec![0.0; self.max_len];
        self.fibers.iter().all(|f| {
            let len = f.indices.len();
            for (g, &i) in gathered.iter_mut().zip(&f.indices) {
                *g = x[i];
            }
            f.set.contains(&gathered[..len], tol)
        })
    }
}

/// Coordinates pinned to fixed values, all others free.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedEntries {
    dim: usize,
    entries: Vec<(usize, f64)>,
}

impl FixedEntries {
    pub fn new(dim: usize, entries: Vec<(usize, f64)>) -> Result<Self> {
        if let Some(&(bad, _)) = entries.iter().find(|(i, _)| *i >= dim) {
            return Err(Error::InvalidParameter(format!("fixed index {bad} out of range {dim}")));
        }
        Ok(FixedEntries { dim, entries })
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }
}

impl ConstraintSet for FixedEntries {
    fn dim(&self) -> usize {
        self.dim
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        out.copy_from_slice(x);
        for &(i, v) in &self.entries {
            out[i] = v;
        }
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.entries.iter().all(|&(i, v)| (x[i] - v).abs() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;
    use crate::sets::BasisVectorSet;

    #[test]
    fn projects_each_fiber_and_leaves_the_rest() {
        let basis: Arc<dyn ConstraintSet> = Arc::new(BasisVectorSet::new(2).unwrap());
        let fam = FiberFamily::with_fibers(5, [(vec![0, 2], basis.clone()), (vec![4, 1], basis)]).unwrap();
        let p = fam.project(&Point::from([0.1, 0.2, 0.3, 9.0, 0.7])).unwrap();
        assert_eq!(p, Point::from([0.0, 0.0, 1.0, 9.0, 1.0]));
        assert!(fam.contains_point(&p, 0.0));
        assert_eq!(fam.fiber_count(), 2);
    }

    #[test]
    fn rejects_overlapping_fibers() {
        let basis: Arc<dyn ConstraintSet> = Arc::new(BasisVectorSet::new(2).unwrap());
        assert!(FiberFamily::with_fibers(3, [(vec![0, 1], basis.clone()), (vec![1, 2], basis.clone())]).is_err());
        assert!(FiberFamily::with_fibers(3, [(vec![0, 3], basis.clone())]).is_err());
        assert!(FiberFamily::with_fibers(3, [(vec![0, 1, 2], basis)]).is_err());
    }

    #[test]
    fn fixed_entries_are_idempotent() {
        let f = FixedEntries::new(4, vec![(1, 1.0), (3, 0.0)]).unwrap();
        let once = f.project(&Point::from([0.5, 0.5, 0.5, 0.5])).unwrap();
        assert_eq!(once, Point::from([0.5, 1.0, 0.5, 0.0]));
        assert_eq!(f.project(&once).unwrap(), once);
        let empty = FixedEntries::new(2, vec![]).unwrap();
        assert_eq!(empty.project(&Point::from([0.3, 0.4])).unwrap(), Point::from([0.3, 0.4]));
    }
}
