use crate::error::{Error, Result};
use crate::point::Point;

/// A closed set with a computable nearest-point selection.
///
/// For nonconvex sets the projection is set-valued; every implementation
/// documents the selection rule it applies. Implementations are pure with
/// respect to the input point and safe to call concurrently.
pub trait ConstraintSet: Send + Sync {
    /// Ambient dimension.
    fn dim(&self) -> usize;

    /// Metadata only; no operator relies on it.
    fn is_convex(&self) -> bool;

    /// Writes a nearest point of the set to `x` into `out`.
    ///
    /// Both slices have length [`ConstraintSet::dim`]; callers check this.
    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()>;

    /// Membership test up to `tol` in the set's defining equations.
    fn contains(&self, x: &[f64], tol: f64) -> bool;

    fn project(&self, x: &Point) -> Result<Point> {
        x.expect_dim(self.dim())?;
        let mut out = Point::zeros(self.dim());
        self.project_into(x.coords(), out.coords_mut())?;
        Ok(out)
    }

    fn contains_point(&self, x: &Point, tol: f64) -> bool {
        x.dim() == self.dim() && self.contains(x.coords(), tol)
    }
}

impl<S: ConstraintSet + ?Sized> ConstraintSet for &S {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn is_convex(&self) -> bool {
        (**self).is_convex()
    }
    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        (**self).project_into(x, out)
    }
    fn contains(&self, x: &[f64], tol: f64) -> bool {
        (**self).contains(x, tol)
    }
}

impl<S: ConstraintSet + ?Sized> ConstraintSet for Box<S> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn is_convex(&self) -> bool {
        (**self).is_convex()
    }
    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        (**self).project_into(x, out)
    }
    fn contains(&self, x: &[f64], tol: f64) -> bool {
        (**self).contains(x, tol)
    }
}

impl<S: ConstraintSet + ?Sized> ConstraintSet for std::sync::Arc<S> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn is_convex(&self) -> bool {
        (**self).is_convex()
    }
    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        (**self).project_into(x, out)
    }
    fn contains(&self, x: &[f64], tol: f64) -> bool {
        (**self).contains(x, tol)
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
