use crate::error::{Error, Result};
use crate::point::{dist, Point};
use crate::set::ConstraintSet;

/// Closed Euclidean ball.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSet {
    center: Point,
    radius: f64,
}

impl BallSet {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!("ball radius must be positive, got {radius}")));
        }
        Ok(BallSet { center, radius })
    }

    pub fn unit(dim: usize) -> Self {
        BallSet { center: Point::zeros(dim), radius: 1.0 }
    }
}

impl ConstraintSet for BallSet {
    fn dim(&self) -> usize {
        self.center.dim()
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let c = self.center.coords();
        let d = dist(x, c);
        if d <= self.radius {
            out.copy_from_slice(x);
        } else {
            let s = self.radius / d;
            for ((o, xi), ci) in out.iter_mut().zip(x).zip(c) {
                *o = ci + s * (xi - ci);
            }
        }
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        dist(x, self.center.coords()) <= self.radius + tol
    }
}
