use crate::error::{Error, Result};
use crate::point::{dist, Point};
use crate::set::ConstraintSet;

/// Euclidean sphere `{x : ||x - center|| = radius}`.
///
/// The projection of the center is the whole sphere; it is reported as
/// [`Error::AmbiguousProjection`] rather than resolved, and callers that can
/// hit it perturb the input and retry.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSet {
    center: Point,
    radius: f64,
}

impl SphereSet {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!("sphere radius must be positive, got {radius}")));
        }
        Ok(SphereSet { center, radius })
    }

    pub fn unit(dim: usize) -> Self {
        SphereSet { center: Point::zeros(dim), radius: 1.0 }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

impl ConstraintSet for SphereSet {
    fn dim(&self) -> usize {
        self.center.dim()
    }

    fn is_convex(&self) -> bool {
        false
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let c = self.center.coords();
        let d = dist(x, c);
        if d == 0.0 {
            return Err(Error::AmbiguousProjection("point is the center of the sphere"));
        }
        let s = self.radius / d;
        for ((o, xi), ci) in out.iter_mut().zip(x).zip(c) {
            *o = ci + s * (xi - ci);
        }
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        (dist(x, self.center.coords()) - self.radius).abs() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = SphereSet::unit(2);
        assert_eq!(s.project(&Point::from([2.0, 0.0])).unwrap(), Point::from([1.0, 0.0]));

        let on = Point::from([0.5, 0.5 * 3f64.sqrt()]);
        assert!(s.project(&on).unwrap().dist(&on) <= 1e-15);

        // ||x0|| = 1/2 so P x0 = 2 x0
        let p = s.project(&Point::from([0.4, 0.3])).unwrap();
        assert!(p.dist(&Point::from([0.8, 0.6])) <= 1e-15);

        assert!(matches!(s.project(&Point::from([0.0, 0.0])), Err(Error::AmbiguousProjection(_))));
    }

    #[test]
    fn shifted_sphere() {
        let s = SphereSet::new(Point::from([1.0, 1.0, 1.0]), 2.0).unwrap();
        let p = s.project(&Point::from([1.0, 1.0, 5.0])).unwrap();
        assert!(p.dist(&Point::from([1.0, 1.0, 3.0])) <= 1e-15);
        assert!(s.contains_point(&p, 1e-12));
    }
}
