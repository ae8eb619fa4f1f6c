use crate::error::{Error, Result};
use crate::point::{dist, Point};
use crate::set::ConstraintSet;

/// A finite list of points; the first listed point wins distance ties.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePointSet {
    points: Vec<Point>,
}

impl FinitePointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first =
            points.first().ok_or_else(|| Error::InvalidParameter("finite point set must be nonempty".into()))?;
        let dim = first.dim();
        for p in &points {
            p.expect_dim(dim)?;
        }
        Ok(FinitePointSet { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Index of the selected nearest point.
    pub fn nearest_index(&self, x: &[f64]) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, p) in self.points.iter().enumerate() {
            let d = dist(x, p.coords());
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        best
    }
}

impl ConstraintSet for FinitePointSet {
    fn dim(&self) -> usize {
        self.points[0].dim()
    }

    fn is_convex(&self) -> bool {
        self.points.iter().all(|p| p == &self.points[0])
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        out.copy_from_slice(self.points[self.nearest_index(x)].coords());
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.points.iter().any(|p| dist(x, p.coords()) <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = FinitePointSet::new(vec![Point::from([0.8, 0.0]), Point::from([-1.0, 0.0])]).unwrap();
        assert_eq!(s.project(&Point::from([1.2, 0.9])).unwrap(), Point::from([0.8, 0.0]));
        assert_eq!(s.project(&Point::from([-1.0, 0.0])).unwrap(), Point::from([-1.0, 0.0]));

        let single = FinitePointSet::new(vec![Point::from([0.8, 0.0])]).unwrap();
        for x in [[5.0, 5.0], [-3.0, 0.1], [0.0, 0.0]] {
            assert_eq!(single.project(&Point::from(x)).unwrap(), Point::from([0.8, 0.0]));
        }
    }

    #[test]
    fn ties_go_to_first_listed() {
        let s = FinitePointSet::new(vec![Point::from([1.0, 0.0]), Point::from([-1.0, 0.0])]).unwrap();
        assert_eq!(s.project(&Point::from([0.0, 3.0])).unwrap(), Point::from([1.0, 0.0]));
        assert!(FinitePointSet::new(vec![]).is_err());
        assert!(FinitePointSet::new(vec![Point::zeros(2), Point::zeros(3)]).is_err());
    }
}
