use crate::error::{Error, Result};
use crate::set::ConstraintSet;

/// Axis-aligned box `{x : lower <= x <= upper}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSet {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxSet {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch { expected: lower.len(), found: upper.len() });
        }
        if lower.iter().zip(&upper).any(|(l, u)| l.is_nan() || u.is_nan() || l > u) {
            return Err(Error::InvalidParameter("box needs lower <= upper in every coordinate".into()));
        }
        Ok(BoxSet { lower, upper })
    }

    pub fn unit_cube(dim: usize) -> Self {
        BoxSet { lower: vec![0.0; dim], upper: vec![1.0; dim] }
    }
}

impl ConstraintSet for BoxSet {
    fn dim(&self) -> usize {
        self.lower.len()
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        for (i, o) in out.iter_mut().enumerate() {
            *o = x[i].clamp(self.lower[i], self.upper[i]);
        }
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        x.iter().enumerate().all(|(i, v)| *v >= self.lower[i] - tol && *v <= self.upper[i] + tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;

    #[test]
    fn clamps() {
        let b = BoxSet::unit_cube(3);
        let p = b.project(&Point::from([-1.0, 0.5, 2.0])).unwrap();
        assert_eq!(p, Point::from([0.0, 0.5, 1.0]));
        assert!(BoxSet::new(vec![1.0], vec![0.0]).is_err());
    }
}
