use crate::error::Result;
use crate::set::ConstraintSet;

/// The half-line `{(x1, 0) : x1 <= bound}` in `R^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLine {
    bound: f64,
}

impl HalfLine {
    pub fn new(bound: f64) -> Self {
        HalfLine { bound }
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }
}

impl ConstraintSet for HalfLine {
    fn dim(&self) -> usize {
        2
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        out[0] = x[0].min(self.bound);
        out[1] = 0.0;
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        x[1].abs() <= tol && x[0] <= self.bound + tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;

    #[test]
    fn examples() {
        let h = HalfLine::new(0.8);
        assert_eq!(h.project(&Point::from([1.2, 0.3])).unwrap(), Point::from([0.8, 0.0]));
        assert_eq!(h.project(&Point::from([0.5, 7.0])).unwrap(), Point::from([0.5, 0.0]));
        assert_eq!(h.project(&Point::from([1.2, 0.9])).unwrap(), Point::from([0.8, 0.0]));
        assert!(h.project(&Point::from([1.0, 0.0, 0.0])).is_err());
    }
}
