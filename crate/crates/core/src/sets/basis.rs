use crate::error::{Error, Result};
use crate::set::ConstraintSet;

/// The standard basis `{e_1, ..., e_n}` of `R^n`.
///
/// Projects onto `e_i` for the smallest `i` attaining the maximum coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisVectorSet {
    n: usize,
}

impl BasisVectorSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("basis set needs n >= 1".into()));
        }
        Ok(BasisVectorSet { n })
    }

    pub fn argmax(x: &[f64]) -> usize {
        let mut best = 0;
        for (i, v) in x.iter().enumerate().skip(1) {
            if *v > x[best] {
                best = i;
            }
        }
        best
    }
}

impl ConstraintSet for BasisVectorSet {
    fn dim(&self) -> usize {
        self.n
    }

    fn is_convex(&self) -> bool {
        self.n == 1
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let k = Self::argmax(x);
        out.fill(0.0);
        out[k] = 1.0;
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        let ones = x.iter().filter(|v| (*v - 1.0).abs() <= tol).count();
        let zeros = x.iter().filter(|v| v.abs() <= tol).count();
        ones == 1 && zeros == self.n - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::{dist, Point};

    fn e(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    #[test]
    fn examples() {
        let s = BasisVectorSet::new(3).unwrap();
        let x = [0.2, 0.9, 0.1];
        let p = s.project(&Point::from(x)).unwrap();
        let best = (0..3).map(|i| dist(&e(3, i), &x)).fold(f64::INFINITY, f64::min);
        assert_eq!(p.coords(), e(3, 1).as_slice());
        assert_eq!(dist(p.coords(), &x), best);

        let e3 = Point::new(e(3, 2));
        assert_eq!(s.project(&e3).unwrap(), e3);

        let two = BasisVectorSet::new(2).unwrap();
        assert_eq!(two.project(&Point::from([0.5, 0.5])).unwrap(), Point::from([1.0, 0.0]));
    }

    #[test]
    fn membership() {
        let s = BasisVectorSet::new(3).unwrap();
        assert!(s.contains(&[0.0, 0.0, 1.0], 0.0));
        assert!(!s.contains(&[0.0, 1.0, 1.0], 0.0));
        assert!(!s.contains(&[0.0, 0.5, 0.0], 0.1));
        assert!(BasisVectorSet::new(0).is_err());
    }
}
