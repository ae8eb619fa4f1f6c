use crate::error::{Error, Result};
use crate::point::{dot, norm, Point};
use crate::set::ConstraintSet;

const ORTHONORMAL_TOL: f64 = 1e-10;

/// `basepoint + span(basis)` with an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSubspace {
    basepoint: Point,
    basis: Vec<Point>,
}

impl AffineSubspace {
    /// Errors unless `basis` is orthonormal and matches the basepoint's dimension.
    pub fn new(basepoint: Point, basis: Vec<Point>) -> Result<Self> {
        let dim = basepoint.dim();
        for (i, b) in basis.iter().enumerate() {
            b.expect_dim(dim)?;
            if (b.norm() - 1.0).abs() > ORTHONORMAL_TOL {
                return Err(Error::InvalidParameter(format!("basis vector {i} is not unit length")));
            }
            for (j, c) in basis[..i].iter().enumerate() {
                if b.dot(c).abs() > ORTHONORMAL_TOL {
                    return Err(Error::InvalidParameter(format!("basis vectors {j} and {i} are not orthogonal")));
                }
            }
        }
        Ok(AffineSubspace { basepoint, basis })
    }

    /// Orthonormalises `spanning` (Gram–Schmidt), dropping dependent vectors.
    pub fn from_spanning(basepoint: Point, spanning: &[Point]) -> Result<Self> {
        let mut basis: Vec<Point> = Vec::new();
        for v in spanning {
            v.expect_dim(basepoint.dim())?;
            let mut w = v.clone();
            for b in &basis {
                let c = w.dot(b);
                for (wi, bi) in w.coords_mut().iter_mut().zip(b.coords()) {
                    *wi -= c * bi;
                }
            }
            let n = w.norm();
            if n > 1e-12 * v.norm().max(1.0) {
                basis.push(w.scale(1.0 / n));
            }
        }
        AffineSubspace::new(basepoint, basis)
    }

    /// The line `basepoint + R direction`.
    pub fn line(basepoint: Point, direction: Point) -> Result<Self> {
        let n = direction.norm();
        if n.is_nan() || n <= 0.0 {
            return Err(Error::InvalidParameter("line direction must be nonzero".into()));
        }
        AffineSubspace::new(basepoint, vec![direction.scale(1.0 / n)])
    }

    pub fn basepoint(&self) -> &Point {
        &self.basepoint
    }

    pub fn basis(&self) -> &[Point] {
        &self.basis
    }
}

impl ConstraintSet for AffineSubspace {
    fn dim(&self) -> usize {
        self.basepoint.dim()
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let base = self.basepoint.coords();
        out.copy_from_slice(base);
        for b in &self.basis {
            let b = b.coords();
            let c: f64 = x.iter().zip(base).zip(b).map(|((x, p), b)| (x - p) * b).sum();
            for (o, bi) in out.iter_mut().zip(b) {
                *o += c * bi;
            }
        }
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        let mut p = vec![0.0; x.len()];
        self.project_into(x, &mut p).is_ok() && crate::point::dist(x, &p) <= tol
    }
}

/// `{x : <normal, x> = offset}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    normal: Point,
    offset: f64,
}

impl Hyperplane {
    pub fn new(normal: Point, offset: f64) -> Result<Self> {
        if normal.norm().is_nan() || normal.norm() == 0.0 {
            return Err(Error::InvalidParameter("hyperplane normal must be nonzero".into()));
        }
        Ok(Hyperplane { normal, offset })
    }
}

impl ConstraintSet for Hyperplane {
    fn dim(&self) -> usize {
        self.normal.dim()
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let a = self.normal.coords();
        let c = (dot(a, x) - self.offset) / dot(a, a);
        for ((o, xi), ai) in out.iter_mut().zip(x).zip(a) {
            *o = xi - c * ai;
        }
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        let a = self.normal.coords();
        (dot(a, x) - self.offset).abs() / norm(a) <= tol
    }
}
