//! Product-space reformulation of `N`-set feasibility.
//!
//! `x ∈ C_1 ∩ ... ∩ C_N` iff `(x, ..., x) ∈ C ∩ D` with `C = Π C_i` and `D`
//! the diagonal of `(R^n)^N`. Both projections are explicit: `P_C` projects
//! blockwise and `P_D` replaces every block by the block mean. The product
//! space is stored flat, blocks contiguous, so the generic operators in
//! [`crate::ops`] run on it unchanged.

use crate::error::{Error, Result};
use crate::ops::{dr_step, dr_step_with_shadow};
use crate::point::Point;
use crate::set::{check_len, ConstraintSet};

/// `N` blocks of dimension `n`, stored contiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductPoint {
    block_dim: usize,
    data: Vec<f64>,
}

impl ProductPoint {
    pub fn new(blocks: Vec<Point>) -> Result<Self> {
        let block_dim = blocks
            .first()
            .ok_or_else(|| Error::InvalidParameter("product point needs at least one block".into()))?
            .dim();
        let mut data = Vec::with_capacity(block_dim * blocks.len());
        for b in &blocks {
            b.expect_dim(block_dim)?;
            data.extend_from_slice(b.coords());
        }
        Ok(ProductPoint { block_dim, data })
    }

    /// Reinterprets a flat point of dimension `blocks * n`.
    pub fn from_flat(x: Point, blocks: usize) -> Result<Self> {
        if blocks == 0 || !x.dim().is_multiple_of(blocks) {
            return Err(Error::InvalidParameter(format!("cannot split dimension {} into {blocks} blocks", x.dim())));
        }
        Ok(ProductPoint { block_dim: x.dim() / blocks, data: x.into_vec() })
    }

    pub fn into_flat(self) -> Point {
        Point::new(self.data)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    pub fn num_blocks(&self) -> usize {
        self.data.len().checked_div(self.block_dim).unwrap_or(0)
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    pub fn block(&self, i: usize) -> &[f64] {
        &self.data[i * self.block_dim..(i + 1) * self.block_dim]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.block_dim.max(1))
    }
}

/// `(x, x, ..., x)` with `n` copies.
pub fn lift(x: &Point, n: usize) -> Result<ProductPoint> {
    if n == 0 {
        return Err(Error::InvalidParameter("lift needs at least one block".into()));
    }
    ProductPoint::new(vec![x.clone(); n])
}

/// The blockwise mean, i.e. the diagonal representative of `P_D X`.
pub fn drop(x: &ProductPoint) -> Point {
    Point::new(block_mean(&x.data, x.block_dim))
}

fn block_mean(data: &[f64], block_dim: usize) -> Vec<f64> {
    let mut mean = vec![0.0; block_dim];
    let mut count = 0usize;
    for block in data.chunks(block_dim) {
        for (m, v) in mean.iter_mut().zip(block) {
            *m += v;
        }
        count += 1;
    }
    let inv = 1.0 / count as f64;
    mean.iter_mut().for_each(|m| *m *= inv);
    mean
}

/// The diagonal `D = {(x, ..., x)}` of `(R^n)^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diagonal {
    blocks: usize,
    block_dim: usize,
}

impl Diagonal {
    pub fn new(blocks: usize, block_dim: usize) -> Result<Self> {
        if blocks == 0 {
            return Err(Error::InvalidParameter("diagonal needs at least one block".into()));
        }
        Ok(Diagonal { blocks, block_dim })
    }
}

impl ConstraintSet for Diagonal {
    fn dim(&self) -> usize {
        self.blocks * self.block_dim
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let mean = block_mean(x, self.block_dim);
        for block in out.chunks_mut(self.block_dim) {
            block.copy_from_slice(&mean);
        }
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        let first = &x[..self.block_dim];
        x.chunks(self.block_dim).all(|b| b.iter().zip(first).all(|(u, v)| (u - v).abs() <= tol))
    }
}

/// Every block replaced by the blockwise mean.
pub fn project_diagonal(x: &ProductPoint) -> ProductPoint {
    let mean = block_mean(&x.data, x.block_dim);
    let data = mean.iter().copied().cycle().take(x.data.len()).collect();
    ProductPoint { block_dim: x.block_dim, data }
}

/// `C = C_1 × ... × C_N` over a common `R^n`.
pub struct ProductSet {
    factors: Vec<Box<dyn ConstraintSet>>,
    block_dim: usize,
}

impl ProductSet {
    pub fn new(factors: Vec<Box<dyn ConstraintSet>>) -> Result<Self> {
        let block_dim = factors
            .first()
            .ok_or_else(|| Error::InvalidParameter("product set needs at least one factor".into()))?
            .dim();
        for f in &factors {
            check_len(block_dim, f.dim())?;
        }
        Ok(ProductSet { factors, block_dim })
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    pub fn factor(&self, i: usize) -> &dyn ConstraintSet {
        self.factors[i].as_ref()
    }

    pub fn diagonal(&self) -> Diagonal {
        Diagonal { blocks: self.factors.len(), block_dim: self.block_dim }
    }

    /// Blockwise projection `(P_{C_1} x_1, ..., P_{C_N} x_N)`.
    pub fn project_product(&self, x: &ProductPoint) -> Result<ProductPoint> {
        if x.num_blocks() != self.factors.len() {
            return Err(Error::DimensionMismatch { expected: self.factors.len(), found: x.num_blocks() });
        }
        check_len(self.block_dim, x.block_dim)?;
        let mut out = vec![0.0; x.data.len()];
        self.project_into(&x.data, &mut out)?;
        Ok(ProductPoint { block_dim: self.block_dim, data: out })
    }
}

impl ConstraintSet for ProductSet {
    fn dim(&self) -> usize {
        self.factors.len() * self.block_dim
    }

    fn is_convex(&self) -> bool {
        self.factors.iter().all(|f| f.is_convex())
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let n = self.block_dim;
        for ((f, xb), ob) in self.factors.iter().zip(x.chunks(n)).zip(out.chunks_mut(n)) {
            f.project_into(xb, ob)?;
        }
        Ok(())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.factors.iter().zip(x.chunks(self.block_dim)).all(|(f, xb)| f.contains(xb, tol))
    }
}

/// Which set is reflected in first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReflectOrder {
    /// `T_{D,C}`: reflect in the diagonal first.
    #[default]
    DiagonalFirst,
    /// `T_{C,D}`.
    ProductFirst,
}

/// A feasibility problem lifted to the product space.
pub struct ProductProblem {
    product: ProductSet,
    diagonal: Diagonal,
    order: ReflectOrder,
}

impl ProductProblem {
    pub fn new(product: ProductSet) -> Self {
        let diagonal = product.diagonal();
        ProductProblem { product, diagonal, order: ReflectOrder::default() }
    }

    pub fn with_order(mut self, order: ReflectOrder) -> Self {
        self.order = order;
        self
    }

    pub fn product(&self) -> &ProductSet {
        &self.product
    }

    pub fn diagonal(&self) -> &Diagonal {
        &self.diagonal
    }

    pub fn order(&self) -> ReflectOrder {
        self.order
    }

    /// The set reflected in first; its projection is the shadow.
    pub fn first_set(&self) -> &dyn ConstraintSet {
        match self.order {
            ReflectOrder::DiagonalFirst => &self.diagonal,
            ReflectOrder::ProductFirst => &self.product,
        }
    }

    pub fn step(&self, x: &Point) -> Result<Point> {
        match self.order {
            ReflectOrder::DiagonalFirst => dr_step(&self.diagonal, &self.product, x),
            ReflectOrder::ProductFirst => dr_step(&self.product, &self.diagonal, x),
        }
    }

    /// One step plus the shadow of `x` on the first set.
    pub fn step_with_shadow(&self, x: &Point) -> Result<(Point, Point)> {
        match self.order {
            ReflectOrder::DiagonalFirst => dr_step_with_shadow(&self.diagonal, &self.product, x),
            ReflectOrder::ProductFirst => dr_step_with_shadow(&self.product, &self.diagonal, x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{AffineSubspace, SphereSet, WholeSpace};

    fn pp(blocks: &[&[f64]]) -> ProductPoint {
        ProductPoint::new(blocks.iter().map(|b| Point::from_slice(b)).collect()).unwrap()
    }

    #[test]
    fn whole_space_factors_fix_everything() {
        let c = ProductSet::new(vec![Box::new(WholeSpace::new(2)), Box::new(WholeSpace::new(2))]).unwrap();
        let x = pp(&[&[1.0, -2.0], &[0.5, 9.0]]);
        assert_eq!(c.project_product(&x).unwrap(), x);
    }

    #[test]
    fn blockwise_projection() {
        let axis = AffineSubspace::line(Point::zeros(2), Point::from([1.0, 0.0])).unwrap();
        let c = ProductSet::new(vec![Box::new(SphereSet::unit(2)), Box::new(axis)]).unwrap();
        let x = pp(&[&[2.0, 0.0], &[1.0, 1.0]]);
        assert_eq!(c.project_product(&x).unwrap(), pp(&[&[1.0, 0.0], &[1.0, 0.0]]));
        let member = pp(&[&[0.0, 1.0], &[-3.0, 0.0]]);
        assert_eq!(c.project_product(&member).unwrap(), member);
        assert!(c.project_product(&pp(&[&[1.0, 0.0]])).is_err());
    }

    #[test]
    fn diagonal_examples() {
        let x = pp(&[&[1.0, 3.0], &[3.0, 1.0]]);
        assert_eq!(project_diagonal(&x), pp(&[&[2.0, 2.0], &[2.0, 2.0]]));
        let same = pp(&[&[4.0, 5.0], &[4.0, 5.0], &[4.0, 5.0]]);
        assert_eq!(project_diagonal(&same), same);
        assert_eq!(drop(&x), Point::from([2.0, 2.0]));
        let d = Diagonal::new(2, 2).unwrap();
        assert_eq!(d.project(&x.clone().into_flat()).unwrap(), project_diagonal(&x).into_flat());
    }

    #[test]
    fn lift_and_drop() {
        let x = Point::from([0.25, -7.0, 3.0]);
        let lifted = lift(&x, 4).unwrap();
        assert_eq!(lifted.num_blocks(), 4);
        assert_eq!(drop(&lifted), x);
        assert!(Diagonal::new(4, 3).unwrap().contains(lifted.as_flat(), 0.0));
        assert!(lift(&x, 0).is_err());
    }

    #[test]
    fn shadow_order_follows_first_set() {
        let axis = AffineSubspace::line(Point::zeros(2), Point::from([1.0, 0.0])).unwrap();
        let problem = ProductProblem::new(ProductSet::new(vec![Box::new(SphereSet::unit(2)), Box::new(axis)]).unwrap());
        let x = pp(&[&[2.0, 0.0], &[1.0, 1.0]]).into_flat();
        let (next, shadow) = problem.step_with_shadow(&x).unwrap();
        assert_eq!(next, problem.step(&x).unwrap());
        assert_eq!(shadow, problem.diagonal().project(&x).unwrap());
    }
}
