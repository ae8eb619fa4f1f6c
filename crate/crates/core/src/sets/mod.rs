//! Concrete projectors.
//!
//! Each set documents its selection rule where the nearest point is not
//! unique. Membership tests (`contains`) check the defining equations, not
//! distances to a projection.

mod affine;
mod ball;
mod basis;
mod boxes;
mod ellipse;
mod fiber;
mod finite;
mod halfline;
mod permutation;
mod sphere;
mod sphere_line;
mod whole;

pub use affine::{AffineSubspace, Hyperplane};
pub use ball::BallSet;
pub use basis::BasisVectorSet;
pub use boxes::BoxSet;
pub use ellipse::{nearest_on_ellipse, secular_residual, secular_residual_gap, EllipseFoot, EllipseSet, SpheroidSet};
pub use fiber::{FiberFamily, FixedEntries};
pub use finite::FinitePointSet;
pub use halfline::HalfLine;
pub use permutation::PermutationSet;
pub use sphere::SphereSet;
pub use sphere_line::sphere_line_step;
pub use whole::WholeSpace;
