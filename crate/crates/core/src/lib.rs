//! Douglas–Rachford projection methods for feasibility problems, with
//! Sudoku and nonogram front ends.

pub mod driver;
pub mod error;
pub mod nonogram;
pub mod ops;
pub mod point;
pub mod product;
pub mod set;
pub mod sets;
pub mod solver;
pub mod sudoku;

pub use driver::{run, IterationTrace, StopReason, StopRule};
pub use error::{Error, Result};
pub use ops::{averaged_dr_step, cyclic_dr_step, dr3_step, dr_step, reflect};
pub use point::Point;
pub use set::ConstraintSet;
pub use solver::{SolveReport, SolverConfig, Variant};
